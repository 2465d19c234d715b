#pragma once

#include <optional>
#include <string>

#include "iqp/document.hpp"

namespace iqp {

struct CheckResult {
  bool pass = false;
  Json report;
};

/// Runs a named check: "d2", "h0", "boundary", "pj" or "involution".
/// `vertex` is required for "involution" and optional for "boundary" (then
/// the totals of iqp and its mutation are compared). Throws
/// Error(Malformed) for an unknown check name.
CheckResult run_check(const IQP& iqp, const std::string& name, int truncation,
                      const std::optional<VertexId>& vertex = std::nullopt);

}  // namespace iqp
