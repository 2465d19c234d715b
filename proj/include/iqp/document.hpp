#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "iqp/ginzburg.hpp"
#include "iqp/homology.hpp"
#include "iqp/mutation.hpp"

namespace iqp {

using Json = nlohmann::json;

inline constexpr int kDocumentVersion = 1;

/// Reads the quiver part without validating the ice structure.
IceQuiver decode_ice_quiver(const Json& doc);
/// Throws Error(Malformed) for schema violations or invalid ice quivers.
IQP decode_iqp(const Json& doc);
IQP parse_iqp(std::string_view text);
Json encode_iqp(const IQP& iqp);
/// Compact single-line encoding.
std::string dump_iqp(const IQP& iqp);

/// Relabels vertices "1".."n" in breadth-first order from the smallest id of
/// each component, and arrows "a1".."am" by (source, target, old id).
IQP canonical_relabel(const IQP& iqp);

Json series_json(const PathSeries& s);
Json validation_json(const ValidationReport& r);
Json mutability_json(const MutabilityStatus& s);
Json trace_json(const ReductionTrace& t);
Json presentation_json(const DgQuiverAlgebra& dga);
Json isomorphism_json(const std::optional<Isomorphism>& iso);
Json dims_json(const std::vector<std::size_t>& dims);
Json profile_json(const ExactnessProfile& p);

/// Parses a document from JSON text, mapping parse errors to Error(Malformed).
Json parse_json(std::string_view text);

}  // namespace iqp
