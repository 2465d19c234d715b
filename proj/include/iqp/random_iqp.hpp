#pragma once

#include <cstdint>
#include <string>

#include "iqp/mutation.hpp"

namespace iqp {

struct RandomIQPOptions {
  int max_vertices = 6;
  int max_arrows = 10;
  int min_term_length = 3;
  int max_term_length = 5;
  int max_terms = 5;
  int truncation = 10;
  // samples where the quiver or its premutation at the chosen vertex has more
  // than max_paths paths of length <= path_degree are redrawn
  int path_degree = 12;
  std::size_t max_paths = 15000;
};

struct RandomCase {
  IQP iqp;
  VertexId vertex;  // unfrozen, no loop or 2-cycle incident
};

/// Deterministic for a given seed. The potential has no quadratic terms and
/// every term meets an unfrozen arrow.
RandomCase random_iqp(std::uint64_t seed, const RandomIQPOptions& options = {});

}  // namespace iqp
