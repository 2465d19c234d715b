#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "iqp/linalg.hpp"
#include "iqp/mutation.hpp"
#include "iqp/quotient.hpp"

namespace iqp {

/// Basis element x ⊗ m ⊗ y of a term of the complex. `middle` is an arrow
/// index (V and V*), a vertex index (R), or unused (J ⊗ J).
struct TensorElem {
  Column left;
  std::uint32_t middle;
  Column right;

  bool operator==(const TensorElem&) const = default;
  auto operator<=>(const TensorElem&) const = default;
};

enum class PJTerm { JJ = 0, V = 1, VDual = 2, R = 3 };

/// Degree-d part of 0 -> J⊗R⊗J -> J⊗V*⊗J -> J⊗V⊗J -> J⊗J -> J -> 0 for the
/// associated graded of the Jacobian algebra. Matrices are stored as the
/// image rows of the domain basis in codomain coordinates.
struct BimoduleComplexSlice {
  int degree = 0;
  std::array<std::vector<TensorElem>, 4> basis;  // indexed by PJTerm
  std::vector<Column> jacobian_basis;            // codomain of the augmentation
  std::vector<SparseRow> m1;                     // V -> JJ
  std::vector<SparseRow> m2;                     // V* -> V
  std::vector<SparseRow> m3;                     // R -> V*
  std::vector<SparseRow> augmentation;           // JJ -> J
};

struct PJComplex {
  int truncation = 0;
  int lowest_degree = 3;  // weight of t_i; a* has weight one less
  std::vector<BimoduleComplexSlice> slices;  // degrees 0..N
};

/// Throws Error(Limit) when a slice basis exceeds `max_basis`.
PJComplex build_pj_complex(const IQP& iqp, int truncation, std::size_t max_basis = 200000);

struct ComplexReport {
  bool ok = true;
  int failing_degree = -1;
  std::string failing_composition;  // "m1*m2", "m2*m3" or "aug*m1"
  std::size_t failing_element = 0;  // index in the domain basis
};

ComplexReport check_complex(const std::vector<BimoduleComplexSlice>& slices);

/// Homology dimensions at R, V*, V and J⊗J (in that order) per degree.
struct ExactnessProfile {
  std::vector<std::array<std::size_t, 4>> homology;
  int checked_through = -1;  // N-2
  bool exact = true;         // all zeros through checked_through
};

ExactnessProfile exactness_profile(const std::vector<BimoduleComplexSlice>& slices);

}  // namespace iqp
