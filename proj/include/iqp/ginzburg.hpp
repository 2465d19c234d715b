#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "iqp/mutation.hpp"
#include "iqp/quiver.hpp"
#include "iqp/series.hpp"

namespace iqp {

/// Graded quiver with a differential on generators, extended by the signed
/// Leibniz rule d(uv) = d(u)v + (-1)^{|u|} u d(v).
class DgQuiverAlgebra {
 public:
  DgQuiverAlgebra() = default;
  DgQuiverAlgebra(GradedQuiver graded, int truncation);

  const GradedQuiver& graded() const { return graded_; }
  const Quiver& quiver() const { return *graded_.quiver; }
  const QuiverPtr& quiver_ptr() const { return graded_.quiver; }
  int truncation() const { return truncation_; }
  int degree(ArrowIndex a) const { return graded_.degree.at(a); }
  int degree(const Path& p) const;

  /// Throws Error(Malformed) if the image breaks endpoints or grading.
  void set_differential(ArrowIndex a, PathSeries image);
  /// Replaces without validation; used only to build negative controls.
  void set_differential_unchecked(ArrowIndex a, PathSeries image) { d_.insert_or_assign(a, std::move(image)); }
  PathSeries differential(ArrowIndex a) const;
  const std::map<ArrowIndex, PathSeries>& differentials() const { return d_; }

  PathSeries zero() const { return PathSeries(graded_.quiver, truncation_); }

 private:
  GradedQuiver graded_;
  int truncation_ = kDefaultTruncation;
  std::map<ArrowIndex, PathSeries> d_;
};

PathSeries apply_d(const DgQuiverAlgebra& dga, const PathSeries& x);

struct DSquaredReport {
  bool ok = true;
  std::size_t generators_checked = 0;
  std::optional<ArrowId> failing_generator;
  std::string residue;  // d(d(x)) of the first failure
};

DSquaredReport check_d_squared(const DgQuiverAlgebra& dga);

/// Relative Ginzburg algebra with the correspondence to the base quiver.
struct RelativeGinzburg {
  DgQuiverAlgebra dga;
  std::vector<ArrowIndex> arrow;                       // base arrow -> generator a
  std::vector<std::optional<ArrowIndex>> dual;         // base arrow -> a^v (unfrozen only)
  std::vector<std::optional<ArrowIndex>> loop;         // base vertex -> t_i (unfrozen only)
  std::vector<std::optional<ArrowIndex>> base_arrow;   // generator -> base arrow, for degree-0 generators
};

RelativeGinzburg build_relative_ginzburg(const IQP& iqp, int truncation);

/// Derived preprojective algebra of the frozen subquiver.
struct DerivedPreprojective {
  DgQuiverAlgebra dga;
  IceQuiver frozen;                              // F as a standalone quiver
  std::vector<ArrowIndex> arrow;                 // F arrow -> generator a
  std::vector<ArrowIndex> dual;                  // F arrow -> generator a~
  std::vector<ArrowIndex> loop;                  // F vertex -> r_i
};

DerivedPreprojective build_pi2(const IceQuiver& iq, int truncation);

struct DgMorphism {
  const DgQuiverAlgebra* source = nullptr;
  const DgQuiverAlgebra* target = nullptr;
  std::map<VertexId, VertexId> vertex_map;
  std::map<ArrowIndex, PathSeries> assignment;  // source generator -> series in target

  /// Algebra map on paths; vertices follow vertex_map.
  PathSeries apply(const PathSeries& x) const;
};

struct ChainMapReport {
  bool ok = true;
  std::size_t generators_checked = 0;
  std::optional<ArrowId> failing_generator;
  std::string residue;  // d(f(x)) - f(d(x)) of the first failure
};

ChainMapReport check_chain_map(const DgMorphism& f);

struct GinzburgFunctor {
  RelativeGinzburg gamma;
  DerivedPreprojective pi2;
  DgMorphism functor;  // points into gamma.dga and pi2.dga; do not copy the struct
  ChainMapReport report;
};

/// Builds the functor and verifies the chain-map identity. Throws
/// Error(Internal) when the identity fails.
std::unique_ptr<GinzburgFunctor> build_ginzburg_functor(const IQP& iqp, int truncation);

struct H0Report {
  std::vector<std::size_t> dg_dims;        // degree-0 part modulo d(degree -1 part)
  std::vector<std::size_t> jacobian_dims;  // truncated Jacobian quotient
  std::size_t compared_through = 0;
  bool agree = true;
};

/// Computes H^0 of the Ginzburg algebra from an explicit enumeration of
/// degree -1 generator paths and compares with the Jacobian quotient
/// through degree N-2.
H0Report h0_comparison(const IQP& iqp, int truncation);

struct BoundaryDims {
  std::vector<std::size_t> dims;
  std::size_t total = 0;
  bool stabilized = false;
};

BoundaryDims boundary_h0_dims(const IQP& iqp, int truncation);

/// Human-readable presentation: one generator per line, then differentials.
std::string presentation_text(const DgQuiverAlgebra& dga);

}  // namespace iqp
