#pragma once

#include <string_view>
#include <utility>
#include <vector>

#include "iqp/quiver.hpp"
#include "iqp/series.hpp"

namespace iqp {

/// Ice quiver with potential. The potential lives on the same quiver.
struct IQP {
  IceQuiver ice;
  Potential potential;

  IQP() = default;
  IQP(IceQuiver iq, Potential w);  // throws Malformed if quivers differ or iq is invalid

  const Quiver& quiver() const { return ice.quiver(); }
  const QuiverPtr& quiver_ptr() const { return ice.quiver_ptr(); }
  int truncation() const { return potential.truncation(); }
};

/// Terms made only of frozen arrows go to the second component.
std::pair<Potential, Potential> split_irredundant(const Potential& w, const IceQuiver& iq);

/// Cyclic derivatives at the unfrozen arrows, in arrow order.
std::vector<PathSeries> jacobian_relations(const IQP& iqp);

/// Same potential read at a different truncation degree.
Potential with_truncation(const Potential& w, int truncation);
IQP with_truncation(const IQP& iqp, int truncation);

/// Throws Error(Unsupported) with the reason when v is not mutable.
void require_mutable(const IceQuiver& iq, VertexIndex v);

IceQuiver combinatorial_mutate(const IceQuiver& iq, std::string_view v);
IQP premutate(const IQP& iqp, std::string_view v);

struct ReductionTrace {
  std::vector<std::pair<ArrowId, ArrowId>> removed_2cycles;
  std::vector<std::pair<ArrowId, ArrowId>> frozen_replacements;  // (deleted frozen, newly frozen)
  std::vector<ArrowSubstitution> substitutions;                  // over the input quiver, in order

  bool empty() const { return removed_2cycles.empty() && frozen_replacements.empty() && substitutions.empty(); }
};

struct Reduction {
  IQP iqp;
  ReductionTrace trace;
};

Reduction reduce(const IQP& iqp);

struct Mutation {
  IQP iqp;
  MutabilityStatus status;
  ReductionTrace trace;
};

Mutation mutate_traced(const IQP& iqp, std::string_view v);
IQP mutate(const IQP& iqp, std::string_view v);

/// Carries a potential on `from` to `to` by arrow id. Terms using arrows
/// missing from `to` are dropped.
Potential transport(const Potential& w, const QuiverPtr& to);

}  // namespace iqp
