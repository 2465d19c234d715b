#include "iqp/mutation.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <tuple>

#include "iqp/error.hpp"

namespace iqp {

IQP::IQP(IceQuiver iq, Potential w) : ice(std::move(iq)), potential(std::move(w)) {
  if (!same_quiver(ice.quiver_ptr(), potential.quiver_ptr())) {
    fail(ErrorKind::Malformed, "potential is not defined on the ice quiver");
  }
  require_valid(ice);
}

std::pair<Potential, Potential> split_irredundant(const Potential& w, const IceQuiver& iq) {
  if (!same_quiver(iq.quiver_ptr(), w.quiver_ptr())) fail(ErrorKind::Malformed, "potential over another quiver");
  Potential irr(w.quiver_ptr(), w.truncation());
  Potential frozen(w.quiver_ptr(), w.truncation());
  for (const auto& [word, c] : w.terms()) {
    bool all_frozen = std::all_of(word.begin(), word.end(), [&](ArrowIndex a) { return iq.is_frozen_arrow(a); });
    (all_frozen ? frozen : irr).add_cycle(word, c);
  }
  return {irr, frozen};
}

std::vector<PathSeries> jacobian_relations(const IQP& iqp) {
  std::vector<PathSeries> out;
  for (auto a : iqp.ice.unfrozen_arrows()) out.push_back(cyclic_derivative(iqp.potential, a));
  return out;
}

Potential with_truncation(const Potential& w, int truncation) {
  Potential out(w.quiver_ptr(), truncation);
  for (const auto& [word, c] : w.terms()) out.add_cycle(word, c);
  return out;
}

IQP with_truncation(const IQP& iqp, int truncation) {
  return IQP(iqp.ice, with_truncation(iqp.potential, truncation));
}

void require_mutable(const IceQuiver& iq, VertexIndex v) {
  auto status = check_mutable(iq, v);
  if (!status.mutable_here()) {
    fail(ErrorKind::Unsupported, "vertex '" + iq.quiver().vertex_id(v) + "' is not mutable: " + status.reason);
  }
}

Potential transport(const Potential& w, const QuiverPtr& to) {
  const Quiver& from = w.quiver();
  Potential out(to, w.truncation());
  for (const auto& [word, c] : w.terms()) {
    std::vector<ArrowIndex> mapped;
    bool ok = true;
    for (auto a : word) {
      auto b = to->find_arrow(from.arrow(a).id);
      if (!b) {
        ok = false;
        break;
      }
      mapped.push_back(*b);
    }
    if (ok) out.add_cycle(mapped, c);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Steps (1) and (2): composites and reversal.

namespace {

struct Premutated {
  IceQuiver ice;
  // original arrow index -> new arrow index (reversed copy for arrows at v)
  std::vector<ArrowIndex> image;
  // (beta out of v, alpha into v) -> composite arrow index in the new quiver
  std::map<std::pair<ArrowIndex, ArrowIndex>, ArrowIndex> composite;
  std::vector<std::tuple<ArrowIndex, ArrowIndex, ArrowIndex>> added_terms;  // ([ba], a*, b*)
};

std::string fresh_id(const std::string& base, std::set<std::string>& used) {
  std::string id = base;
  for (int n = 2; used.count(id); ++n) id = base + "_" + std::to_string(n);
  used.insert(id);
  return id;
}

Premutated premutate_quiver(const IceQuiver& iq, VertexIndex v) {
  require_mutable(iq, v);
  const Quiver& q = iq.quiver();
  std::set<std::string> used;
  for (const auto& a : q.arrows()) used.insert(a.id);

  struct Pending {
    ArrowSpec spec;
    bool frozen;
  };
  std::vector<Pending> specs;
  std::vector<std::string> new_id(q.arrow_count());
  for (ArrowIndex a = 0; a < q.arrow_count(); ++a) {
    const Arrow& arr = q.arrow(a);
    if (arr.source != v && arr.target != v) {
      new_id[a] = arr.id;
      specs.push_back({{arr.id, q.vertex_id(arr.source), q.vertex_id(arr.target)}, iq.is_frozen_arrow(a)});
    }
  }
  for (ArrowIndex a = 0; a < q.arrow_count(); ++a) {
    const Arrow& arr = q.arrow(a);
    if (arr.source == v || arr.target == v) {
      new_id[a] = fresh_id(arr.id + "*", used);
      specs.push_back({{new_id[a], q.vertex_id(arr.target), q.vertex_id(arr.source)}, iq.is_frozen_arrow(a)});
    }
  }
  std::map<std::pair<ArrowIndex, ArrowIndex>, std::string> composite_id;
  for (auto alpha : q.arrows_in(v)) {
    for (auto beta : q.arrows_out(v)) {
      std::string id = fresh_id("[" + q.arrow(beta).id + q.arrow(alpha).id + "]", used);
      composite_id[{beta, alpha}] = id;
      specs.push_back({{id, q.vertex_id(q.arrow(alpha).source), q.vertex_id(q.arrow(beta).target)}, false});
    }
  }

  std::vector<ArrowSpec> arrow_specs;
  std::set<ArrowId> frozen_arrows;
  for (auto& p : specs) {
    if (p.frozen) frozen_arrows.insert(p.spec.id);
    arrow_specs.push_back(p.spec);
  }
  std::vector<VertexId> vertices(q.vertices().begin(), q.vertices().end());
  std::set<VertexId> frozen_vertices;
  for (auto f : iq.frozen_vertices()) frozen_vertices.insert(q.vertex_id(f));
  auto nq = std::make_shared<const Quiver>(std::move(vertices), std::move(arrow_specs));

  Premutated out{IceQuiver(nq, frozen_vertices, frozen_arrows), {}, {}, {}};
  out.image.resize(q.arrow_count());
  for (ArrowIndex a = 0; a < q.arrow_count(); ++a) out.image[a] = nq->arrow_index(new_id[a]);
  for (const auto& [key, id] : composite_id) {
    ArrowIndex comp = nq->arrow_index(id);
    out.composite[key] = comp;
    auto [beta, alpha] = key;
    out.added_terms.emplace_back(comp, out.image[alpha], out.image[beta]);
  }
  return out;
}

// Rotation of a canonical word whose start vertex differs from v, lex-smallest.
std::vector<ArrowIndex> rotate_away(const Quiver& q, const CyclicWord& word, VertexIndex v) {
  const std::size_t n = word.size();
  std::optional<std::vector<ArrowIndex>> best;
  std::vector<ArrowIndex> rot(n);
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t k = 0; k < n; ++k) rot[k] = word[(s + k) % n];
    if (q.arrow(rot.back()).source == v) continue;
    if (!best || rot < *best) best = rot;
  }
  if (!best) fail(ErrorKind::Unsupported, "potential term " + format_word(q, word) + " cannot be rotated away from the mutation vertex");
  return *best;
}

}  // namespace

IceQuiver combinatorial_mutate(const IceQuiver& iq, std::string_view vid) {
  const Quiver& q0 = iq.quiver();
  VertexIndex v = q0.vertex_index(vid);
  Premutated pre = premutate_quiver(iq, v);
  const IceQuiver& mid = pre.ice;
  const Quiver& q = mid.quiver();

  std::vector<std::pair<ArrowIndex, ArrowIndex>> cycles;
  for (ArrowIndex a = 0; a < q.arrow_count(); ++a) {
    const Arrow& x = q.arrow(a);
    if (x.source == x.target) continue;
    for (auto b : q.arrows_out(x.target)) {
      if (b > a && q.arrow(b).target == x.source) cycles.emplace_back(a, b);
    }
  }
  std::sort(cycles.begin(), cycles.end());

  std::vector<bool> deleted(q.arrow_count(), false);
  std::vector<bool> frozen = mid.frozen_arrow_mask();
  for (auto [a, b] : cycles) {
    if (deleted[a] || deleted[b] || frozen[a] || frozen[b]) continue;
    deleted[a] = deleted[b] = true;
  }
  for (auto [a, b] : cycles) {
    if (deleted[a] || deleted[b] || frozen[a] == frozen[b]) continue;
    // one frozen, one unfrozen: keep the unfrozen arrow, now frozen
    ArrowIndex keep = frozen[a] ? b : a;
    ArrowIndex drop = frozen[a] ? a : b;
    deleted[drop] = true;
    frozen[keep] = true;
  }

  std::vector<ArrowSpec> specs;
  std::set<ArrowId> frozen_ids;
  for (ArrowIndex a = 0; a < q.arrow_count(); ++a) {
    if (deleted[a]) continue;
    const Arrow& arr = q.arrow(a);
    specs.push_back({arr.id, q.vertex_id(arr.source), q.vertex_id(arr.target)});
    if (frozen[a]) frozen_ids.insert(arr.id);
  }
  std::set<VertexId> frozen_vertices;
  for (auto f : mid.frozen_vertices()) frozen_vertices.insert(q.vertex_id(f));
  auto nq = std::make_shared<const Quiver>(std::vector<VertexId>(q.vertices().begin(), q.vertices().end()),
                                           std::move(specs));
  return IceQuiver(nq, frozen_vertices, frozen_ids);
}

IQP premutate(const IQP& iqp, std::string_view vid) {
  const Quiver& q = iqp.quiver();
  VertexIndex v = q.vertex_index(vid);
  Premutated pre = premutate_quiver(iqp.ice, v);
  const QuiverPtr& nq = pre.ice.quiver_ptr();

  Potential w(nq, iqp.truncation());
  for (const auto& [word, c] : iqp.potential.terms()) {
    bool meets_v = std::any_of(word.begin(), word.end(),
                               [&](ArrowIndex a) { return q.arrow(a).source == v || q.arrow(a).target == v; });
    std::vector<ArrowIndex> out;
    if (!meets_v) {
      for (auto a : word) out.push_back(pre.image[a]);
    } else {
      auto rot = rotate_away(q, word, v);
      for (std::size_t k = 0; k < rot.size(); ++k) {
        if (q.arrow(rot[k]).source == v) {
          // rot[k] leaves v, rot[k+1] enters it
          out.push_back(pre.composite.at({rot[k], rot[k + 1]}));
          ++k;
        } else {
          out.push_back(pre.image[rot[k]]);
        }
      }
    }
    w.add_cycle(out, c);
  }
  for (auto [comp, astar, bstar] : pre.added_terms) {
    std::vector<ArrowIndex> word{comp, astar, bstar};
    w.add_cycle(word, 1);
  }
  return IQP(pre.ice, std::move(w));
}

// ---------------------------------------------------------------------------
// Reduction

namespace {

class Reducer {
 public:
  explicit Reducer(const IQP& input)
      : iq_(input.ice), q_(input.quiver()), qp_(input.quiver_ptr()), n_(input.truncation()), w_(input.potential) {}

  Reduction run() {
    split_quadratic();
    eliminate();
    return finish();
  }

 private:
  bool frozen(ArrowIndex a) const { return iq_.is_frozen_arrow(a); }

  bool has_unfrozen(const CyclicWord& word) const {
    return std::any_of(word.begin(), word.end(), [&](ArrowIndex a) { return !frozen(a); });
  }

  void apply(const ArrowSubstitution& phi) {
    if (phi.assignment().empty()) return;
    w_ = phi.apply(w_);
    trace_.substitutions.push_back(phi);
  }

  PathSeries arrow(ArrowIndex a) const { return PathSeries::arrow(qp_, n_, a); }

  // Quadratic coefficient matrix entry for the 2-cycle through r and c.
  Rational entry(ArrowIndex r, ArrowIndex c) const {
    std::vector<ArrowIndex> word{r, c};
    return w_.coefficient(word);
  }

  // Rows are arrows from the smaller to the larger vertex, columns the reverse.
  std::vector<std::tuple<ArrowIndex, ArrowIndex>> quadratic_entries() const {
    std::vector<std::tuple<ArrowIndex, ArrowIndex>> out;
    for (const auto& [word, c] : w_.terms()) {
      if (word.size() > 2) break;
      if (!has_unfrozen(word)) continue;
      ArrowIndex x = word[0], y = word[1];
      if (q_.arrow(x).source > q_.arrow(x).target) std::swap(x, y);
      if (used_.count(x) || used_.count(y)) continue;
      out.emplace_back(x, y);
    }
    return out;
  }

  void split_quadratic() {
    for (;;) {
      auto entries = quadratic_entries();
      if (entries.empty()) return;
      auto key = [&](const std::tuple<ArrowIndex, ArrowIndex>& e) {
        auto [r, c] = e;
        int state = (frozen(r) || frozen(c)) ? 1 : 0;
        return std::make_tuple(state, std::min(q_.arrow(r).id, q_.arrow(c).id), std::max(q_.arrow(r).id, q_.arrow(c).id));
      };
      auto best = *std::min_element(entries.begin(), entries.end(),
                                    [&](const auto& x, const auto& y) { return key(x) < key(y); });
      auto [r, c] = best;
      const VertexIndex u = q_.arrow(r).source, t = q_.arrow(r).target;

      Rational kappa = entry(r, c);
      ArrowSubstitution row_clear(qp_, n_);
      PathSeries cimg = arrow(c);
      for (auto c2 : q_.arrows_out(t)) {
        if (c2 == c || q_.arrow(c2).target != u || used_.count(c2)) continue;
        Rational m = entry(r, c2);
        if (m == 0) continue;
        cimg -= (m / kappa) * arrow(c2);
      }
      if (cimg != arrow(c)) row_clear.assign(c, cimg);
      apply(row_clear);

      kappa = entry(r, c);
      ArrowSubstitution col_clear(qp_, n_);
      PathSeries rimg = arrow(r);
      for (auto r2 : q_.arrows_out(u)) {
        if (r2 == r || q_.arrow(r2).target != t || used_.count(r2)) continue;
        Rational m = entry(r2, c);
        if (m == 0) continue;
        rimg -= (m / kappa) * arrow(r2);
      }
      if (rimg != arrow(r)) col_clear.assign(r, rimg);
      apply(col_clear);

      kappa = entry(r, c);
      if (kappa != 1) {
        ArrowIndex s = frozen(r) ? c : r;
        ArrowSubstitution scale(qp_, n_);
        scale.assign(s, (1 / kappa) * arrow(s));
        apply(scale);
      }
      used_.insert(r);
      used_.insert(c);
      if (!frozen(r) && !frozen(c)) {
        pairs_.push_back({r, c});
      } else {
        ArrowIndex keep = frozen(r) ? c : r;
        ArrowIndex drop = frozen(r) ? r : c;
        pairs_.push_back({keep, drop});
      }
      partner_[r] = c;
      partner_[c] = r;
    }
  }

  // Arrow of `word` whose occurrence is removed by substituting its partner,
  // or nullopt when the term is already in normal form.
  std::optional<ArrowIndex> pivot_arrow(const CyclicWord& word) const {
    if (word.size() == 2 && partner_.count(word[0]) && partner_.at(word[0]) == word[1]) return std::nullopt;
    if (!has_unfrozen(word)) return std::nullopt;
    std::optional<ArrowIndex> best;
    for (auto a : word) {
      auto it = partner_.find(a);
      if (it == partner_.end()) continue;
      // the partner gets substituted, so it must be unfrozen
      if (!frozen(it->second) && (!best || a < *best)) best = a;
    }
    return best;
  }

  void eliminate() {
    if (partner_.empty()) return;
    for (int d = 3; d <= n_; ++d) {
      std::map<ArrowIndex, PathSeries> images;
      for (const auto& [word, c] : w_.terms()) {
        if (word.size() != static_cast<std::size_t>(d)) continue;
        auto x = pivot_arrow(word);
        if (!x) continue;
        ArrowIndex y = partner_.at(*x);
        std::size_t k = static_cast<std::size_t>(std::find(word.begin(), word.end(), *x) - word.begin());
        std::vector<ArrowIndex> u;
        u.insert(u.end(), word.begin() + static_cast<std::ptrdiff_t>(k) + 1, word.end());
        u.insert(u.end(), word.begin(), word.begin() + static_cast<std::ptrdiff_t>(k));
        auto it = images.find(y);
        if (it == images.end()) it = images.emplace(y, arrow(y)).first;
        it->second.add_term(Path{q_.arrow(u.back()).source, u}, -c);
      }
      if (images.empty()) continue;
      ArrowSubstitution phi(qp_, n_);
      for (auto& [y, img] : images) phi.assign(y, std::move(img));
      apply(phi);
      for (const auto& [word, c] : w_.terms()) {
        if (word.size() == static_cast<std::size_t>(d) && pivot_arrow(word)) {
          fail(ErrorKind::Limit, "reduction did not converge at degree " + std::to_string(d));
        }
      }
    }
  }

  Reduction finish() {
    std::vector<bool> deleted(q_.arrow_count(), false);
    std::vector<bool> frozen_mask = iq_.frozen_arrow_mask();
    for (auto [a, b] : pairs_) {
      if (!frozen(a) && !frozen(b)) {
        deleted[a] = deleted[b] = true;
        trace_.removed_2cycles.emplace_back(std::min(q_.arrow(a).id, q_.arrow(b).id),
                                            std::max(q_.arrow(a).id, q_.arrow(b).id));
      } else {
        // a unfrozen kept, b frozen deleted
        deleted[b] = true;
        frozen_mask[a] = true;
        trace_.frozen_replacements.emplace_back(q_.arrow(b).id, q_.arrow(a).id);
      }
    }
    std::vector<ArrowSpec> specs;
    std::set<ArrowId> frozen_ids;
    for (ArrowIndex a = 0; a < q_.arrow_count(); ++a) {
      if (deleted[a]) continue;
      const Arrow& arr = q_.arrow(a);
      specs.push_back({arr.id, q_.vertex_id(arr.source), q_.vertex_id(arr.target)});
      if (frozen_mask[a]) frozen_ids.insert(arr.id);
    }
    std::set<VertexId> frozen_vertices;
    for (auto f : iq_.frozen_vertices()) frozen_vertices.insert(q_.vertex_id(f));
    auto nq = std::make_shared<const Quiver>(std::vector<VertexId>(q_.vertices().begin(), q_.vertices().end()),
                                             std::move(specs));
    IceQuiver out_iq(nq, frozen_vertices, frozen_ids);
    Potential rest(qp_, n_);
    for (const auto& [word, c] : w_.terms()) {
      if (word.size() == 2 && partner_.count(word[0]) && partner_.at(word[0]) == word[1]) continue;
      rest.add_cycle(word, c);
    }
    return Reduction{IQP(out_iq, transport(rest, nq)), std::move(trace_)};
  }

  const IceQuiver& iq_;
  const Quiver& q_;
  QuiverPtr qp_;
  int n_;
  Potential w_;
  ReductionTrace trace_;
  std::set<ArrowIndex> used_;
  std::vector<std::pair<ArrowIndex, ArrowIndex>> pairs_;  // unfrozen pairs, or (unfrozen, frozen)
  std::map<ArrowIndex, ArrowIndex> partner_;
};

}  // namespace

Reduction reduce(const IQP& iqp) { return Reducer(iqp).run(); }

Mutation mutate_traced(const IQP& iqp, std::string_view v) {
  auto status = check_mutable(iqp.ice, v);
  IQP pre = premutate(iqp, v);
  Reduction red = reduce(pre);
  return Mutation{std::move(red.iqp), status, std::move(red.trace)};
}

IQP mutate(const IQP& iqp, std::string_view v) { return mutate_traced(iqp, v).iqp; }

}  // namespace iqp
