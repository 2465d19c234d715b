#include "iqp/random_iqp.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "iqp/error.hpp"

namespace iqp {

namespace {

void collect_cycles(const Quiver& q, int max_len, VertexIndex start, std::vector<ArrowIndex>& seq,
                    std::set<CyclicWord>& out) {
  VertexIndex at = seq.empty() ? start : q.arrow(seq.back()).target;
  if (!seq.empty() && at == start) {
    // seq is in traversal order; written order is the reverse
    std::vector<ArrowIndex> written(seq.rbegin(), seq.rend());
    out.insert(canonical_rotation(written));
  }
  if (static_cast<int>(seq.size()) == max_len) return;
  for (auto a : q.arrows_out(at)) {
    seq.push_back(a);
    collect_cycles(q, max_len, start, seq, out);
    seq.pop_back();
  }
}

std::size_t path_count(const Quiver& q, int n, std::size_t cap) {
  std::vector<std::size_t> ending(q.vertex_count(), 1);
  std::size_t total = q.vertex_count();
  for (int d = 1; d <= n && total <= cap; ++d) {
    std::vector<std::size_t> next(q.vertex_count(), 0);
    for (ArrowIndex a = 0; a < q.arrow_count(); ++a) {
      next[q.arrow(a).target] = std::min(cap + 1, next[q.arrow(a).target] + ending[q.arrow(a).source]);
    }
    ending = std::move(next);
    for (auto c : ending) total = std::min(cap + 1, total + c);
  }
  return total;
}

}  // namespace

RandomCase random_iqp(std::uint64_t seed, const RandomIQPOptions& opt) {
  std::mt19937_64 rng(seed);
  auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  auto chance = [&](double p) { return std::uniform_real_distribution<double>(0, 1)(rng) < p; };

  for (int attempt = 0; attempt < 1000; ++attempt) {
    const int n = uniform(2, opt.max_vertices);
    std::vector<bool> frozen_v(static_cast<std::size_t>(n));
    for (auto&& f : frozen_v) f = chance(0.35);
    std::vector<int> unfrozen;
    for (int i = 0; i < n; ++i)
      if (!frozen_v[static_cast<std::size_t>(i)]) unfrozen.push_back(i);
    if (unfrozen.empty()) continue;
    const int v = unfrozen[static_cast<std::size_t>(uniform(0, static_cast<int>(unfrozen.size()) - 1))];

    const int m = uniform(n, opt.max_arrows);
    std::vector<std::tuple<int, int, bool>> arrows;
    for (int k = 0; k < 4 * m && static_cast<int>(arrows.size()) < m; ++k) {
      int s = uniform(0, n - 1), t = uniform(0, n - 1);
      if (s == v && t == v) continue;
      if (s == v || t == v) {
        bool reverse_exists = std::any_of(arrows.begin(), arrows.end(), [&](const auto& e) {
          return std::get<0>(e) == t && std::get<1>(e) == s;
        });
        if (reverse_exists) continue;
      }
      if (s == t && chance(0.7)) continue;
      bool fr = frozen_v[static_cast<std::size_t>(s)] && frozen_v[static_cast<std::size_t>(t)] && chance(0.5);
      arrows.emplace_back(s, t, fr);
    }

    std::vector<VertexId> vs;
    std::set<VertexId> fv;
    for (int i = 0; i < n; ++i) {
      vs.push_back(std::to_string(i + 1));
      if (frozen_v[static_cast<std::size_t>(i)]) fv.insert(vs.back());
    }
    std::vector<ArrowSpec> specs;
    std::set<ArrowId> fa;
    for (std::size_t k = 0; k < arrows.size(); ++k) {
      auto [s, t, fr] = arrows[k];
      std::string id = "x" + std::to_string(k + 1);
      specs.push_back({id, std::to_string(s + 1), std::to_string(t + 1)});
      if (fr) fa.insert(id);
    }
    auto q = std::make_shared<const Quiver>(std::move(vs), std::move(specs));
    if (path_count(*q, opt.path_degree, opt.max_paths) > opt.max_paths) continue;
    IceQuiver iq(q, fv, fa);
    if (check_mutable(iq, std::to_string(v + 1)).kind != Mutability::UnfrozenMutable) continue;
    IQP bare(iq, Potential(q, opt.truncation));
    if (path_count(premutate(bare, std::to_string(v + 1)).quiver(), opt.path_degree, opt.max_paths) > opt.max_paths) {
      continue;
    }

    std::set<CyclicWord> cycles;
    std::vector<ArrowIndex> seq;
    for (VertexIndex s = 0; s < q->vertex_count(); ++s) collect_cycles(*q, opt.max_term_length, s, seq, cycles);
    std::vector<CyclicWord> usable;
    for (const auto& w : cycles) {
      if (static_cast<int>(w.size()) < opt.min_term_length) continue;
      if (std::all_of(w.begin(), w.end(), [&](ArrowIndex a) { return iq.is_frozen_arrow(a); })) continue;
      usable.push_back(w);
    }
    std::shuffle(usable.begin(), usable.end(), rng);
    Potential w(q, opt.truncation);
    int terms = std::min<int>(uniform(0, opt.max_terms), static_cast<int>(usable.size()));
    static const int numerators[] = {-3, -2, -1, 1, 1, 1, 2, 3};
    for (int k = 0; k < terms; ++k) {
      Rational c(numerators[uniform(0, 7)], chance(0.2) ? 2 : 1);
      c.canonicalize();
      w.add_cycle(usable[static_cast<std::size_t>(k)], c);
    }
    return RandomCase{IQP(std::move(iq), std::move(w)), std::to_string(v + 1)};
  }
  fail(ErrorKind::Internal, "random IQP generator made no valid sample");
}

}  // namespace iqp
