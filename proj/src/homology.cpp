#include "iqp/homology.hpp"

#include <map>
#include <unordered_map>

#include "iqp/error.hpp"

namespace iqp {

namespace {

class PJBuilder {
 public:
  PJBuilder(const IQP& iqp, int truncation, std::size_t max_basis)
      : iqp_(iqp),
        q_(iqp.quiver()),
        n_(truncation),
        max_basis_(max_basis),
        w_(with_truncation(iqp.potential, truncation)),
        jac_(iqp.quiver_ptr(), jacobian_relations(IQP(iqp.ice, w_)), truncation),
        index_(jac_.index()) {
    for (const auto& [word, c] : w_.terms()) {
      bool touches_unfrozen = false;
      for (auto a : word) touches_unfrozen |= !iqp.ice.is_frozen_arrow(a);
      if (touches_unfrozen) {
        lowest_ = static_cast<int>(word.size());
        break;
      }
    }
    for (auto a : iqp.ice.unfrozen_arrows()) {
      PathSeries full = cyclic_derivative(w_, a);
      PathSeries part(iqp.quiver_ptr(), truncation);
      for (const auto& [p, c] : full.terms()) {
        if (static_cast<int>(p.length()) == lowest_ - 1) part.add_term(p, c);
      }
      rho_.emplace(a, std::move(part));
    }
    for (int d = 0; d <= n_; ++d) {
      for (Column c : jac_.basis(d)) {
        const Path& p = index_.path(c);
        by_target_[{d, p.target(q_)}].push_back(c);
        by_source_[{d, p.source(q_)}].push_back(c);
      }
    }
  }

  PJComplex build() {
    PJComplex out;
    out.truncation = n_;
    out.lowest_degree = lowest_;
    for (int d = 0; d <= n_; ++d) out.slices.push_back(slice(d));
    return out;
  }

 private:
  // Normal form of path(x)*path(y) in the associated graded Jacobian algebra.
  const SparseRow& nf_product(Column x, Column y) {
    auto key = (static_cast<std::uint64_t>(x) << 32) | y;
    auto it = nf_cache_.find(key);
    if (it != nf_cache_.end()) return it->second;
    SparseRow row;
    auto c = index_.multiply(x, y);
    if (c >= 0) row = jac_.graded_normal_form({{static_cast<Column>(c), Rational(1)}});
    return nf_cache_.emplace(key, std::move(row)).first->second;
  }

  Column arrow_column(ArrowIndex a) const { return index_.index(Path{q_.arrow(a).source, {a}}); }

  Column path_column(std::span<const ArrowIndex> arrows, VertexIndex lazy_vertex) const {
    if (arrows.empty()) return lazy_vertex;
    return index_.index(Path{q_.arrow(arrows.back()).source, std::vector<ArrowIndex>(arrows.begin(), arrows.end())});
  }

  void add_elems(std::vector<TensorElem>& out, int total, VertexIndex left_source, std::uint32_t middle,
                 VertexIndex right_target) {
    for (int i = 0; i <= total; ++i) {
      auto lx = by_source_.find({i, left_source});
      auto ry = by_target_.find({total - i, right_target});
      if (lx == by_source_.end() || ry == by_target_.end()) continue;
      for (Column x : lx->second) {
        for (Column y : ry->second) out.push_back({x, middle, y});
      }
      if (out.size() > max_basis_) {
        fail(ErrorKind::Limit, "complex slice basis exceeds " + std::to_string(max_basis_) + " elements");
      }
    }
  }

  BimoduleComplexSlice slice(int d) {
    BimoduleComplexSlice s;
    s.degree = d;
    auto& jj = s.basis[0];
    auto& v = s.basis[1];
    auto& vd = s.basis[2];
    auto& r = s.basis[3];
    for (VertexIndex i = 0; i < q_.vertex_count(); ++i) add_elems(jj, d, i, 0, i);
    if (d >= 1) {
      for (ArrowIndex a = 0; a < q_.arrow_count(); ++a) {
        add_elems(v, d - 1, q_.arrow(a).target, a, q_.arrow(a).source);
      }
    }
    if (d >= lowest_ - 1) {
      for (auto a : iqp_.ice.unfrozen_arrows()) {
        add_elems(vd, d - (lowest_ - 1), q_.arrow(a).source, a, q_.arrow(a).target);
      }
    }
    if (d >= lowest_) {
      for (auto i : iqp_.ice.unfrozen_vertices()) add_elems(r, d - lowest_, i, i, i);
    }
    s.jacobian_basis = jac_.basis(d);

    std::map<TensorElem, Column> pos_jj, pos_v, pos_vd;
    for (Column k = 0; k < jj.size(); ++k) pos_jj[jj[k]] = k;
    for (Column k = 0; k < v.size(); ++k) pos_v[v[k]] = k;
    for (Column k = 0; k < vd.size(); ++k) pos_vd[vd[k]] = k;
    std::unordered_map<Column, Column> pos_j;
    for (Column k = 0; k < s.jacobian_basis.size(); ++k) pos_j[s.jacobian_basis[k]] = k;

    auto at = [](const std::map<TensorElem, Column>& pos, const TensorElem& e) {
      auto it = pos.find(e);
      if (it == pos.end()) fail(ErrorKind::Internal, "tensor element outside the slice basis");
      return it->second;
    };

    for (const auto& e : jj) {
      SparseRow row;
      for (const auto& [c, val] : nf_product(e.left, e.right)) row.emplace_back(pos_j.at(c), val);
      normalize_row(row);
      s.augmentation.push_back(std::move(row));
    }

    for (const auto& e : v) {
      SparseRow row;
      Column a = arrow_column(e.middle);
      for (const auto& [c, val] : nf_product(e.left, a)) row.emplace_back(at(pos_jj, {c, 0, e.right}), val);
      for (const auto& [c, val] : nf_product(a, e.right)) row.emplace_back(at(pos_jj, {e.left, 0, c}), -val);
      normalize_row(row);
      s.m1.push_back(std::move(row));
    }

    for (const auto& e : vd) {
      SparseRow row;
      const PathSeries& rho = rho_.at(e.middle);
      for (const auto& [p, coeff] : rho.terms()) {
        std::span<const ArrowIndex> w(p.arrows);
        for (std::size_t k = 0; k < w.size(); ++k) {
          Column left = path_column(w.subspan(0, k), q_.arrow(w[k]).target);
          Column right = path_column(w.subspan(k + 1), q_.arrow(w[k]).source);
          const SparseRow xl = nf_product(e.left, left);
          const SparseRow ry = nf_product(right, e.right);
          for (const auto& [cx, vx] : xl) {
            for (const auto& [cy, vy] : ry) row.emplace_back(at(pos_v, {cx, w[k], cy}), coeff * vx * vy);
          }
        }
      }
      normalize_row(row);
      s.m2.push_back(std::move(row));
    }

    for (const auto& e : r) {
      SparseRow row;
      VertexIndex i = e.middle;
      for (auto a : iqp_.ice.unfrozen_arrows()) {
        const Arrow& arr = q_.arrow(a);
        Column ac = arrow_column(a);
        if (arr.target == i) {
          for (const auto& [c, val] : nf_product(e.left, ac)) row.emplace_back(at(pos_vd, {c, a, e.right}), val);
        }
        if (arr.source == i) {
          for (const auto& [c, val] : nf_product(ac, e.right)) row.emplace_back(at(pos_vd, {e.left, a, c}), -val);
        }
      }
      normalize_row(row);
      s.m3.push_back(std::move(row));
    }
    return s;
  }

  const IQP& iqp_;
  const Quiver& q_;
  int n_;
  std::size_t max_basis_;
  Potential w_;
  TruncatedQuotient jac_;
  const PathIndex& index_;
  int lowest_ = 3;
  std::map<ArrowIndex, PathSeries> rho_;
  std::map<std::pair<int, VertexIndex>, std::vector<Column>> by_target_, by_source_;
  std::unordered_map<std::uint64_t, SparseRow> nf_cache_;
};

// Image of a combination of domain elements under a map given by its rows.
SparseRow compose(const SparseRow& combo, const std::vector<SparseRow>& map) {
  SparseRow out;
  for (const auto& [j, v] : combo) {
    for (const auto& [k, w] : map.at(j)) out.emplace_back(k, v * w);
  }
  normalize_row(out);
  return out;
}

}  // namespace

PJComplex build_pj_complex(const IQP& iqp, int truncation, std::size_t max_basis) {
  check_truncation(truncation);
  return PJBuilder(iqp, truncation, max_basis).build();
}

ComplexReport check_complex(const std::vector<BimoduleComplexSlice>& slices) {
  ComplexReport report;
  auto check = [&](const BimoduleComplexSlice& s, const std::vector<SparseRow>& first,
                   const std::vector<SparseRow>& second, const char* name) {
    for (std::size_t k = 0; k < first.size(); ++k) {
      if (!compose(first[k], second).empty()) {
        report.ok = false;
        report.failing_degree = s.degree;
        report.failing_composition = name;
        report.failing_element = k;
        return false;
      }
    }
    return true;
  };
  for (const auto& s : slices) {
    if (!check(s, s.m3, s.m2, "m2*m3")) return report;
    if (!check(s, s.m2, s.m1, "m1*m2")) return report;
    if (!check(s, s.m1, s.augmentation, "aug*m1")) return report;
  }
  return report;
}

ExactnessProfile exactness_profile(const std::vector<BimoduleComplexSlice>& slices) {
  ExactnessProfile out;
  int top = slices.empty() ? -1 : slices.back().degree;
  out.checked_through = top - 2;
  for (const auto& s : slices) {
    std::size_t r3 = sparse_rank(s.m3, s.basis[2].size());
    std::size_t r2 = sparse_rank(s.m2, s.basis[1].size());
    std::size_t r1 = sparse_rank(s.m1, s.basis[0].size());
    std::size_t ra = sparse_rank(s.augmentation, s.jacobian_basis.size());
    std::array<std::size_t, 4> h{
        s.basis[3].size() - r3,
        s.basis[2].size() - r2 - r3,
        s.basis[1].size() - r1 - r2,
        s.basis[0].size() - ra - r1,
    };
    out.homology.push_back(h);
    if (s.degree <= out.checked_through) {
      for (auto x : h) {
        if (x != 0) out.exact = false;
      }
    }
  }
  return out;
}

}  // namespace iqp
