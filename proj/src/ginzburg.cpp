#include "iqp/ginzburg.hpp"

#include <numeric>
#include <set>
#include <sstream>

#include "iqp/error.hpp"
#include "iqp/linalg.hpp"
#include "iqp/quotient.hpp"

namespace iqp {

DgQuiverAlgebra::DgQuiverAlgebra(GradedQuiver graded, int truncation)
    : graded_(std::move(graded)), truncation_(truncation) {}

int DgQuiverAlgebra::degree(const Path& p) const {
  int d = 0;
  for (auto a : p.arrows) d += graded_.degree[a];
  return d;
}

void DgQuiverAlgebra::set_differential(ArrowIndex a, PathSeries image) {
  const Quiver& q = quiver();
  const Arrow& arr = q.arrow(a);
  if (!same_quiver(graded_.quiver, image.quiver_ptr())) fail(ErrorKind::Malformed, "differential over another quiver");
  for (const auto& [p, c] : image.terms()) {
    if (p.source(q) != arr.source || p.target(q) != arr.target) {
      fail(ErrorKind::Malformed, "d(" + arr.id + ") has a term " + format_path(q, p) + " with wrong endpoints");
    }
    if (degree(p) != degree(a) + 1) {
      fail(ErrorKind::Malformed, "d(" + arr.id + ") has a term " + format_path(q, p) + " of wrong degree");
    }
  }
  if (image.is_zero()) {
    d_.erase(a);
  } else {
    d_.insert_or_assign(a, std::move(image));
  }
}

PathSeries DgQuiverAlgebra::differential(ArrowIndex a) const {
  auto it = d_.find(a);
  return it == d_.end() ? zero() : it->second;
}

namespace {

Path concat(const Quiver& q, std::span<const ArrowIndex> prefix, const Path& middle, std::span<const ArrowIndex> suffix) {
  Path out;
  out.arrows.reserve(prefix.size() + middle.length() + suffix.size());
  out.arrows.insert(out.arrows.end(), prefix.begin(), prefix.end());
  out.arrows.insert(out.arrows.end(), middle.arrows.begin(), middle.arrows.end());
  out.arrows.insert(out.arrows.end(), suffix.begin(), suffix.end());
  out.vertex = out.arrows.empty() ? middle.vertex : q.arrow(out.arrows.back()).source;
  return out;
}

}  // namespace

PathSeries apply_d(const DgQuiverAlgebra& dga, const PathSeries& x) {
  const Quiver& q = dga.quiver();
  PathSeries out = dga.zero();
  const auto& d = dga.differentials();
  for (const auto& [p, c] : x.terms()) {
    int sign_degree = 0;
    std::span<const ArrowIndex> arrows(p.arrows);
    for (std::size_t k = 0; k < arrows.size(); ++k) {
      auto it = d.find(arrows[k]);
      if (it != d.end()) {
        Rational coeff = (sign_degree % 2 == 0) ? c : Rational(-c);
        for (const auto& [m, mc] : it->second.terms()) {
          out.add_term(concat(q, arrows.subspan(0, k), m, arrows.subspan(k + 1)), coeff * mc);
        }
      }
      sign_degree += dga.degree(arrows[k]);
    }
  }
  return out;
}

DSquaredReport check_d_squared(const DgQuiverAlgebra& dga) {
  DSquaredReport report;
  for (const auto& [a, image] : dga.differentials()) {
    ++report.generators_checked;
    PathSeries dd = apply_d(dga, image);
    if (!dd.is_zero() && report.ok) {
      report.ok = false;
      report.failing_generator = dga.quiver().arrow(a).id;
      report.residue = dd.to_string();
    }
  }
  return report;
}

// ---------------------------------------------------------------------------

namespace {

std::string fresh(const std::string& base, std::set<std::string>& used) {
  std::string id = base;
  for (int n = 2; used.count(id); ++n) id = base + "_" + std::to_string(n);
  used.insert(id);
  return id;
}

PathSeries map_series(const PathSeries& x, const QuiverPtr& target, int truncation,
                      const std::vector<ArrowIndex>& arrows, const std::vector<VertexIndex>& vertices) {
  PathSeries out(target, truncation);
  for (const auto& [p, c] : x.terms()) {
    Path m;
    m.vertex = vertices.at(p.vertex);
    for (auto a : p.arrows) m.arrows.push_back(arrows.at(a));
    out.add_term(std::move(m), c);
  }
  return out;
}

}  // namespace

RelativeGinzburg build_relative_ginzburg(const IQP& iqp, int truncation) {
  const Quiver& q = iqp.quiver();
  const IceQuiver& iq = iqp.ice;
  std::set<std::string> used;
  for (const auto& a : q.arrows()) used.insert(a.id);

  std::vector<ArrowSpec> specs;
  std::vector<int> degree_by_spec;
  for (const auto& a : q.arrows()) specs.push_back({a.id, q.vertex_id(a.source), q.vertex_id(a.target)});
  std::vector<std::string> dual_id(q.arrow_count()), loop_id(q.vertex_count());
  for (auto a : iq.unfrozen_arrows()) {
    const Arrow& arr = q.arrow(a);
    dual_id[a] = fresh(arr.id + "^v", used);
    specs.push_back({dual_id[a], q.vertex_id(arr.target), q.vertex_id(arr.source)});
  }
  for (auto v : iq.unfrozen_vertices()) {
    loop_id[v] = fresh("t_" + q.vertex_id(v), used);
    specs.push_back({loop_id[v], q.vertex_id(v), q.vertex_id(v)});
  }
  auto gq = std::make_shared<const Quiver>(std::vector<VertexId>(q.vertices().begin(), q.vertices().end()),
                                           std::move(specs));

  RelativeGinzburg g;
  g.arrow.resize(q.arrow_count());
  g.dual.assign(q.arrow_count(), std::nullopt);
  g.loop.assign(q.vertex_count(), std::nullopt);
  g.base_arrow.assign(gq->arrow_count(), std::nullopt);
  std::vector<int> degrees(gq->arrow_count(), 0);
  for (ArrowIndex a = 0; a < q.arrow_count(); ++a) {
    g.arrow[a] = gq->arrow_index(q.arrow(a).id);
    g.base_arrow[g.arrow[a]] = a;
    if (!dual_id[a].empty()) {
      g.dual[a] = gq->arrow_index(dual_id[a]);
      degrees[*g.dual[a]] = -1;
    }
  }
  for (VertexIndex v = 0; v < q.vertex_count(); ++v) {
    if (!loop_id[v].empty()) {
      g.loop[v] = gq->arrow_index(loop_id[v]);
      degrees[*g.loop[v]] = -2;
    }
  }
  g.dga = DgQuiverAlgebra(GradedQuiver(gq, degrees), truncation);

  std::vector<VertexIndex> vmap(q.vertex_count());
  std::iota(vmap.begin(), vmap.end(), 0);
  Potential w = with_truncation(iqp.potential, truncation);
  for (auto a : iq.unfrozen_arrows()) {
    g.dga.set_differential(*g.dual[a], map_series(cyclic_derivative(w, a), gq, truncation, g.arrow, vmap));
  }
  for (auto v : iq.unfrozen_vertices()) {
    PathSeries dt(gq, truncation);
    for (auto a : iq.unfrozen_arrows()) {
      const Arrow& arr = q.arrow(a);
      PathSeries x = PathSeries::arrow(gq, truncation, g.arrow[a]);
      PathSeries xv = PathSeries::arrow(gq, truncation, *g.dual[a]);
      if (arr.target == v) dt += x * xv;
      if (arr.source == v) dt -= xv * x;
    }
    g.dga.set_differential(*g.loop[v], std::move(dt));
  }
  return g;
}

DerivedPreprojective build_pi2(const IceQuiver& iq, int truncation) {
  const Quiver& q = iq.quiver();
  Quiver fq = iq.frozen_subquiver();
  std::set<std::string> used;
  for (const auto& a : fq.arrows()) used.insert(a.id);
  std::vector<ArrowSpec> specs;
  for (const auto& a : fq.arrows()) specs.push_back({a.id, fq.vertex_id(a.source), fq.vertex_id(a.target)});
  std::vector<std::string> dual_id(fq.arrow_count()), loop_id(fq.vertex_count());
  for (ArrowIndex a = 0; a < fq.arrow_count(); ++a) {
    const Arrow& arr = fq.arrow(a);
    dual_id[a] = fresh(arr.id + "~", used);
    specs.push_back({dual_id[a], fq.vertex_id(arr.target), fq.vertex_id(arr.source)});
  }
  for (VertexIndex v = 0; v < fq.vertex_count(); ++v) {
    loop_id[v] = fresh("r_" + fq.vertex_id(v), used);
    specs.push_back({loop_id[v], fq.vertex_id(v), fq.vertex_id(v)});
  }
  auto pq = std::make_shared<const Quiver>(std::vector<VertexId>(fq.vertices().begin(), fq.vertices().end()),
                                           std::move(specs));
  DerivedPreprojective out;
  auto fptr = std::make_shared<const Quiver>(fq);
  out.frozen = IceQuiver(fptr, std::vector<bool>(fq.vertex_count(), true), std::vector<bool>(fq.arrow_count(), true));
  std::vector<int> degrees(pq->arrow_count(), 0);
  for (ArrowIndex a = 0; a < fq.arrow_count(); ++a) {
    out.arrow.push_back(pq->arrow_index(fq.arrow(a).id));
    out.dual.push_back(pq->arrow_index(dual_id[a]));
  }
  for (VertexIndex v = 0; v < fq.vertex_count(); ++v) {
    out.loop.push_back(pq->arrow_index(loop_id[v]));
    degrees[out.loop.back()] = -1;
  }
  out.dga = DgQuiverAlgebra(GradedQuiver(pq, degrees), truncation);
  for (VertexIndex v = 0; v < fq.vertex_count(); ++v) {
    PathSeries dr(pq, truncation);
    for (ArrowIndex a = 0; a < fq.arrow_count(); ++a) {
      const Arrow& arr = fq.arrow(a);
      PathSeries x = PathSeries::arrow(pq, truncation, out.arrow[a]);
      PathSeries xt = PathSeries::arrow(pq, truncation, out.dual[a]);
      if (arr.target == v) dr += x * xt;
      if (arr.source == v) dr -= xt * x;
    }
    out.dga.set_differential(out.loop[v], std::move(dr));
  }
  (void)q;
  return out;
}

// ---------------------------------------------------------------------------

PathSeries DgMorphism::apply(const PathSeries& x) const {
  const Quiver& sq = source->quiver();
  const Quiver& tq = target->quiver();
  PathSeries out = target->zero();
  for (const auto& [p, c] : x.terms()) {
    if (p.lazy()) {
      auto it = vertex_map.find(sq.vertex_id(p.vertex));
      if (it == vertex_map.end()) fail(ErrorKind::Internal, "vertex without image in dg morphism");
      out.add_term(Path::lazy_at(tq.vertex_index(it->second)), c);
      continue;
    }
    PathSeries acc;
    bool first = true;
    for (auto a : p.arrows) {
      auto it = assignment.find(a);
      if (it == assignment.end()) fail(ErrorKind::Internal, "generator '" + sq.arrow(a).id + "' without image");
      acc = first ? it->second : acc * it->second;
      first = false;
      if (acc.is_zero()) break;
    }
    out += acc * c;
  }
  return out;
}

ChainMapReport check_chain_map(const DgMorphism& f) {
  ChainMapReport report;
  const Quiver& sq = f.source->quiver();
  for (ArrowIndex a = 0; a < sq.arrow_count(); ++a) {
    ++report.generators_checked;
    auto it = f.assignment.find(a);
    if (it == f.assignment.end()) fail(ErrorKind::Internal, "generator '" + sq.arrow(a).id + "' without image");
    PathSeries lhs = apply_d(*f.target, it->second);
    PathSeries rhs = f.apply(f.source->differential(a));
    PathSeries diff = lhs - rhs;
    if (!diff.is_zero() && report.ok) {
      report.ok = false;
      report.failing_generator = sq.arrow(a).id;
      report.residue = diff.to_string();
    }
  }
  return report;
}

std::unique_ptr<GinzburgFunctor> build_ginzburg_functor(const IQP& iqp, int truncation) {
  auto out = std::make_unique<GinzburgFunctor>();
  out->gamma = build_relative_ginzburg(iqp, truncation);
  out->pi2 = build_pi2(iqp.ice, truncation);
  const Quiver& q = iqp.quiver();
  const IceQuiver& iq = iqp.ice;
  const Quiver& fq = out->pi2.frozen.quiver();
  const auto& gq = out->gamma.dga.quiver_ptr();
  DgMorphism& f = out->functor;
  f.source = &out->pi2.dga;
  f.target = &out->gamma.dga;
  for (const auto& v : fq.vertices()) f.vertex_map[v] = v;

  Potential w = with_truncation(iqp.potential, truncation);
  std::vector<VertexIndex> vmap(q.vertex_count());
  std::iota(vmap.begin(), vmap.end(), 0);
  for (ArrowIndex fa = 0; fa < fq.arrow_count(); ++fa) {
    ArrowIndex a = q.arrow_index(fq.arrow(fa).id);
    f.assignment[out->pi2.arrow[fa]] = PathSeries::arrow(gq, truncation, out->gamma.arrow[a]);
    f.assignment[out->pi2.dual[fa]] = -map_series(cyclic_derivative(w, a), gq, truncation, out->gamma.arrow, vmap);
  }
  for (VertexIndex fv = 0; fv < fq.vertex_count(); ++fv) {
    VertexIndex v = q.vertex_index(fq.vertex_id(fv));
    PathSeries img(gq, truncation);
    for (auto a : iq.unfrozen_arrows()) {
      const Arrow& arr = q.arrow(a);
      PathSeries x = PathSeries::arrow(gq, truncation, out->gamma.arrow[a]);
      PathSeries xv = PathSeries::arrow(gq, truncation, *out->gamma.dual[a]);
      if (arr.target == v) img += x * xv;
      if (arr.source == v) img -= xv * x;
    }
    f.assignment[out->pi2.loop[fv]] = std::move(img);
  }
  out->report = check_chain_map(f);
  if (!out->report.ok) {
    fail(ErrorKind::Internal, "Ginzburg functor is not a chain map at '" + *out->report.failing_generator +
                                  "': " + out->report.residue);
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

// Depth-first enumeration of generator paths of degree -1 built from
// degree-0 arrows and one degree -1 arrow.
class DegreeMinusOneWalker {
 public:
  DegreeMinusOneWalker(const RelativeGinzburg& g, const PathIndex& index, Echelon& echelon)
      : g_(g), dga_(g.dga), index_(index), echelon_(echelon), n_(static_cast<std::size_t>(dga_.truncation())) {}

  void run() {
    const Quiver& q = dga_.quiver();
    for (VertexIndex v = 0; v < q.vertex_count(); ++v) walk(v, false);
  }

 private:
  // traversal_ holds arrows in traversal order (first traversed first).
  void walk(VertexIndex at, bool has_dual) {
    if (has_dual) emit();
    if (traversal_.size() == n_) return;
    const Quiver& q = dga_.quiver();
    for (auto a : q.arrows_out(at)) {
      int deg = dga_.degree(a);
      if (deg < -1 || (deg == -1 && has_dual)) continue;
      traversal_.push_back(a);
      walk(q.arrow(a).target, has_dual || deg == -1);
      traversal_.pop_back();
    }
  }

  void emit() {
    const Quiver& q = dga_.quiver();
    Path p;
    p.arrows.assign(traversal_.rbegin(), traversal_.rend());
    p.vertex = q.arrow(p.arrows.back()).source;
    PathSeries image = apply_d(dga_, PathSeries::path(dga_.quiver_ptr(), dga_.truncation(), p));
    SparseRow row;
    for (const auto& [m, c] : image.terms()) {
      Path base;
      for (auto a : m.arrows) {
        auto b = g_.base_arrow.at(a);
        if (!b) fail(ErrorKind::Internal, "differential of a degree -1 path left degree 0");
        base.arrows.push_back(*b);
      }
      base.vertex = base.arrows.empty() ? m.vertex : index_.quiver().arrow(base.arrows.back()).source;
      row.emplace_back(index_.index(base), c);
    }
    echelon_.insert(std::move(row));
  }

  const RelativeGinzburg& g_;
  const DgQuiverAlgebra& dga_;
  const PathIndex& index_;
  Echelon& echelon_;
  std::size_t n_;
  std::vector<ArrowIndex> traversal_;
};

}  // namespace

H0Report h0_comparison(const IQP& iqp, int truncation) {
  check_truncation(truncation);
  H0Report report;
  RelativeGinzburg g = build_relative_ginzburg(iqp, truncation);
  PathIndex index(iqp.quiver_ptr(), truncation);
  Echelon echelon(index.size());
  DegreeMinusOneWalker(g, index, echelon).run();

  report.dg_dims.assign(static_cast<std::size_t>(truncation) + 1, 0);
  for (int d = 0; d <= truncation; ++d) {
    for (Column c = index.degree_begin(d); c < index.degree_end(d); ++c) {
      if (!echelon.is_pivot(c)) ++report.dg_dims[static_cast<std::size_t>(d)];
    }
  }
  IQP at_n = with_truncation(iqp, truncation);
  TruncatedQuotient jac(iqp.quiver_ptr(), jacobian_relations(at_n), truncation);
  report.jacobian_dims = jac.dims();
  report.compared_through = truncation >= 2 ? static_cast<std::size_t>(truncation - 2) : 0;
  for (std::size_t d = 0; d <= report.compared_through; ++d) {
    if (report.dg_dims[d] != report.jacobian_dims[d]) report.agree = false;
  }
  return report;
}

BoundaryDims boundary_h0_dims(const IQP& iqp, int truncation) {
  check_truncation(truncation);
  IQP at_n = with_truncation(iqp, truncation);
  TruncatedQuotient jac(iqp.quiver_ptr(), jacobian_relations(at_n), truncation);
  BoundaryDims out;
  out.dims = corner_dims(jac, iqp.ice.frozen_vertices());
  out.total = std::accumulate(out.dims.begin(), out.dims.end(), std::size_t{0});
  out.stabilized = zero_tail(out.dims);
  return out;
}

std::string presentation_text(const DgQuiverAlgebra& dga) {
  const Quiver& q = dga.quiver();
  std::ostringstream os;
  os << "generators:\n";
  for (ArrowIndex a = 0; a < q.arrow_count(); ++a) {
    const Arrow& arr = q.arrow(a);
    os << "  " << arr.id << " : " << q.vertex_id(arr.source) << " -> " << q.vertex_id(arr.target) << "  degree "
       << dga.degree(a) << "\n";
  }
  os << "differential:\n";
  for (const auto& [a, image] : dga.differentials()) {
    os << "  d(" << q.arrow(a).id << ") = " << image.to_string() << "\n";
  }
  return os.str();
}

}  // namespace iqp
