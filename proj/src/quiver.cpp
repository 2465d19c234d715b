#include "iqp/quiver.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <sstream>
#include <tuple>

#include "iqp/error.hpp"

namespace iqp {

Quiver::Quiver(std::vector<VertexId> vertices, std::vector<ArrowSpec> arrows) {
  std::sort(vertices.begin(), vertices.end());
  if (auto dup = std::adjacent_find(vertices.begin(), vertices.end()); dup != vertices.end()) {
    fail(ErrorKind::Malformed, "duplicate vertex id '" + *dup + "'");
  }
  vertices_ = std::move(vertices);
  std::sort(arrows.begin(), arrows.end(), [](const ArrowSpec& x, const ArrowSpec& y) { return x.id < y.id; });
  for (std::size_t i = 1; i < arrows.size(); ++i) {
    if (arrows[i].id == arrows[i - 1].id) fail(ErrorKind::Malformed, "duplicate arrow id '" + arrows[i].id + "'");
  }
  arrows_.reserve(arrows.size());
  for (auto& spec : arrows) {
    auto s = find_vertex(spec.source);
    auto t = find_vertex(spec.target);
    if (!s || !t) {
      fail(ErrorKind::Malformed, "arrow '" + spec.id + "' references unknown vertex '" +
                                     (s ? spec.target : spec.source) + "'");
    }
    arrows_.push_back(Arrow{std::move(spec.id), *s, *t});
  }
  out_.assign(vertices_.size(), {});
  in_.assign(vertices_.size(), {});
  for (ArrowIndex a = 0; a < arrows_.size(); ++a) {
    out_[arrows_[a].source].push_back(a);
    in_[arrows_[a].target].push_back(a);
  }
}

std::optional<VertexIndex> Quiver::find_vertex(std::string_view id) const {
  auto it = std::lower_bound(vertices_.begin(), vertices_.end(), id,
                             [](const VertexId& v, std::string_view key) { return v < key; });
  if (it == vertices_.end() || *it != id) return std::nullopt;
  return static_cast<VertexIndex>(it - vertices_.begin());
}

std::optional<ArrowIndex> Quiver::find_arrow(std::string_view id) const {
  auto it = std::lower_bound(arrows_.begin(), arrows_.end(), id,
                             [](const Arrow& a, std::string_view key) { return a.id < key; });
  if (it == arrows_.end() || it->id != id) return std::nullopt;
  return static_cast<ArrowIndex>(it - arrows_.begin());
}

VertexIndex Quiver::vertex_index(std::string_view id) const {
  auto v = find_vertex(id);
  if (!v) fail(ErrorKind::Malformed, "unknown vertex '" + std::string(id) + "'");
  return *v;
}

ArrowIndex Quiver::arrow_index(std::string_view id) const {
  auto a = find_arrow(id);
  if (!a) fail(ErrorKind::Malformed, "unknown arrow '" + std::string(id) + "'");
  return *a;
}

bool same_quiver(const QuiverPtr& a, const QuiverPtr& b) {
  return a == b || (a && b && *a == *b);
}

// ---------------------------------------------------------------------------

IceQuiver::IceQuiver(QuiverPtr quiver, const std::set<VertexId>& frozen_vertices,
                     const std::set<ArrowId>& frozen_arrows)
    : quiver_(std::move(quiver)),
      frozen_vertex_(quiver_->vertex_count(), false),
      frozen_arrow_(quiver_->arrow_count(), false) {
  for (const auto& v : frozen_vertices) frozen_vertex_[quiver_->vertex_index(v)] = true;
  for (const auto& a : frozen_arrows) frozen_arrow_[quiver_->arrow_index(a)] = true;
}

IceQuiver::IceQuiver(QuiverPtr quiver, std::vector<bool> frozen_vertices, std::vector<bool> frozen_arrows)
    : quiver_(std::move(quiver)), frozen_vertex_(std::move(frozen_vertices)), frozen_arrow_(std::move(frozen_arrows)) {
  if (frozen_vertex_.size() != quiver_->vertex_count() || frozen_arrow_.size() != quiver_->arrow_count()) {
    fail(ErrorKind::Internal, "frozen mask size mismatch");
  }
}

std::vector<VertexIndex> IceQuiver::frozen_vertices() const {
  std::vector<VertexIndex> out;
  for (VertexIndex v = 0; v < frozen_vertex_.size(); ++v)
    if (frozen_vertex_[v]) out.push_back(v);
  return out;
}

std::vector<VertexIndex> IceQuiver::unfrozen_vertices() const {
  std::vector<VertexIndex> out;
  for (VertexIndex v = 0; v < frozen_vertex_.size(); ++v)
    if (!frozen_vertex_[v]) out.push_back(v);
  return out;
}

std::vector<ArrowIndex> IceQuiver::frozen_arrows() const {
  std::vector<ArrowIndex> out;
  for (ArrowIndex a = 0; a < frozen_arrow_.size(); ++a)
    if (frozen_arrow_[a]) out.push_back(a);
  return out;
}

std::vector<ArrowIndex> IceQuiver::unfrozen_arrows() const {
  std::vector<ArrowIndex> out;
  for (ArrowIndex a = 0; a < frozen_arrow_.size(); ++a)
    if (!frozen_arrow_[a]) out.push_back(a);
  return out;
}

Quiver IceQuiver::frozen_subquiver() const {
  const Quiver& q = *quiver_;
  std::vector<VertexId> vs;
  for (auto v : frozen_vertices()) vs.push_back(q.vertex_id(v));
  std::vector<ArrowSpec> as;
  for (auto a : frozen_arrows()) {
    const Arrow& arr = q.arrow(a);
    as.push_back({arr.id, q.vertex_id(arr.source), q.vertex_id(arr.target)});
  }
  return Quiver(std::move(vs), std::move(as));
}

GradedQuiver::GradedQuiver(QuiverPtr q, std::vector<int> degrees) : quiver(std::move(q)), degree(std::move(degrees)) {
  if (degree.size() != quiver->arrow_count()) fail(ErrorKind::Internal, "degree vector size mismatch");
  for (std::size_t a = 0; a < degree.size(); ++a) {
    if (degree[a] > 0) {
      fail(ErrorKind::Malformed, "graded arrow '" + quiver->arrow(static_cast<ArrowIndex>(a)).id +
                                     "' has positive degree");
    }
  }
}

// ---------------------------------------------------------------------------

ValidationReport validate_ice_quiver(const IceQuiver& iq) {
  const Quiver& q = iq.quiver();
  ValidationReport report;
  for (ArrowIndex a = 0; a < q.arrow_count(); ++a) {
    if (!iq.is_frozen_arrow(a)) continue;
    const Arrow& arr = q.arrow(a);
    if (!iq.is_frozen_vertex(arr.source)) {
      report.violations.push_back("frozen arrow endpoint: arrow '" + arr.id + "' has unfrozen source '" +
                                  q.vertex_id(arr.source) + "'");
    }
    if (!iq.is_frozen_vertex(arr.target)) {
      report.violations.push_back("frozen arrow endpoint: arrow '" + arr.id + "' has unfrozen target '" +
                                  q.vertex_id(arr.target) + "'");
    }
  }
  for (VertexIndex v = 0; v < q.vertex_count(); ++v) {
    for (auto a : q.arrows_out(v)) {
      if (q.arrow(a).target == v) {
        report.loops.push_back(q.vertex_id(v));
        break;
      }
    }
  }
  for (ArrowIndex a = 0; a < q.arrow_count(); ++a) {
    const Arrow& x = q.arrow(a);
    if (x.source == x.target) continue;
    for (auto b : q.arrows_out(x.target)) {
      if (b <= a || q.arrow(b).target != x.source) continue;
      TwoCycle cycle{x.id, q.arrow(b).id};
      report.two_cycles[q.vertex_id(x.source)].push_back(cycle);
      report.two_cycles[q.vertex_id(x.target)].push_back(cycle);
    }
  }
  return report;
}

void require_valid(const IceQuiver& iq) {
  auto report = validate_ice_quiver(iq);
  if (!report.valid()) fail(ErrorKind::Malformed, report.violations.front());
}

const char* to_string(Mutability m) noexcept {
  switch (m) {
    case Mutability::UnfrozenMutable:
      return "UnfrozenMutable";
    case Mutability::FrozenSource:
      return "FrozenSource";
    case Mutability::FrozenSink:
      return "FrozenSink";
    case Mutability::NotMutable:
      return "NotMutable";
  }
  return "NotMutable";
}

MutabilityStatus check_mutable(const IceQuiver& iq, std::string_view vertex) {
  return check_mutable(iq, iq.quiver().vertex_index(vertex));
}

MutabilityStatus check_mutable(const IceQuiver& iq, VertexIndex v) {
  const Quiver& q = iq.quiver();
  if (v >= q.vertex_count()) fail(ErrorKind::Malformed, "vertex index out of range");
  for (auto a : q.arrows_out(v)) {
    if (q.arrow(a).target == v) return {Mutability::NotMutable, "loop incident"};
  }
  for (auto a : q.arrows_out(v)) {
    VertexIndex w = q.arrow(a).target;
    for (auto b : q.arrows_in(v)) {
      if (q.arrow(b).source == w) return {Mutability::NotMutable, "2-cycle incident"};
    }
  }
  if (!iq.is_frozen_vertex(v)) return {Mutability::UnfrozenMutable, {}};

  bool frozen_in = false, frozen_out = false, unfrozen_in = false, unfrozen_out = false;
  for (auto a : q.arrows_in(v)) (iq.is_frozen_arrow(a) ? frozen_in : unfrozen_in) = true;
  for (auto a : q.arrows_out(v)) (iq.is_frozen_arrow(a) ? frozen_out : unfrozen_out) = true;
  if (!frozen_in && !unfrozen_out) return {Mutability::FrozenSource, {}};
  if (!frozen_out && !unfrozen_in) return {Mutability::FrozenSink, {}};
  return {Mutability::NotMutable, "frozen vertex is neither a frozen source nor a frozen sink"};
}

// ---------------------------------------------------------------------------
// Isomorphism search

namespace {

struct IsoData {
  const IceQuiver* iq;
  std::size_t n;
  // count[(u*n + w)*2 + frozen] = number of arrows u -> w with that state
  std::vector<int> count;
  std::vector<std::array<int, 7>> signature;

  explicit IsoData(const IceQuiver& ice) : iq(&ice), n(ice.quiver().vertex_count()) {
    const Quiver& q = ice.quiver();
    count.assign(n * n * 2, 0);
    signature.assign(n, {});
    for (ArrowIndex a = 0; a < q.arrow_count(); ++a) {
      const Arrow& arr = q.arrow(a);
      int f = ice.is_frozen_arrow(a) ? 1 : 0;
      ++count[(arr.source * n + arr.target) * 2 + f];
      if (arr.source == arr.target) {
        ++signature[arr.source][1 + f];
      } else {
        ++signature[arr.source][3 + f];
        ++signature[arr.target][5 + f];
      }
    }
    for (VertexIndex v = 0; v < n; ++v) signature[v][0] = ice.is_frozen_vertex(v) ? 1 : 0;
  }

  int at(std::size_t u, std::size_t w, int f) const { return count[(u * n + w) * 2 + f]; }
};

class IsoSearch {
 public:
  IsoSearch(const IsoData& a, const IsoData& b) : a_(a), b_(b), map_(a.n, -1), used_(b.n, false) {
    order_ = search_order();
  }

  bool run() { return extend(0); }
  const std::vector<int>& mapping() const { return map_; }

 private:
  std::vector<std::size_t> search_order() const {
    std::size_t n = a_.n;
    std::vector<std::size_t> order;
    std::vector<bool> placed(n, false);
    auto links = [&](std::size_t u, std::size_t w) {
      return a_.at(u, w, 0) + a_.at(u, w, 1) + a_.at(w, u, 0) + a_.at(w, u, 1);
    };
    for (std::size_t step = 0; step < n; ++step) {
      std::size_t best = n;
      std::tuple<int, int> best_key{-1, -1};
      for (std::size_t u = 0; u < n; ++u) {
        if (placed[u]) continue;
        int to_placed = 0, degree = 0;
        for (std::size_t w = 0; w < n; ++w) {
          degree += links(u, w);
          if (placed[w]) to_placed += links(u, w);
        }
        std::tuple<int, int> key{to_placed, degree};
        if (key > best_key) {
          best_key = key;
          best = u;
        }
      }
      placed[best] = true;
      order.push_back(best);
    }
    return order;
  }

  bool consistent(std::size_t u, std::size_t image) const {
    if (a_.signature[u] != b_.signature[image]) return false;
    for (int f = 0; f < 2; ++f) {
      if (a_.at(u, u, f) != b_.at(image, image, f)) return false;
    }
    for (std::size_t w = 0; w < a_.n; ++w) {
      if (map_[w] < 0) continue;
      auto wi = static_cast<std::size_t>(map_[w]);
      for (int f = 0; f < 2; ++f) {
        if (a_.at(u, w, f) != b_.at(image, wi, f) || a_.at(w, u, f) != b_.at(wi, image, f)) return false;
      }
    }
    return true;
  }

  bool extend(std::size_t depth) {
    if (depth == order_.size()) return true;
    std::size_t u = order_[depth];
    for (std::size_t image = 0; image < b_.n; ++image) {
      if (used_[image] || !consistent(u, image)) continue;
      map_[u] = static_cast<int>(image);
      used_[image] = true;
      if (extend(depth + 1)) return true;
      used_[image] = false;
      map_[u] = -1;
    }
    return false;
  }

  const IsoData& a_;
  const IsoData& b_;
  std::vector<int> map_;
  std::vector<bool> used_;
  std::vector<std::size_t> order_;
};

}  // namespace

std::optional<Isomorphism> ice_quiver_isomorphic(const IceQuiver& a, const IceQuiver& b) {
  const Quiver& qa = a.quiver();
  const Quiver& qb = b.quiver();
  if (qa.vertex_count() != qb.vertex_count() || qa.arrow_count() != qb.arrow_count()) return std::nullopt;
  if (a.frozen_vertices().size() != b.frozen_vertices().size() ||
      a.frozen_arrows().size() != b.frozen_arrows().size()) {
    return std::nullopt;
  }
  IsoData da(a), db(b);
  auto sa = da.signature, sb = db.signature;
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  if (sa != sb) return std::nullopt;

  IsoSearch search(da, db);
  if (!search.run()) return std::nullopt;
  const auto& map = search.mapping();

  Isomorphism iso;
  for (VertexIndex v = 0; v < qa.vertex_count(); ++v) {
    iso.vertices[qa.vertex_id(v)] = qb.vertex_id(static_cast<VertexIndex>(map[v]));
  }
  // Parallel arrows with equal state are interchangeable: match them in id order.
  std::map<std::tuple<VertexIndex, VertexIndex, bool>, std::vector<ArrowIndex>> groups_b;
  for (ArrowIndex x = 0; x < qb.arrow_count(); ++x) {
    groups_b[{qb.arrow(x).source, qb.arrow(x).target, b.is_frozen_arrow(x)}].push_back(x);
  }
  std::map<std::tuple<VertexIndex, VertexIndex, bool>, std::size_t> taken;
  for (ArrowIndex x = 0; x < qa.arrow_count(); ++x) {
    const Arrow& arr = qa.arrow(x);
    std::tuple<VertexIndex, VertexIndex, bool> key{static_cast<VertexIndex>(map[arr.source]),
                                                   static_cast<VertexIndex>(map[arr.target]), a.is_frozen_arrow(x)};
    auto& slot = taken[key];
    iso.arrows[arr.id] = qb.arrow(groups_b.at(key).at(slot++)).id;
  }
  return iso;
}

// ---------------------------------------------------------------------------

namespace {

std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string to_dot(const IceQuiver& iq) {
  const Quiver& q = iq.quiver();
  std::ostringstream os;
  os << "digraph {\n";
  for (VertexIndex v = 0; v < q.vertex_count(); ++v) {
    os << "  " << dot_quote(q.vertex_id(v));
    if (iq.is_frozen_vertex(v)) os << " [shape=box, color=blue]";
    os << ";\n";
  }
  for (ArrowIndex a = 0; a < q.arrow_count(); ++a) {
    const Arrow& arr = q.arrow(a);
    os << "  " << dot_quote(q.vertex_id(arr.source)) << " -> " << dot_quote(q.vertex_id(arr.target))
       << " [label=" << dot_quote(arr.id);
    if (iq.is_frozen_arrow(a)) os << ", style=dashed, color=blue";
    os << "];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace iqp
