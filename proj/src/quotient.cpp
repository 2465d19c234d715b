#include "iqp/quotient.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <numeric>

#include "iqp/error.hpp"

namespace iqp {

int max_truncation() {
  const char* env = std::getenv("IQP_MAX_TRUNCATION");
  if (!env || !*env) return 24;
  char* end = nullptr;
  long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 0 || v > 1000) return 24;
  return static_cast<int>(v);
}

void check_truncation(int n) {
  if (n < 0) fail(ErrorKind::Malformed, "negative truncation degree");
  int cap = max_truncation();
  if (n > cap) {
    fail(ErrorKind::Limit,
         "truncation " + std::to_string(n) + " exceeds IQP_MAX_TRUNCATION=" + std::to_string(cap));
  }
}

std::size_t PathIndex::WordHash::operator()(const std::vector<ArrowIndex>& w) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (auto a : w) {
    h ^= a + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

PathIndex::PathIndex(QuiverPtr quiver, int truncation, std::size_t max_paths)
    : quiver_(std::move(quiver)), truncation_(truncation), arrows_(quiver_->arrow_count()) {
  if (truncation_ < 0) fail(ErrorKind::Limit, "negative truncation degree");
  const Quiver& q = *quiver_;
  level_.push_back(0);
  for (VertexIndex v = 0; v < q.vertex_count(); ++v) paths_.push_back(Path::lazy_at(v));
  level_.push_back(static_cast<Column>(paths_.size()));
  for (int d = 1; d <= truncation_; ++d) {
    std::vector<Path> next;
    Column lo = level_[static_cast<std::size_t>(d) - 1], hi = level_[static_cast<std::size_t>(d)];
    for (Column c = lo; c < hi; ++c) {
      const Path& p = paths_[c];
      VertexIndex t = p.target(q);
      for (auto a : q.arrows_out(t)) {
        Path np;
        np.vertex = p.vertex;
        np.arrows.reserve(p.arrows.size() + 1);
        np.arrows.push_back(a);
        np.arrows.insert(np.arrows.end(), p.arrows.begin(), p.arrows.end());
        next.push_back(std::move(np));
      }
      if (paths_.size() + next.size() > max_paths) {
        fail(ErrorKind::Limit, "more than " + std::to_string(max_paths) + " paths of length <= " +
                                   std::to_string(truncation_));
      }
    }
    std::sort(next.begin(), next.end(), PathOrder{});
    for (auto& p : next) paths_.push_back(std::move(p));
    level_.push_back(static_cast<Column>(paths_.size()));
  }
  lookup_.reserve(paths_.size());
  for (Column c = level_[1]; c < paths_.size(); ++c) lookup_.emplace(paths_[c].arrows, c);

  right_.assign(paths_.size() * arrows_, -1);
  left_.assign(paths_.size() * arrows_, -1);
  std::vector<ArrowIndex> buf;
  for (Column c = 0; c < paths_.size(); ++c) {
    const Path& p = paths_[c];
    if (p.length() >= static_cast<std::size_t>(truncation_)) continue;
    for (auto a : q.arrows_in(p.source(q))) {
      buf = p.arrows;
      buf.push_back(a);
      right_[c * arrows_ + a] = static_cast<std::int32_t>(lookup_.at(buf));
    }
    for (auto a : q.arrows_out(p.target(q))) {
      buf.clear();
      buf.push_back(a);
      buf.insert(buf.end(), p.arrows.begin(), p.arrows.end());
      left_[c * arrows_ + a] = static_cast<std::int32_t>(lookup_.at(buf));
    }
  }
}

std::optional<Column> PathIndex::find(const Path& p) const {
  if (p.lazy()) {
    if (p.vertex >= quiver_->vertex_count()) return std::nullopt;
    return p.vertex;
  }
  auto it = lookup_.find(p.arrows);
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

Column PathIndex::index(const Path& p) const {
  auto c = find(p);
  if (!c) fail(ErrorKind::Internal, "path " + format_path(*quiver_, p) + " not in index");
  return *c;
}

std::int64_t PathIndex::multiply(Column x, Column y) const {
  const Path& px = paths_.at(x);
  const Path& py = paths_.at(y);
  if (px.source(*quiver_) != py.target(*quiver_)) return -1;
  if (px.lazy()) return y;
  if (py.lazy()) return x;
  if (px.length() + py.length() > static_cast<std::size_t>(truncation_)) return -1;
  std::vector<ArrowIndex> w = px.arrows;
  w.insert(w.end(), py.arrows.begin(), py.arrows.end());
  return lookup_.at(w);
}

SparseRow PathIndex::to_row(const PathSeries& s) const {
  if (!same_quiver(quiver_, s.quiver_ptr())) fail(ErrorKind::Malformed, "series over another quiver");
  SparseRow row;
  for (const auto& [p, c] : s.terms()) {
    if (p.length() > static_cast<std::size_t>(truncation_)) continue;
    row.emplace_back(index(p), c);
  }
  normalize_row(row);
  return row;
}

PathSeries PathIndex::to_series(const SparseRow& row) const {
  PathSeries s(quiver_, truncation_);
  for (const auto& [c, v] : row) s.add_term(paths_.at(c), v);
  return s;
}

// ---------------------------------------------------------------------------

TruncatedQuotient::TruncatedQuotient(QuiverPtr quiver, const std::vector<PathSeries>& generators, int truncation,
                                     std::size_t max_paths)
    : index_(std::move(quiver), truncation, max_paths), ideal_(index_.size()), leading_(index_.size()) {
  const Quiver& q = index_.quiver();
  const std::size_t nv = q.vertex_count();
  std::deque<SparseRow> queue;
  for (const auto& g : generators) {
    if (!same_quiver(index_.quiver_ptr(), g.quiver_ptr())) fail(ErrorKind::Malformed, "generator over another quiver");
    for (VertexIndex t = 0; t < nv; ++t) {
      for (VertexIndex s = 0; s < nv; ++s) {
        PathSeries piece(index_.quiver_ptr(), truncation);
        for (const auto& [p, c] : g.terms()) {
          if (p.target(q) == t && p.source(q) == s) piece.add_term(p, c);
        }
        if (!piece.is_zero()) queue.push_back(index_.to_row(piece));
      }
    }
  }

  while (!queue.empty()) {
    SparseRow row = std::move(queue.front());
    queue.pop_front();
    auto k = ideal_.insert(std::move(row));
    if (!k) continue;
    const SparseRow& r = ideal_.rows()[*k];
    for (ArrowIndex a = 0; a < q.arrow_count(); ++a) {
      SparseRow left, right;
      for (const auto& [c, v] : r) {
        if (auto l = index_.left_mul(a, c); l >= 0) left.emplace_back(static_cast<Column>(l), v);
        if (auto rr = index_.right_mul(c, a); rr >= 0) right.emplace_back(static_cast<Column>(rr), v);
      }
      if (!left.empty()) queue.push_back(std::move(left));
      if (!right.empty()) queue.push_back(std::move(right));
    }
  }

  for (const auto& r : ideal_.rows()) {
    int d = index_.degree(r.front().first);
    Column hi = index_.degree_end(d);
    SparseRow lead;
    for (const auto& [c, v] : r) {
      if (c >= hi) break;
      lead.emplace_back(c, v);
    }
    leading_.insert(std::move(lead));
  }

  dims_.assign(static_cast<std::size_t>(truncation) + 1, 0);
  for (int d = 0; d <= truncation; ++d) {
    for (Column c = index_.degree_begin(d); c < index_.degree_end(d); ++c) {
      if (!ideal_.is_pivot(c)) ++dims_[static_cast<std::size_t>(d)];
    }
  }
}

std::size_t TruncatedQuotient::total() const { return std::accumulate(dims_.begin(), dims_.end(), std::size_t{0}); }

bool TruncatedQuotient::stabilized() const { return zero_tail(dims_); }

std::vector<Column> TruncatedQuotient::basis(int degree) const {
  std::vector<Column> out;
  for (Column c = index_.degree_begin(degree); c < index_.degree_end(degree); ++c) {
    if (!ideal_.is_pivot(c)) out.push_back(c);
  }
  return out;
}

TruncatedQuotient truncated_quotient(const IceQuiver& iq, const std::vector<PathSeries>& generators, int truncation) {
  check_truncation(truncation);
  return TruncatedQuotient(iq.quiver_ptr(), generators, truncation);
}

std::vector<std::size_t> corner_dims(const TruncatedQuotient& q, const std::vector<VertexIndex>& idempotents) {
  const Quiver& quiver = q.index().quiver();
  std::vector<bool> in(quiver.vertex_count(), false);
  for (auto v : idempotents) {
    if (v >= quiver.vertex_count()) fail(ErrorKind::Malformed, "vertex index out of range");
    in[v] = true;
  }
  std::vector<std::size_t> out(static_cast<std::size_t>(q.truncation()) + 1, 0);
  for (int d = 0; d <= q.truncation(); ++d) {
    for (Column c : q.basis(d)) {
      const Path& p = q.index().path(c);
      if (in[p.source(quiver)] && in[p.target(quiver)]) ++out[static_cast<std::size_t>(d)];
    }
  }
  return out;
}

std::vector<std::size_t> corner_dims(const TruncatedQuotient& q, const std::vector<VertexId>& idempotents) {
  std::vector<VertexIndex> idx;
  for (const auto& v : idempotents) idx.push_back(q.index().quiver().vertex_index(v));
  return corner_dims(q, idx);
}

bool zero_tail(const std::vector<std::size_t>& dims) {
  if (dims.empty()) return true;
  std::size_t n = dims.size() - 1;
  std::size_t k = (n + 3) / 4;
  for (std::size_t i = 0; i < k; ++i) {
    if (dims[n - i] != 0) return false;
  }
  return true;
}

}  // namespace iqp
