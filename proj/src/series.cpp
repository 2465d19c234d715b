#include "iqp/series.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

#include "iqp/error.hpp"

namespace iqp {

Path Path::from_arrows(const Quiver& q, std::vector<ArrowIndex> written) {
  if (written.empty()) fail(ErrorKind::Internal, "Path::from_arrows needs at least one arrow");
  for (std::size_t k = 0; k + 1 < written.size(); ++k) {
    if (q.arrow(written[k]).source != q.arrow(written[k + 1]).target) {
      fail(ErrorKind::Malformed, "arrows '" + q.arrow(written[k + 1]).id + "' and '" + q.arrow(written[k]).id +
                                     "' do not compose");
    }
  }
  VertexIndex src = q.arrow(written.back()).source;
  return Path{src, std::move(written)};
}

bool PathOrder::operator()(const Path& x, const Path& y) const {
  if (x.arrows.size() != y.arrows.size()) return x.arrows.size() < y.arrows.size();
  if (x.arrows != y.arrows) return x.arrows < y.arrows;
  return x.vertex < y.vertex;
}

// ---------------------------------------------------------------------------

PathSeries::PathSeries(QuiverPtr quiver, int truncation) : quiver_(std::move(quiver)), truncation_(truncation) {
  if (!quiver_) fail(ErrorKind::Internal, "PathSeries without quiver");
  if (truncation_ < 0) fail(ErrorKind::Malformed, "negative truncation degree");
}

PathSeries PathSeries::lazy(QuiverPtr quiver, int truncation, VertexIndex v) {
  PathSeries s(std::move(quiver), truncation);
  if (v >= s.quiver().vertex_count()) fail(ErrorKind::Malformed, "vertex index out of range");
  s.add_term(Path::lazy_at(v), 1);
  return s;
}

PathSeries PathSeries::arrow(QuiverPtr quiver, int truncation, ArrowIndex a) {
  PathSeries s(std::move(quiver), truncation);
  s.add_term(Path{s.quiver().arrow(a).source, {a}}, 1);
  return s;
}

PathSeries PathSeries::path(QuiverPtr quiver, int truncation, const Path& p, const Rational& coeff) {
  PathSeries s(std::move(quiver), truncation);
  s.add_term(p, coeff);
  return s;
}

PathSeries PathSeries::unit(QuiverPtr quiver, int truncation) {
  PathSeries s(std::move(quiver), truncation);
  for (VertexIndex v = 0; v < s.quiver().vertex_count(); ++v) s.add_term(Path::lazy_at(v), 1);
  return s;
}

Rational PathSeries::coefficient(const Path& p) const {
  auto it = terms_.find(p);
  return it == terms_.end() ? Rational(0) : it->second;
}

void PathSeries::add_term(const Path& p, const Rational& c) { add_term(Path(p), c); }

void PathSeries::add_term(Path&& p, const Rational& c) {
  if (c == 0 || p.length() > static_cast<std::size_t>(truncation_)) return;
  auto [it, inserted] = terms_.try_emplace(std::move(p), c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void PathSeries::check_compatible(const PathSeries& other) const {
  if (!same_quiver(quiver_, other.quiver_)) fail(ErrorKind::Malformed, "series over different quivers");
  if (truncation_ != other.truncation_) {
    fail(ErrorKind::Malformed, "mismatched truncation degrees " + std::to_string(truncation_) + " and " +
                                   std::to_string(other.truncation_));
  }
}

PathSeries& PathSeries::operator+=(const PathSeries& other) {
  check_compatible(other);
  for (const auto& [p, c] : other.terms_) add_term(p, c);
  return *this;
}

PathSeries& PathSeries::operator-=(const PathSeries& other) {
  check_compatible(other);
  for (const auto& [p, c] : other.terms_) add_term(p, -c);
  return *this;
}

PathSeries& PathSeries::operator*=(const Rational& scalar) {
  if (scalar == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [p, c] : terms_) c *= scalar;
  return *this;
}

PathSeries PathSeries::corner(VertexIndex target, VertexIndex source) const {
  PathSeries out(quiver_, truncation_);
  for (const auto& [p, c] : terms_) {
    if (p.target(*quiver_) == target && p.source(*quiver_) == source) out.terms_.emplace(p, c);
  }
  return out;
}

std::size_t PathSeries::order() const { return terms_.empty() ? 0 : terms_.begin()->first.length(); }

bool PathSeries::operator==(const PathSeries& other) const {
  return same_quiver(quiver_, other.quiver_) && truncation_ == other.truncation_ && terms_ == other.terms_;
}

namespace {

void append_term(std::ostringstream& os, bool first, const Rational& c, const std::string& body) {
  Rational mag = abs(c);
  if (first) {
    if (c < 0) os << "-";
  } else {
    os << (c < 0 ? " - " : " + ");
  }
  if (mag != 1) os << format_rational(mag) << " ";
  os << body;
}

}  // namespace

std::string PathSeries::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [p, c] : terms_) {
    append_term(os, first, c, format_path(*quiver_, p));
    first = false;
  }
  return os.str();
}

PathSeries series_multiply(const PathSeries& x, const PathSeries& y) {
  if (!same_quiver(x.quiver_ptr(), y.quiver_ptr())) fail(ErrorKind::Malformed, "series over different quivers");
  if (x.truncation() != y.truncation()) {
    fail(ErrorKind::Malformed, "mismatched truncation degrees " + std::to_string(x.truncation()) + " and " +
                                   std::to_string(y.truncation()));
  }
  const Quiver& q = x.quiver();
  const auto n = static_cast<std::size_t>(x.truncation());
  PathSeries out(x.quiver_ptr(), x.truncation());
  std::vector<std::vector<const std::pair<const Path, Rational>*>> by_target(q.vertex_count());
  for (const auto& term : y.terms()) by_target[term.first.target(q)].push_back(&term);

  for (const auto& [p, c] : x.terms()) {
    for (const auto* term : by_target[p.source(q)]) {
      const Path& r = term->first;
      if (p.length() + r.length() > n) continue;
      Path prod;
      prod.vertex = r.vertex;
      prod.arrows.reserve(p.length() + r.length());
      prod.arrows = p.arrows;
      prod.arrows.insert(prod.arrows.end(), r.arrows.begin(), r.arrows.end());
      if (r.lazy()) prod.vertex = p.vertex;
      out.add_term(std::move(prod), c * term->second);
    }
  }
  return out;
}

PathSeries graded_commutator(const PathSeries& x, int deg_x, const PathSeries& y, int deg_y) {
  PathSeries out = x * y;
  if ((deg_x * deg_y) % 2 == 0) {
    out -= y * x;
  } else {
    out += y * x;
  }
  return out;
}

// ---------------------------------------------------------------------------

CyclicWord canonical_rotation(std::span<const ArrowIndex> word) {
  CyclicWord best(word.begin(), word.end());
  const std::size_t n = word.size();
  CyclicWord rot(n);
  for (std::size_t s = 1; s < n; ++s) {
    for (std::size_t k = 0; k < n; ++k) rot[k] = word[(s + k) % n];
    if (rot < best) best = rot;
  }
  return best;
}

Potential::Potential(QuiverPtr quiver, int truncation) : quiver_(std::move(quiver)), truncation_(truncation) {
  if (!quiver_) fail(ErrorKind::Internal, "Potential without quiver");
  if (truncation_ < 0) fail(ErrorKind::Malformed, "negative truncation degree");
}

namespace {

void check_cycle(const Quiver& q, std::span<const ArrowIndex> word) {
  if (word.size() < 2) fail(ErrorKind::Malformed, "potential term of degree < 2");
  for (auto a : word) {
    if (a >= q.arrow_count()) fail(ErrorKind::Malformed, "arrow index out of range");
  }
  for (std::size_t k = 0; k + 1 < word.size(); ++k) {
    if (q.arrow(word[k]).source != q.arrow(word[k + 1]).target) {
      fail(ErrorKind::Malformed, "potential term " + format_word(q, word) + " is not a path");
    }
  }
  if (q.arrow(word.back()).source != q.arrow(word.front()).target) {
    fail(ErrorKind::Malformed, "potential term " + format_word(q, word) + " is not a cycle");
  }
  if (word.size() == 2) {
    const Arrow& a = q.arrow(word[0]);
    if (a.source == a.target) fail(ErrorKind::Malformed, "loop term " + format_word(q, word) + " of length 2");
  }
}

}  // namespace

void Potential::add_cycle(std::span<const ArrowIndex> word, const Rational& c) {
  check_cycle(*quiver_, word);
  if (c == 0 || word.size() > static_cast<std::size_t>(truncation_)) return;
  auto [it, inserted] = terms_.try_emplace(canonical_rotation(word), c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Rational Potential::coefficient(std::span<const ArrowIndex> word) const {
  if (word.empty()) return 0;
  auto it = terms_.find(canonical_rotation(word));
  return it == terms_.end() ? Rational(0) : it->second;
}

Potential& Potential::operator+=(const Potential& other) {
  if (!same_quiver(quiver_, other.quiver_)) fail(ErrorKind::Malformed, "potentials over different quivers");
  if (truncation_ != other.truncation_) fail(ErrorKind::Malformed, "mismatched truncation degrees");
  for (const auto& [w, c] : other.terms_) add_cycle(w, c);
  return *this;
}

Potential& Potential::operator-=(const Potential& other) {
  if (!same_quiver(quiver_, other.quiver_)) fail(ErrorKind::Malformed, "potentials over different quivers");
  if (truncation_ != other.truncation_) fail(ErrorKind::Malformed, "mismatched truncation degrees");
  for (const auto& [w, c] : other.terms_) add_cycle(w, -c);
  return *this;
}

Potential& Potential::operator*=(const Rational& scalar) {
  if (scalar == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, c] : terms_) c *= scalar;
  return *this;
}

PathSeries Potential::as_series() const {
  PathSeries out(quiver_, truncation_);
  for (const auto& [w, c] : terms_) out.add_term(Path{quiver_->arrow(w.back()).source, w}, c);
  return out;
}

bool Potential::operator==(const Potential& other) const {
  return same_quiver(quiver_, other.quiver_) && truncation_ == other.truncation_ && terms_ == other.terms_;
}

std::string Potential::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, c] : terms_) {
    append_term(os, first, c, format_word(*quiver_, w));
    first = false;
  }
  return os.str();
}

Potential cyclic_normal_form(const PathSeries& x) {
  Potential w(x.quiver_ptr(), x.truncation());
  const Quiver& q = x.quiver();
  for (const auto& [p, c] : x.terms()) {
    if (p.lazy()) fail(ErrorKind::Malformed, "potential term of degree < 2");
    if (p.source(q) != p.target(q)) fail(ErrorKind::Malformed, "non-cyclic path " + format_path(q, p));
    w.add_cycle(p.arrows, c);
  }
  return w;
}

PathSeries cyclic_derivative(const Potential& w, ArrowIndex a) {
  const Quiver& q = w.quiver();
  if (a >= q.arrow_count()) fail(ErrorKind::Malformed, "unknown arrow index " + std::to_string(a));
  PathSeries out(w.quiver_ptr(), w.truncation());
  for (const auto& [word, c] : w.terms()) {
    const std::size_t n = word.size();
    for (std::size_t k = 0; k < n; ++k) {
      if (word[k] != a) continue;
      std::vector<ArrowIndex> rest;
      rest.reserve(n - 1);
      rest.insert(rest.end(), word.begin() + static_cast<std::ptrdiff_t>(k) + 1, word.end());
      rest.insert(rest.end(), word.begin(), word.begin() + static_cast<std::ptrdiff_t>(k));
      VertexIndex src = q.arrow(rest.back()).source;
      out.add_term(Path{src, std::move(rest)}, c);
    }
  }
  return out;
}

PathSeries commutator_sum(const Potential& w) {
  PathSeries out(w.quiver_ptr(), w.truncation());
  for (ArrowIndex a = 0; a < w.quiver().arrow_count(); ++a) {
    PathSeries da = cyclic_derivative(w, a);
    if (da.is_zero()) continue;
    PathSeries arr = PathSeries::arrow(w.quiver_ptr(), w.truncation(), a);
    out += arr * da;
    out -= da * arr;
  }
  return out;
}

// ---------------------------------------------------------------------------

ArrowSubstitution::ArrowSubstitution(QuiverPtr quiver, int truncation)
    : quiver_(std::move(quiver)), truncation_(truncation) {
  if (!quiver_) fail(ErrorKind::Internal, "ArrowSubstitution without quiver");
}

void ArrowSubstitution::assign(ArrowIndex a, PathSeries image) {
  const Quiver& q = *quiver_;
  if (a >= q.arrow_count()) fail(ErrorKind::Malformed, "unknown arrow index " + std::to_string(a));
  if (!same_quiver(quiver_, image.quiver_ptr())) fail(ErrorKind::Malformed, "substitution image over another quiver");
  if (image.truncation() != truncation_) fail(ErrorKind::Malformed, "mismatched truncation degrees");
  const Arrow& arr = q.arrow(a);
  for (const auto& [p, c] : image.terms()) {
    if (p.lazy()) fail(ErrorKind::Malformed, "substitution image of '" + arr.id + "' contains a lazy path");
    if (p.source(q) != arr.source || p.target(q) != arr.target) {
      fail(ErrorKind::Malformed, "endpoint mismatch in substitution image of '" + arr.id + "': " + format_path(q, p));
    }
  }
  assignment_.insert_or_assign(a, std::move(image));
}

PathSeries ArrowSubstitution::image(ArrowIndex a) const {
  auto it = assignment_.find(a);
  if (it != assignment_.end()) return it->second;
  return PathSeries::arrow(quiver_, truncation_, a);
}

PathSeries ArrowSubstitution::apply(const PathSeries& x) const {
  if (!same_quiver(quiver_, x.quiver_ptr())) fail(ErrorKind::Malformed, "substitution over another quiver");
  if (x.truncation() != truncation_) fail(ErrorKind::Malformed, "mismatched truncation degrees");
  PathSeries out(quiver_, truncation_);
  std::unordered_map<ArrowIndex, PathSeries> cache;
  auto img = [&](ArrowIndex a) -> const PathSeries& {
    auto it = cache.find(a);
    if (it == cache.end()) it = cache.emplace(a, image(a)).first;
    return it->second;
  };
  for (const auto& [p, c] : x.terms()) {
    if (p.lazy()) {
      out.add_term(p, c);
      continue;
    }
    bool touched = std::any_of(p.arrows.begin(), p.arrows.end(), [&](ArrowIndex a) { return touches(a); });
    if (!touched) {
      out.add_term(p, c);
      continue;
    }
    PathSeries acc = img(p.arrows.front());
    for (std::size_t k = 1; k < p.arrows.size() && !acc.is_zero(); ++k) acc = acc * img(p.arrows[k]);
    acc *= c;
    out += acc;
  }
  return out;
}

Potential ArrowSubstitution::apply(const Potential& w) const { return cyclic_normal_form(apply(w.as_series())); }

std::string format_path(const Quiver& q, const Path& p) {
  if (p.lazy()) return "e_" + q.vertex_id(p.vertex);
  return format_word(q, p.arrows);
}

std::string format_word(const Quiver& q, std::span<const ArrowIndex> word) {
  std::string out;
  for (std::size_t k = 0; k < word.size(); ++k) {
    if (k) out += '*';
    out += q.arrow(word[k]).id;
  }
  return out;
}

}  // namespace iqp
