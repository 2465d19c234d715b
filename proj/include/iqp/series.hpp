#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "iqp/quiver.hpp"
#include "iqp/rational.hpp"

namespace iqp {

inline constexpr int kDefaultTruncation = 12;

/// A path a_m ... a_1 stored in written order: arrows[0] = a_m is traversed
/// last, arrows.back() = a_1 first. Written-order concatenation is
/// multiplication. An empty arrow list is the lazy path at `vertex`; for
/// nontrivial paths `vertex` is the source.
struct Path {
  VertexIndex vertex = 0;
  std::vector<ArrowIndex> arrows;

  std::size_t length() const { return arrows.size(); }
  bool lazy() const { return arrows.empty(); }

  static Path lazy_at(VertexIndex v) { return Path{v, {}}; }
  /// Throws Error(Malformed) if consecutive arrows do not compose.
  static Path from_arrows(const Quiver& q, std::vector<ArrowIndex> written);

  VertexIndex source(const Quiver& q) const { return lazy() ? vertex : q.arrow(arrows.back()).source; }
  VertexIndex target(const Quiver& q) const { return lazy() ? vertex : q.arrow(arrows.front()).target; }

  bool operator==(const Path&) const = default;
};

/// Short-lex order: length first, then arrow sequence, then vertex.
struct PathOrder {
  bool operator()(const Path& x, const Path& y) const;
};

struct ShortLex {
  bool operator()(const std::vector<ArrowIndex>& x, const std::vector<ArrowIndex>& y) const {
    if (x.size() != y.size()) return x.size() < y.size();
    return x < y;
  }
};

/// Truncated element of the completed path algebra: finitely many paths of
/// length <= N with nonzero exact coefficients.
class PathSeries {
 public:
  using Terms = std::map<Path, Rational, PathOrder>;

  PathSeries() = default;
  PathSeries(QuiverPtr quiver, int truncation);

  static PathSeries lazy(QuiverPtr quiver, int truncation, VertexIndex v);
  static PathSeries arrow(QuiverPtr quiver, int truncation, ArrowIndex a);
  static PathSeries path(QuiverPtr quiver, int truncation, const Path& p, const Rational& coeff = 1);
  /// Sum of all lazy paths: the unit.
  static PathSeries unit(QuiverPtr quiver, int truncation);

  const QuiverPtr& quiver_ptr() const { return quiver_; }
  const Quiver& quiver() const { return *quiver_; }
  int truncation() const { return truncation_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  Rational coefficient(const Path& p) const;

  /// Adds c*p; paths longer than N are discarded, zero sums erased.
  void add_term(const Path& p, const Rational& c);
  void add_term(Path&& p, const Rational& c);

  PathSeries& operator+=(const PathSeries& other);
  PathSeries& operator-=(const PathSeries& other);
  PathSeries& operator*=(const Rational& scalar);
  friend PathSeries operator+(PathSeries x, const PathSeries& y) { return x += y; }
  friend PathSeries operator-(PathSeries x, const PathSeries& y) { return x -= y; }
  friend PathSeries operator*(PathSeries x, const Rational& s) { return x *= s; }
  friend PathSeries operator*(const Rational& s, PathSeries x) { return x *= s; }
  friend PathSeries operator-(PathSeries x) { return x *= Rational(-1); }

  /// Keeps only the component e_target * this * e_source.
  PathSeries corner(VertexIndex target, VertexIndex source) const;
  /// Lowest path length present (0 for empty series by convention).
  std::size_t order() const;

  bool operator==(const PathSeries& other) const;

  /// Human-readable form: "2 a b - 1/2 e_1".
  std::string to_string() const;

 private:
  void check_compatible(const PathSeries& other) const;

  QuiverPtr quiver_;
  int truncation_ = kDefaultTruncation;
  Terms terms_;
};

/// Product in the truncated path algebra. Throws Error(Malformed) on
/// mismatched quivers or truncation degrees.
PathSeries series_multiply(const PathSeries& x, const PathSeries& y);
inline PathSeries operator*(const PathSeries& x, const PathSeries& y) { return series_multiply(x, y); }

/// Graded commutator x*y - (-1)^{deg x deg y} y*x for homogeneous degrees.
PathSeries graded_commutator(const PathSeries& x, int deg_x, const PathSeries& y, int deg_y);

// ---------------------------------------------------------------------------

using CyclicWord = std::vector<ArrowIndex>;

/// Lexicographically minimal rotation of a written-order cycle.
CyclicWord canonical_rotation(std::span<const ArrowIndex> word);

/// Cyclic-equivalence class of a series of cycles, stored by canonical
/// rotations. Every word has length >= 2, and words containing a loop have
/// length >= 3.
class Potential {
 public:
  using Terms = std::map<CyclicWord, Rational, ShortLex>;

  Potential() = default;
  Potential(QuiverPtr quiver, int truncation);

  const QuiverPtr& quiver_ptr() const { return quiver_; }
  const Quiver& quiver() const { return *quiver_; }
  int truncation() const { return truncation_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Adds c times the cycle `word` (written order, any rotation). Throws
  /// Error(Malformed) for non-cycles or forbidden degrees; words longer than
  /// N are discarded.
  void add_cycle(std::span<const ArrowIndex> word, const Rational& c);
  Rational coefficient(std::span<const ArrowIndex> word) const;

  Potential& operator+=(const Potential& other);
  Potential& operator-=(const Potential& other);
  Potential& operator*=(const Rational& scalar);

  /// The cycles as a series of paths, each word in its canonical rotation.
  PathSeries as_series() const;

  bool operator==(const Potential& other) const;
  std::string to_string() const;

 private:
  QuiverPtr quiver_;
  int truncation_ = kDefaultTruncation;
  Terms terms_;
};

/// Rotates each cycle of `x` to its canonical form and merges coefficients.
/// Throws Error(Malformed) for non-cyclic paths, loops of length 1 and loop
/// terms of length 2.
Potential cyclic_normal_form(const PathSeries& x);

/// Sum over occurrences of `a` in each cyclic word of the rotated word with
/// that occurrence deleted. Throws Error(Malformed) for an unknown arrow.
PathSeries cyclic_derivative(const Potential& w, ArrowIndex a);

/// Sum of all commutators [a, d_a W] over every arrow of the quiver.
PathSeries commutator_sum(const Potential& w);

// ---------------------------------------------------------------------------

/// Continuous algebra morphism fixing the vertices, given by images of
/// arrows. Unassigned arrows map to themselves.
class ArrowSubstitution {
 public:
  ArrowSubstitution() = default;
  ArrowSubstitution(QuiverPtr quiver, int truncation);

  const QuiverPtr& quiver_ptr() const { return quiver_; }
  int truncation() const { return truncation_; }
  const std::map<ArrowIndex, PathSeries>& assignment() const { return assignment_; }

  /// Throws Error(Malformed) if the image has paths with the wrong endpoints
  /// or contains a lazy path.
  void assign(ArrowIndex a, PathSeries image);
  PathSeries image(ArrowIndex a) const;
  bool touches(ArrowIndex a) const { return assignment_.count(a) != 0; }

  PathSeries apply(const PathSeries& x) const;
  Potential apply(const Potential& w) const;

 private:
  QuiverPtr quiver_;
  int truncation_ = kDefaultTruncation;
  std::map<ArrowIndex, PathSeries> assignment_;
};

std::string format_path(const Quiver& q, const Path& p);
std::string format_word(const Quiver& q, std::span<const ArrowIndex> word);

}  // namespace iqp
