#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "iqp/linalg.hpp"
#include "iqp/quiver.hpp"
#include "iqp/series.hpp"

namespace iqp {

/// Largest truncation degree accepted by truncated computations. Reads
/// IQP_MAX_TRUNCATION (default 24).
int max_truncation();
/// Throws Error(Limit) if N is negative or exceeds max_truncation().
void check_truncation(int n);

inline constexpr std::size_t kDefaultMaxPaths = 400000;

/// All paths of length <= N, numbered by short-lex order, with arrow
/// multiplication tables.
class PathIndex {
 public:
  PathIndex(QuiverPtr quiver, int truncation, std::size_t max_paths = kDefaultMaxPaths);

  const Quiver& quiver() const { return *quiver_; }
  const QuiverPtr& quiver_ptr() const { return quiver_; }
  int truncation() const { return truncation_; }
  std::size_t size() const { return paths_.size(); }

  const Path& path(Column c) const { return paths_.at(c); }
  int degree(Column c) const { return static_cast<int>(paths_.at(c).length()); }
  Column degree_begin(int d) const { return level_.at(static_cast<std::size_t>(d)); }
  Column degree_end(int d) const { return level_.at(static_cast<std::size_t>(d) + 1); }

  std::optional<Column> find(const Path& p) const;
  Column index(const Path& p) const;

  /// Column of path(c)*a, or -1 if they do not compose or the result is too long.
  std::int64_t right_mul(Column c, ArrowIndex a) const { return right_[c * arrows_ + a]; }
  /// Column of a*path(c), or -1.
  std::int64_t left_mul(ArrowIndex a, Column c) const { return left_[c * arrows_ + a]; }
  /// Column of path(x)*path(y), or -1.
  std::int64_t multiply(Column x, Column y) const;

  SparseRow to_row(const PathSeries& s) const;
  PathSeries to_series(const SparseRow& row) const;

 private:
  struct WordHash {
    std::size_t operator()(const std::vector<ArrowIndex>& w) const noexcept;
  };

  QuiverPtr quiver_;
  int truncation_;
  std::size_t arrows_;
  std::vector<Path> paths_;
  std::vector<Column> level_;
  std::unordered_map<std::vector<ArrowIndex>, Column, WordHash> lookup_;
  std::vector<std::int32_t> right_;
  std::vector<std::int32_t> left_;
};

/// Linear model of k̂Q/(I + m^{N+1}) for the closed two-sided ideal I
/// generated by a list of series. Degree-d dimensions are those of the
/// associated graded pieces m^d/(m^{d+1} + I ∩ m^d).
class TruncatedQuotient {
 public:
  TruncatedQuotient(QuiverPtr quiver, const std::vector<PathSeries>& generators, int truncation,
                    std::size_t max_paths = kDefaultMaxPaths);

  const PathIndex& index() const { return index_; }
  int truncation() const { return index_.truncation(); }
  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t total() const;
  bool stabilized() const;
  std::size_t ideal_rank() const { return ideal_.rank(); }

  /// A path column survives in the quotient when it is not a leading column.
  bool is_basis(Column c) const { return !ideal_.is_pivot(c); }
  std::vector<Column> basis(int degree) const;

  /// Reduction modulo I in k̂Q/m^{N+1}; result supported on basis columns.
  SparseRow normal_form(SparseRow row) const { return ideal_.reduce(std::move(row)); }
  /// Reduction of a homogeneous degree-d row modulo the degree-d leading forms.
  SparseRow graded_normal_form(SparseRow row) const { return leading_.reduce(std::move(row)); }

 private:
  PathIndex index_;
  Echelon ideal_;
  Echelon leading_;
  std::vector<std::size_t> dims_;
};

/// Same as the constructor; validates N against max_truncation().
TruncatedQuotient truncated_quotient(const IceQuiver& iq, const std::vector<PathSeries>& generators, int truncation);

/// Per-degree count of surviving basis paths with both endpoints in the set.
std::vector<std::size_t> corner_dims(const TruncatedQuotient& q, const std::vector<VertexIndex>& idempotents);
/// Throws Error(Malformed) for an unknown vertex id.
std::vector<std::size_t> corner_dims(const TruncatedQuotient& q, const std::vector<VertexId>& idempotents);

/// True when the last ceil(N/4) degrees of `dims` (indexed 0..N) vanish.
bool zero_tail(const std::vector<std::size_t>& dims);

}  // namespace iqp
