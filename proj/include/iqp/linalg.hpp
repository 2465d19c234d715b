#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "iqp/rational.hpp"

namespace iqp {

using Column = std::uint32_t;
/// Sparse vector as (column, value) pairs, strictly increasing columns, no zeros.
using SparseRow = std::vector<std::pair<Column, Rational>>;

void normalize_row(SparseRow& row);  // sort, merge duplicates, drop zeros
void row_axpy(SparseRow& x, const Rational& a, const SparseRow& y);  // x += a*y
Rational row_value(const SparseRow& row, Column c);

/// Row echelon basis of a subspace of Q^ncols. Every stored row has leading
/// (lowest) column equal to 1 and a distinct leading column.
class Echelon {
 public:
  explicit Echelon(std::size_t ncols = 0);

  std::size_t columns() const { return pivot_of_.size(); }
  std::size_t rank() const { return rows_.size(); }
  bool is_pivot(Column c) const { return pivot_of_.at(c) >= 0; }
  const SparseRow& pivot_row(Column c) const { return rows_.at(static_cast<std::size_t>(pivot_of_.at(c))); }
  const std::vector<SparseRow>& rows() const { return rows_; }

  /// Eliminates every pivot column from `row` (pivots processed in
  /// increasing order). The result has no entries in pivot columns.
  SparseRow reduce(SparseRow row) const;

  /// Reduces and, if nonzero, adds the scaled row. Returns the index of the
  /// new row in rows().
  std::optional<std::size_t> insert(SparseRow row);

  /// True when `row` lies in the span.
  bool contains(const SparseRow& row) const { return reduce(row).empty(); }

 private:
  std::vector<long> pivot_of_;
  std::vector<SparseRow> rows_;
};

/// Rank of a list of sparse rows over `ncols` columns.
std::size_t sparse_rank(const std::vector<SparseRow>& rows, std::size_t ncols);

}  // namespace iqp
