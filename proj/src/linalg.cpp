#include "iqp/linalg.hpp"

#include <algorithm>
#include <map>

#include "iqp/error.hpp"

namespace iqp {

void normalize_row(SparseRow& row) {
  std::sort(row.begin(), row.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  SparseRow out;
  out.reserve(row.size());
  for (auto& [c, v] : row) {
    if (!out.empty() && out.back().first == c) {
      out.back().second += v;
      if (out.back().second == 0) out.pop_back();
    } else if (v != 0) {
      out.emplace_back(c, std::move(v));
    }
  }
  row = std::move(out);
}

void row_axpy(SparseRow& x, const Rational& a, const SparseRow& y) {
  if (a == 0 || y.empty()) return;
  SparseRow out;
  out.reserve(x.size() + y.size());
  auto i = x.begin();
  auto j = y.begin();
  while (i != x.end() || j != y.end()) {
    if (j == y.end() || (i != x.end() && i->first < j->first)) {
      out.push_back(std::move(*i++));
    } else if (i == x.end() || j->first < i->first) {
      out.emplace_back(j->first, a * j->second);
      ++j;
    } else {
      Rational v = i->second + a * j->second;
      if (v != 0) out.emplace_back(i->first, std::move(v));
      ++i;
      ++j;
    }
  }
  x = std::move(out);
}

Rational row_value(const SparseRow& row, Column c) {
  auto it = std::lower_bound(row.begin(), row.end(), c, [](const auto& e, Column k) { return e.first < k; });
  return (it != row.end() && it->first == c) ? it->second : Rational(0);
}

Echelon::Echelon(std::size_t ncols) : pivot_of_(ncols, -1) {}

SparseRow Echelon::reduce(SparseRow row) const {
  if (rows_.empty() || row.empty()) return row;
  // Working copy as an ordered map: eliminating pivot c only touches columns > c.
  std::map<Column, Rational> work;
  for (auto& [c, v] : row) {
    if (c >= pivot_of_.size()) fail(ErrorKind::Internal, "column out of range in Echelon::reduce");
    work.emplace(c, std::move(v));
  }
  auto it = work.begin();
  while (it != work.end()) {
    long r = pivot_of_[it->first];
    if (r < 0) {
      ++it;
      continue;
    }
    Rational f = -it->second;
    Column c0 = it->first;
    const SparseRow& prow = rows_[static_cast<std::size_t>(r)];
    for (const auto& [c, v] : prow) {
      auto [slot, inserted] = work.try_emplace(c, f * v);
      if (!inserted) {
        slot->second += f * v;
        if (slot->second == 0 && c != c0) work.erase(slot);
      }
    }
    it = work.erase(work.find(c0));
  }
  SparseRow out;
  out.reserve(work.size());
  for (auto& [c, v] : work) out.emplace_back(c, std::move(v));
  return out;
}

std::optional<std::size_t> Echelon::insert(SparseRow row) {
  normalize_row(row);
  SparseRow red = reduce(std::move(row));
  if (red.empty()) return std::nullopt;
  Rational inv = 1 / red.front().second;
  for (auto& [c, v] : red) v *= inv;
  pivot_of_[red.front().first] = static_cast<long>(rows_.size());
  rows_.push_back(std::move(red));
  return rows_.size() - 1;
}

std::size_t sparse_rank(const std::vector<SparseRow>& rows, std::size_t ncols) {
  Echelon e(ncols);
  for (const auto& r : rows) e.insert(r);
  return e.rank();
}

}  // namespace iqp
