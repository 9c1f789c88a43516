#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

namespace pumldiff {

/// Dense row-major cost matrix with integer costs.
class CostMatrix {
 public:
  CostMatrix() = default;
  CostMatrix(std::size_t rows, std::size_t cols, std::int64_t fill = 0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::int64_t& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  std::int64_t operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  CostMatrix transposed() const {
    CostMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::int64_t> data_;
};

/// Result of a rectangular assignment: min(rows, cols) (row, col) pairs,
/// sorted by row.
struct Assignment {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::int64_t total_cost = 0;
};

namespace detail {

// Shortest augmenting path solver for rows <= cols (Jonker-Volgenant family,
// in the rectangular form described by Crouse). Exact for integer costs.
inline Assignment solve_wide(const CostMatrix& cost) {
  const std::size_t nr = cost.rows();
  const std::size_t nc = cost.cols();
  constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max();
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  std::vector<std::int64_t> u(nr, 0), v(nc, 0), shortest(nc);
  std::vector<std::size_t> path(nc, kNone), col4row(nr, kNone), row4col(nc, kNone), remaining(nc);
  std::vector<char> seen_row(nr), seen_col(nc);

  for (std::size_t cur = 0; cur < nr; ++cur) {
    std::fill(seen_row.begin(), seen_row.end(), 0);
    std::fill(seen_col.begin(), seen_col.end(), 0);
    std::fill(shortest.begin(), shortest.end(), kInf);
    // scanned in descending column order; a tie with a free column replaces
    // the current best, so equal reduced costs go to the lowest free column
    std::size_t num_remaining = nc;
    for (std::size_t it = 0; it < nc; ++it) remaining[it] = nc - it - 1;

    std::int64_t min_val = 0;
    std::size_t i = cur;
    std::size_t sink = kNone;
    while (sink == kNone) {
      std::size_t index = kNone;
      std::int64_t lowest = kInf;
      seen_row[i] = 1;
      for (std::size_t it = 0; it < num_remaining; ++it) {
        std::size_t j = remaining[it];
        std::int64_t reduced = min_val + cost(i, j) - u[i] - v[j];
        if (reduced < shortest[j]) {
          path[j] = i;
          shortest[j] = reduced;
        }
        if (shortest[j] < lowest || (shortest[j] == lowest && row4col[j] == kNone)) {
          lowest = shortest[j];
          index = it;
        }
      }
      min_val = lowest;
      std::size_t j = remaining[index];
      if (row4col[j] == kNone) {
        sink = j;
      } else {
        i = row4col[j];
      }
      seen_col[j] = 1;
      remaining[index] = remaining[--num_remaining];
    }

    u[cur] += min_val;
    for (std::size_t r = 0; r < nr; ++r) {
      if (seen_row[r] && r != cur) u[r] += min_val - shortest[col4row[r]];
    }
    for (std::size_t c = 0; c < nc; ++c) {
      if (seen_col[c]) v[c] -= min_val - shortest[c];
    }
    std::size_t j = sink;
    while (true) {
      std::size_t r = path[j];
      row4col[j] = r;
      std::swap(col4row[r], j);
      if (r == cur) break;
    }
  }

  Assignment out;
  for (std::size_t r = 0; r < nr; ++r) {
    out.pairs.emplace_back(r, col4row[r]);
    out.total_cost += cost(r, col4row[r]);
  }
  return out;
}

}  // namespace detail

/// Minimum-cost matching of the smaller side into the larger. Every row (if
/// rows <= cols) or every column (otherwise) is matched exactly once.
inline Assignment linear_sum_assignment(const CostMatrix& cost) {
  if (cost.rows() == 0 || cost.cols() == 0) return {};
  if (cost.rows() <= cost.cols()) return detail::solve_wide(cost);
  Assignment t = detail::solve_wide(cost.transposed());
  for (auto& [r, c] : t.pairs) std::swap(r, c);
  std::sort(t.pairs.begin(), t.pairs.end());
  return t;
}

}  // namespace pumldiff
