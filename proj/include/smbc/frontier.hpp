#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "smbc/channel.hpp"
#include "smbc/errors.hpp"

// Operating points, dominance ordering, Pareto filtering and the
// time-sharing membership test for searched frontiers.

namespace smbc {

// (R0,R1,R2,E1,E2): rates are maximized, leakage thresholds minimized.
struct RateQuintuple {
  double r0 = 0, r1 = 0, r2 = 0;
  double e1 = 0, e2 = 0;

  bool operator==(const RateQuintuple&) const = default;
};

inline bool lex_less(const RateQuintuple& a, const RateQuintuple& b) {
  if (a.r0 != b.r0) return a.r0 < b.r0;
  if (a.r1 != b.r1) return a.r1 < b.r1;
  if (a.r2 != b.r2) return a.r2 < b.r2;
  if (a.e1 != b.e1) return a.e1 < b.e1;
  return a.e2 < b.e2;
}

// p dominates q: no worse in every coordinate, strictly better in one.
inline bool dominates(const RateQuintuple& p, const RateQuintuple& q) {
  if (p.r0 < q.r0 || p.r1 < q.r1 || p.r2 < q.r2) return false;
  if (p.e1 > q.e1 || p.e2 > q.e2) return false;
  return p.r0 > q.r0 || p.r1 > q.r1 || p.r2 > q.r2 || p.e1 < q.e1 ||
         p.e2 < q.e2;
}

// Generic Pareto filter: returns indices of the non-dominated, deduplicated
// entries of `items`, sorted by `less`. O(n * frontier size).
template <typename T, typename Dominates, typename Less>
std::vector<std::size_t> pareto_filter_indices(const std::vector<T>& items,
                                               Dominates&& dom, Less&& less) {
  std::vector<std::size_t> order(items.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return less(items[a], items[b]);
  });
  std::vector<std::size_t> kept;
  for (std::size_t idx : order) {
    if (!kept.empty() && !less(items[kept.back()], items[idx]) &&
        !less(items[idx], items[kept.back()])) {
      continue;  // exact duplicate
    }
    bool dominated = false;
    for (std::size_t k : kept) {
      if (dom(items[k], items[idx])) {
        dominated = true;
        break;
      }
    }
    if (dominated) continue;
    std::erase_if(kept,
                  [&](std::size_t k) { return dom(items[idx], items[k]); });
    kept.push_back(idx);
  }
  std::sort(kept.begin(), kept.end(), [&](std::size_t a, std::size_t b) {
    return less(items[a], items[b]);
  });
  return kept;
}

// A searched frontier: non-dominated quintuples plus, per point, the
// auxiliary conditional that produced it. `hull` optionally lists indices
// of the lower-left convex hull (zero-rate regions).
struct RegionFrontier {
  std::vector<RateQuintuple> points;
  std::vector<AuxConditional> provenance;  // aligned with points
  std::vector<std::size_t> hull;

  bool empty() const { return points.empty(); }
};

enum class Verdict { Inside, OutsideOfFound };

namespace detail {

// Phase-I simplex feasibility for: lambda >= 0, sum lambda = 1,
// sum lambda * rates >= q.rates, sum lambda * leaks <= q.leaks.
// Bland's rule; returns true when the artificial objective reaches ~0.
inline bool time_share_feasible(const std::vector<RateQuintuple>& pts,
                                const RateQuintuple& q) {
  const std::size_t n = pts.size();
  const std::size_t rows = 6;          // 1 convexity + 3 rates + 2 leaks
  const std::size_t slacks = 5;
  const std::size_t cols = n + slacks + rows;  // + artificials
  // row-major tableau [rows x cols+1], last column = RHS
  std::vector<double> tab(rows * (cols + 1), 0.0);
  auto at = [&](std::size_t r, std::size_t c) -> double& {
    return tab[r * (cols + 1) + c];
  };
  // Row 0: sum lambda = 1. Rows 1..3: rates - slack = q_r. Rows 4,5:
  // leaks + slack = q_e.
  for (std::size_t i = 0; i < n; ++i) {
    at(0, i) = 1.0;
    at(1, i) = pts[i].r0;
    at(2, i) = pts[i].r1;
    at(3, i) = pts[i].r2;
    at(4, i) = pts[i].e1;
    at(5, i) = pts[i].e2;
  }
  at(1, n + 0) = -1.0;
  at(2, n + 1) = -1.0;
  at(3, n + 2) = -1.0;
  at(4, n + 3) = 1.0;
  at(5, n + 4) = 1.0;
  const double rhs[rows] = {1.0, q.r0, q.r1, q.r2, q.e1, q.e2};
  for (std::size_t r = 0; r < rows; ++r) at(r, cols) = rhs[r];
  // Flip rows to non-negative RHS, then set the artificial basis.
  std::vector<std::size_t> basis(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    if (at(r, cols) < 0.0) {
      for (std::size_t c = 0; c <= cols; ++c) at(r, c) = -at(r, c);
    }
    at(r, n + slacks + r) = 1.0;
    basis[r] = n + slacks + r;
  }
  // Reduced costs for minimizing the sum of artificials.
  std::vector<double> z(cols + 1, 0.0);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c <= cols; ++c) z[c] += at(r, c);
  }
  const double eps = 1e-12;
  for (;;) {
    // Bland: smallest-index column with positive reduced cost (artificials
    // excluded; their cost coefficient makes them never re-enter).
    std::size_t enter = cols;
    for (std::size_t c = 0; c < n + slacks; ++c) {
      if (z[c] > eps) {
        enter = c;
        break;
      }
    }
    if (enter == cols) break;
    std::size_t leave = rows;
    double best = 0.0;
    for (std::size_t r = 0; r < rows; ++r) {
      if (at(r, enter) > eps) {
        const double ratio = at(r, cols) / at(r, enter);
        if (leave == rows || ratio < best - eps ||
            (ratio < best + eps && basis[r] < basis[leave])) {
          leave = r;
          best = ratio;
        }
      }
    }
    if (leave == rows) break;  // unbounded column: cannot improve
    const double piv = at(leave, enter);
    for (std::size_t c = 0; c <= cols; ++c) at(leave, c) /= piv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == leave) continue;
      const double f = at(r, enter);
      if (f == 0.0) continue;
      for (std::size_t c = 0; c <= cols; ++c) at(r, c) -= f * at(leave, c);
    }
    const double zf = z[enter];
    for (std::size_t c = 0; c <= cols; ++c) z[c] -= zf * at(leave, c);
    basis[leave] = enter;
  }
  return z[cols] <= 1e-9;  // residual infeasibility
}

}  // namespace detail

// INSIDE when q is dominated by a frontier point or by a time-sharing
// (convex) combination of frontier points. The frontier is an inner
// approximation, so OUTSIDE-OF-FOUND is not a proof of infeasibility.
inline Verdict check_point(const RegionFrontier& frontier,
                           const RateQuintuple& q) {
  if (frontier.empty()) {
    throw ValidationError("check_point: empty frontier");
  }
  for (const auto& p : frontier.points) {
    if (dominates(p, q) || p == q) return Verdict::Inside;
  }
  return detail::time_share_feasible(frontier.points, q)
             ? Verdict::Inside
             : Verdict::OutsideOfFound;
}

}  // namespace smbc
