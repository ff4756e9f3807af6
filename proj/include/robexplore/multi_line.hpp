#pragma once

#include <functional>
#include <span>
#include <vector>

#include "robexplore/exact.hpp"
#include "robexplore/instance.hpp"
#include "robexplore/single_robot.hpp"
#include "robexplore/verdict.hpp"

namespace robexplore {

/// Prefix recurrence over a line of n nodes with robots at sorted distinct
/// positions: F(j) = min over m in (p[r-1], p[r]] of max(F(m-1), cost(r, m, j)),
/// where r is the last robot with p[r] <= j and F(-1) = 0.
struct PrefixSplit {
  ExactNumber optimum = ExactNumber::infinity();
  /// Interval [first, last] handled by each robot, in position order.
  std::vector<std::pair<int, int>> intervals;
};
using IntervalCost = std::function<ExactNumber(int robot, int first, int last)>;
PrefixSplit prefix_split(int n, std::span<const int> sorted_positions, const IntervalCost& cost);

/// Robots at distinct line nodes. Each robot works inside the nodes strictly
/// between its neighbours' starts, and the best idle-edge split is chosen.
/// Throws std::invalid_argument on duplicate or out-of-range positions.
Verdict solve_fixed(const LineInstance& line, std::span<const int> positions);

struct SplitChoice {
  ExactNumber value = 0;
  int split = 0;  // left piece is [i, split], right piece [split + 1, j]
};

/// min over k in [lo, hi] of max(f(k), g(k)) for f nondecreasing and g
/// nonincreasing with g(hi) = 0. Leftmost minimiser.
template <typename F, typename G>
SplitChoice crossing_min(int lo, int hi, F&& f, G&& g) {
  const int first = lo;
  // Smallest k with f(k) >= g(k).
  while (lo < hi) {
    const int mid = lo + (hi - lo) / 2;
    if (f(mid) >= g(mid)) hi = mid;
    else lo = mid + 1;
  }
  const int k = lo;
  ExactNumber at_k = max(f(k), g(k));
  if (k == first || at_k < g(k - 1)) return {std::move(at_k), k};
  // Left of k the value is g, so take the first split where g falls to g(k - 1).
  ExactNumber target = g(k - 1);
  lo = first;
  hi = k - 1;
  while (lo < hi) {
    const int mid = lo + (hi - lo) / 2;
    if (g(mid) <= target) hi = mid;
    else lo = mid + 1;
  }
  return {std::move(target), lo};
}

/// min over split k in [i-1, j] of max(A[i][k], B[k+1][j]) with empty pieces
/// costing 0, found by a crossing search. Returns 0 when j - i + 1 <= ra + rb.
/// Among equal values the leftmost split wins.
SplitChoice opt_time(const IntervalTable& a, int ra, const IntervalTable& b, int rb, int i, int j);

/// T^(r) tables built by doubling and then combining along the binary digits of r.
struct RankedTables {
  struct Entry {
    int robots = 1;
    IntervalTable table;
    int left = -1;   // index of the left operand, -1 for the single-robot table
    int right = -1;
  };
  IntervalTableResult single;
  std::vector<Entry> entries;
  int result = 0;  // entry holding T^(k)
};
RankedTables ranked_tables(const LineInstance& line, int k);

/// k robots placed anywhere on the line. Uses min(k, n) working robots; spare
/// robots stay on node 0.
Verdict solve_free(const LineInstance& line, int k);

/// k robots, each starting at a node of `allowed` (repeats permitted).
Verdict solve_subset(const LineInstance& line, int k, std::span<const int> allowed);

}  // namespace robexplore
