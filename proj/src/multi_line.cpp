#include "robexplore/multi_line.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

namespace robexplore {

namespace {

int node_at(const LineInstance& line, const ExactNumber& x) {
  const auto it = std::lower_bound(line.coordinates.begin(), line.coordinates.end(), x);
  return static_cast<int>(it - line.coordinates.begin());
}

std::vector<int> idle_between(const std::vector<std::pair<int, int>>& intervals) {
  auto sorted = intervals;
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> idle;
  for (std::size_t r = 1; r < sorted.size(); ++r) idle.push_back(sorted[r - 1].second);
  return idle;
}

// Values of one robot's table restricted to i in [lo, p], j in [p, hi].
class LocalTable {
 public:
  LocalTable(int lo, int p, int hi) : lo_(lo), p_(p), width_(hi - p + 1), values_((p - lo + 1) * width_) {}
  ExactNumber& at(int i, int j) { return values_[(i - lo_) * width_ + (j - p_)]; }
  const ExactNumber& at(int i, int j) const { return values_[(i - lo_) * width_ + (j - p_)]; }

 private:
  int lo_, p_, width_;
  std::vector<ExactNumber> values_;
};

LabelForest window_labels(const SnapshotGraph& graph, const LineInstance& line, int start, int lo, int hi) {
  const NodeId source = graph.source(start);
  return propagate(graph, init_start(std::span(&source, 1), graph), line.deadlines, Window{lo, hi - lo + 1});
}

}  // namespace

PrefixSplit prefix_split(int n, std::span<const int> p, const IntervalCost& cost) {
  const int k = static_cast<int>(p.size());
  // best[j + 1] is F(j); choice[j + 1] the first node of the last robot's interval.
  std::vector<ExactNumber> best(n + 1, ExactNumber::infinity());
  std::vector<int> choice(n + 1, -1);
  best[0] = 0;
  int r = -1;
  for (int j = 0; j < n; ++j) {
    while (r + 1 < k && p[r + 1] <= j) ++r;
    if (r < 0) continue;
    const int from = r == 0 ? 0 : p[r - 1] + 1;
    for (int m = from; m <= p[r]; ++m) {
      if (best[m].is_infinite()) continue;
      const ExactNumber t = max(best[m], cost(r, m, j));
      if (t < best[j + 1]) {
        best[j + 1] = t;
        choice[j + 1] = m;
      }
    }
  }
  PrefixSplit out;
  out.optimum = best[n];
  if (out.optimum.is_infinite()) return out;
  out.intervals.resize(k);
  int j = n - 1;
  for (int robot = k - 1; robot >= 0; --robot) {
    const int m = choice[j + 1];
    out.intervals[robot] = {m, j};
    j = m - 1;
  }
  return out;
}

Verdict solve_fixed(const LineInstance& line, std::span<const int> positions) {
  const int n = line.size();
  const int k = static_cast<int>(positions.size());
  if (k == 0) throw std::invalid_argument("solve_fixed: at least one robot is required");
  std::vector<int> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return positions[a] < positions[b]; });
  std::vector<int> p(k);
  for (int r = 0; r < k; ++r) {
    p[r] = positions[order[r]];
    if (p[r] < 0 || p[r] >= n) throw std::invalid_argument("solve_fixed: robot position out of range");
    if (r > 0 && p[r] == p[r - 1]) throw std::invalid_argument("solve_fixed: robot positions must be distinct");
  }
  auto lo = [&](int r) { return r == 0 ? 0 : p[r - 1] + 1; };
  auto hi = [&](int r) { return r + 1 == k ? n - 1 : p[r + 1] - 1; };

  const auto graph = SnapshotGraph::line(line);
  std::vector<LocalTable> tables;
  tables.reserve(k);
  for (int r = 0; r < k; ++r) {
    const auto labels = window_labels(graph, line, p[r], lo(r), hi(r));
    LocalTable& t = tables.emplace_back(lo(r), p[r], hi(r));
    for (int i = lo(r); i <= p[r]; ++i) {
      for (int j = p[r]; j <= hi(r); ++j) t.at(i, j) = optimal_time(graph, labels, i, j);
    }
  }

  const auto split = prefix_split(n, p, [&](int r, int m, int j) { return tables[r].at(m, j); });
  Verdict out;
  out.placement.assign(positions.begin(), positions.end());
  out.optimum = split.optimum;
  if (split.optimum.is_infinite()) return out;
  out.feasible = true;
  out.idle_edges = idle_between(split.intervals);
  out.schedule.robots.resize(k);
  for (int r = 0; r < k; ++r) {
    const auto labels = window_labels(graph, line, p[r], lo(r), hi(r));
    const auto [first, last] = split.intervals[r];
    out.schedule.robots[order[r]] = extract_trajectory(graph, labels, *best_state(graph, labels, first, last));
  }
  return out;
}

SplitChoice opt_time(const IntervalTable& a, int ra, const IntervalTable& b, int rb, int i, int j) {
  if (j - i + 1 <= ra + rb) return {0, std::min(i - 1 + ra, j)};
  const ExactNumber zero = 0;
  return crossing_min(
      i - 1, j, [&](int k) -> const ExactNumber& { return k < i ? zero : a.at(i, k); },
      [&](int k) -> const ExactNumber& { return k >= j ? zero : b.at(k + 1, j); });
}

RankedTables ranked_tables(const LineInstance& line, int k) {
  const int n = line.size();
  const int robots = std::clamp(k, 1, n);
  std::vector<int> all(n);
  std::iota(all.begin(), all.end(), 0);
  RankedTables out;
  out.single = interval_table(line, all);
  out.entries.push_back({1, out.single.table, -1, -1});

  auto combine = [&](int left, int right) {
    const auto& a = out.entries[left];
    const auto& b = out.entries[right];
    RankedTables::Entry e{a.robots + b.robots, IntervalTable(n), left, right};
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) e.table.at(i, j) = opt_time(a.table, a.robots, b.table, b.robots, i, j).value;
    }
    out.entries.push_back(std::move(e));
    return static_cast<int>(out.entries.size()) - 1;
  };

  const int top = std::bit_width(static_cast<unsigned>(robots)) - 1;
  for (int power = 1; power <= top; ++power) combine(power - 1, power - 1);
  int current = top;
  for (int digit = top - 1; digit >= 0; --digit) {
    if (robots & (1 << digit)) current = combine(current, digit);
  }
  out.result = current;
  return out;
}

namespace {

// Splits [i, j] among the robots of entry e; pushes single-robot intervals.
void decompose(const RankedTables& t, int e, int i, int j, std::vector<std::pair<int, int>>& intervals) {
  if (i > j) return;
  const auto& entry = t.entries[e];
  if (j - i + 1 <= entry.robots) {
    for (int v = i; v <= j; ++v) intervals.emplace_back(v, v);
    return;
  }
  if (entry.left < 0) {
    intervals.emplace_back(i, j);
    return;
  }
  const auto& a = t.entries[entry.left];
  const auto& b = t.entries[entry.right];
  const int split = opt_time(a.table, a.robots, b.table, b.robots, i, j).split;
  decompose(t, entry.left, i, split, intervals);
  decompose(t, entry.right, split + 1, j, intervals);
}

Verdict schedule_from_intervals(const LineInstance& line, const IntervalTableResult& single,
                                const std::vector<std::pair<int, int>>& intervals, int k, int spare_start) {
  Verdict out;
  out.feasible = true;
  out.idle_edges = idle_between(intervals);
  for (const auto& [first, last] : intervals) {
    const auto target = best_state(single.graph, single.labels, first, last);
    auto trajectory = extract_trajectory(single.graph, single.labels, *target);
    out.placement.push_back(node_at(line, trajectory.start));
    out.schedule.robots.push_back(std::move(trajectory));
  }
  while (static_cast<int>(out.schedule.robots.size()) < k) {
    out.placement.push_back(spare_start);
    out.schedule.robots.push_back(RobotTrajectory::stationary(line.coordinates[spare_start]));
  }
  return out;
}

}  // namespace

Verdict solve_free(const LineInstance& line, int k) {
  if (k < 1) throw std::invalid_argument("solve_free: at least one robot is required");
  const int n = line.size();
  const auto tables = ranked_tables(line, k);
  const ExactNumber optimum = tables.entries[tables.result].table.at(0, n - 1);
  if (optimum.is_infinite()) return {};
  std::vector<std::pair<int, int>> intervals;
  decompose(tables, tables.result, 0, n - 1, intervals);
  Verdict out = schedule_from_intervals(line, tables.single, intervals, k, 0);
  out.optimum = optimum;
  return out;
}

Verdict solve_subset(const LineInstance& line, int k, std::span<const int> allowed) {
  if (k < 1) throw std::invalid_argument("solve_subset: at least one robot is required");
  const int n = line.size();
  const auto& x = line.coordinates;
  const int robots = std::min(k, n);
  const auto single = interval_table(line, allowed);

  // Several robots may share a start, so a robot can also take an interval
  // that lies to one side of its start: it then sweeps straight across it.
  // cost.at(m, j) is the best of starting inside, or at the nearest allowed
  // node to the left or right; from[m][j] records that start (-1 inside).
  std::vector<bool> is_allowed(n, false);
  for (int a : allowed) is_allowed[a] = true;
  std::vector<int> left_of(n, -1), right_of(n, -1);
  for (int v = 1; v < n; ++v) left_of[v] = is_allowed[v - 1] ? v - 1 : left_of[v - 1];
  for (int v = n - 2; v >= 0; --v) right_of[v] = is_allowed[v + 1] ? v + 1 : right_of[v + 1];
  IntervalTable cost = single.table;
  std::vector<std::vector<int>> from(n, std::vector<int>(n, -1));
  for (int m = 0; m < n; ++m) {
    const int s = left_of[m];
    if (s < 0) continue;
    for (int j = m; j < n && x[j] - x[s] <= line.deadlines[j]; ++j) {
      if (x[j] - x[s] < cost.at(m, j)) {
        cost.at(m, j) = x[j] - x[s];
        from[m][j] = s;
      }
    }
  }
  for (int j = 0; j < n; ++j) {
    const int s = right_of[j];
    if (s < 0) continue;
    for (int m = j; m >= 0 && x[s] - x[m] <= line.deadlines[m]; --m) {
      if (x[s] - x[m] < cost.at(m, j)) {
        cost.at(m, j) = x[s] - x[m];
        from[m][j] = s;
      }
    }
  }

  // best[r][j + 1]: time to explore [0, j] with at most r robots.
  std::vector<std::vector<ExactNumber>> best(robots + 1, std::vector<ExactNumber>(n + 1, ExactNumber::infinity()));
  std::vector<std::vector<int>> choice(robots + 1, std::vector<int>(n + 1, -1));
  best[0][0] = 0;
  for (int r = 1; r <= robots; ++r) {
    best[r][0] = 0;
    for (int j = 0; j < n; ++j) {
      best[r][j + 1] = best[r - 1][j + 1];
      for (int m = 0; m <= j; ++m) {
        if (best[r - 1][m].is_infinite()) continue;
        const ExactNumber v = max(best[r - 1][m], cost.at(m, j));
        if (v < best[r][j + 1]) {
          best[r][j + 1] = v;
          choice[r][j + 1] = m;
        }
      }
    }
  }
  if (best[robots][n].is_infinite()) return {};
  std::vector<std::pair<int, int>> intervals;
  for (int r = robots, j = n - 1; j >= 0; --r) {
    const int m = choice[r][j + 1];
    if (m < 0) continue;
    intervals.emplace_back(m, j);
    j = m - 1;
  }
  std::reverse(intervals.begin(), intervals.end());

  Verdict out;
  out.feasible = true;
  out.optimum = best[robots][n];
  for (const auto& [first, last] : intervals) {
    const int s = from[first][last];
    if (s < 0) {
      const auto target = best_state(single.graph, single.labels, first, last);
      auto trajectory = extract_trajectory(single.graph, single.labels, *target);
      out.placement.push_back(node_at(line, trajectory.start));
      out.schedule.robots.push_back(std::move(trajectory));
      continue;
    }
    const int end = s < first ? last : first;
    out.placement.push_back(s);
    out.schedule.robots.push_back({x[s], {{0, x[s]}, {ExactNumber::distance(x[s], x[end]), x[end]}}});
  }
  // A sweep may cross other robots' intervals, so idle edges come from the paths.
  std::vector<bool> crossed(std::max(n - 1, 0), false);
  for (const auto& robot : out.schedule.robots) {
    ExactNumber lo = robot.start, hi = robot.start;
    for (const auto& w : robot.waypoints) {
      lo = min(lo, w.position);
      hi = max(hi, w.position);
    }
    for (int e = node_at(line, lo); e < node_at(line, hi); ++e) crossed[e] = true;
  }
  for (int e = 0; e + 1 < n; ++e) {
    if (!crossed[e]) out.idle_edges.push_back(e);
  }
  while (static_cast<int>(out.schedule.robots.size()) < k) {
    out.placement.push_back(allowed.front());
    out.schedule.robots.push_back(RobotTrajectory::stationary(x[allowed.front()]));
  }
  return out;
}

}  // namespace robexplore
