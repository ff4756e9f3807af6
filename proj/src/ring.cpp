#include "robexplore/ring.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>

#include "robexplore/fault_line.hpp"
#include "robexplore/multi_line.hpp"
#include "robexplore/single_robot.hpp"
#include "robexplore/snapshot.hpp"

namespace robexplore {

namespace {

int wrap(int v, int n) { return ((v % n) + n) % n; }

int ring_node_at(const std::vector<ExactNumber>& coordinates, const ExactNumber& circumference, const ExactNumber& x) {
  const ExactNumber point = x.mod(circumference);
  const auto it = std::lower_bound(coordinates.begin(), coordinates.end(), point);
  return static_cast<int>(it - coordinates.begin());
}

LabelForest labels_from(const SnapshotGraph& graph, std::span<const int> starts, std::span<const ExactNumber> deadlines,
                        const std::optional<Window>& window = std::nullopt) {
  std::vector<NodeId> sources;
  for (int s : starts) sources.push_back(graph.source(s));
  return propagate(graph, init_start(sources, graph), deadlines, window);
}

// Segment times of one robot inside its window, indexed by offsets from the anchor.
struct WindowTable {
  Window window;
  int start_offset = 0;
  std::vector<ExactNumber> values;

  const ExactNumber& at(int n, int first, int last) const {
    const int i = wrap(first - window.anchor, n);
    const int j = wrap(last - window.anchor, n);
    return values[static_cast<std::size_t>(i) * window.length + j];
  }
};

}  // namespace

Verdict solve_ring_fixed(const RingInstance& ring, std::span<const int> positions) {
  const int n = ring.size();
  const int k = static_cast<int>(positions.size());
  if (k == 0) throw std::invalid_argument("solve_ring_fixed: at least one robot is required");
  std::vector<int> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return positions[a] < positions[b]; });
  std::vector<int> q(k);
  for (int r = 0; r < k; ++r) {
    q[r] = positions[order[r]];
    if (q[r] < 0 || q[r] >= n) throw std::invalid_argument("solve_ring_fixed: robot position out of range");
    if (r > 0 && q[r] == q[r - 1]) throw std::invalid_argument("solve_ring_fixed: robot positions must be distinct");
  }

  const auto graph = SnapshotGraph::ring(ring);
  Verdict out;
  out.placement.assign(positions.begin(), positions.end());
  out.schedule.circumference = ring.circumference();

  if (k == 1) {
    const auto labels = labels_from(graph, q, ring.deadlines);
    const auto target = best_state(graph, labels, q[0], wrap(q[0] - 1, n));
    if (!target) return out;
    out.feasible = true;
    out.optimum = labels.time[*target];
    out.schedule.robots.push_back(extract_trajectory(graph, labels, *target));
    return out;
  }

  auto window_of = [&](int r) {
    const int prev = q[wrap(r - 1, k)];
    const int next = q[(r + 1) % k];
    return Window{(prev + 1) % n, wrap(next - prev - 1, n)};
  };
  std::vector<WindowTable> tables(k);
  for (int r = 0; r < k; ++r) {
    auto& t = tables[r];
    t.window = window_of(r);
    t.start_offset = wrap(q[r] - t.window.anchor, n);
    t.values.assign(static_cast<std::size_t>(t.window.length) * t.window.length, ExactNumber::infinity());
    const auto labels = labels_from(graph, std::span(&q[r], 1), ring.deadlines, t.window);
    for (int i = 0; i <= t.start_offset; ++i) {
      for (int j = t.start_offset; j < t.window.length; ++j) {
        t.values[static_cast<std::size_t>(i) * t.window.length + j] =
            optimal_time(graph, labels, (t.window.anchor + i) % n, (t.window.anchor + j) % n);
      }
    }
  }

  int closest = 0;
  for (int r = 1; r < k; ++r) {
    if (wrap(q[(r + 1) % k] - q[r], n) < wrap(q[(closest + 1) % k] - q[closest], n)) closest = r;
  }
  const int gap = wrap(q[(closest + 1) % k] - q[closest], n);

  PrefixSplit best;
  int best_first = 0;
  for (int e = 0; e < gap; ++e) {
    // Cutting edge (c, c+1) leaves a line that starts at node c+1.
    const int first = (q[closest] + e + 1) % n;
    auto robot = [&](int t) { return (closest + 1 + t) % k; };
    std::vector<int> line_positions(k);
    for (int t = 0; t < k; ++t) line_positions[t] = wrap(q[robot(t)] - first, n);
    auto split = prefix_split(n, line_positions, [&](int t, int m, int j) {
      return tables[robot(t)].at(n, (first + m) % n, (first + j) % n);
    });
    if (split.optimum < best.optimum) {
      best = std::move(split);
      best_first = first;
    }
  }
  out.optimum = best.optimum;
  if (best.optimum.is_infinite()) return out;
  out.feasible = true;
  out.schedule.robots.resize(k);
  for (int t = 0; t < k; ++t) {
    const int r = (closest + 1 + t) % k;
    const auto labels = labels_from(graph, std::span(&q[r], 1), ring.deadlines, tables[r].window);
    const int i = (best_first + best.intervals[t].first) % n;
    const int j = (best_first + best.intervals[t].second) % n;
    out.schedule.robots[order[r]] = extract_trajectory(graph, labels, *best_state(graph, labels, i, j));
    out.idle_edges.push_back(j);
  }
  std::sort(out.idle_edges.begin(), out.idle_edges.end());
  return out;
}

namespace {

// T^(r) over counterclockwise segments (start i, len nodes) with len < n, and
// the whole-ring value.
struct RingEntry {
  int robots = 1;
  int left = -1;
  int right = -1;
  std::vector<ExactNumber> table;  // i * n + len
  ExactNumber full = ExactNumber::infinity();
  enum class Whole { Leaf, Split, LeftOnly, RightOnly, PerNode } whole = Whole::Leaf;
  int whole_start = 0;
  int whole_split = 0;
};

class RingTables {
 public:
  RingTables(const RingInstance& ring, int k, int cap)
      : n_(ring.size()), cap_(cap), graph_(SnapshotGraph::ring(ring)) {
    std::vector<int> all(n_);
    std::iota(all.begin(), all.end(), 0);
    labels_ = labels_from(graph_, all, ring.deadlines);

    RingEntry single;
    single.table.assign(static_cast<std::size_t>(n_) * n_, ExactNumber::infinity());
    for (int i = 0; i < n_; ++i) {
      single.table[index(i, 0)] = 0;
      for (int len = 1; len < n_ && len <= cap_; ++len) {
        single.table[index(i, len)] = optimal_time(graph_, labels_, i, (i + len - 1) % n_);
      }
    }
    if (cap_ >= n_) single.full = optimal_time(graph_, labels_, 0, n_ - 1);
    entries_.push_back(std::move(single));

    const int robots = std::clamp(k, 1, n_);
    const int top = std::bit_width(static_cast<unsigned>(robots)) - 1;
    for (int power = 1; power <= top; ++power) combine(power - 1, power - 1);
    result_ = top;
    for (int digit = top - 1; digit >= 0; --digit) {
      if (robots & (1 << digit)) result_ = combine(result_, digit);
    }
  }

  const ExactNumber& optimum() const { return entries_[result_].full; }

  // Single-robot pieces (start, len) covering the ring for the result entry.
  std::vector<std::pair<int, int>> pieces() const {
    std::vector<std::pair<int, int>> out;
    decompose(result_, 0, n_, out);
    return out;
  }

  const SnapshotGraph& graph() const { return graph_; }
  const LabelForest& labels() const { return labels_; }

 private:
  std::size_t index(int i, int len) const { return static_cast<std::size_t>(i) * n_ + len; }

  SplitChoice split_of(const RingEntry& a, const RingEntry& b, int i, int len) const {
    return crossing_min(
        0, len, [&](int s) -> const ExactNumber& { return a.table[index(i, s)]; },
        [&](int s) -> const ExactNumber& { return b.table[index((i + s) % n_, len - s)]; });
  }

  int combine(int left, int right) {
    RingEntry e;
    const RingEntry& a = entries_[left];
    const RingEntry& b = entries_[right];
    e.robots = a.robots + b.robots;
    e.left = left;
    e.right = right;
    e.table.assign(static_cast<std::size_t>(n_) * n_, ExactNumber::infinity());
    for (int i = 0; i < n_; ++i) {
      e.table[index(i, 0)] = 0;
      for (int len = 1; len < n_; ++len) {
        e.table[index(i, len)] = len <= e.robots ? ExactNumber(0) : split_of(a, b, i, len).value;
      }
    }
    if (n_ <= e.robots) {
      e.full = 0;
      e.whole = RingEntry::Whole::PerNode;
    } else {
      e.full = a.full;
      e.whole = RingEntry::Whole::LeftOnly;
      if (b.full < e.full) {
        e.full = b.full;
        e.whole = RingEntry::Whole::RightOnly;
      }
      for (int i = 0; i < n_; ++i) {
        for (int s = 1; s < n_; ++s) {
          const ExactNumber v = max(a.table[index(i, s)], b.table[index((i + s) % n_, n_ - s)]);
          if (v < e.full) {
            e.full = v;
            e.whole = RingEntry::Whole::Split;
            e.whole_start = i;
            e.whole_split = s;
          }
        }
      }
    }
    entries_.push_back(std::move(e));
    return static_cast<int>(entries_.size()) - 1;
  }

  void decompose(int e, int i, int len, std::vector<std::pair<int, int>>& out) const {
    if (len == 0) return;
    const RingEntry& entry = entries_[e];
    if (len <= entry.robots) {
      for (int v = 0; v < len; ++v) out.emplace_back((i + v) % n_, 1);
      return;
    }
    if (entry.left < 0) {
      out.emplace_back(i, len);
      return;
    }
    if (len < n_) {
      const int s = split_of(entries_[entry.left], entries_[entry.right], i, len).split;
      decompose(entry.left, i, s, out);
      decompose(entry.right, (i + s) % n_, len - s, out);
      return;
    }
    switch (entry.whole) {
      case RingEntry::Whole::LeftOnly: decompose(entry.left, i, len, out); break;
      case RingEntry::Whole::RightOnly: decompose(entry.right, i, len, out); break;
      case RingEntry::Whole::Split:
        decompose(entry.left, entry.whole_start, entry.whole_split, out);
        decompose(entry.right, (entry.whole_start + entry.whole_split) % n_, n_ - entry.whole_split, out);
        break;
      default: break;
    }
  }

  int n_;
  int cap_;
  SnapshotGraph graph_;
  LabelForest labels_;
  std::vector<RingEntry> entries_;
  int result_ = 0;
};

}  // namespace

Verdict solve_ring_free(const RingInstance& ring, int k, std::optional<int> max_segment) {
  if (k < 1) throw std::invalid_argument("solve_ring_free: at least one robot is required");
  const int n = ring.size();
  const RingTables tables(ring, k, max_segment.value_or(n));
  Verdict out;
  out.optimum = tables.optimum();
  out.schedule.circumference = ring.circumference();
  if (out.optimum.is_infinite()) return out;
  out.feasible = true;
  const auto coordinates = ring.node_coordinates();
  const auto& graph = tables.graph();
  const auto& labels = tables.labels();
  for (const auto& [start, len] : tables.pieces()) {
    const auto target = best_state(graph, labels, start, (start + len - 1) % n);
    auto trajectory = extract_trajectory(graph, labels, *target);
    out.placement.push_back(ring_node_at(coordinates, *out.schedule.circumference, trajectory.start));
    if (len < n) out.idle_edges.push_back((start + len - 1) % n);
    out.schedule.robots.push_back(std::move(trajectory));
  }
  std::sort(out.idle_edges.begin(), out.idle_edges.end());
  while (static_cast<int>(out.schedule.robots.size()) < k) {
    out.placement.push_back(0);
    out.schedule.robots.push_back(RobotTrajectory::stationary(0));
  }
  return out;
}

std::vector<int> ExpandedRing::permitted_starts(std::span<const int> positions) const {
  std::vector<int> starts;
  for (int p : positions) {
    for (int c = 0; c < copies; ++c) starts.push_back(p + c * original_size);
  }
  std::sort(starts.begin(), starts.end());
  starts.erase(std::unique(starts.begin(), starts.end()), starts.end());
  return starts;
}

ExpandedRing expand_ring(const RingInstance& ring, int f) {
  if (f < 0) throw std::invalid_argument("expand_ring: f must be non-negative");
  ExpandedRing out;
  out.original_size = ring.size();
  out.copies = f + 1;
  for (int c = 0; c <= f; ++c) {
    out.ring.edge_weights.insert(out.ring.edge_weights.end(), ring.edge_weights.begin(), ring.edge_weights.end());
    out.ring.deadlines.insert(out.ring.deadlines.end(), ring.deadlines.begin(), ring.deadlines.end());
  }
  return out;
}

Verdict solve_ring_free_faulty(const RingInstance& ring, int k, int f) {
  if (f < 0 || f >= k) throw std::invalid_argument("solve_ring_free_faulty: need 0 <= f < k");
  const ExpandedRing expanded = expand_ring(ring, f);
  Verdict out = solve_ring_free(expanded.ring, k, ring.size());
  for (int& p : out.placement) p = expanded.copy_of(p);
  out.schedule.circumference = ring.circumference();
  for (int& e : out.idle_edges) e = expanded.copy_of(e);
  if (out.feasible) attach_witness(out, coverage_target(ring, f + 1));
  return out;
}

namespace {

struct ExpandedLabels {
  ExpandedRing expanded;
  SnapshotGraph graph;
  LabelForest labels;
};

ExpandedLabels expanded_labels(const RingInstance& ring, std::span<const int> positions, int f,
                               const std::optional<ExactNumber>& bound) {
  ExpandedRing expanded = expand_ring(ring, f);
  const RingInstance capped = with_bound(expanded.ring, bound);
  auto graph = SnapshotGraph::ring(capped);
  auto labels = labels_from(graph, expanded.permitted_starts(positions), capped.deadlines);
  return {std::move(expanded), std::move(graph), std::move(labels)};
}

}  // namespace

GreedyDecision decide_ring_fixed_faulty(const RingInstance& ring, std::span<const int> positions, int f,
                                        const ExactNumber& bound) {
  const int n = ring.size();
  const int k = static_cast<int>(positions.size());
  if (f < 0 || f >= k) throw std::invalid_argument("decide_ring_fixed_faulty: need 0 <= f < k");
  for (int p : positions) {
    if (p < 0 || p >= n) throw std::invalid_argument("decide_ring_fixed_faulty: robot position out of range");
  }
  const auto [expanded, graph, labels] = expanded_labels(ring, positions, f, bound);
  const int big = expanded.ring.size();

  // Longest segment starting at i that some permitted start explores in time.
  std::vector<int> length(big, 0);
  GreedyDecision out;
  out.reach.resize(big);
  for (int i = 0; i < big; ++i) {
    for (int len = std::min(n, big); len >= 1; --len) {
      if (optimal_time(graph, labels, i, (i + len - 1) % big).is_finite()) {
        length[i] = len;
        break;
      }
    }
    out.reach[i] = i + length[i] - 1;
  }

  // Hand the pieces to distinct physical robots: a robot may take a piece if
  // one of its copies inside the piece explores it in time.
  const auto starts = expanded.permitted_starts(positions);
  const RingInstance capped = with_bound(expanded.ring, bound);
  const auto coordinates = ring.node_coordinates();
  std::map<int, LabelForest> single;
  auto labels_of = [&](int s) -> const LabelForest& {
    auto it = single.find(s);
    if (it == single.end()) it = single.emplace(s, labels_from(graph, std::span(&s, 1), capped.deadlines)).first;
    return it->second;
  };
  auto assign = [&](const std::vector<std::pair<int, int>>& pieces) -> std::optional<Verdict> {
    const int m = static_cast<int>(pieces.size());
    std::vector<std::vector<std::pair<int, int>>> options(m);  // (robot, start)
    for (int p = 0; p < m; ++p) {
      const auto [first, len] = pieces[p];
      for (int s : starts) {
        if (wrap(s - first, big) >= len) continue;
        if (optimal_time(graph, labels_of(s), first, (first + len - 1) % big).is_infinite()) continue;
        for (int r = 0; r < k; ++r) {
          if (positions[r] == expanded.copy_of(s)) options[p].emplace_back(r, s);
        }
      }
    }
    std::vector<int> owner(k, -1), chosen(m, -1);
    std::function<bool(int, std::vector<bool>&)> augment = [&](int p, std::vector<bool>& seen) {
      for (const auto& [r, s] : options[p]) {
        if (seen[r]) continue;
        seen[r] = true;
        if (owner[r] < 0 || augment(owner[r], seen)) {
          owner[r] = p;
          chosen[p] = s;
          return true;
        }
      }
      return false;
    };
    for (int p = 0; p < m; ++p) {
      std::vector<bool> seen(k, false);
      if (!augment(p, seen)) return std::nullopt;
    }
    Verdict witness;
    witness.feasible = true;
    witness.placement.assign(positions.begin(), positions.end());
    witness.schedule.circumference = ring.circumference();
    for (int r = 0; r < k; ++r) {
      if (owner[r] < 0) {
        witness.schedule.robots.push_back(RobotTrajectory::stationary(coordinates[positions[r]]));
        continue;
      }
      const auto [first, len] = pieces[owner[r]];
      const auto& own = labels_of(chosen[owner[r]]);
      witness.schedule.robots.push_back(
          extract_trajectory(graph, own, *best_state(graph, own, first, (first + len - 1) % big)));
    }
    auto report = verify_schedule(coverage_target(ring, f + 1, bound), witness.schedule);
    if (!report.pass) return std::nullopt;
    witness.optimum = coverage_value(report, f + 1);
    witness.witness = std::move(report.on_time);
    return witness;
  };

  // The answer is decided by the first cut the greedy covers; later covered
  // cuts are still tried when that cut's pieces have no witness.
  std::vector<std::pair<int, int>> pieces;
  for (int cut = 0; cut < n && !out.witness; ++cut) {
    pieces.clear();
    const int last = cut + big - 1;
    int end = cut - 1;
    bool covered = false;
    for (int r = 0; r < k && !covered; ++r) {
      const int from = end + 1;
      const int len = length[from % big];
      if (len == 0) break;
      pieces.emplace_back(from % big, len);
      end = from + len - 1;
      covered = end >= last;
    }
    if (!covered) continue;
    if (!out.yes) {
      out.yes = true;
      out.cut = cut;
    }
    out.witness = assign(pieces);
  }
  return out;
}

std::vector<ExactNumber> ring_candidate_times(const RingInstance& ring, std::span<const int> positions, int f) {
  const auto [expanded, graph, labels] = expanded_labels(ring, positions, f, std::nullopt);
  std::vector<ExactNumber> values{0};
  for (const auto& t : labels.time) {
    if (t.is_finite()) values.push_back(t);
  }
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

GreedyOptimum solve_ring_fixed_faulty(const RingInstance& ring, std::span<const int> positions, int f) {
  const auto candidates = ring_candidate_times(ring, positions, f);
  GreedyOptimum out;
  int lo = 0, hi = static_cast<int>(candidates.size());
  while (lo < hi) {
    const int mid = lo + (hi - lo) / 2;
    auto decision = decide_ring_fixed_faulty(ring, positions, f, candidates[mid]);
    if (decision.yes) {
      out.value = candidates[mid];
      out.decision = std::move(decision);
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return out;
}

}  // namespace robexplore
