#include "robexplore/fault_line.hpp"

#include <algorithm>
#include <string>
#include <unordered_set>

#include "robexplore/multi_line.hpp"
#include "robexplore/snapshot.hpp"

namespace robexplore {

Verdict solve_free_faulty(const LineInstance& line, int k, int f) {
  if (f < 0 || f >= k) throw std::invalid_argument("solve_free_faulty: need 0 <= f < k");
  const int group = k / (f + 1);
  Verdict base = solve_free(line, group);
  if (!base.feasible) return base;
  Verdict out;
  out.feasible = true;
  out.optimum = base.optimum;
  out.idle_edges = base.idle_edges;
  for (int r = 0; r < k; ++r) {
    // Robots past the last full group replay group 1.
    const int copy = r < group * (f + 1) ? r % group : (r - group * (f + 1)) % group;
    out.schedule.robots.push_back(base.schedule.robots[copy]);
    out.placement.push_back(base.placement[copy]);
  }
  attach_witness(out, coverage_target(line, f + 1));
  return out;
}

ExactNumber coverage_value(const VerifyReport& report, int multiplicity) {
  ExactNumber value = 0;
  for (const auto& visits : report.on_time) {
    if (static_cast<int>(visits.size()) < multiplicity) return ExactNumber::infinity();
    std::vector<ExactNumber> times;
    for (const auto& v : visits) times.push_back(v.time);
    std::nth_element(times.begin(), times.begin() + (multiplicity - 1), times.end());
    value = max(value, times[multiplicity - 1]);
  }
  return value;
}

namespace {

struct FrontEntry {
  ExactNumber time;
  boost::dynamic_bitset<> on_time;
  NodeId parent_state = kNoNode;
  int parent_entry = -1;
  Side direction = Side::Left;
};

RobotTrajectory trace(const SnapshotGraph& graph, const std::vector<std::vector<FrontEntry>>& fronts, NodeId state,
                      int entry) {
  std::vector<std::pair<NodeId, int>> chain;
  for (NodeId s = state; s != kNoNode;) {
    chain.emplace_back(s, entry);
    const auto& e = fronts[s][entry];
    s = e.parent_state;
    entry = e.parent_entry;
  }
  std::reverse(chain.begin(), chain.end());
  const ExactNumber start = graph.coordinate(graph.position(chain.front().first));
  RobotTrajectory t{start, {{0, start}}};
  for (std::size_t i = 1; i < chain.size(); ++i) {
    const auto& e = fronts[chain[i].first][chain[i].second];
    const bool last = i + 1 == chain.size();
    if (last || fronts[chain[i + 1].first][chain[i + 1].second].direction != e.direction) {
      t.waypoints.push_back({e.time, graph.coordinate(graph.position(chain[i].first))});
    }
  }
  return t;
}

}  // namespace

std::vector<WalkPlan> maximal_plans(const LineInstance& line, int start, const std::optional<ExactNumber>& bound,
                                    bool strict_bound) {
  const int n = line.size();
  const auto graph = SnapshotGraph::line(line);
  const ExactNumber budget = bound.value_or(ExactNumber::infinity());
  auto in_budget = [&](const ExactNumber& t) { return strict_bound ? t < budget : t <= budget; };

  std::vector<std::vector<FrontEntry>> fronts(graph.node_count());
  {
    FrontEntry root{0, boost::dynamic_bitset<>(n)};
    if (in_budget(0) && 0 <= line.deadlines[start]) root.on_time.set(start);
    fronts[graph.source(start)].push_back(std::move(root));
  }
  for (int layer = 0; layer + 1 < n; ++layer) {
    for (NodeId v = graph.layer_begin(layer); v < graph.layer_end(layer); ++v) {
      for (int e = 0; e < static_cast<int>(fronts[v].size()); ++e) {
        for (const auto& arc : graph.out_arcs(v)) {
          const FrontEntry& from = fronts[v][e];
          ExactNumber t = from.time + arc.weight;
          // Nothing reached after the budget can count, so the walk stops there.
          if (!in_budget(t)) continue;
          FrontEntry next{std::move(t), from.on_time, v, e, arc.direction};
          const int node = graph.new_node(arc.to);
          if (next.time <= line.deadlines[node]) next.on_time.set(node);
          auto& front = fronts[arc.to];
          const bool dominated = std::any_of(front.begin(), front.end(), [&](const FrontEntry& o) {
            return o.time <= next.time && next.on_time.is_subset_of(o.on_time);
          });
          if (dominated) continue;
          std::erase_if(front, [&](const FrontEntry& o) {
            return next.time <= o.time && o.on_time.is_subset_of(next.on_time);
          });
          front.push_back(std::move(next));
        }
      }
    }
  }
  // Erasing only touches fronts of the next layer, which nothing points into yet.

  struct Candidate {
    NodeId state;
    int entry;
    std::size_t count;
  };
  std::vector<Candidate> all;
  for (NodeId v = 0; v < static_cast<NodeId>(fronts.size()); ++v) {
    for (int e = 0; e < static_cast<int>(fronts[v].size()); ++e) all.push_back({v, e, fronts[v][e].on_time.count()});
  }
  std::stable_sort(all.begin(), all.end(), [&](const Candidate& a, const Candidate& b) {
    if (a.count != b.count) return a.count > b.count;
    return fronts[a.state][a.entry].time < fronts[b.state][b.entry].time;
  });
  std::vector<WalkPlan> plans;
  for (const auto& c : all) {
    const auto& entry = fronts[c.state][c.entry];
    const bool covered = std::any_of(plans.begin(), plans.end(),
                                     [&](const WalkPlan& p) { return entry.on_time.is_subset_of(p.on_time); });
    if (covered) continue;
    plans.push_back({entry.time, entry.on_time, trace(graph, fronts, c.state, c.entry)});
  }
  return plans;
}

namespace {

class CoverSearch {
 public:
  CoverSearch(int n, int need, std::vector<int> starts, std::vector<std::vector<WalkPlan>> plans)
      : n_(n), need_(need), starts_(std::move(starts)), plans_(std::move(plans)), counts_(n, 0),
        chosen_(starts_.size(), -1) {
    for (const auto& robot_plans : plans_) {
      boost::dynamic_bitset<> reach(n_);
      for (const auto& p : robot_plans) reach |= p.on_time;
      reach_.push_back(std::move(reach));
    }
  }

  bool run() { return search(0, 0); }
  const std::vector<int>& chosen() const { return chosen_; }

 private:
  int first_short(int from) const {
    for (int v = from; v < n_; ++v) {
      if (counts_[v] < need_) return v;
    }
    return n_;
  }

  bool can_finish(int from) const {
    for (int u = from; u < n_; ++u) {
      int have = counts_[u];
      for (std::size_t r = 0; r < chosen_.size() && have < need_; ++r) {
        if (chosen_[r] < 0 && reach_[r][u]) ++have;
      }
      if (have < need_) return false;
    }
    return true;
  }

  std::string key(int v, int min_robot) const {
    std::string k;
    k.reserve(chosen_.size() + (n_ - v) + 8);
    k += std::to_string(v) + ':' + std::to_string(min_robot) + ':';
    for (int c : chosen_) k += c < 0 ? '0' : '1';
    for (int u = v; u < n_; ++u) k += static_cast<char>('a' + std::min(counts_[u], need_));
    return k;
  }

  void apply(const boost::dynamic_bitset<>& bits, int delta) {
    for (auto u = bits.find_first(); u != boost::dynamic_bitset<>::npos; u = bits.find_next(u)) counts_[u] += delta;
  }

  // Plans of robot r covering v whose coverage of [v, n) no other such plan beats.
  std::vector<int> options(int r, int v) const {
    std::vector<int> picked;
    std::vector<boost::dynamic_bitset<>> suffixes;
    boost::dynamic_bitset<> mask(n_);
    for (int u = v; u < n_; ++u) mask.set(u);
    std::vector<std::pair<std::size_t, int>> order;
    for (int p = 0; p < static_cast<int>(plans_[r].size()); ++p) {
      if (plans_[r][p].on_time[v]) order.emplace_back((plans_[r][p].on_time & mask).count(), p);
    }
    std::stable_sort(order.begin(), order.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    for (const auto& [count, p] : order) {
      auto suffix = plans_[r][p].on_time & mask;
      const bool covered = std::any_of(suffixes.begin(), suffixes.end(),
                                       [&](const boost::dynamic_bitset<>& s) { return suffix.is_subset_of(s); });
      if (covered) continue;
      suffixes.push_back(std::move(suffix));
      picked.push_back(p);
    }
    return picked;
  }

  bool search(int from, int min_robot) {
    const int v = first_short(from);
    if (v == n_) return true;
    if (v != from) min_robot = 0;
    if (!can_finish(v)) return false;
    const std::string k = key(v, min_robot);
    if (failed_.contains(k)) return false;
    const int robots = static_cast<int>(chosen_.size());
    for (int r = min_robot; r < robots; ++r) {
      if (chosen_[r] >= 0 || !reach_[r][v]) continue;
      // Robots sharing a start are interchangeable: only the first free one branches.
      bool twin = false;
      for (int o = min_robot; o < r && !twin; ++o) twin = chosen_[o] < 0 && starts_[o] == starts_[r];
      if (twin) continue;
      for (int p : options(r, v)) {
        chosen_[r] = p;
        apply(plans_[r][p].on_time, +1);
        if (search(v, r + 1)) return true;
        apply(plans_[r][p].on_time, -1);
        chosen_[r] = -1;
      }
    }
    failed_.insert(k);
    return false;
  }

  int n_;
  int need_;
  std::vector<int> starts_;
  std::vector<std::vector<WalkPlan>> plans_;
  std::vector<boost::dynamic_bitset<>> reach_;
  std::vector<int> counts_;
  std::vector<int> chosen_;
  std::unordered_set<std::string> failed_;
};

}  // namespace

Verdict decide_fixed_faulty(const LineInstance& line, std::span<const int> positions, int f,
                            const std::optional<ExactNumber>& bound, const SearchCaps& caps, bool strict_bound) {
  const int n = line.size();
  const int k = static_cast<int>(positions.size());
  if (f < 0 || f >= k) throw std::invalid_argument("decide_fixed_faulty: need 0 <= f < k");
  if (n > caps.max_n || k > caps.max_k) {
    throw SearchRefused("exact search refused: n=" + std::to_string(n) + ", k=" + std::to_string(k) +
                        " exceeds caps n<=" + std::to_string(caps.max_n) + ", k<=" + std::to_string(caps.max_k));
  }
  std::vector<int> starts(positions.begin(), positions.end());
  for (int s : starts) {
    if (s < 0 || s >= n) throw std::invalid_argument("decide_fixed_faulty: robot position out of range");
  }
  const LineInstance capped = with_bound(line, bound);
  std::vector<std::vector<WalkPlan>> plans;
  for (int s : starts) plans.push_back(maximal_plans(capped, s, bound, strict_bound));

  CoverSearch search(n, f + 1, starts, plans);
  Verdict out;
  out.placement = starts;
  if (!search.run()) return out;
  out.feasible = true;
  for (int r = 0; r < k; ++r) {
    const int p = search.chosen()[r];
    out.schedule.robots.push_back(p >= 0 ? plans[r][p].trajectory
                                         : RobotTrajectory::stationary(line.coordinates[starts[r]]));
  }
  auto report = verify_schedule(coverage_target(line, f + 1), out.schedule);
  out.optimum = coverage_value(report, f + 1);
  out.witness = std::move(report.on_time);
  return out;
}

Verdict solve_fixed_faulty(const LineInstance& line, std::span<const int> positions, int f, const SearchCaps& caps) {
  // Any alternating walk has at most n legs, each no longer than the span.
  const ExactNumber ceiling = line.span() * std::max(1, line.size());
  Verdict best = decide_fixed_faulty(line, positions, f, ceiling, caps);
  if (!best.feasible) {
    best.optimum = ExactNumber::infinity();
    return best;
  }
  while (true) {
    Verdict lower = decide_fixed_faulty(line, positions, f, best.optimum, caps, true);
    if (!lower.feasible) return best;
    best = std::move(lower);
  }
}

}  // namespace robexplore
