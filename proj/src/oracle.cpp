#include "robexplore/oracle.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <string>

#include "robexplore/fault_line.hpp"

namespace robexplore {

Track Track::line(const LineInstance& line) {
  Track t;
  t.n_ = line.size();
  t.coordinates_ = line.coordinates;
  return t;
}

Track Track::ring(const RingInstance& ring) {
  Track t;
  t.n_ = ring.size();
  t.coordinates_ = ring.node_coordinates();
  t.circumference_ = ring.circumference();
  return t;
}

ExactNumber Track::at(int m) const {
  if (!is_ring()) return coordinates_[m];
  // Indices below 0 sit one lap down; keep the value non-negative by adding a lap to everything.
  const int lap = m >= 0 ? m / n_ : -((-m + n_ - 1) / n_);
  return coordinates_[node(m)] + *circumference_ * (lap + 1);
}

namespace {

struct WalkBuilder {
  const Track& track;
  std::vector<ExactNumber> limit;  // deadline clipped to the budget
  ExactNumber budget;
  bool late;
  std::vector<Walk> out;

  void extend(Walk& walk, int lo, int hi, int pos, const ExactNumber& t, int last_side) {
    bool extended = false;
    // last_side: -1 left, +1 right, 0 no leg yet. Legs alternate.
    for (int side : {-1, +1}) {
      if (side == last_side) continue;
      const int edge = side < 0 ? lo : hi;
      const int bound = side < 0 ? track.lowest(walk.start) : track.highest(walk.start);
      std::vector<std::pair<int, ExactNumber>> fresh;
      for (int e = edge + side; side < 0 ? e >= bound : e <= bound; e += side) {
        const int new_lo = side < 0 ? e : lo;
        const int new_hi = side < 0 ? hi : e;
        if (new_hi - new_lo + 1 > track.size()) break;
        const ExactNumber arrive = t + ExactNumber::distance(track.at(pos), track.at(e));
        if (!(arrive <= budget)) break;
        const int v = track.node(e);
        if (!late && !(arrive <= limit[v])) break;
        fresh.emplace_back(v, arrive);
        for (const auto& [node, time] : fresh) walk.first_visit[node] = time;
        walk.turns.push_back(e);
        extend(walk, new_lo, new_hi, e, arrive, side);
        walk.turns.pop_back();
        extended = true;
      }
      for (const auto& [node, time] : fresh) walk.first_visit[node] = ExactNumber::infinity();
    }
    if (!extended) {
      Walk copy = walk;
      copy.end_time = t;
      out.push_back(std::move(copy));
    }
  }
};

}  // namespace

std::vector<Walk> enumerate_walks(const Track& track, int start, const std::optional<ExactNumber>& budget,
                                  const std::vector<ExactNumber>& deadlines, bool late_passes) {
  WalkBuilder builder{track, capped_deadlines(deadlines, budget), budget.value_or(ExactNumber::infinity()),
                      late_passes, {}};
  Walk walk;
  walk.start = start;
  walk.first_visit.assign(track.size(), ExactNumber::infinity());
  walk.first_visit[track.node(start)] = 0;
  builder.extend(walk, start, start, start, 0, 0);
  return std::move(builder.out);
}

RobotTrajectory walk_trajectory(const Track& track, const Walk& walk) {
  RobotTrajectory t{track.at(walk.start), {{0, track.at(walk.start)}}};
  ExactNumber time = 0;
  int pos = walk.start;
  for (int e : walk.turns) {
    time += ExactNumber::distance(track.at(pos), track.at(e));
    t.waypoints.push_back({time, track.at(e)});
    pos = e;
  }
  return t;
}

namespace {

using Times = std::vector<ExactNumber>;

struct StartOptions {
  std::vector<Walk> walks;
  std::vector<Times> on_time;
  Times best;  // per node, earliest on-time visit over all walks
};

StartOptions options_for(const Track& track, int start, const std::optional<ExactNumber>& bound,
                         const std::vector<ExactNumber>& deadlines) {
  const auto limit = capped_deadlines(deadlines, bound);
  auto walks = enumerate_walks(track, start, bound, deadlines, true);
  std::vector<Times> vectors;
  for (const auto& w : walks) {
    Times v(track.size());
    for (int u = 0; u < track.size(); ++u) {
      v[u] = w.first_visit[u] <= limit[u] ? w.first_visit[u] : ExactNumber::infinity();
    }
    vectors.push_back(std::move(v));
  }
  auto dominates = [](const Times& a, const Times& b) {
    for (std::size_t u = 0; u < a.size(); ++u) {
      if (b[u] < a[u]) return false;
    }
    return true;
  };
  StartOptions out;
  out.best.assign(track.size(), ExactNumber::infinity());
  for (std::size_t i = 0; i < walks.size(); ++i) {
    bool beaten = false;
    for (std::size_t j = 0; j < walks.size() && !beaten; ++j) {
      if (i == j || !dominates(vectors[j], vectors[i])) continue;
      // Equal vectors: keep the first copy only.
      beaten = !dominates(vectors[i], vectors[j]) || j < i;
    }
    if (beaten) continue;
    for (int u = 0; u < track.size(); ++u) out.best[u] = min(out.best[u], vectors[i][u]);
    out.walks.push_back(walks[i]);
    out.on_time.push_back(vectors[i]);
  }
  return out;
}

class BruteSearch {
 public:
  BruteSearch(int n, int need) : n_(n), need_(need) {}

  void run(const std::vector<const StartOptions*>& robots) {
    robots_ = robots;
    chosen_.assign(robots.size(), 0);
    std::vector<Times> top(n_);
    search(0, top);
  }

  const ExactNumber& best() const { return best_; }
  const std::vector<int>& best_choice() const { return best_choice_; }

 private:
  static void insert(Times& top, const ExactNumber& t, int need) {
    if (t.is_infinite()) return;
    top.insert(std::upper_bound(top.begin(), top.end(), t), t);
    if (static_cast<int>(top.size()) > need) top.pop_back();
  }

  ExactNumber lower_bound(int r, const std::vector<Times>& top) const {
    ExactNumber bound = 0;
    for (int u = 0; u < n_; ++u) {
      Times merged = top[u];
      for (std::size_t o = r; o < robots_.size(); ++o) insert(merged, robots_[o]->best[u], need_);
      const ExactNumber v = static_cast<int>(merged.size()) < need_ ? ExactNumber::infinity() : merged[need_ - 1];
      bound = max(bound, v);
    }
    return bound;
  }

  void search(std::size_t r, const std::vector<Times>& top) {
    const ExactNumber bound = lower_bound(static_cast<int>(r), top);
    if (!(bound < best_)) return;
    if (r == robots_.size()) {
      best_ = bound;
      best_choice_ = chosen_;
      return;
    }
    const auto& options = *robots_[r];
    // Robots with the same start are interchangeable: keep their choices sorted.
    const int first = r > 0 && robots_[r - 1] == robots_[r] ? chosen_[r - 1] : 0;
    for (int w = first; w < static_cast<int>(options.walks.size()); ++w) {
      chosen_[r] = w;
      std::vector<Times> next = top;
      for (int u = 0; u < n_; ++u) insert(next[u], options.on_time[w][u], need_);
      search(r + 1, next);
    }
  }

  int n_;
  int need_;
  std::vector<const StartOptions*> robots_;
  std::vector<int> chosen_;
  ExactNumber best_ = ExactNumber::infinity();
  std::vector<int> best_choice_;
};

void multisets(const std::vector<int>& pool, int size, std::size_t from, std::vector<int>& pick,
               std::vector<std::vector<int>>& out) {
  if (static_cast<int>(pick.size()) == size) {
    out.push_back(pick);
    return;
  }
  for (std::size_t i = from; i < pool.size(); ++i) {
    pick.push_back(pool[i]);
    multisets(pool, size, i, pick, out);
    pick.pop_back();
  }
}

}  // namespace

Verdict brute_solve(const ProblemSpec& spec, const OracleCaps& caps) {
  spec.validate();
  if (spec.is_star()) throw std::invalid_argument("brute_solve: the oracle covers line and ring instances");
  const int n = spec.node_count();
  const int k = spec.robot_count();
  if (n > caps.max_n || k > caps.max_k || spec.faults > caps.max_f) {
    throw SearchRefused("oracle refused: n=" + std::to_string(n) + ", k=" + std::to_string(k) +
                        ", f=" + std::to_string(spec.faults) + " exceeds caps n<=" + std::to_string(caps.max_n) +
                        ", k<=" + std::to_string(caps.max_k) + ", f<=" + std::to_string(caps.max_f));
  }
  const Track track = spec.is_line() ? Track::line(spec.line()) : Track::ring(spec.ring());
  const auto& deadlines = spec.is_line() ? spec.line().deadlines : spec.ring().deadlines;

  std::vector<std::vector<int>> placements;
  const auto& placement = spec.placement;
  if (placement.mode == PlacementMode::Fixed) {
    placements.push_back(placement.positions);
  } else {
    std::vector<int> pool = placement.allowed;
    if (placement.mode == PlacementMode::Free) {
      pool.resize(n);
      std::iota(pool.begin(), pool.end(), 0);
    }
    std::sort(pool.begin(), pool.end());
    pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
    std::vector<int> pick;
    multisets(pool, k, 0, pick, placements);
  }

  std::map<int, StartOptions> cache;
  auto options = [&](int s) -> const StartOptions& {
    auto it = cache.find(s);
    if (it == cache.end()) it = cache.emplace(s, options_for(track, s, spec.bound, deadlines)).first;
    return it->second;
  };

  BruteSearch search(n, spec.faults + 1);
  std::vector<int> best_starts;
  std::vector<int> best_choice;
  ExactNumber best = ExactNumber::infinity();
  for (const auto& starts : placements) {
    std::vector<int> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return starts[a] < starts[b]; });
    std::vector<const StartOptions*> robots;
    for (int r : order) robots.push_back(&options(starts[r]));
    search.run(robots);
    if (search.best() < best) {
      best = search.best();
      best_starts.assign(k, 0);
      best_choice.assign(k, 0);
      for (int i = 0; i < k; ++i) {
        best_starts[order[i]] = starts[order[i]];
        best_choice[order[i]] = search.best_choice()[i];
      }
    }
  }

  Verdict out;
  out.optimum = best;
  if (best.is_infinite()) return out;
  out.feasible = true;
  out.placement = best_starts;
  out.schedule.circumference = track.circumference();
  for (int r = 0; r < k; ++r) {
    out.schedule.robots.push_back(walk_trajectory(track, options(best_starts[r]).walks[best_choice[r]]));
  }
  const CoverageTarget target = spec.is_line() ? coverage_target(spec.line(), spec.faults + 1, spec.bound)
                                               : coverage_target(spec.ring(), spec.faults + 1, spec.bound);
  attach_witness(out, target);
  return out;
}

}  // namespace robexplore
