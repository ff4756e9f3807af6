#include "robexplore/reductions.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "robexplore/fault_line.hpp"

namespace robexplore {

namespace {

ProblemSpec n3dm_construction(const N3dmInstance& x) {
  const std::size_t q = x.a.size();
  if (q == 0 || x.b.size() != q || x.c.size() != q) {
    throw std::invalid_argument("n3dm: A, B and C must be non-empty and of equal length");
  }
  auto positive = [](const std::vector<std::int64_t>& v) {
    return std::all_of(v.begin(), v.end(), [](std::int64_t e) { return e > 0; });
  };
  if (!positive(x.a) || !positive(x.b) || !positive(x.c) || x.s <= 0) {
    throw std::invalid_argument("n3dm: entries and S must be positive integers");
  }
  const std::int64_t a = *std::max_element(x.a.begin(), x.a.end());
  const std::int64_t b = *std::max_element(x.b.begin(), x.b.end());
  const std::int64_t c = *std::max_element(x.c.begin(), x.c.end());
  const std::int64_t big = 4 * x.s + 6 * a + 6 * b + 12 * c;
  const std::int64_t length = 3 * big - 4 * x.s - 1;

  LineInstance line;
  for (std::int64_t v = 0; v <= length; ++v) {
    line.coordinates.emplace_back(v);
    line.deadlines.push_back(ExactNumber::infinity());
  }
  std::vector<int> positions;
  for (auto v : x.a) positions.push_back(static_cast<int>(v));
  for (auto v : x.b) positions.push_back(static_cast<int>(big + 2 * v));
  for (auto v : x.c) positions.push_back(static_cast<int>(2 * big + 4 * v));

  ProblemSpec spec{std::move(line), RobotPlacement::fixed(std::move(positions)), static_cast<int>(q) - 1,
                   ExactNumber(big - 1)};
  spec.validate();
  return spec;
}

}  // namespace

ProblemSpec n3dm_to_elcf(const N3dmInstance& x) {
  auto spec = n3dm_construction(x);
  const auto sum = [](const std::vector<std::int64_t>& v) { return std::accumulate(v.begin(), v.end(), std::int64_t{0}); };
  // With entries summing below q*S every robot has slack and the line answers
  // yes although no matching exists. Such instances are trivially no, so they
  // map to a fixed no-instance whose entries overshoot S.
  if (sum(x.a) + sum(x.b) + sum(x.c) < static_cast<std::int64_t>(x.a.size()) * x.s) {
    return n3dm_construction({{1}, {1}, {1}, 2});
  }
  return spec;
}

ProblemSpec partition_to_star(std::span<const std::int64_t> values) {
  if (values.empty()) throw std::invalid_argument("partition: the multiset must be non-empty");
  if (std::any_of(values.begin(), values.end(), [](std::int64_t v) { return v <= 0; })) {
    throw std::invalid_argument("partition: entries must be positive");
  }
  const std::int64_t total = std::accumulate(values.begin(), values.end(), std::int64_t{0});
  if (total % 2 != 0) throw std::invalid_argument("partition: the sum must be even");
  const std::int64_t sigma = total / 2;
  StarInstance star;
  for (auto v : values) star.leaf_weights.emplace_back(v);
  for (int i = 0; i < 4; ++i) star.leaf_weights.emplace_back(4 * sigma);
  star.leaf_deadlines.assign(star.leaf_weights.size(), ExactNumber(10 * sigma));
  star.center_deadline = 10 * sigma;
  const int q = static_cast<int>(values.size());
  ProblemSpec spec{std::move(star), RobotPlacement::fixed({q + 1, q + 2}), 0, std::nullopt};
  spec.validate();
  return spec;
}

namespace {

ExactNumber effective_deadline(const ExactNumber& deadline, const std::optional<ExactNumber>& bound) {
  return bound ? min(deadline, *bound) : deadline;
}

}  // namespace

StarCoverage simulate_star(const StarInstance& star, std::span<const StarRoute> routes, int multiplicity,
                           const std::optional<ExactNumber>& bound) {
  const int nodes = star.node_count();
  std::vector<ExactNumber> deadline(nodes);
  deadline[0] = effective_deadline(star.center_deadline, bound);
  for (int i = 1; i < nodes; ++i) deadline[i] = effective_deadline(star.leaf_deadlines[i - 1], bound);
  auto weight = [&](int leaf) -> const ExactNumber& { return star.leaf_weights[leaf - 1]; };

  StarCoverage out;
  out.on_time.resize(nodes);
  for (const auto& route : routes) {
    std::vector<ExactNumber> first(nodes, ExactNumber::infinity());
    first[route.start] = 0;
    ExactNumber t = 0;
    const bool moves = !route.leaves.empty() || route.to_centre;
    if (route.start != 0 && moves) {
      t = weight(route.start);
      first[0] = min(first[0], t);
    }
    for (int leaf : route.leaves) {
      const ExactNumber arrival = t + weight(leaf);
      first[leaf] = min(first[leaf], arrival);
      t = arrival + weight(leaf);
    }
    for (int v = 0; v < nodes; ++v) {
      if (first[v] <= deadline[v]) out.on_time[v].push_back(first[v]);
    }
  }
  out.pass = true;
  out.value = 0;
  for (auto& times : out.on_time) {
    std::sort(times.begin(), times.end());
    if (static_cast<int>(times.size()) < multiplicity) {
      out.pass = false;
      out.value = ExactNumber::infinity();
      break;
    }
    out.value = max(out.value, times[multiplicity - 1]);
  }
  return out;
}

namespace {

struct LeafOrder {
  bool feasible = false;
  ExactNumber end = ExactNumber::infinity();
  std::vector<int> leaves;
};

// Best tour over `leaves` after an initial offset: deadline order with each
// possible final leaf, keeping the earliest finish.
LeafOrder best_order(const StarInstance& star, std::vector<int> leaves, const ExactNumber& offset,
                     const std::optional<ExactNumber>& bound) {
  auto weight = [&](int leaf) -> const ExactNumber& { return star.leaf_weights[leaf - 1]; };
  auto deadline = [&](int leaf) { return effective_deadline(star.leaf_deadlines[leaf - 1], bound); };
  auto key = [&](int leaf) { return deadline(leaf).is_infinite() ? ExactNumber::infinity() : deadline(leaf) + weight(leaf); };
  std::stable_sort(leaves.begin(), leaves.end(), [&](int x, int y) { return key(x) < key(y); });
  LeafOrder best;
  if (leaves.empty()) {
    best.feasible = true;
    best.end = offset;
    return best;
  }
  for (std::size_t last = 0; last < leaves.size(); ++last) {
    ExactNumber t = offset;
    bool ok = true;
    for (std::size_t i = 0; i < leaves.size() && ok; ++i) {
      if (i == last) continue;
      const ExactNumber arrival = t + weight(leaves[i]);
      ok = arrival <= deadline(leaves[i]);
      t = arrival + weight(leaves[i]);
    }
    if (!ok) continue;
    const ExactNumber end = t + weight(leaves[last]);
    if (end > deadline(leaves[last]) || !(end < best.end)) continue;
    best.feasible = true;
    best.end = end;
    best.leaves.clear();
    for (std::size_t i = 0; i < leaves.size(); ++i) {
      if (i != last) best.leaves.push_back(leaves[i]);
    }
    best.leaves.push_back(leaves[last]);
  }
  return best;
}

}  // namespace

StarVerdict star_single_robot(const StarInstance& star) {
  std::vector<int> leaves(star.leaf_count());
  std::iota(leaves.begin(), leaves.end(), 1);
  auto key = [&](int leaf) {
    const auto& d = star.leaf_deadlines[leaf - 1];
    return d.is_infinite() ? d : d + star.leaf_weights[leaf - 1];
  };
  std::stable_sort(leaves.begin(), leaves.end(), [&](int x, int y) { return key(x) < key(y); });
  StarVerdict out;
  out.routes.push_back({0, leaves, false});
  const auto coverage = simulate_star(star, out.routes, 1);
  out.feasible = coverage.pass;
  if (out.feasible) out.optimum = coverage.value;
  return out;
}

namespace {

class StarSearch {
 public:
  StarSearch(const StarInstance& star, int f, const std::optional<ExactNumber>& bound)
      : star_(star), need_(f + 1), bound_(bound) {}

  // Best verdict for one placement, or an infeasible verdict.
  StarVerdict solve(const std::vector<int>& starts) {
    starts_ = starts;
    const int k = static_cast<int>(starts.size());
    groups_.clear();
    std::vector<int> pick;
    choose(0, k, pick);
    best_ = StarVerdict{};
    best_.routes.clear();
    assignment_.assign(star_.leaf_count(), 0);
    assign(0);
    return best_;
  }

  static std::int64_t count_groups(int k, int size) {
    std::int64_t c = 1;
    for (int i = 0; i < size; ++i) c = c * (k - i) / (i + 1);
    return c;
  }

 private:
  void choose(int from, int k, std::vector<int>& pick) {
    if (static_cast<int>(pick.size()) == need_) {
      groups_.push_back(pick);
      return;
    }
    for (int r = from; r < k; ++r) {
      pick.push_back(r);
      choose(r + 1, k, pick);
      pick.pop_back();
    }
  }

  void assign(int leaf) {
    if (leaf == star_.leaf_count()) {
      evaluate();
      return;
    }
    for (std::size_t g = 0; g < groups_.size(); ++g) {
      assignment_[leaf] = static_cast<int>(g);
      assign(leaf + 1);
    }
  }

  void evaluate() {
    const int k = static_cast<int>(starts_.size());
    std::vector<std::vector<int>> todo(k);
    for (int leaf = 0; leaf < star_.leaf_count(); ++leaf) {
      for (int r : groups_[assignment_[leaf]]) {
        if (starts_[r] != leaf + 1) todo[r].push_back(leaf + 1);
      }
    }
    std::vector<StarRoute> routes(k);
    ExactNumber value = 0;
    const ExactNumber centre_deadline = effective_deadline(star_.center_deadline, bound_);
    int centre_visitors = 0;
    for (int r = 0; r < k; ++r) {
      const int s = starts_[r];
      routes[r].start = s;
      if (todo[r].empty()) {
        if (s == 0) ++centre_visitors;
        continue;
      }
      const ExactNumber offset = s == 0 ? ExactNumber(0) : star_.leaf_weights[s - 1];
      if (offset <= centre_deadline) ++centre_visitors;
      auto order = best_order(star_, todo[r], offset, bound_);
      if (!order.feasible) return;
      value = max(value, order.end);
      if (!(value < best_.optimum)) return;
      routes[r].leaves = std::move(order.leaves);
    }
    // Idle robots closest to the centre make up any missing centre visits.
    std::vector<int> idle;
    for (int r = 0; r < k; ++r) {
      if (starts_[r] != 0 && todo[r].empty() && star_.leaf_weights[starts_[r] - 1] <= centre_deadline) idle.push_back(r);
    }
    std::stable_sort(idle.begin(), idle.end(), [&](int x, int y) {
      return star_.leaf_weights[starts_[x] - 1] < star_.leaf_weights[starts_[y] - 1];
    });
    for (std::size_t i = 0; centre_visitors < need_ && i < idle.size(); ++i, ++centre_visitors) {
      routes[idle[i]].to_centre = true;
      value = max(value, star_.leaf_weights[starts_[idle[i]] - 1]);
    }
    if (centre_visitors < need_ || !(value < best_.optimum)) return;
    best_.feasible = true;
    best_.optimum = value;
    best_.routes = std::move(routes);
  }

  const StarInstance& star_;
  int need_;
  std::optional<ExactNumber> bound_;
  std::vector<int> starts_;
  std::vector<std::vector<int>> groups_;
  std::vector<int> assignment_;
  StarVerdict best_;
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

StarVerdict star_exact(const StarInstance& star, const RobotPlacement& placement, int f,
                       const std::optional<ExactNumber>& bound, const StarCaps& caps) {
  const int k = placement.robot_count();
  if (f < 0 || f >= k) throw std::invalid_argument("star_exact: need 0 <= f < k");
  std::vector<std::vector<int>> placements;
  if (placement.mode == PlacementMode::Fixed) {
    placements.push_back(placement.positions);
  } else {
    std::vector<int> pool = placement.allowed;
    if (placement.mode == PlacementMode::Free) {
      pool.resize(star.node_count());
      std::iota(pool.begin(), pool.end(), 0);
    }
    std::vector<int> pick;
    multisets(pool, k, 0, pick, placements);
  }
  // Assignments per placement: C(k, f+1)^q.
  const std::int64_t groups = StarSearch::count_groups(k, f + 1);
  std::int64_t work = static_cast<std::int64_t>(placements.size());
  for (int leaf = 0; leaf < star.leaf_count() && work <= caps.max_assignments; ++leaf) work *= groups;
  if (work > caps.max_assignments) {
    throw SearchRefused("exact star search refused: more than " + std::to_string(caps.max_assignments) +
                        " leaf assignments");
  }
  StarSearch search(star, f, bound);
  StarVerdict best;
  for (const auto& starts : placements) {
    auto v = search.solve(starts);
    if (v.feasible && v.optimum < best.optimum) best = std::move(v);
  }
  return best;
}

}  // namespace robexplore
