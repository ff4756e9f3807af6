#include "robexplore/solve.hpp"

#include <algorithm>

#include "robexplore/multi_line.hpp"
#include "robexplore/ring.hpp"
#include "robexplore/single_robot.hpp"

namespace robexplore {

namespace {

Outcome from_verdict(Verdict v, std::string method) {
  Outcome out;
  out.feasible = v.feasible;
  out.optimum = v.optimum;
  out.method = std::move(method);
  if (v.feasible) out.verdict = std::move(v);
  return out;
}

bool has_duplicates(std::vector<int> positions) {
  std::sort(positions.begin(), positions.end());
  return std::adjacent_find(positions.begin(), positions.end()) != positions.end();
}

Verdict single_robot(const LineInstance& line, int start) {
  auto result = solve_single_fixed(line, start);
  Verdict v;
  v.optimum = result.optimum;
  v.placement = {start};
  if (result.trajectory) {
    v.feasible = true;
    v.schedule.robots.push_back(std::move(*result.trajectory));
  }
  return v;
}

// Ring with robots restricted to a start set: some edge is idle, so try every cut.
Verdict ring_subset(const RingInstance& ring, int k, const std::vector<int>& allowed) {
  const int n = ring.size();
  const auto coordinates = ring.node_coordinates();
  Verdict best;
  int best_first = 0;
  for (int cut = 0; cut < n; ++cut) {
    const int first = (cut + 1) % n;
    LineInstance line;
    ExactNumber x = 0;
    for (int t = 0; t < n; ++t) {
      const int node = (first + t) % n;
      if (t > 0) x += ring.edge_weights[(node - 1 + n) % n];
      line.coordinates.push_back(x);
      line.deadlines.push_back(ring.deadlines[node]);
    }
    std::vector<int> mapped;
    for (int a : allowed) mapped.push_back((a - first + n) % n);
    auto v = solve_subset(line, k, mapped);
    if (v.optimum < best.optimum) {
      best = std::move(v);
      best_first = first;
    }
  }
  best.schedule.circumference = ring.circumference();
  if (!best.feasible) return best;
  const ExactNumber& origin = coordinates[best_first];
  for (auto& robot : best.schedule.robots) {
    robot.start += origin;
    for (auto& w : robot.waypoints) w.position += origin;
  }
  for (int& p : best.placement) p = (p + best_first) % n;
  for (int& e : best.idle_edges) e = (e + best_first) % n;
  best.idle_edges.push_back(best_first == 0 ? n - 1 : best_first - 1);
  std::sort(best.idle_edges.begin(), best.idle_edges.end());
  return best;
}

Outcome solve_line(const ProblemSpec& spec, const LineInstance& line, const SolveOptions& options) {
  const auto& p = spec.placement;
  const int k = spec.robot_count();
  const int f = spec.faults;
  switch (p.mode) {
    case PlacementMode::Fixed:
      if (f > 0 || has_duplicates(p.positions)) {
        return from_verdict(solve_fixed_faulty(line, p.positions, f, options.caps), "line/fixed/exact-search");
      }
      if (k == 1) return from_verdict(single_robot(line, p.positions[0]), "line/fixed/single-robot");
      return from_verdict(solve_fixed(line, p.positions), "line/fixed/prefix-split");
    case PlacementMode::Free:
      if (f > 0) return from_verdict(solve_free_faulty(line, k, f), "line/free/replicated-groups");
      return from_verdict(solve_free(line, k), "line/free/doubling");
    case PlacementMode::Subset:
      if (f > 0) throw Unsupported("subset placement with faults is not supported");
      return from_verdict(solve_subset(line, k, p.allowed), "line/subset/prefix-dp");
  }
  throw Unsupported("unknown placement mode");
}

Outcome solve_ring(const ProblemSpec& spec, const RingInstance& ring) {
  const auto& p = spec.placement;
  const int k = spec.robot_count();
  const int f = spec.faults;
  switch (p.mode) {
    case PlacementMode::Fixed:
      if (f > 0 || has_duplicates(p.positions)) {
        auto result = solve_ring_fixed_faulty(ring, p.positions, f);
        Outcome out;
        out.method = "ring/fixed/greedy-search";
        out.feasible = result.value.is_finite();
        out.optimum = result.value;
        out.verdict = std::move(result.decision.witness);
        return out;
      }
      return from_verdict(solve_ring_fixed(ring, p.positions), "ring/fixed/idle-edge-cuts");
    case PlacementMode::Free:
      if (f > 0) return from_verdict(solve_ring_free_faulty(ring, k, f), "ring/free/expanded-ring");
      return from_verdict(solve_ring_free(ring, k), "ring/free/doubling");
    case PlacementMode::Subset:
      if (f > 0) throw Unsupported("subset placement with faults is not supported");
      return from_verdict(ring_subset(ring, k, p.allowed), "ring/subset/all-cuts");
  }
  throw Unsupported("unknown placement mode");
}

Outcome solve_star(const ProblemSpec& spec, const SolveOptions& options) {
  Outcome out;
  out.method = "star/exact-assignment";
  auto v = star_exact(spec.star(), spec.placement, spec.faults, spec.bound, options.star_caps);
  out.feasible = v.feasible;
  out.optimum = v.optimum;
  if (v.feasible) out.star = std::move(v);
  return out;
}

}  // namespace

Outcome solve(const ProblemSpec& spec, const SolveOptions& options) {
  spec.validate();
  if (spec.is_line()) return solve_line(spec, with_bound(spec.line(), spec.bound), options);
  if (spec.is_ring()) return solve_ring(spec, with_bound(spec.ring(), spec.bound));
  return solve_star(spec, options);
}

Outcome decide(const ProblemSpec& spec, const ExactNumber& delta, const SolveOptions& options) {
  ProblemSpec bounded = spec;
  bounded.bound = spec.bound ? min(*spec.bound, delta) : delta;
  const auto& p = spec.placement;
  if (spec.is_line() && p.mode == PlacementMode::Fixed && (spec.faults > 0 || has_duplicates(p.positions))) {
    Outcome out;
    out.method = "line/fixed/exact-search";
    auto v = decide_fixed_faulty(spec.line(), p.positions, spec.faults, bounded.bound, options.caps);
    out.feasible = v.feasible;
    out.optimum = v.optimum;
    if (v.feasible) out.verdict = std::move(v);
    return out;
  }
  if (spec.is_ring() && p.mode == PlacementMode::Fixed && (spec.faults > 0 || has_duplicates(p.positions))) {
    auto d = decide_ring_fixed_faulty(spec.ring(), p.positions, spec.faults, *bounded.bound);
    Outcome out;
    out.method = "ring/fixed/greedy";
    out.feasible = d.yes;
    if (d.witness) out.optimum = d.witness->optimum;
    out.verdict = std::move(d.witness);
    return out;
  }
  return solve(bounded, options);
}

std::optional<int> resilience(const ProblemSpec& spec, const ExactNumber& delta, const SolveOptions& options) {
  std::optional<int> best;
  for (int f = 0; f < spec.robot_count(); ++f) {
    ProblemSpec s = spec;
    s.faults = f;
    if (!decide(s, delta, options).feasible) break;
    best = f;
  }
  return best;
}

}  // namespace robexplore
