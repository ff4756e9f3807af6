#include "doctest.h"
#include "robexplore/fault_line.hpp"
#include "robexplore/multi_line.hpp"
#include "robexplore/oracle.hpp"
#include "robexplore/ring.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace robexplore;
using namespace testing_support;

namespace {

// Walks as turn sequences, for comparison with hand enumeration.
std::set<std::vector<int>> turn_sets(const std::vector<Walk>& walks) {
  std::set<std::vector<int>> out;
  for (const auto& w : walks) out.insert(w.turns);
  return out;
}

}  // namespace

TEST_CASE("maximal walks on a unit three-node line") {
  const auto line = unit_line(3);
  const auto walks = enumerate_walks(Track::line(line), 1, std::nullopt, line.deadlines);
  CHECK(turn_sets(walks) == std::set<std::vector<int>>{{0, 2}, {2, 0}});
}

TEST_CASE("a budget too small for any move leaves the empty walk") {
  const auto line = make_line({"0", "2", "5"});
  const auto walks = enumerate_walks(Track::line(line), 1, ExactNumber(1), line.deadlines);
  REQUIRE(walks.size() == 1);
  CHECK(walks[0].turns.empty());
  CHECK(walks[0].end_time == ExactNumber(0));
}

TEST_CASE("maximal walks from node 1 of a unit four-node line") {
  const auto line = unit_line(4);
  const auto walks = enumerate_walks(Track::line(line), 1, std::nullopt, line.deadlines);
  // Legs alternate, so a walk ends once the side it must turn to is exhausted:
  // 0 then 2 stops there because the next leg would have to go left again.
  const std::set<std::vector<int>> expected = {{0, 2}, {0, 3}, {2, 0, 3}, {3, 0}};
  CHECK(turn_sets(walks) == expected);
  std::map<std::vector<int>, ExactNumber> times;
  for (const auto& w : walks) times[w.turns] = w.end_time;
  CHECK(times[{0, 2}] == ExactNumber(3));
  CHECK(times[{0, 3}] == ExactNumber(4));
  CHECK(times[{2, 0, 3}] == ExactNumber(6));
  CHECK(times[{3, 0}] == ExactNumber(5));
}

TEST_CASE("worked examples reproduce under brute force") {
  CHECK(brute_solve({unit_line(1), RobotPlacement::fixed({0})}).optimum == ExactNumber(0));
  CHECK(brute_solve({make_line({"0", "1", "3"}), RobotPlacement::fixed({1})}).optimum == ExactNumber(4));
  CHECK(brute_solve({make_line({"0", "1", "3"}, {"1/2"}), RobotPlacement::fixed({1})}).optimum.is_infinite());
  CHECK(brute_solve({unit_line(4), RobotPlacement::fixed({0, 3})}).optimum == ExactNumber(1));
  CHECK(brute_solve({unit_line(4), RobotPlacement::fixed({0, 1})}).optimum == ExactNumber(2));
  CHECK(brute_solve({unit_line(5), RobotPlacement::free(2)}).optimum == ExactNumber(2));
  CHECK(brute_solve({make_line({"0", "1"}), RobotPlacement::fixed({0, 0}), 1}).optimum == ExactNumber(1));
  CHECK(brute_solve({unit_ring(4), RobotPlacement::fixed({0, 2})}).optimum == ExactNumber(1));
  CHECK(brute_solve({unit_ring(3), RobotPlacement::fixed({0})}).optimum == ExactNumber(2));
  CHECK(brute_solve({unit_ring(6), RobotPlacement::free(3)}).optimum == ExactNumber(1));
  CHECK(brute_solve({unit_ring(3), RobotPlacement::fixed({0, 1}), 1, ExactNumber(2)}).feasible);
  CHECK_FALSE(brute_solve({unit_ring(3), RobotPlacement::fixed({0, 1}), 1, ExactNumber(3, 2)}).feasible);
}

TEST_CASE("the oracle refuses stars and oversized inputs") {
  StarInstance star{{1}, {ExactNumber::infinity()}, ExactNumber::infinity()};
  CHECK_THROWS_AS(brute_solve({star, RobotPlacement::fixed({0})}), std::invalid_argument);
  CHECK_THROWS_AS(brute_solve({unit_line(11), RobotPlacement::fixed({0})}), SearchRefused);
}

TEST_CASE("verifier") {
  const ProblemSpec spec{unit_line(3), RobotPlacement::fixed({0})};
  const Schedule sweep{{{0, {{0, 0}, {2, 2}}}}, std::nullopt};
  const auto report = verify_schedule(spec, sweep);
  CHECK(report.pass);
  CHECK(report.makespan == ExactNumber(2));

  ProblemSpec tight = spec;
  std::get<LineInstance>(tight.topology).deadlines[2] = ExactNumber(3, 2);
  const auto late = verify_schedule(tight, sweep);
  CHECK_FALSE(late.pass);
  CHECK(late.first_violation == 2);

  const Schedule fast{{{0, {{0, 0}, {1, 2}}}}, std::nullopt};
  CHECK_THROWS_AS(verify_schedule(spec, fast), ScheduleError);

  // Waiting is allowed.
  const Schedule slow{{{0, {{0, 0}, {3, 1}, {5, 2}}}}, std::nullopt};
  CHECK(verify_schedule(spec, slow).pass);
}

TEST_CASE("brute-force witnesses verify") {
  Random rng(81);
  for (int trial = 0; trial < 200; ++trial) {
    const bool ring = trial % 2 == 1;
    const int n = rng.uniform(ring ? 2 : 1, 6);
    const int k = rng.uniform(1, 3);
    const int f = rng.uniform(0, std::min(1, k - 1));
    std::vector<int> positions;
    for (int i = 0; i < k; ++i) positions.push_back(rng.uniform(0, n - 1));
    if (f == 0) positions = distinct_positions(rng, n, std::min(k, n));
    ProblemSpec spec;
    if (ring) spec.topology = random_ring(rng, n);
    else spec.topology = random_line(rng, n);
    spec.placement = RobotPlacement::fixed(positions);
    spec.faults = f;
    const auto v = brute_solve(spec);
    if (!v.feasible) continue;
    const auto target = ring ? coverage_target(spec.ring(), f + 1) : coverage_target(spec.line(), f + 1);
    const auto report = verify_schedule(target, v.schedule);
    REQUIRE(report.pass);
    REQUIRE(coverage_value(report, f + 1) == v.optimum);
  }
}

TEST_CASE("brute force agrees with a second enumerator over raw moves") {
  Random rng(82);
  for (int trial = 0; trial < 1000; ++trial) {
    const bool ring = trial % 2 == 1;
    const int n = rng.uniform(ring ? 2 : 1, 4);
    const int k = rng.uniform(1, 2);
    const int f = rng.uniform(0, k - 1);
    std::vector<int> positions;
    for (int i = 0; i < k; ++i) positions.push_back(rng.uniform(0, n - 1));
    if (f == 0) positions = distinct_positions(rng, n, std::min(k, n));
    const std::optional<ExactNumber> bound =
        rng.chance(0.3) ? std::optional<ExactNumber>(rng.weight(8)) : std::nullopt;
    ProblemSpec spec;
    MoveGraph g;
    if (ring) {
      const auto r = random_ring(rng, n);
      spec.topology = r;
      g = MoveGraph::from(r, bound);
    } else {
      const auto l = random_line(rng, n);
      spec.topology = l;
      g = MoveGraph::from(l, bound);
    }
    spec.placement = RobotPlacement::fixed(positions);
    spec.faults = f;
    spec.bound = bound;
    REQUIRE(brute_solve(spec).optimum == move_optimum(g, positions, f + 1));
  }
}

TEST_CASE("every verified schedule is matched by an enumerated walk") {
  // Random zig-zag trajectories: whatever they visit on time, some maximal
  // walk from the same start visits at least as early.
  Random rng(83);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = rng.uniform(1, 6);
    const auto line = random_line(rng, n);
    const int start = rng.uniform(0, n - 1);
    RobotTrajectory robot = RobotTrajectory::stationary(line.coordinates[start]);
    ExactNumber t = 0;
    int pos = start;
    for (int leg = 0; leg < 4; ++leg) {
      const int next = rng.uniform(0, n - 1);
      if (next == pos) continue;
      t += ExactNumber::distance(line.coordinates[pos], line.coordinates[next]);
      if (rng.chance(0.3)) t += ExactNumber(1, 2);
      robot.waypoints.push_back({t, line.coordinates[next]});
      pos = next;
    }
    std::vector<ExactNumber> visits(n);
    for (int v = 0; v < n; ++v) {
      const auto first = first_visit(robot, line.coordinates[v], std::nullopt);
      visits[v] = first <= line.deadlines[v] ? first : kInf;
    }
    const auto walks = enumerate_walks(Track::line(line), start, std::nullopt, line.deadlines, true);
    bool dominated = false;
    for (const auto& w : walks) {
      bool ok = true;
      for (int v = 0; v < n && ok; ++v) {
        if (visits[v].is_infinite()) continue;
        ok = w.first_visit[v] <= visits[v];
      }
      dominated = dominated || ok;
    }
    REQUIRE(dominated);
  }
}
