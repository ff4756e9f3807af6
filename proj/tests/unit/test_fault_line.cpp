#include "doctest.h"
#include "robexplore/fault_line.hpp"
#include "robexplore/multi_line.hpp"
#include "robexplore/oracle.hpp"
#include "robexplore/reductions.hpp"
#include "robexplore/solve.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace robexplore;
using namespace testing_support;

TEST_CASE("replicated groups on a unit line") {
  const auto line = unit_line(5);
  CHECK(solve_free_faulty(line, 6, 0).optimum == solve_free(line, 6).optimum);
  const auto v = solve_free_faulty(line, 6, 2);
  CHECK(v.optimum == ExactNumber(2));
  CHECK(v.schedule.robots.size() == 6);
  CHECK(verify_schedule(coverage_target(line, 3), v.schedule).pass);
  CHECK(solve_free_faulty(line, 3, 2).optimum == solve_free(line, 1).optimum);
}

TEST_CASE("replicated schedules give every node f+1 visitors") {
  Random rng(51);
  for (int trial = 0; trial < 300; ++trial) {
    const auto line = random_line(rng, rng.uniform(1, 10));
    const int k = rng.uniform(1, 8);
    const int f = rng.uniform(0, k - 1);
    const auto v = solve_free_faulty(line, k, f);
    REQUIRE(v.optimum == solve_free(line, k / (f + 1)).optimum);
    if (v.feasible) REQUIRE(verify_schedule(coverage_target(line, f + 1), v.schedule).pass);
  }
}

TEST_CASE("two robots on the same node of a two-node line") {
  const auto line = make_line({"0", "1"});
  const std::vector<int> both = {0, 0};
  const auto yes = decide_fixed_faulty(line, both, 1, ExactNumber(1));
  CHECK(yes.feasible);
  CHECK(yes.witness[1].size() == 2);
  CHECK_FALSE(decide_fixed_faulty(line, both, 1, ExactNumber(1, 2)).feasible);
  CHECK(solve_fixed_faulty(line, both, 1).optimum == ExactNumber(1));
}

TEST_CASE("reduced matching instance with one triple") {
  const auto spec = n3dm_to_elcf({{1}, {1}, {1}, 3});
  const auto v = decide_fixed_faulty(spec.line(), spec.placement.positions, spec.faults, spec.bound);
  REQUIRE(v.feasible);
  CHECK(verify_schedule(spec, v.schedule).pass);
  // Each robot's sweep, in start order: [0,34], [35,67], [68,95].
  std::vector<std::pair<ExactNumber, ExactNumber>> spans;
  for (const auto& robot : v.schedule.robots) {
    ExactNumber lo = robot.start, hi = robot.start;
    for (const auto& w : robot.waypoints) {
      lo = min(lo, w.position);
      hi = max(hi, w.position);
    }
    spans.emplace_back(lo, hi);
  }
  std::sort(spans.begin(), spans.end());
  CHECK(spans[0].first == ExactNumber(0));
  CHECK(spans[2].second == ExactNumber(95));
  for (std::size_t i = 1; i < spans.size(); ++i) CHECK(spans[i - 1].second + 1 >= spans[i].first);
}

TEST_CASE("single robot without faults") {
  Random rng(52);
  for (int trial = 0; trial < 100; ++trial) {
    const auto line = random_line(rng, rng.uniform(1, 7));
    const int start = rng.uniform(0, line.size() - 1);
    const std::vector<int> p = {start};
    REQUIRE(solve_fixed_faulty(line, p, 0).optimum == solve_single_fixed(line, start).optimum);
  }
}

TEST_CASE("exact search matches brute force with faults") {
  Random rng(53);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = rng.uniform(1, 6);
    const auto line = random_line(rng, n);
    const int k = rng.uniform(2, 3);
    const int f = rng.uniform(0, 1);
    std::vector<int> positions;
    if (f == 0) {
      positions = distinct_positions(rng, n, std::min(k, n));
    } else {
      for (int i = 0; i < k; ++i) positions.push_back(rng.uniform(0, n - 1));
    }
    const ProblemSpec spec{line, RobotPlacement::fixed(positions), f};
    const auto got = solve_fixed_faulty(line, positions, f);
    const auto want = brute_solve(spec);
    REQUIRE(got.optimum == want.optimum);
    if (!got.feasible) continue;
    REQUIRE(verify_schedule(coverage_target(line, f + 1), got.schedule).pass);
    // Tight: yes at the optimum, no at the next smaller candidate.
    CHECK(decide_fixed_faulty(line, positions, f, got.optimum).feasible);
    const auto graph = SnapshotGraph::line(line);
    const auto below = largest_below(label_candidates(graph, line.deadlines, positions), got.optimum);
    if (below) CHECK_FALSE(decide_fixed_faulty(line, positions, f, *below).feasible);
  }
}

TEST_CASE("the search refuses past its caps") {
  const auto line = unit_line(20);
  const std::vector<int> p = {0, 0, 1};
  CHECK_THROWS_AS(decide_fixed_faulty(line, p, 1, ExactNumber(10), SearchCaps{10, 8}), SearchRefused);
  CHECK_THROWS_AS(decide_fixed_faulty(line, p, 1, ExactNumber(10), SearchCaps{512, 2}), SearchRefused);
}

TEST_CASE("resilience on a free unit line") {
  const ProblemSpec spec{unit_line(5), RobotPlacement::free(6)};
  CHECK(resilience(spec, ExactNumber(2)) == 2);
  // One robot parked on each node already meets a bound of 1/2.
  CHECK(resilience(spec, ExactNumber(1, 2)) == 0);
  CHECK_FALSE(resilience({unit_line(5), RobotPlacement::free(4)}, ExactNumber(1, 2)));
}

TEST_CASE("resilience is monotone in f") {
  Random rng(54);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = rng.uniform(1, 5);
    const auto line = random_line(rng, n, false, 0.6);
    std::vector<int> positions;
    for (int i = 0; i < 3; ++i) positions.push_back(rng.uniform(0, n - 1));
    const ProblemSpec spec{line, RobotPlacement::fixed(positions), 2};
    const ExactNumber delta = rng.weight(12);
    bool previous = true;
    for (int f = 0; f < 3; ++f) {
      ProblemSpec s = spec;
      s.faults = f;
      const bool yes = decide(s, delta).feasible;
      if (yes) REQUIRE(previous);
      previous = yes;
    }
  }
}
