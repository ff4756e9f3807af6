#include "doctest.h"
#include "robexplore/multi_line.hpp"
#include "robexplore/oracle.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace robexplore;
using namespace testing_support;

TEST_CASE("two robots at the ends of a unit four-node line") {
  const std::vector<int> positions = {0, 3};
  const auto v = solve_fixed(unit_line(4), positions);
  CHECK(v.optimum == ExactNumber(1));
  CHECK(v.idle_edges == std::vector<int>{1});
}

TEST_CASE("two neighbouring robots on a unit four-node line") {
  const std::vector<int> positions = {0, 1};
  const auto v = solve_fixed(unit_line(4), positions);
  CHECK(v.optimum == ExactNumber(2));
  const ProblemSpec spec{unit_line(4), RobotPlacement::fixed(positions)};
  CHECK(brute_solve(spec).optimum == ExactNumber(2));
}

TEST_CASE("fixed placement rejects duplicates") {
  const std::vector<int> twice = {1, 1};
  CHECK_THROWS_AS(solve_fixed(unit_line(3), twice), std::invalid_argument);
  const std::vector<int> outside = {5};
  CHECK_THROWS_AS(solve_fixed(unit_line(3), outside), std::invalid_argument);
}

TEST_CASE("one fixed robot is the single-robot problem") {
  Random rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    const auto line = random_line(rng, rng.uniform(1, 8));
    const std::vector<int> start = {rng.uniform(0, line.size() - 1)};
    REQUIRE(solve_fixed(line, start).optimum == solve_single_fixed(line, start[0]).optimum);
  }
}

TEST_CASE("split search") {
  const auto all = [](const LineInstance& line) {
    std::vector<int> v(line.size());
    std::iota(v.begin(), v.end(), 0);
    return interval_table(line, v).table;
  };
  const auto unit = all(unit_line(4));
  CHECK(opt_time(unit, 1, unit, 1, 0, 1).value == ExactNumber(0));
  const auto s = opt_time(unit, 1, unit, 1, 0, 3);
  CHECK(s.value == ExactNumber(1));
  CHECK(s.split == 1);

  const auto uneven = all(make_line({"0", "1", "3", "4"}));
  const auto u = opt_time(uneven, 1, uneven, 1, 0, 3);
  CHECK(u.value == ExactNumber(1));
  CHECK(u.split == 1);
}

TEST_CASE("split search matches a scan of every split") {
  Random rng(42);
  for (int trial = 0; trial < 200; ++trial) {
    const auto line = random_line(rng, rng.uniform(1, 9));
    const int n = line.size();
    std::vector<int> v(n);
    std::iota(v.begin(), v.end(), 0);
    const auto t = interval_table(line, v).table;
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) {
        if (j - i + 1 <= 2) continue;
        ExactNumber best = kInf;
        int where = -2;
        for (int k = i - 1; k <= j; ++k) {
          const ExactNumber left = k < i ? ExactNumber(0) : t.at(i, k);
          const ExactNumber right = k == j ? ExactNumber(0) : t.at(k + 1, j);
          const ExactNumber value = max(left, right);
          if (value < best) {
            best = value;
            where = k;
          }
        }
        const auto got = opt_time(t, 1, t, 1, i, j);
        REQUIRE(got.value == best);
        if (best.is_finite()) REQUIRE(got.split == where);
      }
    }
  }
}

TEST_CASE("free placement") {
  CHECK(solve_free(unit_line(4), 4).optimum == ExactNumber(0));
  CHECK(solve_free(unit_line(4), 9).optimum == ExactNumber(0));
  CHECK(solve_free(unit_line(5), 2).optimum == ExactNumber(2));
  const auto v = solve_free(unit_line(5), 9);
  CHECK(v.schedule.robots.size() == 9);
  CHECK(verify_schedule(coverage_target(unit_line(5)), v.schedule).pass);
}

TEST_CASE("free placement matches the naive recurrence") {
  Random rng(43);
  for (int trial = 0; trial < 200; ++trial) {
    const auto line = random_line(rng, rng.uniform(1, 20));
    for (int k = 1; k <= 7; ++k) {
      const auto v = solve_free(line, k);
      REQUIRE(v.optimum == naive_free(line, k));
      if (!v.feasible) continue;
      const auto report = verify_schedule(coverage_target(line), v.schedule);
      REQUIRE(report.pass);
      REQUIRE(report.makespan <= v.optimum);
    }
  }
}

TEST_CASE("fixed placement matches brute force with disjoint robot intervals") {
  Random rng(44);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = rng.uniform(1, 8);
    const auto line = random_line(rng, n);
    const auto positions = distinct_positions(rng, n, rng.uniform(1, std::min(3, n)));
    const ProblemSpec spec{line, RobotPlacement::fixed(positions)};
    const auto v = solve_fixed(line, positions);
    REQUIRE(v.optimum == brute_solve(spec).optimum);
    if (!v.feasible) continue;
    REQUIRE(verify_schedule(spec, v.schedule).pass);
    REQUIRE(v.placement == positions);
  }
}

TEST_CASE("restricted start sets") {
  const std::vector<int> ends = {0, 4};
  CHECK(solve_subset(unit_line(5), 2, ends).optimum == ExactNumber(2));
  const std::vector<int> left = {0};
  CHECK(solve_subset(unit_line(5), 2, left).optimum == ExactNumber(4));
  Random rng(45);
  for (int trial = 0; trial < 150; ++trial) {
    const int n = rng.uniform(1, 7);
    const auto line = random_line(rng, n);
    std::vector<int> allowed;
    for (int v = 0; v < n; ++v) {
      if (rng.chance(0.5)) allowed.push_back(v);
    }
    if (allowed.empty()) allowed.push_back(rng.uniform(0, n - 1));
    const int k = rng.uniform(1, 3);
    const ProblemSpec spec{line, RobotPlacement::subset(k, allowed)};
    const auto v = solve_subset(line, k, allowed);
    REQUIRE(v.optimum == brute_solve(spec).optimum);
    if (v.feasible) REQUIRE(verify_schedule(spec, v.schedule).pass);
  }
}
