#include <boost/multiprecision/cpp_int.hpp>

#include "doctest.h"
#include "robexplore/exact.hpp"
#include "robexplore/instance.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace robexplore;
using namespace testing_support;

TEST_CASE("exact numbers parse decimals, fractions and infinity") {
  CHECK(ExactNumber::parse("0.5") == ExactNumber(1, 2));
  CHECK(ExactNumber::parse("6/8") == ExactNumber(3, 4));
  CHECK(ExactNumber::parse("12") == ExactNumber(12));
  CHECK(ExactNumber::parse("inf").is_infinite());
  CHECK_THROWS(ExactNumber::parse("1/0"));
  CHECK_THROWS(ExactNumber::parse("abc"));
  CHECK_THROWS(ExactNumber(1) - ExactNumber(2));
}

TEST_CASE("infinity orders above every finite value") {
  const auto inf = ExactNumber::infinity();
  CHECK(ExactNumber(1000000) < inf);
  CHECK(min(inf, ExactNumber(3)) == ExactNumber(3));
  CHECK((inf + ExactNumber(1)).is_infinite());
  CHECK(ExactNumber(3, 2).halve() == ExactNumber(3, 4));
}

TEST_CASE("formatting shows the fraction and six significant digits") {
  CHECK(format_with_decimal(ExactNumber(4)) == "4 (4.00000)");
  CHECK(format_with_decimal(ExactNumber(1, 3)) == "1/3 (0.333333)");
  CHECK(format_with_decimal(ExactNumber::infinity()) == "inf");
}

TEST_CASE("arithmetic matches a big-integer reference") {
  using boost::multiprecision::cpp_int;
  using boost::multiprecision::cpp_rational;
  Random rng(17);
  auto big = [](const ExactNumber& x) { return cpp_rational(cpp_int(x.numerator()), cpp_int(x.denominator())); };
  for (int i = 0; i < 10000; ++i) {
    const ExactNumber a(rng.uniform(0, 1 << 20), rng.uniform(1, 1 << 12));
    const ExactNumber b(rng.uniform(0, 1 << 20), rng.uniform(1, 1 << 12));
    REQUIRE(big(a + b) == big(a) + big(b));
    REQUIRE(big(a * b) == big(a) * big(b));
    REQUIRE((a < b) == (big(a) < big(b)));
    if (!(a < b)) REQUIRE(big(a - b) == big(a) - big(b));
    if (!b.is_zero()) REQUIRE(big(a / b) == big(a) / big(b));
  }
}

TEST_CASE("minimal line document") {
  const auto spec = parse_instance(
      R"({"topology":"line","coordinates":["0"],"deadlines":[null],"robots":{"mode":"fixed","positions":[0]},"faults":0})");
  CHECK(spec.node_count() == 1);
  CHECK(spec.robot_count() == 1);
  CHECK(spec.line().deadlines[0].is_infinite());
}

TEST_CASE("decimal deadlines parse exactly") {
  const auto spec = parse_instance(
      R"({"topology":"line","coordinates":["0","1"],"deadlines":["0.5",null],"robots":{"mode":"fixed","positions":[0]}})");
  CHECK(spec.line().deadlines[0] == ExactNumber(1, 2));
}

TEST_CASE("invariant violations name the field") {
  auto message = [](const char* doc) {
    try {
      parse_instance(doc);
    } catch (const InstanceError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(message(R"({"topology":"line","coordinates":["0"],"deadlines":[null],"robots":{"mode":"fixed","positions":[0]},"faults":1})")
            .find("f must be < k") != std::string::npos);
  CHECK(message(R"({"topology":"line","coordinates":["0","0"],"deadlines":[null,null],"robots":{"mode":"fixed","positions":[0]}})")
            .rfind("coordinates", 0) == 0);
  CHECK(message(R"({"topology":"line","coordinates":["0","1"],"deadlines":[null,null],"robots":{"mode":"fixed","positions":[1,1]}})")
            .find("robots.positions") != std::string::npos);
  CHECK(message("{not json").find("syntax") != std::string::npos);
}

TEST_CASE("serialisation round-trips") {
  Random rng(5);
  for (int i = 0; i < 200; ++i) {
    ProblemSpec spec;
    if (i % 3 == 0) {
      spec.topology = random_line(rng, rng.uniform(1, 6));
      spec.placement = RobotPlacement::fixed({0});
    } else if (i % 3 == 1) {
      spec.topology = random_ring(rng, rng.uniform(2, 6));
      spec.placement = RobotPlacement::free(3);
      spec.faults = 2;
    } else {
      spec.topology = random_line(rng, 4);
      spec.placement = RobotPlacement::subset(2, {1, 3});
      spec.bound = rng.weight();
    }
    const auto back = parse_instance(serialize_instance(spec));
    CHECK(serialize_instance(back) == serialize_instance(spec));
  }
}

TEST_CASE("pruning drops nodes covered by a farther tighter node") {
  auto line = make_line({"0", "1", "2", "3"}, {"inf", "inf", "5", "5"});
  auto pruned = prune_dominated(line, 0);
  CHECK(pruned.original_index == std::vector<int>{0, 3});

  line = make_line({"0", "1", "2"}, {"3", "7", "inf"});
  pruned = prune_dominated(line, 2);
  CHECK(pruned.original_index == std::vector<int>{0, 2});
  CHECK(pruned.start == 1);
  CHECK(line_walk_optimum(pruned.line, pruned.start) == line_walk_optimum(line, 2));

  line = make_line({"0", "1", "2", "3", "4"}, {"1", "2", "inf", "6", "7"});
  CHECK(prune_dominated(line, 2).original_index == std::vector<int>{0, 2, 3, 4});
}

TEST_CASE("pruning never changes the walk optimum") {
  Random rng(6);
  for (int i = 0; i < 300; ++i) {
    const auto line = random_line(rng, rng.uniform(1, 7));
    const int start = rng.uniform(0, line.size() - 1);
    const auto pruned = prune_dominated(line, start);
    REQUIRE(line_walk_optimum(pruned.line, pruned.start) == line_walk_optimum(line, start));
  }
}
