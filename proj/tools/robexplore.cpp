#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "robexplore/instance.hpp"
#include "robexplore/oracle.hpp"
#include "robexplore/reductions.hpp"
#include "robexplore/schedule.hpp"
#include "robexplore/solve.hpp"

using namespace robexplore;
using json = nlohmann::json;

namespace {

// Exit codes: success / YES / PASS, infeasible / NO / FAIL, usage or refusal.
constexpr int kOk = 0;
constexpr int kNo = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_text(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  return {std::istreambuf_iterator<char>(in), {}};
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path);
  out << text << "\n";
}

ExactNumber parse_number(const std::string& text) {
  try {
    return ExactNumber::parse(text);
  } catch (const std::exception& e) {
    throw UsageError("bad number '" + text + "': " + e.what());
  }
}

json number_json(const ExactNumber& x) {
  if (x.is_infinite()) return nullptr;
  return x.to_string();
}

json routes_to_json(const std::vector<StarRoute>& routes) {
  json out = json::array();
  for (const auto& r : routes) out.push_back({{"start", r.start}, {"leaves", r.leaves}, {"to_centre", r.to_centre}});
  return {{"routes", out}};
}

std::vector<StarRoute> routes_from_json(const std::string& text) {
  std::vector<StarRoute> routes;
  try {
    for (const auto& r : json::parse(text).at("routes")) {
      routes.push_back({r.at("start").get<int>(), r.at("leaves").get<std::vector<int>>(), r.value("to_centre", false)});
    }
  } catch (const json::exception& e) {
    throw UsageError(std::string("bad star routes: ") + e.what());
  }
  return routes;
}

struct Options {
  bool as_json = false;
  std::optional<int> max_n;
  std::optional<int> max_k;

  SolveOptions solve_options() const {
    SolveOptions out;
    if (max_n) out.caps.max_n = *max_n;
    if (max_k) out.caps.max_k = *max_k;
    return out;
  }
};

void print(const Options& options, const json& doc, const std::string& text) {
  if (options.as_json) std::cout << doc.dump(2) << "\n";
  else std::cout << text << "\n";
}

int run_solve(const Options& options, const std::string& instance_path, const std::string& schedule_path) {
  const auto spec = parse_instance(read_text(instance_path));
  const auto outcome = solve(spec, options.solve_options());
  json doc{{"feasible", outcome.feasible}, {"optimum", number_json(outcome.optimum)}, {"method", outcome.method}};
  print(options, doc, outcome.feasible ? format_with_decimal(outcome.optimum) : "infeasible");
  if (!schedule_path.empty() && outcome.feasible) {
    if (outcome.star) write_text(schedule_path, routes_to_json(outcome.star->routes).dump(2));
    else if (outcome.verdict) write_text(schedule_path, schedule_to_json(outcome.verdict->schedule));
    else throw UsageError("no schedule accompanies this answer (method " + outcome.method + ")");
  }
  return outcome.feasible ? kOk : kNo;
}

int run_decide(const Options& options, const std::string& instance_path, const std::string& delta) {
  const auto spec = parse_instance(read_text(instance_path));
  const auto outcome = decide(spec, parse_number(delta), options.solve_options());
  json doc{{"answer", outcome.feasible ? "YES" : "NO"}, {"method", outcome.method}};
  print(options, doc, outcome.feasible ? "YES" : "NO");
  return outcome.feasible ? kOk : kNo;
}

int run_resilience(const Options& options, const std::string& instance_path, const std::string& delta) {
  const auto spec = parse_instance(read_text(instance_path));
  const auto f = resilience(spec, parse_number(delta), options.solve_options());
  json doc{{"resilience", f ? json(*f) : json(nullptr)}};
  print(options, doc, f ? std::to_string(*f) : "none");
  return f ? kOk : kNo;
}

int run_verify(const Options& options, const std::string& instance_path, const std::string& schedule_path) {
  const auto spec = parse_instance(read_text(instance_path));
  const auto text = read_text(schedule_path);
  if (spec.is_star()) {
    const auto routes = routes_from_json(text);
    if (static_cast<int>(routes.size()) != spec.robot_count()) throw UsageError("route count differs from robot count");
    const auto replay = simulate_star(spec.star(), routes, spec.faults + 1, spec.bound);
    json doc{{"pass", replay.pass}, {"value", number_json(replay.value)}};
    print(options, doc, replay.pass ? "PASS " + format_with_decimal(replay.value) : "FAIL");
    return replay.pass ? kOk : kNo;
  }
  const auto report = verify_schedule(spec, schedule_from_json(text));
  json doc{{"pass", report.pass}, {"makespan", number_json(report.makespan)}};
  if (report.first_violation) doc["first_violation"] = *report.first_violation;
  std::string line = report.pass ? "PASS makespan " + format_with_decimal(report.makespan) : "FAIL";
  if (report.first_violation) line += " first violated node " + std::to_string(*report.first_violation);
  print(options, doc, line);
  return report.pass ? kOk : kNo;
}

int run_oracle(const Options& options, const std::string& instance_path) {
  const auto spec = parse_instance(read_text(instance_path));
  OracleCaps caps;
  if (options.max_n) caps.max_n = *options.max_n;
  if (options.max_k) caps.max_k = *options.max_k;
  const auto v = brute_solve(spec, caps);
  json doc{{"feasible", v.feasible}, {"optimum", number_json(v.optimum)}};
  print(options, doc, v.feasible ? format_with_decimal(v.optimum) : "infeasible");
  return v.feasible ? kOk : kNo;
}

struct RandomParams {
  std::string topology = "line";
  std::string placement = "fixed";
  int n = 6;
  int k = 2;
  int f = 0;
  std::uint64_t seed = 1;
  double deadline_chance = 0.3;
};

// Instances with small dyadic weights, reproducible from the seed alone.
ProblemSpec random_instance(const RandomParams& p) {
  if (p.n < 1 || p.k < 1 || p.f < 0 || p.f >= p.k) throw UsageError("need n >= 1, k >= 1 and 0 <= f < k");
  std::mt19937_64 rng(p.seed);
  auto below = [&](std::uint64_t m) { return static_cast<std::int64_t>(rng() % m); };
  auto chance = [&](double q) { return static_cast<double>(rng() >> 11) * 0x1.0p-53 < q; };
  auto weight = [&] { return ExactNumber(1 + below(16), std::int64_t{1} << below(3)); };

  std::vector<ExactNumber> weights;
  for (int i = 0; i < p.n; ++i) weights.push_back(weight());
  ExactNumber total = 0;
  for (const auto& w : weights) total += w;
  auto deadline = [&] {
    if (!chance(p.deadline_chance)) return ExactNumber::infinity();
    return total * 2 * ExactNumber(below(33), 32);
  };

  ProblemSpec spec;
  spec.faults = p.f;
  int nodes = p.n;
  if (p.topology == "line") {
    LineInstance line;
    ExactNumber x = 0;
    for (int i = 0; i < p.n; ++i) {
      if (i > 0) x += weights[i];
      line.coordinates.push_back(x);
      line.deadlines.push_back(deadline());
    }
    spec.topology = line;
  } else if (p.topology == "ring") {
    if (p.n < 2) throw UsageError("a ring needs n >= 2");
    RingInstance ring{weights, {}};
    for (int i = 0; i < p.n; ++i) ring.deadlines.push_back(deadline());
    spec.topology = ring;
  } else if (p.topology == "star") {
    StarInstance star{weights, {}};
    for (int i = 0; i < p.n; ++i) star.leaf_deadlines.push_back(deadline());
    spec.topology = star;
    nodes = p.n + 1;
  } else {
    throw UsageError("unknown topology '" + p.topology + "'");
  }

  if (p.placement == "fixed") {
    std::vector<int> positions;
    if (p.f == 0) {
      // Shared starts are only meaningful with faults; draw distinct nodes.
      if (p.k > nodes) throw UsageError("fixed placement without faults needs k <= nodes");
      std::vector<int> pool(nodes);
      for (int v = 0; v < nodes; ++v) pool[v] = v;
      for (int r = 0; r < p.k; ++r) {
        std::swap(pool[r], pool[r + below(nodes - r)]);
        positions.push_back(pool[r]);
      }
    } else {
      for (int r = 0; r < p.k; ++r) positions.push_back(static_cast<int>(below(nodes)));
    }
    spec.placement = RobotPlacement::fixed(positions);
  } else if (p.placement == "free") {
    spec.placement = RobotPlacement::free(p.k);
  } else if (p.placement == "subset") {
    std::vector<int> allowed;
    for (int v = 0; v < nodes; ++v) {
      if (chance(0.5)) allowed.push_back(v);
    }
    if (allowed.empty()) allowed.push_back(static_cast<int>(below(nodes)));
    spec.placement = RobotPlacement::subset(p.k, allowed);
  } else {
    throw UsageError("unknown placement '" + p.placement + "'");
  }
  spec.validate();
  return spec;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact exploration schedules for lines, rings and stars with deadlines and crash faults"};
  app.require_subcommand(1);
  Options options;
  app.add_flag("--json", options.as_json, "Machine-readable output");
  app.add_option("--max-n", options.max_n, "Node cap for exponential searches");
  app.add_option("--max-k", options.max_k, "Robot cap for exponential searches");

  std::string instance, schedule, delta, emit;

  auto* solve_cmd = app.add_subcommand("solve", "Optimal exploration time");
  solve_cmd->add_option("instance", instance, "Instance JSON ('-' for stdin)")->required();
  solve_cmd->add_option("--emit-schedule", emit, "Write the schedule to this file");

  auto* decide_cmd = app.add_subcommand("decide", "Is there a schedule finishing by the bound");
  decide_cmd->add_option("instance", instance, "Instance JSON ('-' for stdin)")->required();
  decide_cmd->add_option("--delta", delta, "Time bound")->required();

  auto* resilience_cmd = app.add_subcommand("resilience", "Largest number of tolerated crashes");
  resilience_cmd->add_option("instance", instance, "Instance JSON ('-' for stdin)")->required();
  resilience_cmd->add_option("--delta", delta, "Time bound")->required();

  auto* verify_cmd = app.add_subcommand("verify", "Check a schedule against an instance");
  verify_cmd->add_option("instance", instance, "Instance JSON")->required();
  verify_cmd->add_option("schedule", schedule, "Schedule JSON")->required();

  auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force optimum for small instances");
  oracle_cmd->add_option("instance", instance, "Instance JSON ('-' for stdin)")->required();

  auto* generate_cmd = app.add_subcommand("generate", "Emit an instance");
  generate_cmd->require_subcommand(1);
  std::vector<std::int64_t> a, b, c, values;
  std::int64_t s = 0;
  auto* n3dm_cmd = generate_cmd->add_subcommand("n3dm", "Line instance reduced from numerical 3-dimensional matching");
  n3dm_cmd->add_option("--a", a)->required()->delimiter(',');
  n3dm_cmd->add_option("--b", b)->required()->delimiter(',');
  n3dm_cmd->add_option("--c", c)->required()->delimiter(',');
  n3dm_cmd->add_option("--s", s, "Target triple sum")->required();
  auto* partition_cmd = generate_cmd->add_subcommand("partition", "Star instance reduced from partition");
  partition_cmd->add_option("--values", values)->required()->delimiter(',');
  RandomParams params;
  auto* random_cmd = generate_cmd->add_subcommand("random", "Random instance");
  random_cmd->add_option("--topology", params.topology)->check(CLI::IsMember({"line", "ring", "star"}));
  random_cmd->add_option("--placement", params.placement)->check(CLI::IsMember({"fixed", "free", "subset"}));
  random_cmd->add_option("--n", params.n, "Nodes (leaves for a star)");
  random_cmd->add_option("--k", params.k, "Robots");
  random_cmd->add_option("--f", params.f, "Crash faults");
  random_cmd->add_option("--seed", params.seed);
  random_cmd->add_option("--deadline-chance", params.deadline_chance)->check(CLI::Range(0.0, 1.0));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*solve_cmd) return run_solve(options, instance, emit);
    if (*decide_cmd) return run_decide(options, instance, delta);
    if (*resilience_cmd) return run_resilience(options, instance, delta);
    if (*verify_cmd) return run_verify(options, instance, schedule);
    if (*oracle_cmd) return run_oracle(options, instance);
    if (*n3dm_cmd) std::cout << serialize_instance(n3dm_to_elcf({a, b, c, s})) << "\n";
    if (*partition_cmd) std::cout << serialize_instance(partition_to_star(values)) << "\n";
    if (*random_cmd) std::cout << serialize_instance(random_instance(params)) << "\n";
    return kOk;
  } catch (const ScheduleError& e) {
    std::cerr << json{{"error", "schedule"}, {"robot", e.robot()}, {"waypoint", e.waypoint()}, {"message", e.what()}}.dump()
              << "\n";
  } catch (const InstanceError& e) {
    std::cerr << json{{"error", "instance"}, {"message", e.what()}}.dump() << "\n";
  } catch (const SearchRefused& e) {
    std::cerr << json{{"error", "refused"}, {"message", e.what()}}.dump() << "\n";
  } catch (const Unsupported& e) {
    std::cerr << json{{"error", "unsupported"}, {"message", e.what()}}.dump() << "\n";
  } catch (const std::exception& e) {
    std::cerr << json{{"error", "usage"}, {"message", e.what()}}.dump() << "\n";
  }
  return kUsage;
}
