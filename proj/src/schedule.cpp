#include "robexplore/schedule.hpp"

#include <algorithm>
#include <map>
#include <nlohmann/json.hpp>

namespace robexplore {

namespace {

using nlohmann::json;

ExactNumber json_number(const json& v, const std::string& path) {
  if (v.is_string()) return ExactNumber::parse(v.get<std::string>());
  if (v.is_number_integer()) return ExactNumber(v.get<std::int64_t>());
  throw std::invalid_argument(path + ": expected a number string");
}

// Distance travelled going up (counterclockwise) from `from` to reach ring point `to`.
ExactNumber upward_gap(const ExactNumber& from, const ExactNumber& to, const ExactNumber& c) {
  const ExactNumber a = from.mod(c);
  const ExactNumber b = to.mod(c);
  return a <= b ? b - a : c - (a - b);
}

}  // namespace

ExactNumber RobotTrajectory::finish_time() const {
  ExactNumber finish = 0;
  for (std::size_t i = 1; i < waypoints.size(); ++i) {
    const auto& a = waypoints[i - 1];
    const auto& b = waypoints[i];
    if (a.position != b.position) finish = max(finish, a.time + ExactNumber::distance(a.position, b.position));
  }
  return finish;
}

std::string schedule_to_json(const Schedule& schedule) {
  json doc;
  doc["robots"] = json::array();
  for (const auto& r : schedule.robots) {
    json robot;
    robot["start"] = r.start.to_string();
    robot["waypoints"] = json::array();
    for (const auto& w : r.waypoints) robot["waypoints"].push_back({{"t", w.time.to_string()}, {"x", w.position.to_string()}});
    doc["robots"].push_back(robot);
  }
  if (schedule.circumference) doc["circumference"] = schedule.circumference->to_string();
  return doc.dump(2);
}

Schedule schedule_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("schedule: syntax error: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("robots") || !doc["robots"].is_array()) {
    throw std::invalid_argument("schedule: expected {\"robots\": [...]}");
  }
  Schedule out;
  for (std::size_t i = 0; i < doc["robots"].size(); ++i) {
    const json& r = doc["robots"][i];
    const std::string path = "robots[" + std::to_string(i) + "]";
    if (!r.is_object() || !r.contains("start") || !r.contains("waypoints") || !r["waypoints"].is_array()) {
      throw std::invalid_argument(path + ": expected start and waypoints");
    }
    RobotTrajectory t;
    t.start = json_number(r["start"], path + ".start");
    for (std::size_t j = 0; j < r["waypoints"].size(); ++j) {
      const json& w = r["waypoints"][j];
      const std::string wpath = path + ".waypoints[" + std::to_string(j) + "]";
      if (!w.is_object() || !w.contains("t") || !w.contains("x")) throw std::invalid_argument(wpath + ": expected t and x");
      t.waypoints.push_back({json_number(w["t"], wpath + ".t"), json_number(w["x"], wpath + ".x")});
    }
    out.robots.push_back(std::move(t));
  }
  if (doc.contains("circumference") && !doc["circumference"].is_null()) {
    out.circumference = json_number(doc["circumference"], "circumference");
  }
  return out;
}

ScheduleError::ScheduleError(int robot, int waypoint, const std::string& what)
    : std::runtime_error("robot " + std::to_string(robot) + ", waypoint " + std::to_string(waypoint) + ": " + what),
      robot_(robot),
      waypoint_(waypoint) {}

CoverageTarget coverage_target(const LineInstance& line, int multiplicity, const std::optional<ExactNumber>& bound) {
  return {line.coordinates, std::nullopt, capped_deadlines(line.deadlines, bound), multiplicity};
}

CoverageTarget coverage_target(const RingInstance& ring, int multiplicity, const std::optional<ExactNumber>& bound) {
  return {ring.node_coordinates(), ring.circumference(), capped_deadlines(ring.deadlines, bound), multiplicity};
}

ExactNumber first_visit(const RobotTrajectory& robot, const ExactNumber& point,
                        const std::optional<ExactNumber>& circumference) {
  const auto& wps = robot.waypoints;
  if (wps.empty()) return ExactNumber::infinity();
  auto at_point = [&](const ExactNumber& x) {
    return circumference ? x.mod(*circumference) == point.mod(*circumference) : x == point;
  };
  if (at_point(wps.front().position)) return wps.front().time;
  for (std::size_t i = 1; i < wps.size(); ++i) {
    const auto& a = wps[i - 1];
    const auto& b = wps[i];
    if (a.position == b.position) continue;
    const bool up = a.position < b.position;
    const ExactNumber travel = ExactNumber::distance(a.position, b.position);
    ExactNumber gap;
    if (circumference) {
      gap = up ? upward_gap(a.position, point, *circumference) : upward_gap(point, a.position, *circumference);
    } else {
      if (up ? (point < a.position || b.position < point) : (a.position < point || point < b.position)) continue;
      gap = ExactNumber::distance(a.position, point);
    }
    if (gap <= travel) return a.time + gap;
  }
  return ExactNumber::infinity();
}

void check_trajectories(const Schedule& schedule) {
  for (std::size_t r = 0; r < schedule.robots.size(); ++r) {
    const auto& t = schedule.robots[r];
    const int robot = static_cast<int>(r);
    if (t.waypoints.empty()) throw ScheduleError(robot, 0, "no waypoints");
    if (!t.waypoints.front().time.is_zero()) throw ScheduleError(robot, 0, "first waypoint must be at time 0");
    if (t.waypoints.front().position != t.start) throw ScheduleError(robot, 0, "first waypoint must be at the start");
    for (std::size_t i = 0; i < t.waypoints.size(); ++i) {
      const auto& w = t.waypoints[i];
      if (w.time.is_infinite() || w.position.is_infinite()) {
        throw ScheduleError(robot, static_cast<int>(i), "waypoint must be finite");
      }
      if (i == 0) continue;
      const auto& prev = t.waypoints[i - 1];
      if (!(prev.time < w.time)) throw ScheduleError(robot, static_cast<int>(i), "time regression");
      if (w.time - prev.time < ExactNumber::distance(prev.position, w.position)) {
        throw ScheduleError(robot, static_cast<int>(i), "speed above 1");
      }
    }
  }
}

VerifyReport verify_schedule(const CoverageTarget& target, const Schedule& schedule) {
  check_trajectories(schedule);
  VerifyReport report;
  const auto n = target.node_positions.size();
  report.on_time.resize(n);
  for (std::size_t r = 0; r < schedule.robots.size(); ++r) {
    const auto& robot = schedule.robots[r];
    report.makespan = max(report.makespan, robot.finish_time());
    for (std::size_t v = 0; v < n; ++v) {
      const ExactNumber t = first_visit(robot, target.node_positions[v], target.circumference);
      if (t <= target.deadlines[v]) report.on_time[v].push_back({static_cast<int>(r), t});
    }
  }
  report.pass = true;
  for (std::size_t v = 0; v < n; ++v) {
    if (static_cast<int>(report.on_time[v].size()) < target.multiplicity) {
      report.pass = false;
      report.first_violation = static_cast<int>(v);
      break;
    }
  }
  return report;
}

VerifyReport verify_schedule(const ProblemSpec& spec, const Schedule& schedule) {
  if (spec.is_star()) throw std::invalid_argument("verify_schedule: star schedules are reported as leaf routes");
  CoverageTarget target = spec.is_line() ? coverage_target(spec.line(), spec.faults + 1, spec.bound)
                                         : coverage_target(spec.ring(), spec.faults + 1, spec.bound);
  if (static_cast<int>(schedule.robots.size()) != spec.robot_count()) {
    throw ScheduleError(static_cast<int>(schedule.robots.size()), 0,
                        "schedule has " + std::to_string(schedule.robots.size()) + " robots, instance has " +
                            std::to_string(spec.robot_count()));
  }
  if (spec.is_ring() && schedule.circumference != target.circumference) {
    throw ScheduleError(0, 0, "ring schedule must declare the ring circumference");
  }
  // Map each robot start to a node index.
  std::vector<int> starts;
  for (std::size_t r = 0; r < schedule.robots.size(); ++r) {
    const auto& s = schedule.robots[r].start;
    int node = -1;
    for (std::size_t v = 0; v < target.node_positions.size(); ++v) {
      const bool same = target.circumference ? s.mod(*target.circumference) == target.node_positions[v]
                                             : s == target.node_positions[v];
      if (same) node = static_cast<int>(v);
    }
    if (node < 0) throw ScheduleError(static_cast<int>(r), 0, "start is not a node");
    starts.push_back(node);
  }
  const auto& placement = spec.placement;
  if (placement.mode == PlacementMode::Fixed) {
    auto want = placement.positions;
    auto have = starts;
    std::sort(want.begin(), want.end());
    std::sort(have.begin(), have.end());
    if (want != have) throw ScheduleError(0, 0, "robot starts do not match the fixed placement");
  } else if (placement.mode == PlacementMode::Subset) {
    for (std::size_t r = 0; r < starts.size(); ++r) {
      if (std::find(placement.allowed.begin(), placement.allowed.end(), starts[r]) == placement.allowed.end()) {
        throw ScheduleError(static_cast<int>(r), 0, "start is outside the allowed set");
      }
    }
  }
  return verify_schedule(target, schedule);
}

}  // namespace robexplore
