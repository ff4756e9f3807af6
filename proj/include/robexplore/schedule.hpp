#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "robexplore/exact.hpp"
#include "robexplore/instance.hpp"

namespace robexplore {

struct Waypoint {
  ExactNumber time;
  ExactNumber position;

  friend bool operator==(const Waypoint&, const Waypoint&) = default;
};

/// Piecewise motion of one robot. Between consecutive waypoints the robot
/// moves at unit speed toward the next position and waits there for the rest
/// of the interval. The first waypoint is (0, start).
struct RobotTrajectory {
  ExactNumber start;
  std::vector<Waypoint> waypoints;

  static RobotTrajectory stationary(const ExactNumber& at) { return {at, {{0, at}}}; }
  ExactNumber finish_time() const;

  friend bool operator==(const RobotTrajectory&, const RobotTrajectory&) = default;
};

/// Positions are line coordinates, or unwrapped arc-length coordinates when
/// `circumference` is set (a position x stands for ring point x mod C).
struct Schedule {
  std::vector<RobotTrajectory> robots;
  std::optional<ExactNumber> circumference;

  friend bool operator==(const Schedule&, const Schedule&) = default;
};

std::string schedule_to_json(const Schedule& schedule);
Schedule schedule_from_json(std::string_view text);

/// Malformed trajectory: speed above 1, non-increasing times, bad first waypoint.
class ScheduleError : public std::runtime_error {
 public:
  ScheduleError(int robot, int waypoint, const std::string& what);
  int robot() const { return robot_; }
  int waypoint() const { return waypoint_; }

 private:
  int robot_;
  int waypoint_;
};

/// What a schedule must achieve: every node visited on time by
/// `multiplicity` distinct robots.
struct CoverageTarget {
  std::vector<ExactNumber> node_positions;
  std::optional<ExactNumber> circumference;
  std::vector<ExactNumber> deadlines;  // already clipped to any global bound
  int multiplicity = 1;
};

CoverageTarget coverage_target(const LineInstance& line, int multiplicity = 1,
                               const std::optional<ExactNumber>& bound = {});
CoverageTarget coverage_target(const RingInstance& ring, int multiplicity = 1,
                               const std::optional<ExactNumber>& bound = {});

struct CoverageVisit {
  int robot;
  ExactNumber time;

  friend bool operator==(const CoverageVisit&, const CoverageVisit&) = default;
};

struct VerifyReport {
  bool pass = false;
  /// Per node: robots that visit it on time, with their first visit.
  std::vector<std::vector<CoverageVisit>> on_time;
  ExactNumber makespan = 0;
  std::optional<int> first_violation;
};

/// First time the trajectory is at `point`, or infinity.
ExactNumber first_visit(const RobotTrajectory& robot, const ExactNumber& point,
                        const std::optional<ExactNumber>& circumference);

/// Throws ScheduleError on malformed trajectories.
void check_trajectories(const Schedule& schedule);

VerifyReport verify_schedule(const CoverageTarget& target, const Schedule& schedule);

/// Also checks that robot starts agree with the placement. Line and ring only.
VerifyReport verify_schedule(const ProblemSpec& spec, const Schedule& schedule);

}  // namespace robexplore
