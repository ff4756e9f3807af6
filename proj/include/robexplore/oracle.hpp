#pragma once

#include <optional>
#include <vector>

#include "robexplore/exact.hpp"
#include "robexplore/instance.hpp"
#include "robexplore/verdict.hpp"

namespace robexplore {

/// Line or ring seen from one start: positions are unwrapped indices m with
/// node(m) the graph node and at(m) its unwrapped coordinate.
class Track {
 public:
  static Track line(const LineInstance& line);
  static Track ring(const RingInstance& ring);

  int size() const { return n_; }
  bool is_ring() const { return circumference_.has_value(); }
  int node(int m) const { return is_ring() ? ((m % n_) + n_) % n_ : m; }
  ExactNumber at(int m) const;
  /// Smallest and largest index reachable from start s without covering a node twice.
  int lowest(int s) const { return is_ring() ? s - (n_ - 1) : 0; }
  int highest(int s) const { return is_ring() ? s + (n_ - 1) : n_ - 1; }
  const std::optional<ExactNumber>& circumference() const { return circumference_; }

 private:
  int n_ = 0;
  std::vector<ExactNumber> coordinates_;
  std::optional<ExactNumber> circumference_;
};

/// A walk that turns only at nodes and reaches a new extreme on each leg,
/// alternating sides.
struct Walk {
  int start = 0;
  std::vector<int> turns;  // unwrapped indices of the leg ends
  std::vector<ExactNumber> first_visit;  // per node; infinity if never reached
  ExactNumber end_time = 0;
};

/// All maximal walks from `start` whose legs end by `budget`. Without late
/// passes every newly reached node must meet its deadline; with them a node
/// may be passed late and simply not count.
std::vector<Walk> enumerate_walks(const Track& track, int start, const std::optional<ExactNumber>& budget,
                                  const std::vector<ExactNumber>& deadlines, bool late_passes = false);

struct OracleCaps {
  int max_n = 10;
  int max_k = 4;
  int max_f = 2;
};

/// Exhaustive optimum over placements, per-robot walks and f+1 coverage.
/// Line and ring only. Throws SearchRefused past the caps.
Verdict brute_solve(const ProblemSpec& spec, const OracleCaps& caps = {});

/// Robot trajectory that follows a walk; ring positions are shifted by one
/// circumference so they stay non-negative.
RobotTrajectory walk_trajectory(const Track& track, const Walk& walk);

}  // namespace robexplore
