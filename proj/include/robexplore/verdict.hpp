#pragma once

#include <optional>
#include <vector>

#include "robexplore/exact.hpp"
#include "robexplore/schedule.hpp"

namespace robexplore {

/// Outcome of a solver or decision procedure.
///
/// When `feasible` holds, `schedule` has one trajectory per robot and
/// `witness` lists, per node, the robots that visit it on time.
struct Verdict {
  bool feasible = false;
  ExactNumber optimum = ExactNumber::infinity();
  Schedule schedule;
  /// Start node of every robot, in schedule order.
  std::vector<int> placement;
  /// Line edges (j, j+1) that no robot crosses, written as j.
  std::vector<int> idle_edges;
  std::vector<std::vector<CoverageVisit>> witness;
};

/// Runs the verifier on the verdict's schedule and stores the coverage lists.
/// Returns false if the schedule does not achieve the target.
bool attach_witness(Verdict& verdict, const CoverageTarget& target);

}  // namespace robexplore
