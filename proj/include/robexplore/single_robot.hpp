#pragma once

#include <optional>
#include <span>
#include <vector>

#include "robexplore/exact.hpp"
#include "robexplore/instance.hpp"
#include "robexplore/schedule.hpp"
#include "robexplore/snapshot.hpp"

namespace robexplore {

/// Earliest deadline-respecting arrival time of every snapshot state, with
/// the predecessor achieving it. Unreachable states keep time = infinity.
struct LabelForest {
  std::vector<ExactNumber> time;
  std::vector<NodeId> parent;

  bool reached(NodeId id) const { return time[id].is_finite(); }
};

/// Zero labels on the given layer-0 states, infinity elsewhere.
/// Throws std::invalid_argument if `sources` is empty or not in layer 0.
LabelForest init_start(std::span<const NodeId> sources, const SnapshotGraph& graph);

/// Relaxes arcs layer by layer. A state keeps a finite label only if its
/// newly explored node is reached by that node's deadline. With a window,
/// only states whose explored segment lies inside it are touched.
LabelForest propagate(const SnapshotGraph& graph, LabelForest labels, std::span<const ExactNumber> deadlines,
                      const std::optional<Window>& window = std::nullopt);

/// min over the two sides of the state exploring [i, j]; infinity if neither is reached.
/// For a ring, (i, j) is the counterclockwise segment; j = i - 1 asks for the whole ring.
ExactNumber optimal_time(const SnapshotGraph& graph, const LabelForest& labels, int i, int j);

/// Best reached state for the segment [i, j], if any.
std::optional<NodeId> best_state(const SnapshotGraph& graph, const LabelForest& labels, int i, int j);

/// T[i][j] over a line: entries i <= j, infinity where no admissible start lies in [i, j].
class IntervalTable {
 public:
  IntervalTable() = default;
  explicit IntervalTable(int n, ExactNumber fill = ExactNumber::infinity())
      : n_(n), values_(static_cast<std::size_t>(n) * n, fill) {}

  int size() const { return n_; }
  const ExactNumber& at(int i, int j) const { return values_[static_cast<std::size_t>(i) * n_ + j]; }
  ExactNumber& at(int i, int j) { return values_[static_cast<std::size_t>(i) * n_ + j]; }

 private:
  int n_ = 0;
  std::vector<ExactNumber> values_;
};

struct IntervalTableResult {
  SnapshotGraph graph;
  LabelForest labels;
  IntervalTable table;
};

/// One propagation pass from all allowed starts at once.
IntervalTableResult interval_table(const LineInstance& line, std::span<const int> allowed_starts);

/// Walks parent links back to a source and emits the turning points.
/// Throws std::invalid_argument if the target is unreached.
RobotTrajectory extract_trajectory(const SnapshotGraph& graph, const LabelForest& labels, NodeId target);

/// Single robot from a fixed start: prunes dominated nodes, then runs the
/// label propagation. Returns the optimum (infinity if infeasible) and, when
/// feasible, the trajectory in original coordinates.
struct SingleRobotResult {
  ExactNumber optimum = ExactNumber::infinity();
  std::optional<RobotTrajectory> trajectory;
};
SingleRobotResult solve_single_fixed(const LineInstance& line, int start);

}  // namespace robexplore
