#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "robexplore/exact.hpp"

namespace robexplore {

/// Raised for malformed documents and violated instance invariants. The
/// message starts with the JSON path of the offending field.
class InstanceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Nodes at strictly increasing coordinates; edge (j, j+1) weighs x[j+1] - x[j].
struct LineInstance {
  std::vector<ExactNumber> coordinates;
  std::vector<ExactNumber> deadlines;

  int size() const { return static_cast<int>(coordinates.size()); }
  ExactNumber edge_weight(int j) const { return coordinates[j + 1] - coordinates[j]; }
  ExactNumber span() const { return coordinates.back() - coordinates.front(); }
  void validate() const;
};

/// Ring with edge i joining node i and node (i+1) mod n.
struct RingInstance {
  std::vector<ExactNumber> edge_weights;
  std::vector<ExactNumber> deadlines;

  int size() const { return static_cast<int>(edge_weights.size()); }
  ExactNumber circumference() const;
  /// Arc-length coordinate of each node measured counterclockwise from node 0.
  std::vector<ExactNumber> node_coordinates() const;
  void validate() const;
};

/// Star with node 0 as centre and node i (1..q) at the end of leaf edge i.
struct StarInstance {
  std::vector<ExactNumber> leaf_weights;
  std::vector<ExactNumber> leaf_deadlines;
  ExactNumber center_deadline = ExactNumber::infinity();

  int leaf_count() const { return static_cast<int>(leaf_weights.size()); }
  int node_count() const { return leaf_count() + 1; }
  void validate() const;
};

enum class PlacementMode { Fixed, Free, Subset };

struct RobotPlacement {
  PlacementMode mode = PlacementMode::Fixed;
  std::vector<int> positions;  // Fixed: one node index per robot
  int count = 0;               // Free / Subset
  std::vector<int> allowed;    // Subset

  int robot_count() const {
    return mode == PlacementMode::Fixed ? static_cast<int>(positions.size()) : count;
  }

  static RobotPlacement fixed(std::vector<int> positions);
  static RobotPlacement free(int count);
  static RobotPlacement subset(int count, std::vector<int> allowed);
};

using Topology = std::variant<LineInstance, RingInstance, StarInstance>;

struct ProblemSpec {
  Topology topology;
  RobotPlacement placement;
  int faults = 0;
  std::optional<ExactNumber> bound;

  int node_count() const;
  int robot_count() const { return placement.robot_count(); }
  bool is_line() const { return std::holds_alternative<LineInstance>(topology); }
  bool is_ring() const { return std::holds_alternative<RingInstance>(topology); }
  bool is_star() const { return std::holds_alternative<StarInstance>(topology); }
  const LineInstance& line() const { return std::get<LineInstance>(topology); }
  const RingInstance& ring() const { return std::get<RingInstance>(topology); }
  const StarInstance& star() const { return std::get<StarInstance>(topology); }
  /// Throws InstanceError on the first violated invariant.
  void validate() const;
};

ProblemSpec parse_instance(std::string_view text);
std::string serialize_instance(const ProblemSpec& spec);

/// Node deadlines clipped to the global bound (if any).
std::vector<ExactNumber> capped_deadlines(std::span<const ExactNumber> deadlines,
                                          const std::optional<ExactNumber>& bound);
LineInstance with_bound(LineInstance line, const std::optional<ExactNumber>& bound);
RingInstance with_bound(RingInstance ring, const std::optional<ExactNumber>& bound);

struct PrunedLine {
  LineInstance line;
  std::vector<int> original_index;  // pruned index -> original index
  int start = 0;                    // start index inside the pruned line
};

/// Drops nodes whose on-time visit is implied by a farther node with a
/// tighter deadline on the same side of a single robot's start.
PrunedLine prune_dominated(const LineInstance& line, int start);

}  // namespace robexplore
