#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "robexplore/exact.hpp"
#include "robexplore/instance.hpp"

namespace robexplore {

/// Which end of the explored segment holds the robot. Left is the bar on i
/// in (ī, j), Right the bar on j in (i, j̄).
enum class Side : std::uint8_t { Left = 0, Right = 1 };

using NodeId = std::int32_t;
constexpr NodeId kNoNode = -1;

struct SnapshotNode {
  std::int32_t left;   // first explored node (counterclockwise start on a ring)
  std::int32_t right;  // last explored node
  Side side;
};

struct SnapshotArc {
  NodeId to;
  Side direction;  // Left: robot moves toward decreasing coordinates
  ExactNumber weight;
};

/// A run of consecutive line (or counterclockwise ring) nodes
/// anchor, anchor+1, ..., anchor+length-1.
struct Window {
  int anchor = 0;
  int length = 0;
};

/// Layered DAG of exploration states for one robot.
///
/// Layer l holds the states whose explored segment spans l+1 nodes. Arcs
/// join consecutive layers and carry the walking time between the robot
/// positions of their endpoints. Node ids are laid out layer by layer, then
/// by left end, then Left before Right; arcs are grouped by source node in
/// the same order with the left extension first.
///
/// On a ring, the last layer keeps one state per robot position (the whole
/// ring is explored); its canonical form is (p, p-1, Left). Parallel arcs into
/// it are merged keeping the shorter walk.
class SnapshotGraph {
 public:
  enum class Kind { Line, Ring };

  static SnapshotGraph line(const LineInstance& line);
  static SnapshotGraph ring(const RingInstance& ring);

  Kind kind() const { return kind_; }
  int size() const { return n_; }
  int layer_count() const { return n_; }
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t arc_count() const { return arcs_.size(); }

  const SnapshotNode& node(NodeId id) const { return nodes_[id]; }
  int layer(NodeId id) const;
  NodeId layer_begin(int layer) const { return layer_begin_[layer]; }
  NodeId layer_end(int layer) const { return layer_begin_[layer + 1]; }
  std::span<const SnapshotArc> out_arcs(NodeId id) const {
    return {arcs_.data() + out_begin_[id], arcs_.data() + out_begin_[id + 1]};
  }

  NodeId source(int v) const { return v; }
  std::optional<NodeId> find(int left, int right, Side side) const;
  /// Node of the line/ring explored on arrival at this state.
  int new_node(NodeId id) const;
  /// Line/ring node currently holding the robot.
  int position(NodeId id) const;
  bool is_terminal(NodeId id) const { return layer(id) == n_ - 1; }
  /// Number of explored nodes.
  int segment_length(NodeId id) const { return layer(id) + 1; }
  /// True if every explored node of the state lies in the window.
  bool inside(NodeId id, const Window& w) const;

  /// Coordinate of a line/ring node (arc length from node 0 on a ring).
  const ExactNumber& coordinate(int v) const { return coordinates_[v]; }
  std::optional<ExactNumber> circumference() const { return circumference_; }

  /// One arc per line: "(i,j,side) -> (i',j',side') w=p/q".
  std::string dump() const;

 private:
  Kind kind_ = Kind::Line;
  int n_ = 0;
  std::vector<SnapshotNode> nodes_;
  std::vector<NodeId> layer_begin_;
  std::vector<std::uint32_t> out_begin_;
  std::vector<SnapshotArc> arcs_;
  std::vector<ExactNumber> coordinates_;
  std::optional<ExactNumber> circumference_;
};

}  // namespace robexplore
