#include "robexplore/snapshot.hpp"

#include <algorithm>
#include <sstream>

namespace robexplore {

namespace {

int wrap(int v, int n) { return ((v % n) + n) % n; }

char side_char(Side s) { return s == Side::Left ? 'L' : 'R'; }

}  // namespace

SnapshotGraph SnapshotGraph::line(const LineInstance& line) {
  SnapshotGraph g;
  g.kind_ = Kind::Line;
  const int n = line.size();
  g.n_ = n;
  g.coordinates_ = line.coordinates;
  g.nodes_.reserve(static_cast<std::size_t>(n) * n);
  g.layer_begin_.reserve(n + 1);
  for (int l = 0; l < n; ++l) {
    g.layer_begin_.push_back(static_cast<NodeId>(g.nodes_.size()));
    for (int i = 0; i + l < n; ++i) {
      g.nodes_.push_back({i, i + l, Side::Left});
      if (l > 0) g.nodes_.push_back({i, i + l, Side::Right});
    }
  }
  g.layer_begin_.push_back(static_cast<NodeId>(g.nodes_.size()));

  const auto& x = line.coordinates;
  g.out_begin_.reserve(g.nodes_.size() + 1);
  g.arcs_.reserve(2 * g.nodes_.size());
  for (NodeId id = 0; id < static_cast<NodeId>(g.nodes_.size()); ++id) {
    g.out_begin_.push_back(static_cast<std::uint32_t>(g.arcs_.size()));
    const auto& s = g.nodes_[id];
    const ExactNumber& here = x[g.position(id)];
    if (s.left > 0) {
      g.arcs_.push_back({*g.find(s.left - 1, s.right, Side::Left), Side::Left, here - x[s.left - 1]});
    }
    if (s.right < n - 1) {
      g.arcs_.push_back({*g.find(s.left, s.right + 1, Side::Right), Side::Right, x[s.right + 1] - here});
    }
  }
  g.out_begin_.push_back(static_cast<std::uint32_t>(g.arcs_.size()));
  return g;
}

SnapshotGraph SnapshotGraph::ring(const RingInstance& ring) {
  SnapshotGraph g;
  g.kind_ = Kind::Ring;
  const int n = ring.size();
  g.n_ = n;
  g.coordinates_ = ring.node_coordinates();
  const ExactNumber circumference = ring.circumference();
  g.circumference_ = circumference;

  for (int l = 0; l < n; ++l) {
    g.layer_begin_.push_back(static_cast<NodeId>(g.nodes_.size()));
    for (int i = 0; i < n; ++i) {
      if (l == 0 || l == n - 1) {
        g.nodes_.push_back({i, wrap(i + l, n), Side::Left});
      } else {
        g.nodes_.push_back({i, wrap(i + l, n), Side::Left});
        g.nodes_.push_back({i, wrap(i + l, n), Side::Right});
      }
    }
  }
  g.layer_begin_.push_back(static_cast<NodeId>(g.nodes_.size()));

  const auto& c = g.coordinates_;
  // Counterclockwise walking distance from a to b inside an explored segment.
  auto ccw = [&](int a, int b) { return a <= b ? c[b] - c[a] : circumference - (c[a] - c[b]); };

  g.out_begin_.reserve(g.nodes_.size() + 1);
  for (NodeId id = 0; id < static_cast<NodeId>(g.nodes_.size()); ++id) {
    g.out_begin_.push_back(static_cast<std::uint32_t>(g.arcs_.size()));
    const int l = g.layer(id);
    if (l == n - 1) continue;
    const auto& s = g.nodes_[id];
    const int pos = g.position(id);
    const int a = wrap(s.left - 1, n);
    const int b = wrap(s.right + 1, n);
    SnapshotArc left_arc{*g.find(a, s.right, Side::Left), Side::Left, ring.edge_weights[a] + ccw(s.left, pos)};
    SnapshotArc right_arc{*g.find(s.left, b, Side::Right), Side::Right, ccw(pos, s.right) + ring.edge_weights[s.right]};
    if (left_arc.to == right_arc.to) {
      g.arcs_.push_back(right_arc.weight < left_arc.weight ? right_arc : left_arc);
    } else {
      g.arcs_.push_back(left_arc);
      g.arcs_.push_back(right_arc);
    }
  }
  g.out_begin_.push_back(static_cast<std::uint32_t>(g.arcs_.size()));
  return g;
}

int SnapshotGraph::layer(NodeId id) const {
  const auto it = std::upper_bound(layer_begin_.begin(), layer_begin_.end(), id);
  return static_cast<int>(it - layer_begin_.begin()) - 1;
}

std::optional<NodeId> SnapshotGraph::find(int left, int right, Side side) const {
  if (left < 0 || right < 0 || left >= n_ || right >= n_) return std::nullopt;
  if (kind_ == Kind::Line) {
    if (left > right) return std::nullopt;
    const int l = right - left;
    if (l == 0) return left;
    return layer_begin_[l] + 2 * left + static_cast<int>(side);
  }
  const int l = wrap(right - left, n_);
  if (l == 0) return left;
  if (l == n_ - 1) {
    const int p = side == Side::Left ? left : right;
    return layer_begin_[l] + p;
  }
  return layer_begin_[l] + 2 * left + static_cast<int>(side);
}

int SnapshotGraph::new_node(NodeId id) const { return position(id); }

int SnapshotGraph::position(NodeId id) const {
  const auto& s = nodes_[id];
  return s.side == Side::Left ? s.left : s.right;
}

bool SnapshotGraph::inside(NodeId id, const Window& w) const {
  const auto& s = nodes_[id];
  if (kind_ == Kind::Line) return s.left >= w.anchor && s.right <= w.anchor + w.length - 1;
  const int offset = wrap(s.left - w.anchor, n_);
  return offset + segment_length(id) <= w.length;
}

std::string SnapshotGraph::dump() const {
  std::ostringstream out;
  auto label = [&](NodeId id) {
    const auto& s = nodes_[id];
    std::ostringstream o;
    o << '(' << s.left << ',' << s.right << ',' << side_char(s.side) << ')';
    return o.str();
  };
  for (NodeId id = 0; id < static_cast<NodeId>(nodes_.size()); ++id) {
    for (const auto& arc : out_arcs(id)) out << label(id) << " -> " << label(arc.to) << " w=" << arc.weight << '\n';
  }
  return out.str();
}

}  // namespace robexplore
