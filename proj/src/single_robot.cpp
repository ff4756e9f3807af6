#include "robexplore/single_robot.hpp"

#include <algorithm>
#include <stdexcept>

namespace robexplore {

namespace {

int wrap(int v, int n) { return ((v % n) + n) % n; }

// Calls fn(id) for every state of `layer` whose segment lies inside the window.
template <typename Fn>
void for_each_state(const SnapshotGraph& g, int layer, const std::optional<Window>& window, Fn&& fn) {
  const int n = g.size();
  const bool whole = !window || (g.kind() == SnapshotGraph::Kind::Ring && window->length >= n);
  if (whole) {
    for (NodeId id = g.layer_begin(layer); id < g.layer_end(layer); ++id) fn(id);
    return;
  }
  const int last_offset = window->length - (layer + 1);
  for (int offset = 0; offset <= last_offset; ++offset) {
    const int left = g.kind() == SnapshotGraph::Kind::Ring ? wrap(window->anchor + offset, n) : window->anchor + offset;
    const int right = g.kind() == SnapshotGraph::Kind::Ring ? wrap(left + layer, n) : left + layer;
    if (layer == 0) {
      fn(g.source(left));
      continue;
    }
    fn(*g.find(left, right, Side::Left));
    fn(*g.find(left, right, Side::Right));
  }
}

}  // namespace

LabelForest init_start(std::span<const NodeId> sources, const SnapshotGraph& graph) {
  if (sources.empty()) throw std::invalid_argument("init_start: the start set must be non-empty");
  LabelForest labels{std::vector<ExactNumber>(graph.node_count(), ExactNumber::infinity()),
                     std::vector<NodeId>(graph.node_count(), kNoNode)};
  for (NodeId s : sources) {
    if (s < 0 || s >= graph.layer_end(0)) throw std::invalid_argument("init_start: sources must be layer-0 states");
    labels.time[s] = 0;
  }
  return labels;
}

LabelForest propagate(const SnapshotGraph& graph, LabelForest labels, std::span<const ExactNumber> deadlines,
                      const std::optional<Window>& window) {
  for (int layer = 0; layer + 1 < graph.layer_count(); ++layer) {
    for_each_state(graph, layer, window, [&](NodeId v) {
      const ExactNumber& tv = labels.time[v];
      if (tv.is_infinite()) return;
      for (const auto& arc : graph.out_arcs(v)) {
        if (window && !graph.inside(arc.to, *window)) continue;
        ExactNumber t = tv + arc.weight;
        if (t < labels.time[arc.to] && t <= deadlines[graph.new_node(arc.to)]) {
          labels.time[arc.to] = std::move(t);
          labels.parent[arc.to] = v;
        }
      }
    });
  }
  return labels;
}

std::optional<NodeId> best_state(const SnapshotGraph& graph, const LabelForest& labels, int i, int j) {
  const int n = graph.size();
  std::optional<NodeId> best;
  auto consider = [&](NodeId id) {
    if (labels.reached(id) && (!best || labels.time[id] < labels.time[*best])) best = id;
  };
  if (graph.kind() == SnapshotGraph::Kind::Ring && wrap(j - i, n) == n - 1) {
    for (NodeId id = graph.layer_begin(n - 1); id < graph.layer_end(n - 1); ++id) consider(id);
    return best;
  }
  if (i == j) {
    consider(graph.source(i));
    return best;
  }
  if (auto id = graph.find(i, j, Side::Left)) consider(*id);
  if (auto id = graph.find(i, j, Side::Right)) consider(*id);
  return best;
}

ExactNumber optimal_time(const SnapshotGraph& graph, const LabelForest& labels, int i, int j) {
  const auto id = best_state(graph, labels, i, j);
  return id ? labels.time[*id] : ExactNumber::infinity();
}

IntervalTableResult interval_table(const LineInstance& line, std::span<const int> allowed_starts) {
  if (allowed_starts.empty()) throw std::invalid_argument("interval_table: allowed start set must be non-empty");
  IntervalTableResult out{SnapshotGraph::line(line), {}, IntervalTable(line.size())};
  std::vector<NodeId> sources;
  for (int s : allowed_starts) sources.push_back(out.graph.source(s));
  out.labels = propagate(out.graph, init_start(sources, out.graph), line.deadlines);
  const int n = line.size();
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) out.table.at(i, j) = optimal_time(out.graph, out.labels, i, j);
  }
  return out;
}

RobotTrajectory extract_trajectory(const SnapshotGraph& graph, const LabelForest& labels, NodeId target) {
  if (!labels.reached(target)) throw std::invalid_argument("extract_trajectory: target state is not reachable");
  std::vector<NodeId> chain;
  for (NodeId v = target; v != kNoNode; v = labels.parent[v]) chain.push_back(v);
  std::reverse(chain.begin(), chain.end());

  const auto circumference = graph.circumference();
  ExactNumber base = graph.coordinate(graph.position(chain.front()));
  if (circumference) {
    // Shift far enough that clockwise motion never leaves the non-negative range.
    const ExactNumber laps = (labels.time[target] / *circumference).floor() + 1;
    base += laps * *circumference;
  }

  std::vector<Waypoint> waypoints{{0, base}};
  ExactNumber here = base;
  std::optional<Side> heading;
  for (std::size_t k = 1; k < chain.size(); ++k) {
    const auto arcs = graph.out_arcs(chain[k - 1]);
    const auto arc = std::find_if(arcs.begin(), arcs.end(), [&](const SnapshotArc& a) { return a.to == chain[k]; });
    if (heading && *heading != arc->direction) waypoints.push_back({labels.time[chain[k - 1]], here});
    heading = arc->direction;
    here = arc->direction == Side::Left ? here - arc->weight : here + arc->weight;
  }
  if (chain.size() > 1) waypoints.push_back({labels.time[target], here});

  if (circumference) {
    ExactNumber lowest = here;
    for (const auto& w : waypoints) lowest = min(lowest, w.position);
    const ExactNumber shift = (lowest / *circumference).floor() * *circumference;
    for (auto& w : waypoints) w.position -= shift;
  }
  return {waypoints.front().position, std::move(waypoints)};
}

SingleRobotResult solve_single_fixed(const LineInstance& line, int start) {
  const PrunedLine pruned = prune_dominated(line, start);
  const auto graph = SnapshotGraph::line(pruned.line);
  const NodeId source = graph.source(pruned.start);
  const auto labels = propagate(graph, init_start(std::span(&source, 1), graph), pruned.line.deadlines);
  const auto target = best_state(graph, labels, 0, pruned.line.size() - 1);
  SingleRobotResult out;
  if (!target) return out;
  out.optimum = labels.time[*target];
  out.trajectory = extract_trajectory(graph, labels, *target);
  return out;
}

}  // namespace robexplore
