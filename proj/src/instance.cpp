#include "robexplore/instance.hpp"

#include <algorithm>
#include <nlohmann/json.hpp>

namespace robexplore {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw InstanceError(path + ": " + what);
}

std::string indexed(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

ExactNumber number_at(const json& value, const std::string& path) {
  try {
    if (value.is_string()) return ExactNumber::parse(value.get<std::string>());
    if (value.is_number_unsigned()) return ExactNumber(static_cast<std::int64_t>(value.get<std::uint64_t>()));
    if (value.is_number_integer()) return ExactNumber(value.get<std::int64_t>());
  } catch (const std::exception& e) {
    fail(path, e.what());
  }
  fail(path, "expected a decimal or \"p/q\" string");
}

ExactNumber deadline_at(const json& value, const std::string& path) {
  if (value.is_null()) return ExactNumber::infinity();
  return number_at(value, path);
}

std::vector<ExactNumber> numbers_at(const json& doc, const std::string& key, bool deadlines) {
  if (!doc.contains(key)) fail(key, "missing field");
  const json& arr = doc.at(key);
  if (!arr.is_array()) fail(key, "expected an array");
  std::vector<ExactNumber> out;
  out.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    out.push_back(deadlines ? deadline_at(arr[i], indexed(key, i)) : number_at(arr[i], indexed(key, i)));
  }
  return out;
}

std::vector<int> ints_at(const json& obj, const std::string& key, const std::string& path) {
  const json& arr = obj.at(key);
  if (!arr.is_array()) fail(path, "expected an array of integers");
  std::vector<int> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_number_integer()) fail(indexed(path, i), "expected an integer");
    out.push_back(arr[i].get<int>());
  }
  return out;
}

int int_at(const json& obj, const std::string& key, const std::string& path) {
  const json& v = obj.at(key);
  if (!v.is_number_integer()) fail(path, "expected an integer");
  return v.get<int>();
}

json number_json(const ExactNumber& x) {
  if (x.is_infinite()) return nullptr;
  return x.to_string();
}

json numbers_json(std::span<const ExactNumber> xs) {
  json arr = json::array();
  for (const auto& x : xs) arr.push_back(number_json(x));
  return arr;
}

void check_deadlines(std::span<const ExactNumber> deadlines, std::size_t expected, const std::string& path) {
  if (deadlines.size() != expected) {
    fail(path, "expected " + std::to_string(expected) + " entries, got " + std::to_string(deadlines.size()));
  }
}

}  // namespace

void LineInstance::validate() const {
  if (coordinates.empty()) fail("coordinates", "a line needs at least one node");
  for (std::size_t i = 0; i < coordinates.size(); ++i) {
    if (coordinates[i].is_infinite()) fail(indexed("coordinates", i), "must be finite");
    if (i > 0 && !(coordinates[i - 1] < coordinates[i])) {
      fail(indexed("coordinates", i), "coordinates must be strictly increasing");
    }
  }
  check_deadlines(deadlines, coordinates.size(), "deadlines");
}

ExactNumber RingInstance::circumference() const {
  ExactNumber total = 0;
  for (const auto& w : edge_weights) total += w;
  return total;
}

std::vector<ExactNumber> RingInstance::node_coordinates() const {
  std::vector<ExactNumber> out(edge_weights.size());
  ExactNumber acc = 0;
  for (std::size_t i = 0; i < edge_weights.size(); ++i) {
    out[i] = acc;
    acc += edge_weights[i];
  }
  return out;
}

void RingInstance::validate() const {
  if (edge_weights.size() < 2) fail("edge_weights", "a ring needs at least two nodes");
  for (std::size_t i = 0; i < edge_weights.size(); ++i) {
    if (edge_weights[i].is_infinite() || edge_weights[i].is_zero()) {
      fail(indexed("edge_weights", i), "edge weights must be positive and finite");
    }
  }
  check_deadlines(deadlines, edge_weights.size(), "deadlines");
}

void StarInstance::validate() const {
  if (leaf_weights.empty()) fail("leaf_weights", "a star needs at least one leaf");
  for (std::size_t i = 0; i < leaf_weights.size(); ++i) {
    if (leaf_weights[i].is_infinite() || leaf_weights[i].is_zero()) {
      fail(indexed("leaf_weights", i), "leaf weights must be positive and finite");
    }
  }
  check_deadlines(leaf_deadlines, leaf_weights.size(), "deadlines");
}

RobotPlacement RobotPlacement::fixed(std::vector<int> positions) {
  RobotPlacement p;
  p.mode = PlacementMode::Fixed;
  p.positions = std::move(positions);
  return p;
}

RobotPlacement RobotPlacement::free(int count) {
  RobotPlacement p;
  p.mode = PlacementMode::Free;
  p.count = count;
  return p;
}

RobotPlacement RobotPlacement::subset(int count, std::vector<int> allowed) {
  RobotPlacement p;
  p.mode = PlacementMode::Subset;
  p.count = count;
  p.allowed = std::move(allowed);
  return p;
}

int ProblemSpec::node_count() const {
  return std::visit(
      [](const auto& t) -> int {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, StarInstance>) {
          return t.node_count();
        } else {
          return t.size();
        }
      },
      topology);
}

void ProblemSpec::validate() const {
  std::visit([](const auto& t) { t.validate(); }, topology);
  const int n = node_count();
  switch (placement.mode) {
    case PlacementMode::Fixed: {
      if (placement.positions.empty()) fail("robots.positions", "at least one robot is required");
      for (std::size_t i = 0; i < placement.positions.size(); ++i) {
        const int p = placement.positions[i];
        if (p < 0 || p >= n) fail(indexed("robots.positions", i), "node index out of range");
      }
      if (faults == 0) {
        auto sorted = placement.positions;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
          fail("robots.positions", "duplicate start positions require faults > 0");
        }
      }
      break;
    }
    case PlacementMode::Free:
      if (placement.count < 1) fail("robots.count", "at least one robot is required");
      break;
    case PlacementMode::Subset:
      if (placement.count < 1) fail("robots.count", "at least one robot is required");
      if (placement.allowed.empty()) fail("robots.allowed", "allowed start set must be non-empty");
      for (std::size_t i = 0; i < placement.allowed.size(); ++i) {
        const int p = placement.allowed[i];
        if (p < 0 || p >= n) fail(indexed("robots.allowed", i), "node index out of range");
      }
      break;
  }
  if (faults < 0) fail("faults", "must be non-negative");
  if (faults >= robot_count()) fail("faults", "f must be < k");
  if (bound && bound->is_infinite()) fail("delta", "bound must be finite (use null for none)");
}

ProblemSpec parse_instance(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InstanceError(std::string("$: syntax error: ") + e.what());
  }
  if (!doc.is_object()) fail("$", "expected a JSON object");
  if (!doc.contains("topology") || !doc["topology"].is_string()) fail("topology", "missing or not a string");
  const auto kind = doc["topology"].get<std::string>();

  ProblemSpec spec;
  if (kind == "line") {
    spec.topology = LineInstance{numbers_at(doc, "coordinates", false), numbers_at(doc, "deadlines", true)};
  } else if (kind == "ring") {
    spec.topology = RingInstance{numbers_at(doc, "edge_weights", false), numbers_at(doc, "deadlines", true)};
  } else if (kind == "star") {
    StarInstance star{numbers_at(doc, "leaf_weights", false), numbers_at(doc, "deadlines", true),
                      ExactNumber::infinity()};
    if (doc.contains("center_deadline")) star.center_deadline = deadline_at(doc["center_deadline"], "center_deadline");
    spec.topology = std::move(star);
  } else {
    fail("topology", "expected \"line\", \"ring\" or \"star\"");
  }

  if (!doc.contains("robots") || !doc["robots"].is_object()) fail("robots", "missing robots object");
  const json& robots = doc["robots"];
  if (!robots.contains("mode") || !robots["mode"].is_string()) fail("robots.mode", "missing or not a string");
  const auto mode = robots["mode"].get<std::string>();
  if (mode == "fixed") {
    if (!robots.contains("positions")) fail("robots.positions", "missing field");
    spec.placement = RobotPlacement::fixed(ints_at(robots, "positions", "robots.positions"));
  } else if (mode == "free") {
    if (!robots.contains("count")) fail("robots.count", "missing field");
    spec.placement = RobotPlacement::free(int_at(robots, "count", "robots.count"));
  } else if (mode == "subset") {
    if (!robots.contains("count")) fail("robots.count", "missing field");
    if (!robots.contains("allowed")) fail("robots.allowed", "missing field");
    spec.placement =
        RobotPlacement::subset(int_at(robots, "count", "robots.count"), ints_at(robots, "allowed", "robots.allowed"));
  } else {
    fail("robots.mode", "expected \"fixed\", \"free\" or \"subset\"");
  }

  spec.faults = doc.contains("faults") ? int_at(doc, "faults", "faults") : 0;
  if (doc.contains("delta") && !doc["delta"].is_null()) spec.bound = number_at(doc["delta"], "delta");
  spec.validate();
  return spec;
}

std::string serialize_instance(const ProblemSpec& spec) {
  json doc;
  if (spec.is_line()) {
    doc["topology"] = "line";
    doc["coordinates"] = numbers_json(spec.line().coordinates);
    doc["deadlines"] = numbers_json(spec.line().deadlines);
  } else if (spec.is_ring()) {
    doc["topology"] = "ring";
    doc["edge_weights"] = numbers_json(spec.ring().edge_weights);
    doc["deadlines"] = numbers_json(spec.ring().deadlines);
  } else {
    doc["topology"] = "star";
    doc["leaf_weights"] = numbers_json(spec.star().leaf_weights);
    doc["deadlines"] = numbers_json(spec.star().leaf_deadlines);
    doc["center_deadline"] = number_json(spec.star().center_deadline);
  }
  json robots;
  switch (spec.placement.mode) {
    case PlacementMode::Fixed:
      robots["mode"] = "fixed";
      robots["positions"] = spec.placement.positions;
      break;
    case PlacementMode::Free:
      robots["mode"] = "free";
      robots["count"] = spec.placement.count;
      break;
    case PlacementMode::Subset:
      robots["mode"] = "subset";
      robots["count"] = spec.placement.count;
      robots["allowed"] = spec.placement.allowed;
      break;
  }
  doc["robots"] = robots;
  doc["faults"] = spec.faults;
  doc["delta"] = spec.bound ? number_json(*spec.bound) : json(nullptr);
  return doc.dump(2);
}

std::vector<ExactNumber> capped_deadlines(std::span<const ExactNumber> deadlines,
                                          const std::optional<ExactNumber>& bound) {
  std::vector<ExactNumber> out(deadlines.begin(), deadlines.end());
  if (bound) {
    for (auto& d : out) d = min(d, *bound);
  }
  return out;
}

LineInstance with_bound(LineInstance line, const std::optional<ExactNumber>& bound) {
  line.deadlines = capped_deadlines(line.deadlines, bound);
  return line;
}

RingInstance with_bound(RingInstance ring, const std::optional<ExactNumber>& bound) {
  ring.deadlines = capped_deadlines(ring.deadlines, bound);
  return ring;
}

PrunedLine prune_dominated(const LineInstance& line, int start) {
  const int n = line.size();
  std::vector<bool> keep(n, false);
  keep[start] = true;
  // Right of the start: keep a node only if its deadline is below every kept deadline farther right.
  ExactNumber tightest = ExactNumber::infinity();
  bool have = false;
  for (int k = n - 1; k > start; --k) {
    if (!have || line.deadlines[k] < tightest) {
      keep[k] = true;
      tightest = line.deadlines[k];
      have = true;
    }
  }
  have = false;
  for (int k = 0; k < start; ++k) {
    if (!have || line.deadlines[k] < tightest) {
      keep[k] = true;
      tightest = line.deadlines[k];
      have = true;
    }
  }
  PrunedLine out;
  for (int k = 0; k < n; ++k) {
    if (!keep[k]) continue;
    if (k == start) out.start = static_cast<int>(out.original_index.size());
    out.original_index.push_back(k);
    out.line.coordinates.push_back(line.coordinates[k]);
    out.line.deadlines.push_back(line.deadlines[k]);
  }
  return out;
}

}  // namespace robexplore
