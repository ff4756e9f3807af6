#pragma once

// Reference implementations used only by the test suites. Each one is written
// without the solver code paths it is meant to check.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "robexplore/exact.hpp"
#include "robexplore/instance.hpp"
#include "robexplore/single_robot.hpp"
#include "robexplore/snapshot.hpp"

namespace testing_support {

using robexplore::ExactNumber;
using robexplore::LineInstance;
using robexplore::RingInstance;
using robexplore::StarInstance;

inline const ExactNumber kInf = ExactNumber::infinity();

// ---------------------------------------------------------------- generators

struct Random {
  std::mt19937_64 engine;
  explicit Random(std::uint64_t seed) : engine(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine); }
  bool chance(double p) { return std::bernoulli_distribution(p)(engine); }

  // Small positive rational with denominator 1, 2 or 4.
  ExactNumber weight(int max_num = 6) {
    static constexpr int dens[] = {1, 2, 4};
    const int den = dens[uniform(0, 2)];
    return {uniform(1, max_num * den), den};
  }

  ExactNumber deadline(const ExactNumber& scale, double inf_chance = 0.3) {
    if (chance(inf_chance)) return kInf;
    return ExactNumber(uniform(0, 8 * scale.numerator()), 8 * scale.denominator());
  }
};

inline LineInstance random_line(Random& rng, int n, bool unit = false, double inf_chance = 0.3) {
  LineInstance line;
  ExactNumber x = 0;
  for (int i = 0; i < n; ++i) {
    if (i > 0) x += unit ? ExactNumber(1) : rng.weight();
    line.coordinates.push_back(x);
  }
  const ExactNumber scale = x * 2 + 1;
  for (int i = 0; i < n; ++i) line.deadlines.push_back(rng.deadline(scale, inf_chance));
  return line;
}

inline RingInstance random_ring(Random& rng, int n, double inf_chance = 0.3) {
  RingInstance ring;
  ExactNumber total = 0;
  for (int i = 0; i < n; ++i) {
    ring.edge_weights.push_back(rng.weight());
    total += ring.edge_weights.back();
  }
  for (int i = 0; i < n; ++i) ring.deadlines.push_back(rng.deadline(total * 2, inf_chance));
  return ring;
}

inline std::vector<int> distinct_positions(Random& rng, int n, int k) {
  std::vector<int> all(n);
  std::iota(all.begin(), all.end(), 0);
  std::shuffle(all.begin(), all.end(), rng.engine);
  all.resize(k);
  return all;
}

// ------------------------------------------------------ single-robot walks

// Every alternating walk on a line from `start`: each leg ends at a new
// extreme, legs alternate sides. Returns the best completion time of a walk
// covering all nodes on time, or infinity.
inline ExactNumber line_walk_optimum(const LineInstance& line, int start) {
  const int n = line.size();
  const auto& x = line.coordinates;
  ExactNumber best = kInf;
  std::function<void(int, int, bool, ExactNumber, int)> rec = [&](int lo, int hi, bool at_right, ExactNumber t,
                                                                    int last) {
    if (lo == 0 && hi == n - 1) {
      best = min(best, t);
      return;
    }
    const int pos = at_right ? hi : lo;
    // Leg to the left.
    if (last != -1) {
      for (int e = lo - 1; e >= 0; --e) {
        const ExactNumber arrive = t + (x[pos] - x[e]);
        if (!(arrive <= line.deadlines[e])) break;
        rec(e, hi, false, arrive, -1);
      }
    }
    if (last != +1) {
      for (int e = hi + 1; e < n; ++e) {
        const ExactNumber arrive = t + (x[e] - x[pos]);
        if (!(arrive <= line.deadlines[e])) break;
        rec(lo, e, true, arrive, +1);
      }
    }
  };
  if (0 <= line.deadlines[start]) rec(start, start, false, 0, 0);
  return best;
}

// -------------------------------------------------- multi-robot references

// Naive recurrence T^(r)[i][j] = min_k max(T^(r-1)[i][k], T^(1)[k+1][j]), O(k n^3).
inline ExactNumber naive_free(const LineInstance& line, int k) {
  const int n = line.size();
  std::vector<int> all(n);
  std::iota(all.begin(), all.end(), 0);
  const auto single = robexplore::interval_table(line, all).table;
  auto piece = [&](int i, int j) { return i > j ? ExactNumber(0) : single.at(i, j); };
  std::vector<std::vector<ExactNumber>> cur(n, std::vector<ExactNumber>(n, kInf));
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) cur[i][j] = single.at(i, j);
  }
  for (int r = 2; r <= k; ++r) {
    auto next = cur;
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) {
        ExactNumber best = kInf;
        for (int s = i - 1; s <= j; ++s) {
          const ExactNumber left = s < i ? ExactNumber(0) : cur[i][s];
          best = min(best, max(left, piece(s + 1, j)));
        }
        next[i][j] = best;
      }
    }
    cur = std::move(next);
  }
  return cur[0][n - 1];
}

// Line obtained by cutting edge `cut` of a ring; node t of the line is ring
// node (cut + 1 + t) mod n.
inline LineInstance cut_ring(const RingInstance& ring, int cut) {
  const int n = ring.size();
  LineInstance line;
  ExactNumber x = 0;
  for (int t = 0; t < n; ++t) {
    const int node = (cut + 1 + t) % n;
    if (t > 0) x += ring.edge_weights[(node - 1 + n) % n];
    line.coordinates.push_back(x);
    line.deadlines.push_back(ring.deadlines[node]);
  }
  return line;
}

// Independent enumerator over raw moves: every robot repeatedly steps to an
// adjacent node. Per robot we keep the Pareto set of first on-time visit
// vectors, then combine robots exhaustively. Tiny instances only.
struct MoveGraph {
  int n = 0;
  bool ring = false;
  std::vector<ExactNumber> edge;  // edge i joins i and i+1 (mod n on a ring)
  std::vector<ExactNumber> limit;

  static MoveGraph from(const LineInstance& line, const std::optional<ExactNumber>& bound) {
    MoveGraph g;
    g.n = line.size();
    for (int i = 0; i + 1 < g.n; ++i) g.edge.push_back(line.coordinates[i + 1] - line.coordinates[i]);
    g.limit = robexplore::capped_deadlines(line.deadlines, bound);
    return g;
  }
  static MoveGraph from(const RingInstance& ring, const std::optional<ExactNumber>& bound) {
    MoveGraph g;
    g.n = ring.size();
    g.ring = true;
    g.edge = ring.edge_weights;
    g.limit = robexplore::capped_deadlines(ring.deadlines, bound);
    return g;
  }
};

using Vector = std::vector<ExactNumber>;

inline std::vector<Vector> move_profiles(const MoveGraph& g, int start) {
  // Horizon: after the largest finite limit, two passes over the whole graph
  // reach every node without a deadline.
  ExactNumber total = 0;
  for (const auto& w : g.edge) total += w;
  ExactNumber horizon = total * 2;
  for (const auto& d : g.limit) {
    if (d.is_finite()) horizon = max(horizon, d + total * 2);
  }
  std::set<std::vector<std::pair<std::int64_t, std::int64_t>>> seen;
  std::vector<Vector> out;
  Vector visit(g.n, kInf);
  visit[start] = 0;
  std::function<void(int, ExactNumber, int)> rec = [&](int pos, ExactNumber t, int fresh_steps) {
    Vector on_time(g.n);
    std::vector<std::pair<std::int64_t, std::int64_t>> key;
    for (int v = 0; v < g.n; ++v) {
      on_time[v] = visit[v] <= g.limit[v] ? visit[v] : kInf;
      key.emplace_back(on_time[v].numerator(), on_time[v].denominator());
    }
    if (seen.insert(key).second) out.push_back(on_time);
    // A new node is always within n - 1 steps, so longer detours are cut.
    if (fresh_steps >= g.n) return;
    for (int dir : {-1, +1}) {
      int next;
      ExactNumber w;
      if (g.ring) {
        next = ((pos + dir) % g.n + g.n) % g.n;
        w = g.edge[dir > 0 ? pos : next];
      } else {
        next = pos + dir;
        if (next < 0 || next >= g.n) continue;
        w = g.edge[dir > 0 ? pos : next];
      }
      const ExactNumber arrive = t + w;
      if (arrive > horizon) continue;
      const bool is_new = visit[next].is_infinite();
      if (is_new) visit[next] = arrive;
      rec(next, arrive, is_new ? 0 : fresh_steps + 1);
      if (is_new) visit[next] = kInf;
    }
  };
  rec(start, 0, 0);
  // Pareto filter.
  std::vector<Vector> kept;
  for (std::size_t i = 0; i < out.size(); ++i) {
    bool beaten = false;
    for (std::size_t j = 0; j < out.size() && !beaten; ++j) {
      if (i == j) continue;
      bool le = true, lt = false;
      for (int v = 0; v < g.n; ++v) {
        if (out[i][v] < out[j][v]) le = false;
        if (out[j][v] < out[i][v]) lt = true;
      }
      beaten = le && lt;
    }
    if (!beaten) kept.push_back(out[i]);
  }
  return kept;
}

// Optimum over the given start multiset: max over nodes of the need-th
// smallest on-time visit.
inline ExactNumber move_optimum(const MoveGraph& g, const std::vector<int>& starts, int need) {
  std::map<int, std::vector<Vector>> profiles;
  for (int s : starts) {
    if (!profiles.count(s)) profiles[s] = move_profiles(g, s);
  }
  ExactNumber best = kInf;
  std::vector<const Vector*> chosen(starts.size());
  std::function<void(std::size_t)> rec = [&](std::size_t r) {
    if (r == starts.size()) {
      ExactNumber value = 0;
      for (int v = 0; v < g.n; ++v) {
        std::vector<ExactNumber> times;
        for (auto* p : chosen) times.push_back((*p)[v]);
        std::sort(times.begin(), times.end());
        value = max(value, times[need - 1]);
      }
      best = min(best, value);
      return;
    }
    for (const auto& p : profiles[starts[r]]) {
      chosen[r] = &p;
      rec(r + 1);
    }
  };
  rec(0);
  return best;
}

// ------------------------------------------------------ source problems

inline bool n3dm_brute(const std::vector<std::int64_t>& a, std::vector<std::int64_t> b, std::vector<std::int64_t> c,
                       std::int64_t s) {
  const std::size_t q = a.size();
  std::vector<int> pb(q), pc(q);
  std::iota(pb.begin(), pb.end(), 0);
  do {
    std::iota(pc.begin(), pc.end(), 0);
    do {
      bool ok = true;
      for (std::size_t i = 0; i < q && ok; ++i) ok = a[i] + b[pb[i]] + c[pc[i]] == s;
      if (ok) return true;
    } while (std::next_permutation(pc.begin(), pc.end()));
  } while (std::next_permutation(pb.begin(), pb.end()));
  return false;
}

inline bool partition_brute(const std::vector<std::int64_t>& values) {
  const std::int64_t total = std::accumulate(values.begin(), values.end(), std::int64_t{0});
  if (total % 2) return false;
  const std::size_t q = values.size();
  for (std::uint32_t mask = 0; mask < (1u << q); ++mask) {
    std::int64_t sum = 0;
    for (std::size_t i = 0; i < q; ++i) {
      if (mask & (1u << i)) sum += values[i];
    }
    if (2 * sum == total) return true;
  }
  return false;
}

// One robot at the centre: does some order of the leaves meet every deadline?
inline bool star_permutation_feasible(const StarInstance& star) {
  std::vector<int> order(star.leaf_count());
  std::iota(order.begin(), order.end(), 0);
  do {
    ExactNumber t = 0;
    bool ok = true;
    for (int leaf : order) {
      const ExactNumber arrive = t + star.leaf_weights[leaf];
      if (!(arrive <= star.leaf_deadlines[leaf])) {
        ok = false;
        break;
      }
      t = arrive + star.leaf_weights[leaf];
    }
    if (ok) return true;
  } while (std::next_permutation(order.begin(), order.end()));
  return false;
}

// ---------------------------------------------------------- candidates

// Every finite label reachable from one start; the optimum of any solver in
// the reliable setting is one of these values.
inline std::vector<ExactNumber> label_candidates(const robexplore::SnapshotGraph& graph,
                                                 const std::vector<ExactNumber>& deadlines,
                                                 const std::vector<int>& starts) {
  std::set<ExactNumber> values{ExactNumber(0)};
  for (int s : starts) {
    const robexplore::NodeId source = graph.source(s);
    const auto labels = robexplore::propagate(graph, robexplore::init_start(std::span(&source, 1), graph), deadlines);
    for (const auto& t : labels.time) {
      if (t.is_finite()) values.insert(t);
    }
  }
  return {values.begin(), values.end()};
}

inline std::optional<ExactNumber> largest_below(const std::vector<ExactNumber>& sorted, const ExactNumber& t) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), t);
  if (it == sorted.begin()) return std::nullopt;
  return *std::prev(it);
}

}  // namespace testing_support
