#pragma once

#include <optional>
#include <span>
#include <vector>

#include "robexplore/exact.hpp"
#include "robexplore/instance.hpp"
#include "robexplore/verdict.hpp"

namespace robexplore {

/// Robots at distinct ring nodes. Some edge between the two closest
/// consecutive robots is idle; each choice of it cuts the ring into a line
/// solved by the prefix recurrence.
Verdict solve_ring_fixed(const RingInstance& ring, std::span<const int> positions);

/// k robots placed anywhere on the ring. With `max_segment` set, no robot may
/// explore more than that many consecutive nodes.
Verdict solve_ring_free(const RingInstance& ring, int k, std::optional<int> max_segment = std::nullopt);

/// f+1 copies of the ring laid end to end.
struct ExpandedRing {
  RingInstance ring;
  int original_size = 0;
  int copies = 1;

  int copy_of(int node) const { return node % original_size; }
  /// Every copy of every given start.
  std::vector<int> permitted_starts(std::span<const int> positions) const;
};
ExpandedRing expand_ring(const RingInstance& ring, int f);

/// Free placement with up to f crashes: one exploration of the expanded ring,
/// each robot confined to at most n consecutive copies, mapped back.
Verdict solve_ring_free_faulty(const RingInstance& ring, int k, int f);

/// Outcome of the greedy decision procedure for fixed robots with faults.
struct GreedyDecision {
  bool yes = false;
  /// P(i) for every node of the expanded ring, as an unwrapped end index
  /// (i - 1 when nothing starting at i can be explored).
  std::vector<int> reach;
  /// Cut of the expanded ring that succeeded.
  std::optional<int> cut;
  /// Present when the pieces of some covered cut can be given to distinct
  /// physical robots and the resulting schedule verifies.
  std::optional<Verdict> witness;
};
GreedyDecision decide_ring_fixed_faulty(const RingInstance& ring, std::span<const int> positions, int f,
                                        const ExactNumber& bound);

/// Binary search of the greedy decision over the finite set of label values.
/// Infinity if no candidate is accepted.
struct GreedyOptimum {
  ExactNumber value = ExactNumber::infinity();
  GreedyDecision decision;
};
GreedyOptimum solve_ring_fixed_faulty(const RingInstance& ring, std::span<const int> positions, int f);

/// Candidate bounds: every finite label of the expanded ring's snapshot
/// graph from the permitted starts, sorted and deduplicated.
std::vector<ExactNumber> ring_candidate_times(const RingInstance& ring, std::span<const int> positions, int f);

}  // namespace robexplore
