#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "robexplore/exact.hpp"
#include "robexplore/instance.hpp"

namespace robexplore {

/// Numerical 3-dimensional matching: equal-length multisets of positive
/// integers and a target sum.
struct N3dmInstance {
  std::vector<std::int64_t> a, b, c;
  std::int64_t s = 0;
};

/// Unit-spaced line 0..ℓ with I = 4S+6a+6b+12c and ℓ = 3I-4S-1 (a, b, c the
/// maxima). Robots at a_i, I+2b_i and 2I+4c_i; f = q-1; bound I-1; no node
/// deadlines. Inputs whose entries sum to less than q*S have no matching and
/// map to the construction for A = B = C = {1}, S = 2. Throws
/// std::invalid_argument on empty, unequal or non-positive input.
ProblemSpec n3dm_to_elcf(const N3dmInstance& instance);

/// Star with leaf weights a_1..a_q followed by four leaves of weight 4σ
/// (σ = half the sum), every deadline 10σ, two robots on leaves q+1 and q+2.
/// Throws std::invalid_argument on an odd sum or a non-positive entry.
ProblemSpec partition_to_star(std::span<const std::int64_t> values);

/// One robot's tour of a star: the leaves it visits in order (node indices
/// 1..q) and whether it goes to the centre even with no leaf to visit.
struct StarRoute {
  int start = 0;  // node index, 0 is the centre
  std::vector<int> leaves;
  bool to_centre = false;
};

struct StarVerdict {
  bool feasible = false;
  ExactNumber optimum = ExactNumber::infinity();
  std::vector<StarRoute> routes;
};

/// Replays routes and reports, per node, the on-time visit times by distinct
/// robots. A robot's own start leaf counts as visited at time 0.
struct StarCoverage {
  bool pass = false;
  ExactNumber value = ExactNumber::infinity();  // time every node has its visitors
  std::vector<std::vector<ExactNumber>> on_time;
};
StarCoverage simulate_star(const StarInstance& star, std::span<const StarRoute> routes, int multiplicity,
                           const std::optional<ExactNumber>& bound = std::nullopt);

/// One robot at the centre visits leaves by nondecreasing Δ_i + w_i (lower
/// index first on ties). Infeasible if some leaf is reached late.
StarVerdict star_single_robot(const StarInstance& star);

struct StarCaps {
  /// Refuse when the number of leaf-to-robot assignments exceeds this.
  std::int64_t max_assignments = std::int64_t{1} << 22;
};

/// Exact search: every leaf is given to f+1 robots, every robot visits its
/// leaves in deadline order with the best choice of final leaf. Free
/// placement enumerates start multisets. Throws SearchRefused past the caps.
StarVerdict star_exact(const StarInstance& star, const RobotPlacement& placement, int f,
                       const std::optional<ExactNumber>& bound, const StarCaps& caps = {});

}  // namespace robexplore
