#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "robexplore/exact.hpp"
#include "robexplore/instance.hpp"
#include "robexplore/schedule.hpp"
#include "robexplore/verdict.hpp"

namespace robexplore {

/// The exact exponential search was asked to run beyond its size caps.
class SearchRefused : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SearchCaps {
  int max_n = 512;
  int max_k = 8;
};

/// ⌊k/(f+1)⌋ robots solve the free line, and f+1 groups replay that schedule.
Verdict solve_free_faulty(const LineInstance& line, int k, int f);

/// One robot's coverage options: what it visits on time along each
/// alternating walk from its start, keeping only inclusion-maximal sets.
struct WalkPlan {
  ExactNumber time;  // when the walk ends
  boost::dynamic_bitset<> on_time;
  RobotTrajectory trajectory;
};

/// When `strict_bound` is set, a visit counts only if it happens strictly
/// before `bound`; otherwise at or before it.
std::vector<WalkPlan> maximal_plans(const LineInstance& line, int start, const std::optional<ExactNumber>& bound,
                                    bool strict_bound = false);

/// Is there a schedule in which every node is visited on time by f+1 distinct
/// robots? Robots start at the given nodes (repeats allowed). Throws
/// SearchRefused past the caps.
Verdict decide_fixed_faulty(const LineInstance& line, std::span<const int> positions, int f,
                            const std::optional<ExactNumber>& bound, const SearchCaps& caps = {},
                            bool strict_bound = false);

/// Smallest bound for which decide_fixed_faulty answers yes; infinity if none.
Verdict solve_fixed_faulty(const LineInstance& line, std::span<const int> positions, int f,
                           const SearchCaps& caps = {});

/// Time at which every node has been visited on time by `multiplicity` robots.
ExactNumber coverage_value(const VerifyReport& report, int multiplicity);

}  // namespace robexplore
