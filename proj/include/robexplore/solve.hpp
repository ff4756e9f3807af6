#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "robexplore/exact.hpp"
#include "robexplore/fault_line.hpp"
#include "robexplore/instance.hpp"
#include "robexplore/reductions.hpp"
#include "robexplore/verdict.hpp"

namespace robexplore {

/// The combination of topology, placement and faults has no solver.
class Unsupported : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SolveOptions {
  SearchCaps caps;
  StarCaps star_caps;
};

struct Outcome {
  bool feasible = false;
  ExactNumber optimum = ExactNumber::infinity();
  /// Line and ring results carry a schedule here; it is absent when the
  /// procedure answers without one.
  std::optional<Verdict> verdict;
  std::optional<StarVerdict> star;
  std::string method;
};

Outcome solve(const ProblemSpec& spec, const SolveOptions& options = {});

/// Is there an f-reliable schedule finishing by `delta` (and by the instance's own bound)?
Outcome decide(const ProblemSpec& spec, const ExactNumber& delta, const SolveOptions& options = {});

/// Largest f < k for which `decide` answers yes, ignoring the instance's f; none if even f = 0 fails.
std::optional<int> resilience(const ProblemSpec& spec, const ExactNumber& delta, const SolveOptions& options = {});

}  // namespace robexplore
