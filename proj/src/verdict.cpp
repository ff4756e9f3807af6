#include "robexplore/verdict.hpp"

namespace robexplore {

bool attach_witness(Verdict& verdict, const CoverageTarget& target) {
  auto report = verify_schedule(target, verdict.schedule);
  verdict.witness = std::move(report.on_time);
  return report.pass;
}

}  // namespace robexplore
