#include <optional>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "robexplore/instance.hpp"
#include "robexplore/oracle.hpp"
#include "robexplore/reductions.hpp"
#include "robexplore/schedule.hpp"
#include "robexplore/solve.hpp"

namespace py = pybind11;
using namespace robexplore;

namespace {

SolveOptions options_for(std::optional<int> max_n, std::optional<int> max_k) {
  SolveOptions out;
  if (max_n) out.caps.max_n = *max_n;
  if (max_k) out.caps.max_k = *max_k;
  return out;
}

py::object number(const ExactNumber& x) {
  if (x.is_infinite()) return py::none();
  return py::str(x.to_string());
}

py::dict outcome_dict(const Outcome& outcome) {
  py::dict out;
  out["feasible"] = outcome.feasible;
  out["optimum"] = number(outcome.optimum);
  out["method"] = outcome.method;
  out["schedule"] = outcome.verdict ? py::object(py::str(schedule_to_json(outcome.verdict->schedule))) : py::none();
  if (outcome.star) {
    py::list routes;
    for (const auto& r : outcome.star->routes) {
      py::dict route;
      route["start"] = r.start;
      route["leaves"] = r.leaves;
      route["to_centre"] = r.to_centre;
      routes.append(route);
    }
    out["routes"] = routes;
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact exploration schedules for lines, rings and stars with deadlines and crash faults";

  py::register_exception<InstanceError>(m, "InstanceError", PyExc_ValueError);
  py::register_exception<ScheduleError>(m, "ScheduleError", PyExc_ValueError);
  py::register_exception<SearchRefused>(m, "SearchRefused", PyExc_RuntimeError);
  py::register_exception<Unsupported>(m, "Unsupported", PyExc_NotImplementedError);

  m.def(
      "solve",
      [](const std::string& instance, std::optional<int> max_n, std::optional<int> max_k) {
        return outcome_dict(solve(parse_instance(instance), options_for(max_n, max_k)));
      },
      "Optimal exploration time of an instance given as JSON text.", py::arg("instance"), py::arg("max_n") = py::none(),
      py::arg("max_k") = py::none());

  m.def(
      "decide",
      [](const std::string& instance, const std::string& delta, std::optional<int> max_n, std::optional<int> max_k) {
        return outcome_dict(decide(parse_instance(instance), ExactNumber::parse(delta), options_for(max_n, max_k)));
      },
      "Whether a schedule finishes by delta.", py::arg("instance"), py::arg("delta"), py::arg("max_n") = py::none(),
      py::arg("max_k") = py::none());

  m.def(
      "resilience",
      [](const std::string& instance, const std::string& delta, std::optional<int> max_n, std::optional<int> max_k) {
        return resilience(parse_instance(instance), ExactNumber::parse(delta), options_for(max_n, max_k));
      },
      "Largest number of crashes tolerated by delta, or None.", py::arg("instance"), py::arg("delta"),
      py::arg("max_n") = py::none(), py::arg("max_k") = py::none());

  m.def(
      "verify",
      [](const std::string& instance, const std::string& schedule) {
        const auto report = verify_schedule(parse_instance(instance), schedule_from_json(schedule));
        py::dict out;
        out["pass"] = report.pass;
        out["makespan"] = number(report.makespan);
        out["first_violation"] = report.first_violation;
        return out;
      },
      "Check a line or ring schedule against an instance.", py::arg("instance"), py::arg("schedule"));

  m.def(
      "oracle",
      [](const std::string& instance) {
        const auto v = brute_solve(parse_instance(instance));
        py::dict out;
        out["feasible"] = v.feasible;
        out["optimum"] = number(v.optimum);
        return out;
      },
      "Brute-force optimum for small line and ring instances.", py::arg("instance"));

  m.def(
      "n3dm_instance",
      [](std::vector<std::int64_t> a, std::vector<std::int64_t> b, std::vector<std::int64_t> c, std::int64_t s) {
        return serialize_instance(n3dm_to_elcf({std::move(a), std::move(b), std::move(c), s}));
      },
      "Line instance reduced from numerical 3-dimensional matching.", py::arg("a"), py::arg("b"), py::arg("c"),
      py::arg("s"));

  m.def(
      "partition_instance",
      [](const std::vector<std::int64_t>& values) { return serialize_instance(partition_to_star(values)); },
      "Star instance reduced from partition.", py::arg("values"));
}
