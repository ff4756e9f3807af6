#pragma once

#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "robexplore/exact.hpp"
#include "robexplore/instance.hpp"

namespace testing_support {

inline robexplore::ExactNumber num(const std::string& text) { return robexplore::ExactNumber::parse(text); }

// Line with the given coordinates; deadlines default to infinity.
inline robexplore::LineInstance make_line(std::initializer_list<const char*> coordinates,
                                          std::initializer_list<const char*> deadlines = {}) {
  robexplore::LineInstance line;
  for (const char* c : coordinates) line.coordinates.push_back(num(c));
  for (const char* d : deadlines) line.deadlines.push_back(num(d));
  line.deadlines.resize(line.coordinates.size(), robexplore::ExactNumber::infinity());
  return line;
}

inline robexplore::LineInstance unit_line(int n) {
  robexplore::LineInstance line;
  for (int i = 0; i < n; ++i) {
    line.coordinates.emplace_back(i);
    line.deadlines.push_back(robexplore::ExactNumber::infinity());
  }
  return line;
}

inline robexplore::RingInstance unit_ring(int n) {
  robexplore::RingInstance ring;
  ring.edge_weights.assign(n, robexplore::ExactNumber(1));
  ring.deadlines.assign(n, robexplore::ExactNumber::infinity());
  return ring;
}

}  // namespace testing_support
