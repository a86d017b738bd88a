#pragma once

#include <stdexcept>
#include <vector>

#include "splitlab/diagram.hpp"
#include "splitlab/matroid.hpp"

namespace splitlab::fixtures {

// Triangle with vertices 1,3,5 and side midpoints 2,6,4; two sides drawn.
inline PointLineConfig plane_config_two_lines() {
  return PointLineConfig{6, {from_elements({1, 2, 3}), from_elements({3, 5, 6})}};
}

// All three sides drawn: the whirl diagram.
inline PointLineConfig whirl_config() {
  return PointLineConfig{
      6, {from_elements({1, 2, 3}), from_elements({3, 5, 6}), from_elements({1, 4, 5})}};
}

// Sides plus the midpoint circle {2,4,6}: the K4 line pattern.
inline PointLineConfig k4_config() {
  return PointLineConfig{6,
                         {from_elements({1, 2, 3}), from_elements({3, 5, 6}),
                          from_elements({1, 4, 5}), from_elements({2, 4, 6})}};
}

inline Matroid from_diagram(const PointLineConfig& cfg) {
  auto built = matroid_from_diagram(cfg);
  if (!built.ok()) throw std::runtime_error("fixture diagram failed: " + built.defect->note);
  return std::move(*built.matroid);
}

inline Matroid whirl() { return from_diagram(whirl_config()); }          // 17 bases
inline Matroid k4_pattern() { return from_diagram(k4_config()); }        // 16 bases
inline Matroid two_line_matroid() { return from_diagram(plane_config_two_lines()); }  // 18

inline Matroid from_base_lists(int n, int r, const std::vector<std::vector<int>>& lists) {
  auto fam = make_base_family(n, r, lists);
  if (!fam.ok()) throw std::runtime_error("fixture family malformed");
  auto val = validate_base_family(*fam.family);
  if (!val.ok()) throw std::runtime_error("fixture family fails exchange");
  return std::move(*val.matroid);
}

}  // namespace splitlab::fixtures
