// Comparison tolerance shared by all width/slope arithmetic.
#pragma once

#include <cmath>

namespace thinp {

// Absolute tolerance for comparing widths and slopes.  eps == 0 means exact
// comparison, which is what integer-weighted graphs get.  Float-weighted
// graphs default to 1e-9 * max edge weight; anything closer than that is
// treated as equal, so a shift is only accepted when its guaranteed decrease
// clears the tolerance.
struct Tolerance {
  double eps = 0.0;

  bool eq(double a, double b) const { return std::fabs(a - b) <= eps; }
  bool lt(double a, double b) const { return a < b - eps; }
  bool gt(double a, double b) const { return a > b + eps; }
  bool le(double a, double b) const { return !gt(a, b); }
  bool ge(double a, double b) const { return !lt(a, b); }
  bool positive(double a) const { return a > eps; }
  bool negative(double a) const { return a < -eps; }
  bool zero(double a) const { return std::fabs(a) <= eps; }

  static Tolerance exact() { return Tolerance{0.0}; }
  static Tolerance for_max_weight(double max_weight) {
    return Tolerance{1e-9 * max_weight};
  }
};

}  // namespace thinp
