#pragma once

#include "bipara/grid.hpp"

namespace bipara {

// Distributional comparison of the square and maximal functions: with
// omega = {M(f) > delta} and its enlargement omega~,
//   lhs = integral of S(f)^2 over the complement of omega~,
//   rhs = delta^2 |omega| + integral of M(f)^2 over {M(f) <= delta}.
// ratio = lhs / rhs; an empirical constant for the inequality lhs <= C rhs.
struct BrossardParts {
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  bool infinite = false;  // rhs vanished while lhs did not
};

BrossardParts brossard_parts(const GridFunction& f, double delta);
double brossard_ratio(const GridFunction& f, double delta);

}  // namespace bipara
