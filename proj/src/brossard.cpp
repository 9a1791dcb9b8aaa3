#include "bipara/brossard.hpp"

#include <limits>
#include <stdexcept>

#include "bipara/haar.hpp"
#include "bipara/maximal.hpp"

namespace bipara {

BrossardParts brossard_parts(const GridFunction& f, double delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("delta must be positive");
  bool all_zero = true;
  for (double v : f.values())
    if (v != 0.0) {
      all_zero = false;
      break;
    }
  if (all_zero) throw std::invalid_argument("function is identically zero");

  const Resolution res = f.res();
  const double unit = res.cell_measure();
  GridFunction m = dyadic_maximal(f);
  OpenSetMask omega = superlevel_set(m, delta);
  OpenSetMask enlarged = enlarge(omega);
  GridFunction s = square_function(analyze(f));

  BrossardParts out;
  const int side = res.side();
  double tail = 0.0;
  for (int i = 0; i < side; ++i)
    for (int j = 0; j < side; ++j)
      if (!enlarged.test(i, j)) tail += s.at(i, j) * s.at(i, j);
  out.lhs = tail * unit;

  double low = 0.0;
  for (int i = 0; i < side; ++i)
    for (int j = 0; j < side; ++j)
      if (!(m.at(i, j) > delta)) low += m.at(i, j) * m.at(i, j);
  out.rhs = delta * delta * omega.measure() + low * unit;

  if (out.rhs > 0.0) {
    out.ratio = out.lhs / out.rhs;
  } else if (out.lhs == 0.0) {
    out.ratio = 0.0;
  } else {
    out.ratio = std::numeric_limits<double>::infinity();
    out.infinite = true;
  }
  return out;
}

double brossard_ratio(const GridFunction& f, double delta) {
  return brossard_parts(f, delta).ratio;
}

}  // namespace bipara
