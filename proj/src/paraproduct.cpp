#include "bipara/paraproduct.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "bipara/maximal.hpp"
#include "bipara/norms.hpp"

namespace bipara {

HaarField paraproduct_apply(const HaarField& g, const GridFunction& f) {
  if (g.res() != f.res())
    throw std::invalid_argument("field/grid resolution mismatch");
  const Resolution res = g.res();
  PrefixSum ps(f);
  std::vector<HaarField::Entry> entries;
  entries.reserve(g.size());
  for (const auto& [idx, c] : g.entries()) {
    DyadicRect r = rect_from_index(idx, res);
    CellRange cr = cell_range(r, res);
    double avg = ps.box_sum(cr) / static_cast<double>(cr.cells());
    entries.emplace_back(idx, c * avg);
  }
  return HaarField::from_entries(res, std::move(entries));
}

GridFunction paraproduct_adjoint(const HaarField& g, const HaarField& h) {
  if (g.res() != h.res())
    throw std::invalid_argument("field resolution mismatch");
  const Resolution res = g.res();
  const int stride = res.side() + 1;
  std::vector<double> corner(static_cast<std::size_t>(stride) * stride, 0.0);
  // march the two sorted supports together; only shared rectangles matter
  auto gi = g.entries().begin();
  auto hi = h.entries().begin();
  while (gi != g.entries().end() && hi != h.entries().end()) {
    if (gi->first < hi->first) {
      ++gi;
    } else if (hi->first < gi->first) {
      ++hi;
    } else {
      DyadicRect r = rect_from_index(gi->first, res);
      CellRange cr = cell_range(r, res);
      double v = gi->second * hi->second * std::ldexp(1.0, r.x.level + r.y.level);
      corner[static_cast<std::size_t>(cr.r0) * stride + cr.c0] += v;
      corner[static_cast<std::size_t>(cr.r0) * stride + cr.c1] -= v;
      corner[static_cast<std::size_t>(cr.r1) * stride + cr.c0] -= v;
      corner[static_cast<std::size_t>(cr.r1) * stride + cr.c1] += v;
      ++gi;
      ++hi;
    }
  }
  GridFunction out(res);
  const int s = res.side();
  std::vector<double> colacc(static_cast<std::size_t>(s), 0.0);
  for (int i = 0; i < s; ++i) {
    double run = 0.0;
    for (int j = 0; j < s; ++j) {
      run += corner[static_cast<std::size_t>(i) * stride + j];
      colacc[j] += run;
      out.at(i, j) = colacc[j];
    }
  }
  return out;
}

double domination_violation(const HaarField& g, const GridFunction& f) {
  GridFunction lhs = square_function(paraproduct_apply(g, f));
  GridFunction sg = square_function(g);
  GridFunction mf = dyadic_maximal(f);
  double worst = -std::numeric_limits<double>::infinity();
  const auto& a = lhs.values();
  const auto& b = sg.values();
  const auto& c = mf.values();
  for (std::size_t i = 0; i < a.size(); ++i)
    worst = std::max(worst, a[i] - b[i] * c[i]);
  return worst;
}

double holder_upper_bound(const HaarField& g, const Exponents& e) {
  validate_triple(e);
  return dot_hardy_norm(g, e.r);
}

}  // namespace bipara
