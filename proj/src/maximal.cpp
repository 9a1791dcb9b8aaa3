#include "bipara/maximal.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace bipara {

void validate_contracting(const ContractingFamily& fam) {
  for (std::size_t i = 0; i + 1 < fam.items.size(); ++i) {
    const OpenSetMask& a = fam.items[i].omega;
    const OpenSetMask& b = fam.items[i + 1].omega;
    if (!b.is_subset_of(a))
      throw std::invalid_argument("family not nested at index " +
                                  std::to_string(i + 1));
    if (2 * b.true_cells() > a.true_cells())
      throw std::invalid_argument("family halving fails at index " +
                                  std::to_string(i + 1));
  }
}

namespace {

// Averages of f over all rectangles at scale pair (j1, j2), folded into
// acc as a running max of absolute values. The pyramid along axis 1 is
// built once; axis 2 is halved in place per j1.
void fold_scale_pairs(const GridFunction& f, GridFunction& acc) {
  const int n = f.res().n();
  const int s = f.res().side();
  // axis-1 pyramid: level j1 has 2^j1 rows of 2^n column sums
  std::vector<std::vector<double>> rows(static_cast<std::size_t>(n) + 1);
  rows[static_cast<std::size_t>(n)].assign(f.values().begin(), f.values().end());
  for (int j1 = n - 1; j1 >= 0; --j1) {
    const auto& fine = rows[static_cast<std::size_t>(j1) + 1];
    auto& coarse = rows[static_cast<std::size_t>(j1)];
    int half = 1 << j1;
    coarse.assign(static_cast<std::size_t>(half) * s, 0.0);
    for (int r = 0; r < half; ++r)
      for (int c = 0; c < s; ++c)
        coarse[static_cast<std::size_t>(r) * s + c] =
            0.5 * (fine[static_cast<std::size_t>(2 * r) * s + c] +
                   fine[static_cast<std::size_t>(2 * r + 1) * s + c]);
  }
  std::vector<double> cur;
  for (int j1 = 0; j1 <= n; ++j1) {
    cur = rows[static_cast<std::size_t>(j1)];
    int nrows = 1 << j1;
    for (int j2 = n; j2 >= 0; --j2) {
      int ncols = 1 << j2;
      // fold |avg at (j1,j2)| into acc
      for (int i1 = 0; i1 < s; ++i1) {
        const double* row = &cur[static_cast<std::size_t>(i1 >> (n - j1)) * ncols];
        for (int i2 = 0; i2 < s; ++i2) {
          double a = std::fabs(row[i2 >> (n - j2)]);
          if (a > acc.at(i1, i2)) acc.at(i1, i2) = a;
        }
      }
      if (j2 > 0) {
        int half = ncols / 2;
        for (int r = 0; r < nrows; ++r)
          for (int c = 0; c < half; ++c)
            cur[static_cast<std::size_t>(r) * half + c] =
                0.5 * (cur[static_cast<std::size_t>(r) * ncols + 2 * c] +
                       cur[static_cast<std::size_t>(r) * ncols + 2 * c + 1]);
      }
    }
  }
}

}  // namespace

GridFunction dyadic_maximal(const GridFunction& f) {
  GridFunction acc(f.res());
  fold_scale_pairs(f, acc);
  return acc;
}

GridFunction m_s(const GridFunction& f, double s) {
  if (!(s > 0.0)) throw std::invalid_argument("m_s exponent must be positive");
  GridFunction powed(f.res());
  const auto& v = f.values();
  for (std::size_t i = 0; i < v.size(); ++i)
    powed.values()[i] = std::pow(std::fabs(v[i]), s);
  GridFunction m = dyadic_maximal(powed);
  for (double& x : m.values()) x = std::pow(x, 1.0 / s);
  return m;
}

OpenSetMask enlarge(const OpenSetMask& omega) {
  GridFunction m = dyadic_maximal(GridFunction::indicator(omega));
  return superlevel_set(m, 0.5);
}

GridFunction family_maximal(const GridFunction& g, const ContractingFamily& fam) {
  GridFunction out(g.res());
  const int side = g.side();
  for (const FamilyItem& item : fam.items) {
    if (item.omega.res() != g.res())
      throw std::invalid_argument("family/grid resolution mismatch");
    std::int64_t cells = item.omega.true_cells();
    if (cells == 0) continue;
    double sum = 0.0;
    for (int i = 0; i < side; ++i)
      for (int j = 0; j < side; ++j)
        if (item.omega.test(i, j)) sum += std::fabs(g.at(i, j));
    double avg = sum / static_cast<double>(cells);
    for (int i = 0; i < side; ++i)
      for (int j = 0; j < side; ++j)
        if (item.omega.test(i, j) && avg > out.at(i, j)) out.at(i, j) = avg;
  }
  return out;
}

}  // namespace bipara
