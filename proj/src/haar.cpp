#include "bipara/haar.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bipara {

HaarField HaarField::from_entries(Resolution res, std::vector<Entry> entries) {
  for (const Entry& e : entries)
    if (e.first < 0 || e.first >= rect_count(res))
      throw std::invalid_argument("coefficient index out of range");
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.first < b.first; });
  HaarField g(res);
  g.entries_.reserve(entries.size());
  for (std::size_t i = 0; i < entries.size();) {
    std::int64_t idx = entries[i].first;
    double c = 0.0;
    while (i < entries.size() && entries[i].first == idx) c += entries[i++].second;
    if (c != 0.0) g.entries_.emplace_back(idx, c);
  }
  return g;
}

double HaarField::get(const DyadicRect& r) const {
  std::int64_t idx = rect_index(r, res_);
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), idx,
      [](const Entry& e, std::int64_t i) { return e.first < i; });
  return (it != entries_.end() && it->first == idx) ? it->second : 0.0;
}

void HaarField::set(const DyadicRect& r, double c) {
  if (!is_haar_carrier(r, res_))
    throw std::invalid_argument("not a Haar carrier at this resolution");
  std::int64_t idx = rect_index(r, res_);
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), idx,
      [](const Entry& e, std::int64_t i) { return e.first < i; });
  if (it != entries_.end() && it->first == idx) {
    if (c == 0.0)
      entries_.erase(it);
    else
      it->second = c;
  } else if (c != 0.0) {
    entries_.insert(it, Entry{idx, c});
  }
}

namespace {

// +/- height of h_R: |R|^(-1/2) = 2^((jx+jy)/2).
double haar_height(const DyadicRect& r) {
  int j = r.x.level + r.y.level;
  double scale = std::ldexp(1.0, j >> 1);
  return (j & 1) ? scale * 1.4142135623730950488016887242097 : scale;
}

// In-place sum/difference cascade. buf holds 2^n block sums at entry;
// after the pass, diffs[interval_index(j,k)] = (left sum) - (right sum)
// for every dyadic interval at levels n-1..0.
void cascade(std::vector<double>& buf, int len, double* diffs) {
  while (len > 1) {
    int half = len / 2;
    // half == 2^j, the level of the produced intervals
    std::int64_t base = half - 1;
    for (int k = 0; k < half; ++k) {
      double a = buf[2 * k], b = buf[2 * k + 1];
      diffs[base + k] = a - b;
      buf[k] = a + b;
    }
    len = half;
  }
}

// Adds c on the index box [r0,r1) x [c0,c1) of a (side+1)^2 corner table.
inline void box_add(std::vector<double>& corner, int stride, int r0, int r1,
                    int c0, int c1, double c) {
  corner[static_cast<std::size_t>(r0) * stride + c0] += c;
  corner[static_cast<std::size_t>(r0) * stride + c1] -= c;
  corner[static_cast<std::size_t>(r1) * stride + c0] -= c;
  corner[static_cast<std::size_t>(r1) * stride + c1] += c;
}

GridFunction accumulate_corner(const std::vector<double>& corner, int stride,
                               Resolution res) {
  GridFunction out(res);
  int s = res.side();
  std::vector<double> rowacc(static_cast<std::size_t>(s), 0.0);
  for (int i = 0; i < s; ++i) {
    double run = 0.0;
    for (int j = 0; j < s; ++j) {
      run += corner[static_cast<std::size_t>(i) * stride + j];
      rowacc[j] += run;
      out.at(i, j) = rowacc[j];
    }
  }
  return out;
}

}  // namespace

HaarField analyze(const GridFunction& f) {
  const Resolution res = f.res();
  const int s = res.side();
  const int m = s - 1;  // intervals per axis
  // Pass 1: per row, Haar differences along y.
  std::vector<double> ydiff(static_cast<std::size_t>(s) * m);
  std::vector<double> buf(static_cast<std::size_t>(s));
  for (int i1 = 0; i1 < s; ++i1) {
    for (int i2 = 0; i2 < s; ++i2) buf[i2] = f.at(i1, i2);
    cascade(buf, s, &ydiff[static_cast<std::size_t>(i1) * m]);
  }
  // Pass 2: per y-interval, cascade the column of y-differences along x.
  const double unit = res.cell_measure();
  std::vector<double> coeffs(static_cast<std::size_t>(m) * m);
  std::vector<double> col(static_cast<std::size_t>(s));
  std::vector<double> xdiff(static_cast<std::size_t>(m));
  for (int iy = 0; iy < m; ++iy) {
    for (int i1 = 0; i1 < s; ++i1)
      col[i1] = ydiff[static_cast<std::size_t>(i1) * m + iy];
    cascade(col, s, xdiff.data());
    for (int ix = 0; ix < m; ++ix)
      coeffs[static_cast<std::size_t>(ix) * m + iy] = xdiff[ix];
  }
  // Normalize and compress; iterate in index order so the result needs no sort.
  std::vector<HaarField::Entry> entries;
  std::int64_t idx = 0;
  for (int jx = 0; jx < res.n(); ++jx)
    for (int kx = 0; kx < (1 << jx); ++kx)
      for (int jy = 0; jy < res.n(); ++jy)
        for (int ky = 0; ky < (1 << jy); ++ky, ++idx) {
          double d = coeffs[static_cast<std::size_t>(idx)];
          if (d == 0.0) continue;
          entries.emplace_back(idx, haar_height(DyadicRect{{jx, kx}, {jy, ky}}) *
                                        unit * d);
        }
  return HaarField::from_entries(res, std::move(entries));
}

GridFunction synthesize(const HaarField& g) {
  const Resolution res = g.res();
  const int s = res.side();
  const int stride = s + 1;
  std::vector<double> corner(static_cast<std::size_t>(stride) * stride, 0.0);
  for (const auto& [idx, c] : g.entries()) {
    DyadicRect r = rect_from_index(idx, res);
    double v = c * haar_height(r);
    CellRange cr = cell_range(r, res);
    int rm = (cr.r0 + cr.r1) / 2;  // x split
    int cm = (cr.c0 + cr.c1) / 2;  // y split
    box_add(corner, stride, cr.r0, rm, cr.c0, cm, v);
    box_add(corner, stride, cr.r0, rm, cm, cr.c1, -v);
    box_add(corner, stride, rm, cr.r1, cr.c0, cm, -v);
    box_add(corner, stride, rm, cr.r1, cm, cr.c1, v);
  }
  return accumulate_corner(corner, stride, res);
}

GridFunction project_biparam(const GridFunction& f) {
  return synthesize(analyze(f));
}

namespace {

// Sum of c^2 chi_R / |R| over the entries, written directly onto each
// shadow. Shadows at a fixed (jx,jy) level pair are disjoint, so every cell
// receives at most one nonnegative add per level: cells outside all shadows
// stay exactly 0.0. A corner-table splat is asymptotically cheaper on dense
// fields but its telescoping leaks rounding residue into uncovered cells,
// and sqrt (or a p<1 quasinorm downstream) amplifies residue near zero.
// Worst case here is #levels * #cells adds; fine for n <= 12.
GridFunction square_sum(const HaarField& g) {
  const Resolution res = g.res();
  GridFunction out(res);
  for (const auto& [idx, c] : g.entries()) {
    DyadicRect r = rect_from_index(idx, res);
    CellRange cr = cell_range(r, res);
    const double w = c * c * std::ldexp(1.0, r.x.level + r.y.level);
    for (int i = cr.r0; i < cr.r1; ++i)
      for (int j = cr.c0; j < cr.c1; ++j) out.at(i, j) += w;
  }
  return out;
}

}  // namespace

GridFunction square_function(const HaarField& g) {
  GridFunction out = square_sum(g);
  for (double& v : out.values()) v = std::sqrt(v);
  return out;
}

HaarField restrict_to(const HaarField& g, const OpenSetMask& omega) {
  if (g.res() != omega.res())
    throw std::invalid_argument("field/mask resolution mismatch");
  MaskPrefix mp(omega);
  std::vector<HaarField::Entry> kept;
  for (const auto& entry : g.entries())
    if (mp.contains_rect(rect_from_index(entry.first, g.res()), g.res()))
      kept.push_back(entry);
  return HaarField::from_entries(g.res(), std::move(kept));
}

GridFunction square_function_local(const HaarField& g, const OpenSetMask& omega) {
  return square_function(restrict_to(g, omega));
}

}  // namespace bipara
