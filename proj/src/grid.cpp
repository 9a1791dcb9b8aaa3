#include "bipara/grid.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace bipara {

Resolution::Resolution(int n) : n_(n) {
  if (n < 1 || n > kMaxResolution)
    throw std::invalid_argument("resolution must be in [1, " +
                                std::to_string(kMaxResolution) +
                                "], got " + std::to_string(n));
}

bool valid_interval(const DyadicInterval& i, Resolution res) {
  return i.level >= 0 && i.level <= res.n() && i.pos >= 0 &&
         i.pos < (1 << i.level);
}

bool valid_rect(const DyadicRect& r, Resolution res) {
  return valid_interval(r.x, res) && valid_interval(r.y, res);
}

CellRange cell_range(const DyadicRect& r, Resolution res) {
  int sx = res.n() - r.x.level;
  int sy = res.n() - r.y.level;
  return CellRange{r.x.pos << sx, (r.x.pos + 1) << sx, r.y.pos << sy,
                   (r.y.pos + 1) << sy};
}

GridFunction GridFunction::constant(Resolution res, double c) {
  GridFunction f(res);
  for (double& v : f.v_) v = c;
  return f;
}

GridFunction GridFunction::indicator(const OpenSetMask& m) {
  GridFunction f(m.res());
  int s = m.side();
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j)
      if (m.test(i, j)) f.at(i, j) = 1.0;
  return f;
}

OpenSetMask OpenSetMask::full(Resolution res) {
  OpenSetMask m(res);
  std::int64_t cells = res.cell_count();
  for (std::size_t w = 0; w < m.bits_.size(); ++w) m.bits_[w] = ~std::uint64_t(0);
  int rem = static_cast<int>(cells & 63);
  if (rem) m.bits_.back() = (std::uint64_t(1) << rem) - 1;
  return m;
}

std::int64_t OpenSetMask::true_cells() const {
  std::int64_t c = 0;
  for (std::uint64_t w : bits_) c += std::popcount(w);
  return c;
}

OpenSetMask& OpenSetMask::operator&=(const OpenSetMask& o) {
  if (res_ != o.res_) throw std::invalid_argument("mask resolution mismatch");
  for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] &= o.bits_[i];
  return *this;
}

OpenSetMask& OpenSetMask::operator|=(const OpenSetMask& o) {
  if (res_ != o.res_) throw std::invalid_argument("mask resolution mismatch");
  for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] |= o.bits_[i];
  return *this;
}

bool OpenSetMask::is_subset_of(const OpenSetMask& o) const {
  if (res_ != o.res_) throw std::invalid_argument("mask resolution mismatch");
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i] & ~o.bits_[i]) return false;
  return true;
}

PrefixSum::PrefixSum(const GridFunction& f) : stride_(f.side() + 1) {
  int s = f.side();
  p_.assign(static_cast<std::size_t>(stride_) * stride_, 0.0);
  for (int i = 0; i < s; ++i) {
    double row = 0.0;
    const std::size_t base = static_cast<std::size_t>(i + 1) * stride_;
    const std::size_t prev = static_cast<std::size_t>(i) * stride_;
    for (int j = 0; j < s; ++j) {
      row += f.at(i, j);
      p_[base + j + 1] = p_[prev + j + 1] + row;
    }
  }
}

double PrefixSum::box_sum(const CellRange& r) const {
  const std::size_t a = static_cast<std::size_t>(r.r0) * stride_;
  const std::size_t b = static_cast<std::size_t>(r.r1) * stride_;
  return p_[b + r.c1] - p_[b + r.c0] - p_[a + r.c1] + p_[a + r.c0];
}

MaskPrefix::MaskPrefix(const OpenSetMask& m) : stride_(m.side() + 1) {
  int s = m.side();
  p_.assign(static_cast<std::size_t>(stride_) * stride_, 0);
  for (int i = 0; i < s; ++i) {
    std::int64_t row = 0;
    const std::size_t base = static_cast<std::size_t>(i + 1) * stride_;
    const std::size_t prev = static_cast<std::size_t>(i) * stride_;
    for (int j = 0; j < s; ++j) {
      row += m.test(i, j) ? 1 : 0;
      p_[base + j + 1] = p_[prev + j + 1] + row;
    }
  }
}

std::int64_t MaskPrefix::box_count(const CellRange& r) const {
  const std::size_t a = static_cast<std::size_t>(r.r0) * stride_;
  const std::size_t b = static_cast<std::size_t>(r.r1) * stride_;
  return p_[b + r.c1] - p_[b + r.c0] - p_[a + r.c1] + p_[a + r.c0];
}

double average(const GridFunction& f, const DyadicRect& r) {
  if (!valid_rect(r, f.res()))
    throw std::invalid_argument("rectangle outside grid range");
  CellRange cr = cell_range(r, f.res());
  double sum = 0.0;
  for (int i = cr.r0; i < cr.r1; ++i)
    for (int j = cr.c0; j < cr.c1; ++j) sum += f.at(i, j);
  return sum / static_cast<double>(cr.cells());
}

double lp_quasinorm(const GridFunction& f, double p) {
  if (!(p > 0.0)) throw std::invalid_argument("lp exponent must be positive");
  double acc = 0.0;
  for (double v : f.values()) acc += std::pow(std::fabs(v), p);
  return std::pow(acc * f.res().cell_measure(), 1.0 / p);
}

std::vector<DyadicRect> enumerate_rects(Resolution res) {
  std::vector<DyadicRect> out;
  out.reserve(static_cast<std::size_t>(rect_count(res)));
  for (int jx = 0; jx < res.n(); ++jx)
    for (int kx = 0; kx < (1 << jx); ++kx)
      for (int jy = 0; jy < res.n(); ++jy)
        for (int ky = 0; ky < (1 << jy); ++ky)
          out.push_back(DyadicRect{{jx, kx}, {jy, ky}});
  return out;
}

OpenSetMask superlevel_set(const GridFunction& f, double lambda) {
  OpenSetMask m(f.res());
  int s = f.side();
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j)
      if (f.at(i, j) > lambda) m.set(i, j, true);
  return m;
}

void validate_triple(const Exponents& e) {
  if (!(e.p > 0.0) || !(e.q > 0.0) || !(e.r > 0.0) || !std::isfinite(e.p) ||
      !std::isfinite(e.q) || !std::isfinite(e.r))
    throw std::invalid_argument("exponents must be positive and finite");
  if (std::fabs(1.0 / e.q - 1.0 / e.p - 1.0 / e.r) > 1e-12)
    throw std::invalid_argument("exponents violate 1/q = 1/p + 1/r");
}

std::int64_t interval_index(const DyadicInterval& i) {
  return (std::int64_t(1) << i.level) - 1 + i.pos;
}

std::int64_t rect_count(Resolution res) {
  std::int64_t per_axis = (std::int64_t(1) << res.n()) - 1;
  return per_axis * per_axis;
}

std::int64_t rect_index(const DyadicRect& r, Resolution res) {
  std::int64_t per_axis = (std::int64_t(1) << res.n()) - 1;
  return interval_index(r.x) * per_axis + interval_index(r.y);
}

static DyadicInterval interval_from_index(std::int64_t idx) {
  int level = 0;
  while ((std::int64_t(2) << level) - 1 <= idx) ++level;
  return DyadicInterval{level, static_cast<int>(idx - ((std::int64_t(1) << level) - 1))};
}

DyadicRect rect_from_index(std::int64_t idx, Resolution res) {
  std::int64_t per_axis = (std::int64_t(1) << res.n()) - 1;
  if (idx < 0 || idx >= per_axis * per_axis)
    throw std::invalid_argument("rectangle index out of range");
  return DyadicRect{interval_from_index(idx / per_axis),
                    interval_from_index(idx % per_axis)};
}

}  // namespace bipara
