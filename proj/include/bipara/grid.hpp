#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

// Finite-resolution dyadic model of [0,1)^2. Everything downstream works on
// a 2^n x 2^n grid of cells; resolution n is capped so cell counts and
// prefix tables stay well inside integer and double range.
namespace bipara {

inline constexpr int kMaxResolution = 12;

class Resolution {
 public:
  explicit Resolution(int n);
  int n() const { return n_; }
  int side() const { return 1 << n_; }
  std::int64_t cell_count() const { return std::int64_t(1) << (2 * n_); }
  // 4^-n, exact as a double
  double cell_measure() const { return std::ldexp(1.0, -2 * n_); }
  friend bool operator==(const Resolution& a, const Resolution& b) {
    return a.n_ == b.n_;
  }
  friend bool operator!=(const Resolution& a, const Resolution& b) {
    return a.n_ != b.n_;
  }

 private:
  int n_;
};

// [k 2^-j, (k+1) 2^-j); level 0 is the whole axis [0,1).
struct DyadicInterval {
  int level = 0;
  int pos = 0;
  double length() const { return std::ldexp(1.0, -level); }
  friend bool operator==(const DyadicInterval&, const DyadicInterval&) = default;
};

// Axis x is the first coordinate (grid index i1), axis y the second (i2).
struct DyadicRect {
  DyadicInterval x;
  DyadicInterval y;
  friend bool operator==(const DyadicRect&, const DyadicRect&) = default;
};

// 2^-(jx+jy), exact: both factors are powers of two.
inline double measure(const DyadicRect& r) {
  return std::ldexp(1.0, -(r.x.level + r.y.level));
}

bool valid_interval(const DyadicInterval& i, Resolution res);
bool valid_rect(const DyadicRect& r, Resolution res);

// Haar carriers live at levels 0..n-1 per axis so the wavelet's two halves
// are unions of grid cells.
inline bool is_haar_carrier(const DyadicRect& r, Resolution res) {
  return r.x.level >= 0 && r.x.level < res.n() && r.y.level >= 0 &&
         r.y.level < res.n() && r.x.pos >= 0 &&
         r.x.pos < (1 << r.x.level) && r.y.pos >= 0 &&
         r.y.pos < (1 << r.y.level);
}

inline bool contains(const DyadicInterval& outer, const DyadicInterval& inner) {
  return outer.level <= inner.level &&
         (inner.pos >> (inner.level - outer.level)) == outer.pos;
}

inline bool contains(const DyadicRect& outer, const DyadicRect& inner) {
  return contains(outer.x, inner.x) && contains(outer.y, inner.y);
}

// Half-open cell index ranges [r0,r1) x [c0,c1) covered by a rectangle.
struct CellRange {
  int r0, r1, c0, c1;
  std::int64_t cells() const {
    return std::int64_t(r1 - r0) * std::int64_t(c1 - c0);
  }
};

CellRange cell_range(const DyadicRect& r, Resolution res);

class OpenSetMask;

class GridFunction {
 public:
  explicit GridFunction(Resolution res)
      : res_(res), v_(static_cast<std::size_t>(res.cell_count()), 0.0) {}
  static GridFunction constant(Resolution res, double c);
  static GridFunction indicator(const OpenSetMask& m);

  Resolution res() const { return res_; }
  int side() const { return res_.side(); }
  double at(int i1, int i2) const {
    return v_[static_cast<std::size_t>(i1) * res_.side() + i2];
  }
  double& at(int i1, int i2) {
    return v_[static_cast<std::size_t>(i1) * res_.side() + i2];
  }
  const std::vector<double>& values() const { return v_; }
  std::vector<double>& values() { return v_; }

 private:
  Resolution res_;
  std::vector<double> v_;
};

// Finite unions of grid cells, bit-packed row-major. "Open set" in the
// dyadic topology: cells are the clopen atoms, so any cell union qualifies.
class OpenSetMask {
 public:
  explicit OpenSetMask(Resolution res)
      : res_(res),
        bits_(static_cast<std::size_t>((res.cell_count() + 63) / 64), 0) {}
  static OpenSetMask full(Resolution res);

  Resolution res() const { return res_; }
  int side() const { return res_.side(); }
  bool test(int i1, int i2) const {
    std::size_t idx = static_cast<std::size_t>(i1) * res_.side() + i2;
    return (bits_[idx >> 6] >> (idx & 63)) & 1u;
  }
  void set(int i1, int i2, bool v) {
    std::size_t idx = static_cast<std::size_t>(i1) * res_.side() + i2;
    if (v)
      bits_[idx >> 6] |= (std::uint64_t(1) << (idx & 63));
    else
      bits_[idx >> 6] &= ~(std::uint64_t(1) << (idx & 63));
  }
  std::int64_t true_cells() const;
  double measure() const { return double(true_cells()) * res_.cell_measure(); }
  bool empty() const { return true_cells() == 0; }

  OpenSetMask& operator&=(const OpenSetMask& o);
  OpenSetMask& operator|=(const OpenSetMask& o);
  bool is_subset_of(const OpenSetMask& o) const;
  friend bool operator==(const OpenSetMask& a, const OpenSetMask& b) {
    return a.res_ == b.res_ && a.bits_ == b.bits_;
  }
  const std::vector<std::uint64_t>& words() const { return bits_; }

 private:
  Resolution res_;
  std::vector<std::uint64_t> bits_;
};

// Inclusion-exclusion table of cell-value sums; P(i,j) = sum over the
// index box [0,i) x [0,j). Rectangle sums are O(1).
class PrefixSum {
 public:
  explicit PrefixSum(const GridFunction& f);
  double box_sum(const CellRange& r) const;
  double rect_sum(const DyadicRect& r, Resolution res) const {
    return box_sum(cell_range(r, res));
  }

 private:
  int stride_;
  std::vector<double> p_;
};

// Same thing for masks, counting true cells.
class MaskPrefix {
 public:
  explicit MaskPrefix(const OpenSetMask& m);
  std::int64_t box_count(const CellRange& r) const;
  bool contains_rect(const DyadicRect& r, Resolution res) const {
    CellRange cr = cell_range(r, res);
    return box_count(cr) == cr.cells();
  }

 private:
  int stride_;
  std::vector<std::int64_t> p_;
};

// Mean of f over R in Lebesgue terms; R may be any dyadic rectangle with
// levels up to n per axis (cells included).
double average(const GridFunction& f, const DyadicRect& r);

// (4^-n sum |f|^p)^(1/p); a quasi-norm for p < 1 but computed by the same
// formula. p must be positive.
double lp_quasinorm(const GridFunction& f, double p);

// All Haar carriers in lexicographic (jx, kx, jy, ky) order.
std::vector<DyadicRect> enumerate_rects(Resolution res);

// {f > lambda}, strict.
OpenSetMask superlevel_set(const GridFunction& f, double lambda);

// Mapping exponents 1/q = 1/p + 1/r. r may be infinity when only the pair
// (p, q = p) is in play; validate_triple rejects that case.
struct Exponents {
  double p = 1.0;
  double q = 1.0;
  double r = 2.0;
  double t() const { return r / q - 1.0; }
};

// Throws unless p, q, r are positive, finite, and satisfy the scaling
// relation to 1e-12.
void validate_triple(const Exponents& e);

// Position of a Haar carrier in enumerate_rects order. Intervals at levels
// 0..n-1 flatten to 2^j - 1 + k, which is (j,k)-lexicographic.
std::int64_t interval_index(const DyadicInterval& i);
std::int64_t rect_count(Resolution res);
std::int64_t rect_index(const DyadicRect& r, Resolution res);
DyadicRect rect_from_index(std::int64_t idx, Resolution res);

}  // namespace bipara
