#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "bipara/grid.hpp"

namespace bipara {

// Sparse coefficient field over the Haar carriers of one resolution.
// Entries are kept sorted by rect_index (lexicographic jx,kx,jy,ky) and
// never store exact zeros, so iteration order and equality are canonical.
class HaarField {
 public:
  using Entry = std::pair<std::int64_t, double>;

  explicit HaarField(Resolution res) : res_(res) {}
  static HaarField from_entries(Resolution res, std::vector<Entry> entries);

  Resolution res() const { return res_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const std::vector<Entry>& entries() const { return entries_; }

  double get(const DyadicRect& r) const;
  void set(const DyadicRect& r, double c);

  friend bool operator==(const HaarField& a, const HaarField& b) {
    return a.res_ == b.res_ && a.entries_ == b.entries_;
  }

 private:
  Resolution res_;
  std::vector<Entry> entries_;
};

// All bi-parameter Haar coefficients <f, h_R> of a grid function, computed
// by a per-axis sum/difference cascade (O(4^n) total). The cascade takes
// exact differences of identically-computed sums, so one-variable inputs
// a(x) or b(y) produce coefficients that are exactly zero.
HaarField analyze(const GridFunction& f);

// sum_R g_R h_R as a grid function.
GridFunction synthesize(const HaarField& g);

// synthesize(analyze(f)): the component of f spanned by bi-parameter
// Haar wavelets. Kills constants and pure one-variable parts.
GridFunction project_biparam(const GridFunction& f);

// S(g) = (sum_R g_R^2 chi_R / |R|)^(1/2), evaluated per cell.
GridFunction square_function(const HaarField& g);

// Same sum restricted to R entirely inside omega (every cell of R set).
GridFunction square_function_local(const HaarField& g, const OpenSetMask& omega);

// The sub-field of coefficients whose rectangle lies inside omega.
HaarField restrict_to(const HaarField& g, const OpenSetMask& omega);

}  // namespace bipara
