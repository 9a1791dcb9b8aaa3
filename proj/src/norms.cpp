#include "bipara/norms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "bipara/maximal.hpp"

namespace bipara {

double hardy_norm(const GridFunction& f, double p) {
  return lp_quasinorm(dyadic_maximal(f), p);
}

double dot_hardy_norm(const HaarField& g, double p) {
  return lp_quasinorm(square_function(g), p);
}

namespace {

OpenSetMask rect_mask(const DyadicRect& r, Resolution res) {
  OpenSetMask m(res);
  CellRange cr = cell_range(r, res);
  for (int i = cr.r0; i < cr.r1; ++i)
    for (int j = cr.c0; j < cr.c1; ++j) m.set(i, j, true);
  return m;
}

struct MaskKeyHash {
  std::size_t operator()(const std::vector<std::uint64_t>& w) const {
    std::uint64_t h = 0x9e3779b97f4a7c15ull;
    for (std::uint64_t v : w) {
      h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

void push_candidate(BmoCandidates& out,
                    std::unordered_set<std::vector<std::uint64_t>, MaskKeyHash>& seen,
                    OpenSetMask m) {
  if (m.empty()) return;
  if (seen.insert(m.words()).second) out.sets.push_back(std::move(m));
}

constexpr std::size_t kExhaustiveSupportCap = 12;

}  // namespace

BmoCandidates bmo_candidates(const HaarField& g, const ContractingFamily* fam) {
  const Resolution res = g.res();
  BmoCandidates out;
  std::unordered_set<std::vector<std::uint64_t>, MaskKeyHash> seen;

  // (a) every Haar carrier
  for (const DyadicRect& r : enumerate_rects(res))
    push_candidate(out, seen, rect_mask(r, res));

  // (b) superlevel sets of S(g) at power-of-two thresholds spanning the
  // positive plateau range
  if (!g.empty()) {
    GridFunction s = square_function(g);
    double lo = 0.0, hi = 0.0;
    for (double v : s.values()) {
      if (v > 0.0 && (lo == 0.0 || v < lo)) lo = v;
      if (v > hi) hi = v;
    }
    if (hi > 0.0) {
      int klo = static_cast<int>(std::floor(std::log2(lo))) - 1;
      int khi = static_cast<int>(std::floor(std::log2(hi)));
      for (int k = khi; k >= klo; --k)
        push_candidate(out, seen, superlevel_set(s, std::ldexp(1.0, k)));
    }
  }

  // (c) supplied family sets
  if (fam)
    for (const FamilyItem& item : fam->items) {
      if (item.omega.res() != res)
        throw std::invalid_argument("family/field resolution mismatch");
      push_candidate(out, seen, item.omega);
    }

  // (d) unions of the top-m rectangles by energy density g_R^2 / |R|
  if (!g.empty()) {
    std::vector<std::pair<double, std::int64_t>> ranked;
    ranked.reserve(g.size());
    for (const auto& [idx, c] : g.entries()) {
      DyadicRect r = rect_from_index(idx, res);
      ranked.emplace_back(c * c * std::ldexp(1.0, r.x.level + r.y.level), idx);
    }
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
      if (a.first != b.first) return a.first > b.first;
      return a.second < b.second;
    });
    OpenSetMask u(res);
    std::size_t cap = std::min<std::size_t>(ranked.size(), 16);
    for (std::size_t m = 0; m < cap; ++m) {
      u |= rect_mask(rect_from_index(ranked[m].second, res), res);
      push_candidate(out, seen, u);
    }
  }

  // (e) exhaustive unions at small support; an optimal set is always a
  // union of support rectangles, so this makes the lower bound sharp
  if (!g.empty() && g.size() <= kExhaustiveSupportCap) {
    std::vector<OpenSetMask> rects;
    rects.reserve(g.size());
    for (const auto& [idx, c] : g.entries())
      rects.push_back(rect_mask(rect_from_index(idx, res), res));
    const std::uint32_t subsets = 1u << g.size();
    for (std::uint32_t bits = 1; bits < subsets; ++bits) {
      OpenSetMask u(res);
      for (std::size_t i = 0; i < rects.size(); ++i)
        if (bits & (1u << i)) u |= rects[i];
      push_candidate(out, seen, std::move(u));
    }
  }

  return out;
}

double bmo_norm_lower(const HaarField& g, const BmoCandidates& cands) {
  if (cands.sets.empty()) throw std::invalid_argument("no BMO candidates");
  bool any_positive_measure = false;
  double best = 0.0;
  for (const OpenSetMask& omega : cands.sets) {
    double meas = omega.measure();
    if (meas <= 0.0) continue;
    any_positive_measure = true;
    MaskPrefix mp(omega);
    double energy = 0.0;
    for (const auto& [idx, c] : g.entries())
      if (mp.contains_rect(rect_from_index(idx, g.res()), g.res()))
        energy += c * c;
    double val = std::sqrt(energy / meas);
    if (val > best * (1.0 + 1e-12)) best = val;
  }
  if (!any_positive_measure)
    throw std::invalid_argument("all BMO candidates have zero measure");
  return best;
}

double john_nirenberg_ratio(const HaarField& g, double p,
                            const BmoCandidates& cands) {
  if (!(p > 0.0)) throw std::invalid_argument("exponent must be positive");
  if (cands.sets.empty()) throw std::invalid_argument("no BMO candidates");
  const int side = g.res().side();
  const double unit = g.res().cell_measure();
  bool any_positive_measure = false;
  double best = 0.0;
  for (const OpenSetMask& omega : cands.sets) {
    double meas = omega.measure();
    if (meas <= 0.0) continue;
    any_positive_measure = true;
    GridFunction s = square_function_local(g, omega);
    double acc = 0.0;
    for (int i = 0; i < side; ++i)
      for (int j = 0; j < side; ++j)
        if (omega.test(i, j)) acc += std::pow(s.at(i, j), p);
    double val = std::pow(acc * unit / meas, 1.0 / p);
    if (val > best * (1.0 + 1e-12)) best = val;
  }
  if (!any_positive_measure)
    throw std::invalid_argument("all BMO candidates have zero measure");
  return best;
}

}  // namespace bipara
