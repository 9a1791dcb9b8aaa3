#include "bipara/construction.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

#include "bipara/maximal.hpp"
#include "bipara/norms.hpp"
#include "bipara/paraproduct.hpp"
#include "bipara/rng.hpp"

namespace bipara {

namespace {

// Search window for the level exponent. The floor sits below the smallest
// subnormal, so "least integer with a small superlevel set" is found even
// for absurdly tiny square-function values; the ceiling guards overflow.
constexpr int kLambdaLo = -1100;
constexpr int kLambdaHi = 64;

std::int64_t count_above(const GridFunction& f, double threshold) {
  std::int64_t c = 0;
  for (double v : f.values())
    if (v > threshold) ++c;
  return c;
}

void require_support_inside(const HaarField& g, const OpenSetMask& omega0) {
  if (g.res() != omega0.res())
    throw std::invalid_argument("field/mask resolution mismatch");
  MaskPrefix mp(omega0);
  for (const auto& [idx, c] : g.entries())
    if (!mp.contains_rect(rect_from_index(idx, g.res()), g.res()))
      throw std::invalid_argument(
          "support rectangle outside the starting set");
}

// One construction pass at a fixed eta. Returns false on a halving
// violation so the caller can retry with eta/2.
bool attempt_decomposition(const HaarField& g, const OpenSetMask& omega0,
                           double eta, ContractingFamily& fam,
                           DecompositionTrace* trace) {
  const Resolution res = g.res();
  fam.items.clear();
  fam.eta = eta;
  if (trace) trace->items.clear();
  OpenSetMask omega = omega0;
  for (int i = 0;; ++i) {
    GridFunction s = square_function_local(g, omega);
    const double budget = eta * static_cast<double>(omega.true_cells());
    std::optional<int> lambda;
    if (static_cast<double>(count_above(s, 0.0)) > budget) {
      // least integer level; the count is monotone in the threshold
      int lo = kLambdaLo, hi = kLambdaHi;
      if (static_cast<double>(count_above(s, std::ldexp(1.0, hi))) > budget)
        throw std::runtime_error("square function exceeds 2^64");
      while (lo < hi) {
        int mid = lo + (hi - lo) / 2;
        if (static_cast<double>(count_above(s, std::ldexp(1.0, mid))) <= budget)
          hi = mid;
        else
          lo = mid + 1;
      }
      lambda = lo;
    }
    OpenSetMask level_set =
        superlevel_set(s, lambda ? std::ldexp(1.0, *lambda) : 0.0);
    fam.items.push_back(FamilyItem{omega, lambda});
    if (trace) {
      DecompositionTrace::Item it;
      it.i = i;
      it.lambda = lambda;
      it.measure_omega = omega.measure();
      it.measure_superlevel = level_set.measure();
      trace->items.push_back(it);
    }
    OpenSetMask next = enlarge(level_set);
    next &= omega;
    if (2 * next.true_cells() > omega.true_cells()) return false;
    bool has_support = false;
    if (!next.empty()) {
      MaskPrefix mp(next);
      for (const auto& [idx, c] : g.entries())
        if (mp.contains_rect(rect_from_index(idx, res), res)) {
          has_support = true;
          break;
        }
    }
    if (!has_support) return true;
    omega = next;
  }
}

}  // namespace

ContractingFamily contracting_decomposition(const HaarField& g,
                                            const OpenSetMask& omega0,
                                            double eta,
                                            DecompositionTrace* trace) {
  if (!(eta > 0.0) || !(eta < 1.0))
    throw std::invalid_argument("eta must lie in (0,1)");
  require_support_inside(g, omega0);
  ContractingFamily fam;
  double cur = eta;
  for (int retry = 0; retry <= kMaxEtaRetries; ++retry) {
    if (trace) {
      trace->retries = retry;
      trace->eta_used = cur;
    }
    if (attempt_decomposition(g, omega0, cur, fam, trace)) {
      validate_contracting(fam);
      return fam;
    }
    cur *= 0.5;
  }
  throw std::runtime_error("halving property failed after " +
                           std::to_string(kMaxEtaRetries) + " eta retries");
}

double sparse_norm(const ContractingFamily& fam, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("exponent must be positive");
  double acc = 0.0;
  for (const FamilyItem& item : fam.items)
    if (item.lambda)
      acc += std::exp2(r * static_cast<double>(*item.lambda)) *
             item.omega.measure();
  return std::pow(acc, 1.0 / r);
}

std::vector<HaarField> atomic_decomposition(const HaarField& g,
                                            const ContractingFamily& fam) {
  if (fam.items.empty()) throw std::invalid_argument("empty family");
  require_support_inside(g, fam.items.front().omega);
  const Resolution res = g.res();
  std::vector<MaskPrefix> prefixes;
  prefixes.reserve(fam.items.size());
  for (const FamilyItem& item : fam.items) prefixes.emplace_back(item.omega);
  std::vector<std::vector<HaarField::Entry>> buckets(fam.items.size());
  for (const auto& entry : g.entries()) {
    DyadicRect r = rect_from_index(entry.first, res);
    // nesting makes containment a prefix property: take the deepest set
    std::size_t last = 0;
    for (std::size_t i = 1; i < prefixes.size(); ++i) {
      if (!prefixes[i].contains_rect(r, res)) break;
      last = i;
    }
    buckets[last].push_back(entry);
  }
  std::vector<HaarField> pieces;
  pieces.reserve(fam.items.size());
  for (auto& b : buckets)
    pieces.push_back(HaarField::from_entries(res, std::move(b)));
  return pieces;
}

GridFunction test_function(const OpenSetMask& omega, double delta) {
  if (!(delta > 0.0) || !(delta < 1.0))
    throw std::invalid_argument("delta must lie in (0,1)");
  GridFunction chi = GridFunction::indicator(omega);
  OpenSetMask omega1 = superlevel_set(dyadic_maximal(chi), delta);
  OpenSetMask omega2 = enlarge(omega1);
  OpenSetMask omega3 =
      superlevel_set(dyadic_maximal(GridFunction::indicator(omega2)), delta);
  HaarField coeffs = analyze(chi);
  MaskPrefix mp(omega3);
  std::vector<HaarField::Entry> tail;
  for (const auto& entry : coeffs.entries())
    if (!mp.contains_rect(rect_from_index(entry.first, omega.res()), omega.res()))
      tail.push_back(entry);
  GridFunction correction =
      synthesize(HaarField::from_entries(omega.res(), std::move(tail)));
  GridFunction out = chi;
  for (std::size_t i = 0; i < out.values().size(); ++i)
    out.values()[i] -= correction.values()[i];
  return out;
}

OpenSetMask good_set(const GridFunction& chi_tilde, const OpenSetMask& omega) {
  if (chi_tilde.res() != omega.res())
    throw std::invalid_argument("grid/mask resolution mismatch");
  const Resolution res = omega.res();
  const int n = res.n();
  PrefixSum ps(chi_tilde);
  MaskPrefix mp(omega);
  OpenSetMask bad(res);
  for (int j1 = 0; j1 <= n; ++j1)
    for (int k1 = 0; k1 < (1 << j1); ++k1)
      for (int j2 = 0; j2 <= n; ++j2)
        for (int k2 = 0; k2 < (1 << j2); ++k2) {
          DyadicRect r{{j1, k1}, {j2, k2}};
          CellRange cr = cell_range(r, res);
          if (mp.box_count(cr) != cr.cells()) continue;  // not inside omega
          double avg = ps.box_sum(cr) / static_cast<double>(cr.cells());
          if (avg < 0.5)
            for (int a = cr.r0; a < cr.r1; ++a)
              for (int b = cr.c0; b < cr.c1; ++b) bad.set(a, b, true);
        }
  OpenSetMask good(res);
  const int side = res.side();
  for (int i = 0; i < side; ++i)
    for (int j = 0; j < side; ++j)
      if (omega.test(i, j) && !bad.test(i, j)) good.set(i, j, true);
  return good;
}

CalibrationResult calibrate_delta(const OpenSetMask& omega, double eps, double p) {
  if (!(eps > 0.0) || eps > 1.0)
    throw std::invalid_argument("eps must lie in (0,1]");
  if (!(p > 0.0)) throw std::invalid_argument("exponent must be positive");
  const std::int64_t omega_cells = omega.true_cells();
  if (omega_cells == 0)
    throw std::invalid_argument("cannot calibrate an empty set");
  const double target = (1.0 - eps) * static_cast<double>(omega_cells);
  double delta = 0.5;
  std::ostringstream attempts;
  for (int h = 0; h <= kMaxDeltaHalvings; ++h) {
    GridFunction chi_tilde = test_function(omega, delta);
    OpenSetMask good = good_set(chi_tilde, omega);
    std::int64_t good_cells = good.true_cells();
    if (static_cast<double>(good_cells) >= target) {
      CalibrationResult out{delta, std::move(chi_tilde), std::move(good),
                            static_cast<double>(good_cells) /
                                static_cast<double>(omega_cells),
                            0.0, h};
      out.hardy_ratio = hardy_norm(out.chi_tilde, p) /
                        std::pow(omega.measure(), 1.0 / p);
      return out;
    }
    attempts << (h ? ", " : "") << "delta=" << delta << " good="
             << good_cells << "/" << omega_cells;
    delta *= 0.5;
  }
  throw std::runtime_error("delta calibration failed after " +
                           std::to_string(kMaxDeltaHalvings) +
                           " halvings: " + attempts.str());
}

namespace {

// Scaled pieces 2^(t lambda_i) u_i for the finite-lambda items, cached so
// trial loops reuse the calibrations.
struct WitnessBasis {
  std::vector<std::size_t> item_index;
  std::vector<GridFunction> piece;
};

WitnessBasis witness_basis(const ContractingFamily& fam, const WitnessParams& wp) {
  WitnessBasis basis;
  for (std::size_t i = 0; i < fam.items.size(); ++i) {
    const FamilyItem& item = fam.items[i];
    if (!item.lambda) continue;
    GridFunction u = (wp.p <= 1.0)
                         ? calibrate_delta(item.omega, wp.epsilon, wp.p).chi_tilde
                         : GridFunction::indicator(item.omega);
    double w = std::exp2(wp.t * static_cast<double>(*item.lambda));
    for (double& v : u.values()) v *= w;
    basis.item_index.push_back(i);
    basis.piece.push_back(std::move(u));
  }
  return basis;
}

GridFunction combine_witness(const WitnessBasis& basis, Resolution res,
                             std::uint64_t seed, std::uint64_t trial) {
  GridFunction f(res);
  for (std::size_t k = 0; k < basis.piece.size(); ++k) {
    double sgn = rng::sign(seed, "omega", basis.item_index[k], trial);
    const auto& pv = basis.piece[k].values();
    for (std::size_t c = 0; c < pv.size(); ++c) f.values()[c] += sgn * pv[c];
  }
  return f;
}

}  // namespace

GridFunction random_witness(const HaarField& g, const ContractingFamily& fam,
                            const WitnessParams& wp, std::uint64_t trial) {
  if (fam.items.empty()) throw std::invalid_argument("empty family");
  if (!(wp.p > 0.0)) throw std::invalid_argument("exponent must be positive");
  if (wp.p <= 1.0 && (!(wp.epsilon > 0.0) || wp.epsilon > 1.0))
    throw std::invalid_argument("calibration eps must lie in (0,1]");
  for (const FamilyItem& item : fam.items)
    if (item.omega.res() != g.res())
      throw std::invalid_argument("family/field resolution mismatch");
  WitnessBasis basis = witness_basis(fam, wp);
  return combine_witness(basis, g.res(), wp.seed, trial);
}

double lower_bound_estimate(const HaarField& g, const Exponents& e, int trials,
                            std::uint64_t seed) {
  validate_triple(e);
  if (!(e.t() > 0.0))
    throw std::invalid_argument("triple gives t <= 0; use the details "
                                "overload for the endpoint mode");
  OpenSetMask full = OpenSetMask::full(g.res());
  return lower_bound_details(g, full, e.p, e.q, e.t(), kDefaultEta, trials, seed)
      .best_ratio;
}

LowerBoundDetails lower_bound_details(const HaarField& g,
                                      const OpenSetMask& omega0, double p,
                                      double q, double t, double eta,
                                      int trials, std::uint64_t seed) {
  return lower_bound_details_split(g, g, omega0, p, q, t, eta, trials, seed);
}

LowerBoundDetails lower_bound_details_split(const HaarField& g_apply,
                                            const HaarField& g_decompose,
                                            const OpenSetMask& omega0, double p,
                                            double q, double t, double eta,
                                            int trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("need at least one trial");
  if (!(p > 0.0) || !(q > 0.0))
    throw std::invalid_argument("exponents must be positive");
  if (g_apply.res() != g_decompose.res())
    throw std::invalid_argument("symbol resolution mismatch");
  LowerBoundDetails out;
  out.trials = trials;
  if (g_decompose.empty()) return out;
  ContractingFamily fam = contracting_decomposition(g_decompose, omega0, eta);
  out.eta_used = fam.eta;
  out.family_size = static_cast<int>(fam.items.size());
  WitnessParams wp{p, t, fam.eta * 0.5, seed};
  WitnessBasis basis = witness_basis(fam, wp);
  if (basis.piece.empty()) return out;

  const Resolution res = g_apply.res();
  const double unit = res.cell_measure();
  double diag_acc = 0.0;
  for (int trial = 0; trial < trials; ++trial) {
    GridFunction f = combine_witness(basis, res, seed, trial);
    HaarField pi = paraproduct_apply(g_apply, f);
    double num = lp_quasinorm(square_function(pi), q);
    double den = hardy_norm(f, p);
    double ratio = den > 0.0 ? num / den : 0.0;
    if (ratio > out.best_ratio) {
      out.best_ratio = ratio;
      out.best_trial = static_cast<std::uint64_t>(trial);
    }
    // Khintchine proxy: random signs on the output coefficients, synthesized
    // and integrated in L^q.
    std::vector<HaarField::Entry> flipped;
    flipped.reserve(pi.size());
    for (const auto& [idx, c] : pi.entries())
      flipped.emplace_back(
          idx, c * rng::sign(seed, "eps", static_cast<std::uint64_t>(idx),
                             static_cast<std::uint64_t>(trial)));
    GridFunction h = synthesize(HaarField::from_entries(res, std::move(flipped)));
    double acc = 0.0;
    for (double v : h.values()) acc += std::pow(std::fabs(v), q);
    diag_acc += acc * unit;
  }
  out.khintchine_diag = std::pow(diag_acc / trials, 1.0 / q);
  return out;
}

}  // namespace bipara
