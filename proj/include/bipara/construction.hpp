#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "bipara/family.hpp"
#include "bipara/grid.hpp"
#include "bipara/haar.hpp"

namespace bipara {

inline constexpr double kDefaultEta = 0x1p-6;
inline constexpr int kMaxEtaRetries = 20;
inline constexpr int kMaxDeltaHalvings = 20;

struct DecompositionTrace {
  struct Item {
    int i = 0;
    std::optional<int> lambda;  // nullopt encodes -infinity
    double measure_omega = 0.0;
    double measure_superlevel = 0.0;
  };
  std::vector<Item> items;
  int retries = 0;
  double eta_used = 0.0;
};

// Stopping-time family for g inside omega0. Every support rectangle of g
// must lie inside omega0. lambda_i is the least element of Z u {-inf}
// with |{S(g|omega_i) > 2^lambda_i}| <= eta |omega_i| (threshold 0 at
// -inf), and omega_{i+1} = enlarge({S(g|omega_i) > 2^lambda_i}) n omega_i.
// If the halving property ever fails the construction restarts with
// eta/2, up to kMaxEtaRetries times.
ContractingFamily contracting_decomposition(const HaarField& g,
                                            const OpenSetMask& omega0,
                                            double eta = kDefaultEta,
                                            DecompositionTrace* trace = nullptr);

// (sum over items with finite lambda of 2^(r lambda_i) |omega_i|)^(1/r).
// Comparable to ||S(g)||_r with constants depending only on eta and r.
double sparse_norm(const ContractingFamily& fam, double r);

// g_i collects the coefficients with R inside omega_i but not inside
// omega_{i+1}; the pieces partition the support of g exactly.
std::vector<HaarField> atomic_decomposition(const HaarField& g,
                                            const ContractingFamily& fam);

// Indicator of omega with the Haar tail outside the third enlargement
// removed: chi~ = chi_omega - sum over R not inside omega3 of
// <chi_omega, h_R> h_R, where omega1 = {M(chi_omega) > delta},
// omega2 = enlarge(omega1), omega3 = {M(chi_omega2) > delta}.
GridFunction test_function(const OpenSetMask& omega, double delta);

// Cells of omega where every dyadic rectangle R with x in R and R inside
// omega has <chi~>_R >= 1/2.
OpenSetMask good_set(const GridFunction& chi_tilde, const OpenSetMask& omega);

struct CalibrationResult {
  double delta = 0.0;
  GridFunction chi_tilde;
  OpenSetMask good;
  double good_fraction = 0.0;  // |good| / |omega|
  double hardy_ratio = 0.0;    // ||chi~||_{H^p} / |omega|^{1/p}
  int halvings = 0;
};

// Starts at delta = 1/2 and halves until |good| >= (1 - eps)|omega|.
// Throws with the attempt trace in the message if kMaxDeltaHalvings
// halvings do not reach the target.
CalibrationResult calibrate_delta(const OpenSetMask& omega, double eps, double p);

struct WitnessParams {
  double p = 1.0;        // input Hardy exponent; decides the piece shape
  double t = 0.0;        // weight exponent: pieces scale by 2^(t lambda_i)
  double epsilon = 0.0;  // calibration target when p <= 1
  std::uint64_t seed = 0;
};

// f = sum over finite-lambda items of w_i 2^(t lambda_i) u_i with random
// signs w_i, where u_i is the calibrated test function of omega_i when
// p <= 1 and chi_{omega_i} otherwise. Signs come from the counter RNG
// keyed (seed, "omega", i, trial), so a fixed seed reproduces the same
// function bit for bit on any thread count.
GridFunction random_witness(const HaarField& g, const ContractingFamily& fam,
                            const WitnessParams& wp, std::uint64_t trial = 0);

struct LowerBoundDetails {
  double best_ratio = 0.0;
  std::uint64_t best_trial = 0;
  double khintchine_diag = 0.0;  // Monte Carlo ||F||_1^{1/q} proxy
  int trials = 0;
  double eta_used = 0.0;
  int family_size = 0;
};

// Certified lower estimate for ||pi_g|| from H^p to the q square-function
// space: max over random witnesses of ||S(pi_g f)||_q / ||f||_{H^p}.
// Exponent t = r/q - 1 comes from e; pass t explicitly via the details
// overload for the t = 0 endpoint mode (q = p, r formally infinite).
double lower_bound_estimate(const HaarField& g, const Exponents& e, int trials,
                            std::uint64_t seed);

LowerBoundDetails lower_bound_details(const HaarField& g, const OpenSetMask& omega0,
                                      double p, double q, double t, double eta,
                                      int trials, std::uint64_t seed);

// Same scan with the decomposition driven by a localized symbol (its
// support must lie inside omega0) while the operator keeps the full one.
// Used for the endpoint mode, where witnesses are built per candidate
// starting set.
LowerBoundDetails lower_bound_details_split(const HaarField& g_apply,
                                            const HaarField& g_decompose,
                                            const OpenSetMask& omega0, double p,
                                            double q, double t, double eta,
                                            int trials, std::uint64_t seed);

}  // namespace bipara
