#pragma once

#include <vector>

#include "bipara/family.hpp"
#include "bipara/grid.hpp"
#include "bipara/haar.hpp"

namespace bipara {

// ||M(f)||_p: the maximal-function Hardy quasi-norm at this resolution.
double hardy_norm(const GridFunction& f, double p);

// ||S(g)||_p: the square-function Hardy quasi-norm of a coefficient field.
double dot_hardy_norm(const HaarField& g, double p);

// Candidate open sets for certified product-BMO lower bounds. Rectangles
// alone cannot certify the norm, so the list mixes several shapes:
//   (a) every Haar carrier as a mask,
//   (b) superlevel sets of S(g) at power-of-two thresholds,
//   (c) the sets of a supplied contracting family,
//   (d) growing unions of the top rectangles ranked by g_R^2 / |R|,
//   (e) for supports of at most 12 rectangles, every union of support
//       rectangles; the optimal set can always be taken of this form,
//       so at that sparsity the search is exhaustive rather than heuristic.
// Deduplicated, zero-measure sets dropped, deterministic order.
struct BmoCandidates {
  std::vector<OpenSetMask> sets;
};

BmoCandidates bmo_candidates(const HaarField& g,
                             const ContractingFamily* fam = nullptr);

// max over candidates of (|omega|^-1 sum_{R inside omega} g_R^2)^(1/2).
// Always a certified lower bound for the BMO norm; exact when the
// exhaustive family (e) was generated. Ties within 1e-12 keep the first
// candidate in list order.
double bmo_norm_lower(const HaarField& g, const BmoCandidates& cands);

// max over candidates of <S(g|omega)^p>_omega^(1/p); the John-Nirenberg
// functional. For p = 2 it coincides with bmo_norm_lower.
double john_nirenberg_ratio(const HaarField& g, double p,
                            const BmoCandidates& cands);

}  // namespace bipara
