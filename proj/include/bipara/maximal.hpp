#pragma once

#include "bipara/family.hpp"
#include "bipara/grid.hpp"

namespace bipara {

// M(f)(x) = sup over dyadic rectangles R containing x of |<f>_R|, with
// levels 0..n per axis (the cell itself included). Computed from the
// average pyramid over all (n+1)^2 scale pairs.
GridFunction dyadic_maximal(const GridFunction& f);

// M_s(f) = M(|f|^s)^(1/s), s > 0. For s < 1 this is the grid stand-in for
// the strong maximal function used in Fefferman-Stein style bounds.
GridFunction m_s(const GridFunction& f, double s);

// {M(chi_omega) > 1/2}. Contains omega; a dyadic rectangle not contained
// in the result meets omega in at most half of its measure, which is the
// only property downstream arguments use.
OpenSetMask enlarge(const OpenSetMask& omega);

// m(g)(x) = sup over family sets containing x of the average of |g| over
// that set; 0 where no set contains x. Zero-measure sets are skipped.
GridFunction family_maximal(const GridFunction& g, const ContractingFamily& fam);

}  // namespace bipara
