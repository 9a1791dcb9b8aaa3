#pragma once

#include "bipara/grid.hpp"
#include "bipara/haar.hpp"

namespace bipara {

// pi_g(f): coefficient g_R <f>_R at every support rectangle of g. The
// output stays a coefficient field; synthesize only when a pointwise
// realization is needed.
HaarField paraproduct_apply(const HaarField& g, const GridFunction& f);

// Adjoint form: pi_g*(h) = sum_R h_R g_R chi_R / |R|, a grid function.
GridFunction paraproduct_adjoint(const HaarField& g, const HaarField& h);

// max over cells of S(pi_g f) - S(g) M(f). Nonpositive up to roundoff:
// every rectangle in the S(pi_g f) sum contains the cell, so its average
// factor is dominated by M(f) there.
double domination_violation(const HaarField& g, const GridFunction& f);

// ||S(g)||_r, the Hoelder upper bound for pi_g from the Hardy space of
// exponent p into the square-function space of exponent q.
double holder_upper_bound(const HaarField& g, const Exponents& e);

}  // namespace bipara
