#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdint>

#include "bipara/grid.hpp"
#include "bipara/haar.hpp"
#include "bipara/norms.hpp"
#include "gen.hpp"
#include "oracles.hpp"

using namespace bipara;

TEST_CASE("hardy norm matches the oracle") {
  for (int n = 1; n <= 3; ++n)
    for (std::uint64_t inst = 0; inst < 4; ++inst) {
      GridFunction f = gen::dyadic_grid(Resolution(n), 301, inst);
      for (double p : {0.5, 1.0, 2.0}) {
        double a = hardy_norm(f, p);
        double b = oracle::hardy_norm(f, p);
        CHECK(a == doctest::Approx(b).epsilon(1e-12));
      }
    }
}

TEST_CASE("square-function norm matches the oracle") {
  for (std::uint64_t inst = 0; inst < 4; ++inst) {
    HaarField g = gen::sparse_field(Resolution(3), 307, inst, 10);
    for (double p : {0.5, 1.0, 2.0, 4.0}) {
      double a = dot_hardy_norm(g, p);
      double b = oracle::dot_hardy_norm(g, p);
      CHECK(a == doctest::Approx(b).epsilon(1e-12));
    }
  }
}

TEST_CASE("maximal and square-function norms stay equivalent across n") {
  // On the wavelet span the two quasinorms bound each other; the band
  // measured at n=4 must not widen by more than 2x through n=7.
  for (double p : {1.0, 2.0}) {
    double band[2] = {0.0, 0.0};
    for (int which = 0; which < 2; ++which) {
      const int n = which == 0 ? 4 : 7;
      Resolution res(n);
      for (std::uint64_t inst = 0; inst < 8; ++inst) {
        GridFunction f = project_biparam(gen::dyadic_grid(res, 311, inst));
        HaarField g = analyze(f);
        if (g.empty()) continue;
        double ratio = hardy_norm(f, p) / dot_hardy_norm(g, p);
        CHECK(std::isfinite(ratio));
        CHECK(ratio > 0.0);
        band[which] = std::max(band[which], std::max(ratio, 1.0 / ratio));
      }
    }
    CHECK(band[1] < 2.0 * band[0]);
  }
}

TEST_CASE("bmo lower bound of a single wavelet") {
  Resolution res(3);
  HaarField g(res);
  g.set(DyadicRect{{2, 1}, {1, 0}}, 0.75);
  // optimum at the carrier itself: sqrt(c^2 / |R|), |R| = 2^-3
  double expected = std::sqrt(0.75 * 0.75 * 8.0);
  CHECK(bmo_norm_lower(g, bmo_candidates(g)) ==
        doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("bmo search is exhaustive at small support") {
  // against brute force over all 2^16 - 1 cell unions at n=2
  for (std::uint64_t inst = 0; inst < 6; ++inst) {
    HaarField g = gen::sparse_field(Resolution(2), 311, inst, 6);
    if (g.empty()) continue;
    double fast = bmo_norm_lower(g, bmo_candidates(g));
    double slow = oracle::bmo_exhaustive(g);
    CHECK(fast == doctest::Approx(slow).epsilon(1e-12));
  }
}

TEST_CASE("bmo lower bound never exceeds the exhaustive optimum") {
  // the candidate list is a subset of all open sets, whatever its size
  HaarField g = gen::sparse_field(Resolution(2), 313, 3, 20);
  if (!g.empty())
    CHECK(bmo_norm_lower(g, bmo_candidates(g)) <=
          oracle::bmo_exhaustive(g) * (1 + 1e-12));
}

TEST_CASE("second-moment localization coincides with the bmo functional") {
  for (std::uint64_t inst = 0; inst < 5; ++inst) {
    HaarField g = gen::sparse_field(Resolution(4), 317, inst, 14);
    if (g.empty()) continue;
    BmoCandidates cands = bmo_candidates(g);
    CHECK(john_nirenberg_ratio(g, 2.0, cands) ==
          doctest::Approx(bmo_norm_lower(g, cands)).epsilon(1e-12));
  }
}

TEST_CASE("moment localizations are monotone in p") {
  HaarField g = gen::sparse_field(Resolution(4), 331, 0, 16);
  BmoCandidates cands = bmo_candidates(g);
  double m1 = john_nirenberg_ratio(g, 1.0, cands);
  double m2 = john_nirenberg_ratio(g, 2.0, cands);
  double m4 = john_nirenberg_ratio(g, 4.0, cands);
  CHECK(m1 <= m2 * (1 + 1e-12));
  CHECK(m2 <= m4 * (1 + 1e-12));
}

TEST_CASE("candidate list includes supplied family sets") {
  Resolution res(3);
  HaarField g = gen::sparse_field(res, 337, 0, 8);
  ContractingFamily fam = gen::family(res, 337, 1, 3);
  BmoCandidates with = bmo_candidates(g, &fam);
  BmoCandidates without = bmo_candidates(g);
  CHECK(with.sets.size() >= without.sets.size());
  for (const FamilyItem& it : fam.items) {
    if (it.omega.empty()) continue;
    bool found = false;
    for (const OpenSetMask& s : with.sets)
      if (s == it.omega) {
        found = true;
        break;
      }
    CHECK(found);
  }
}

TEST_CASE("norms reject nonpositive exponents") {
  GridFunction f(Resolution(1));
  CHECK_THROWS_AS(hardy_norm(f, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(dot_hardy_norm(HaarField(Resolution(1)), -1.0),
                  std::invalid_argument);
}
