#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdint>

#include "bipara/brossard.hpp"
#include "bipara/grid.hpp"
#include "bipara/haar.hpp"
#include "bipara/maximal.hpp"
#include "gen.hpp"
#include "oracles.hpp"

using namespace bipara;

namespace {

// both sides recomputed from scratch with the slow reference pieces
BrossardParts slow_parts(const GridFunction& f, double delta) {
  GridFunction m = oracle::dyadic_maximal(f);
  OpenSetMask omega = superlevel_set(m, delta);
  OpenSetMask enlarged = oracle::enlarge(omega);
  GridFunction s = oracle::square_function(oracle::analyze(f));
  const double unit = f.res().cell_measure();
  BrossardParts out;
  for (int i = 0; i < f.side(); ++i)
    for (int j = 0; j < f.side(); ++j) {
      if (!enlarged.test(i, j)) out.lhs += s.at(i, j) * s.at(i, j) * unit;
      if (!(m.at(i, j) > delta)) out.rhs += m.at(i, j) * m.at(i, j) * unit;
    }
  out.rhs += delta * delta * omega.measure();
  return out;
}

}  // namespace

TEST_CASE("parts match a from-scratch recomputation") {
  for (int n = 2; n <= 3; ++n)
    for (std::uint64_t inst = 0; inst < 5; ++inst) {
      GridFunction f = gen::dyadic_grid(Resolution(n), 601, inst);
      for (double delta : {0.25, 1.0}) {
        BrossardParts fast = brossard_parts(f, delta);
        BrossardParts slow = slow_parts(f, delta);
        CHECK(fast.lhs ==
              doctest::Approx(slow.lhs).epsilon(1e-12).scale(1.0));
        CHECK(fast.rhs ==
              doctest::Approx(slow.rhs).epsilon(1e-12).scale(1.0));
        CHECK(!fast.infinite);
      }
    }
}

TEST_CASE("threshold above the maximal range empties the level set") {
  GridFunction f = gen::dyadic_grid(Resolution(3), 607, 0);
  GridFunction m = dyadic_maximal(f);
  double top = 0.0;
  for (double v : m.values()) top = std::max(top, v);
  BrossardParts parts = brossard_parts(f, 2.0 * top + 1.0);
  // omega and its enlargement are empty: lhs is the full square-function
  // energy, rhs the full maximal energy
  GridFunction s = square_function(analyze(f));
  double senergy = 0.0, menergy = 0.0;
  for (double v : s.values()) senergy += v * v;
  for (double v : m.values()) menergy += v * v;
  senergy *= f.res().cell_measure();
  menergy *= f.res().cell_measure();
  CHECK(parts.lhs == doctest::Approx(senergy).epsilon(1e-12));
  CHECK(parts.rhs == doctest::Approx(menergy).epsilon(1e-12));
  CHECK(parts.ratio == parts.lhs / parts.rhs);
}

TEST_CASE("rejects degenerate inputs") {
  GridFunction z(Resolution(2));
  CHECK_THROWS_AS(brossard_parts(z, 0.5), std::invalid_argument);
  GridFunction f = gen::dyadic_grid(Resolution(2), 613, 0);
  CHECK_THROWS_AS(brossard_parts(f, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(brossard_parts(f, -1.0), std::invalid_argument);
}

TEST_CASE("ratio accessor agrees with the parts") {
  GridFunction f = gen::dyadic_grid(Resolution(3), 617, 1);
  CHECK(brossard_ratio(f, 0.5) == brossard_parts(f, 0.5).ratio);
}

TEST_CASE("one-variable inputs have zero square function") {
  // lhs must vanish identically: all Haar coefficients are exactly zero
  Resolution res(3);
  GridFunction f(res);
  for (int i = 0; i < res.side(); ++i)
    for (int j = 0; j < res.side(); ++j) f.at(i, j) = 0.25 * (i + 1);
  // threshold above max M, so the complement of the enlargement is the
  // whole square and lhs integrates S^2 over everything
  BrossardParts parts = brossard_parts(f, 4.0);
  CHECK(parts.lhs == 0.0);
  CHECK(parts.ratio == 0.0);
  CHECK(!parts.infinite);
}
