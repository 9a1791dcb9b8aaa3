#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "bipara/cli.hpp"
#include "bipara/construction.hpp"
#include "bipara/grid.hpp"
#include "bipara/haar.hpp"
#include "bipara/maximal.hpp"
#include "bipara/norms.hpp"
#include "bipara/paraproduct.hpp"
#include "bipara/verify.hpp"

namespace py = pybind11;

namespace {

using bipara::DyadicInterval;
using bipara::DyadicRect;
using bipara::GridFunction;
using bipara::HaarField;
using bipara::Resolution;

using Rows = std::vector<std::vector<double>>;
// (jx, kx, jy, ky, coefficient)
using PyEntry = std::tuple<int, int, int, int, double>;

int side_to_n(std::size_t side) {
  int n = 0;
  while ((std::size_t(1) << n) < side && n <= bipara::kMaxResolution) ++n;
  if ((std::size_t(1) << n) != side || n < 1 || n > bipara::kMaxResolution)
    throw std::invalid_argument("grid side must be 2^n with 1 <= n <= 12");
  return n;
}

GridFunction to_grid(const Rows& rows) {
  Resolution res(side_to_n(rows.size()));
  GridFunction f(res);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size())
      throw std::invalid_argument("grid must be square");
    for (std::size_t j = 0; j < rows[i].size(); ++j)
      f.at(static_cast<int>(i), static_cast<int>(j)) = rows[i][j];
  }
  return f;
}

Rows from_grid(const GridFunction& f) {
  Rows rows(static_cast<std::size_t>(f.side()),
            std::vector<double>(static_cast<std::size_t>(f.side())));
  for (int i = 0; i < f.side(); ++i)
    for (int j = 0; j < f.side(); ++j)
      rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          f.at(i, j);
  return rows;
}

HaarField to_field(int n, const std::vector<PyEntry>& entries) {
  Resolution res(n);
  HaarField g(res);
  for (const PyEntry& e : entries) {
    const auto& [jx, kx, jy, ky, c] = e;
    DyadicRect r{DyadicInterval{jx, kx}, DyadicInterval{jy, ky}};
    if (!bipara::is_haar_carrier(r, res))
      throw std::invalid_argument("entry is not a Haar carrier at this n");
    g.set(r, c);
  }
  return g;
}

std::vector<PyEntry> from_field(const HaarField& g) {
  std::vector<PyEntry> out;
  out.reserve(g.size());
  for (const auto& [idx, c] : g.entries()) {
    DyadicRect r = bipara::rect_from_index(idx, g.res());
    out.emplace_back(r.x.level, r.x.pos, r.y.level, r.y.pos, c);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "finite-resolution bi-parameter dyadic analysis";
  m.attr("version") = bipara::kToolVersion;
  m.attr("max_resolution") = bipara::kMaxResolution;

  m.def(
      "analyze",
      [](const Rows& grid) { return from_field(bipara::analyze(to_grid(grid))); },
      py::arg("grid"),
      "Haar coefficients (jx, kx, jy, ky, c) of a 2^n x 2^n grid");

  m.def(
      "synthesize",
      [](int n, const std::vector<PyEntry>& entries) {
        return from_grid(bipara::synthesize(to_field(n, entries)));
      },
      py::arg("n"), py::arg("entries"),
      "grid realization of a coefficient field");

  m.def(
      "square_function",
      [](int n, const std::vector<PyEntry>& entries) {
        return from_grid(bipara::square_function(to_field(n, entries)));
      },
      py::arg("n"), py::arg("entries"));

  m.def(
      "dyadic_maximal",
      [](const Rows& grid) {
        return from_grid(bipara::dyadic_maximal(to_grid(grid)));
      },
      py::arg("grid"), "strong maximal function over dyadic rectangles");

  m.def(
      "hardy_norm",
      [](const Rows& grid, double p) {
        return bipara::hardy_norm(to_grid(grid), p);
      },
      py::arg("grid"), py::arg("p"));

  m.def(
      "dot_hardy_norm",
      [](int n, const std::vector<PyEntry>& entries, double p) {
        return bipara::dot_hardy_norm(to_field(n, entries), p);
      },
      py::arg("n"), py::arg("entries"), py::arg("p"));

  m.def(
      "bmo_lower",
      [](int n, const std::vector<PyEntry>& entries) {
        HaarField g = to_field(n, entries);
        return bipara::bmo_norm_lower(g, bipara::bmo_candidates(g));
      },
      py::arg("n"), py::arg("entries"),
      "certified product-BMO lower bound");

  m.def(
      "paraproduct",
      [](int n, const std::vector<PyEntry>& entries, const Rows& grid) {
        return from_field(
            bipara::paraproduct_apply(to_field(n, entries), to_grid(grid)));
      },
      py::arg("n"), py::arg("entries"), py::arg("grid"),
      "coefficients of pi_g(f)");

  m.def(
      "paraproduct_adjoint",
      [](int n, const std::vector<PyEntry>& g_entries,
         const std::vector<PyEntry>& h_entries) {
        return from_grid(bipara::paraproduct_adjoint(to_field(n, g_entries),
                                                     to_field(n, h_entries)));
      },
      py::arg("n"), py::arg("g_entries"), py::arg("h_entries"));

  m.def(
      "holder_upper_bound",
      [](int n, const std::vector<PyEntry>& entries, double p, double q,
         double r) {
        bipara::Exponents e{p, q, r};
        bipara::validate_triple(e);
        return bipara::holder_upper_bound(to_field(n, entries), e);
      },
      py::arg("n"), py::arg("entries"), py::arg("p"), py::arg("q"),
      py::arg("r"));

  m.def(
      "lower_bound_estimate",
      [](int n, const std::vector<PyEntry>& entries, double p, double q,
         double r, int trials, std::uint64_t seed) {
        bipara::Exponents e{p, q, r};
        return bipara::lower_bound_estimate(to_field(n, entries), e, trials,
                                            seed);
      },
      py::arg("n"), py::arg("entries"), py::arg("p"), py::arg("q"),
      py::arg("r"), py::arg("trials") = 16, py::arg("seed") = 0,
      "random-witness lower estimate for the mapping norm of pi_g");

  m.def("run_cli", &bipara::run_cli, py::arg("args"),
        "run the command-line driver in process; returns its exit code");
}
