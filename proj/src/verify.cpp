#include "bipara/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bipara/brossard.hpp"
#include "bipara/construction.hpp"
#include "bipara/haar.hpp"
#include "bipara/io.hpp"
#include "bipara/maximal.hpp"
#include "bipara/norms.hpp"
#include "bipara/parallel.hpp"
#include "bipara/paraproduct.hpp"
#include "bipara/rng.hpp"

namespace bipara {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr double kSandwichSlack = 1e-8;
constexpr double kRoundoffSlack = 1e-12;

std::string fmt(double v) { return format_double(v); }

ordered_json ratio_stats(std::vector<double> v) {
  ordered_json j;
  j["count"] = static_cast<std::int64_t>(v.size());
  if (v.empty()) return j;
  std::sort(v.begin(), v.end());
  j["min"] = v.front();
  j["median"] = (v.size() % 2) ? v[v.size() / 2]
                               : 0.5 * (v[v.size() / 2 - 1] + v[v.size() / 2]);
  j["max"] = v.back();
  return j;
}

ordered_json report_header(const char* experiment, std::uint64_t seed) {
  ordered_json doc;
  doc["report"] = "bipara-verify";
  doc["version"] = 1;
  doc["tool"] = kToolVersion;
  doc["experiment"] = experiment;
  doc["seed"] = seed;
  return doc;
}

ordered_json corpus_json(const CorpusSpec& spec) {
  ordered_json j;
  j["kind"] = to_string(spec.kind);
  j["n"] = spec.n;
  j["sparsity"] = spec.sparsity;
  j["seed"] = spec.seed;
  j["count"] = spec.count;
  return j;
}

OpenSetMask rect_shadow(const DyadicRect& r, Resolution res) {
  OpenSetMask m(res);
  CellRange cr = cell_range(r, res);
  for (int a = cr.r0; a < cr.r1; ++a)
    for (int b = cr.c0; b < cr.c1; ++b) m.set(a, b, true);
  return m;
}

OpenSetMask support_union(const HaarField& g) {
  OpenSetMask m(g.res());
  for (const auto& [idx, c] : g.entries()) {
    CellRange cr = cell_range(rect_from_index(idx, g.res()), g.res());
    for (int a = cr.r0; a < cr.r1; ++a)
      for (int b = cr.c0; b < cr.c1; ++b) m.set(a, b, true);
  }
  return m;
}

double field_energy(const HaarField& g) {
  double acc = 0.0;
  for (const auto& [idx, c] : g.entries()) acc += c * c;
  return acc;
}

double grid_max(const GridFunction& f) {
  double m = 0.0;
  for (double v : f.values())
    if (v > m) m = v;
  return m;
}

bool grid_is_zero(const GridFunction& f) {
  for (double v : f.values())
    if (v != 0.0) return false;
  return true;
}

}  // namespace

VerificationReport verify_theorem_I(const CorpusSpec& spec, const Exponents& e,
                                    int trials) {
  validate_triple(e);
  if (trials < 1) throw std::invalid_argument("need at least one trial");
  std::vector<HaarField> corpus = generate_corpus(spec);
  ordered_json doc = report_header("theorem-I", spec.seed);
  {
    ordered_json params;
    params["corpus"] = corpus_json(spec);
    params["p"] = e.p;
    params["q"] = e.q;
    params["r"] = e.r;
    params["trials"] = trials;
    params["eta"] = kDefaultEta;
    doc["params"] = std::move(params);
  }

  const std::int64_t m = static_cast<std::int64_t>(corpus.size());
  std::vector<ordered_json> slots(static_cast<std::size_t>(m));
  parallel_for(m, [&](std::int64_t i) {
    ordered_json rec;
    rec["id"] = i;
    const HaarField& g = corpus[static_cast<std::size_t>(i)];
    if (g.empty()) {
      rec["skipped"] = "zero symbol";
      slots[static_cast<std::size_t>(i)] = std::move(rec);
      return;
    }
    try {
      const double upper = holder_upper_bound(g, e);
      const std::uint64_t iseed =
          rng::draw(spec.seed, "inst", static_cast<std::uint64_t>(i));
      OpenSetMask full = OpenSetMask::full(g.res());
      LowerBoundDetails det = lower_bound_details(g, full, e.p, e.q, e.t(),
                                                  kDefaultEta, trials, iseed);
      rec["upper"] = upper;
      rec["lower"] = det.best_ratio;
      rec["lower_over_upper"] = upper > 0.0 ? det.best_ratio / upper : 0.0;
      rec["best_trial"] = det.best_trial;
      rec["khintchine"] = det.khintchine_diag;
      rec["family_size"] = det.family_size;
      rec["eta_used"] = det.eta_used;
      rec["sandwich_ok"] = det.best_ratio > 0.0 &&
                           det.best_ratio <= upper * (1.0 + kSandwichSlack);
    } catch (const std::exception& ex) {
      rec["error"] = ex.what();
    }
    slots[static_cast<std::size_t>(i)] = std::move(rec);
  });

  ordered_json instances = ordered_json::array();
  std::vector<double> ratios;
  int skipped = 0, errors = 0, violations = 0;
  for (auto& rec : slots) {
    if (rec.contains("skipped")) {
      ++skipped;
    } else if (rec.contains("error")) {
      ++errors;
    } else {
      if (!rec["sandwich_ok"].get<bool>()) ++violations;
      ratios.push_back(rec["lower_over_upper"].get<double>());
    }
    instances.push_back(std::move(rec));
  }
  doc["instances"] = std::move(instances);
  ordered_json agg;
  agg["evaluated"] = static_cast<std::int64_t>(ratios.size());
  agg["skipped"] = skipped;
  agg["errors"] = errors;
  agg["sandwich_violations"] = violations;
  agg["lower_over_upper"] = ratio_stats(std::move(ratios));
  doc["aggregates"] = std::move(agg);
  const bool passed = errors == 0 && violations == 0;
  doc["passed"] = passed;
  return {std::move(doc), passed};
}

namespace {

struct StartCandidate {
  std::string label;
  OpenSetMask omega;
};

void push_unique(std::vector<StartCandidate>& out, std::string label,
                 OpenSetMask m) {
  if (m.empty()) return;
  for (const auto& c : out)
    if (c.omega == m) return;
  out.push_back(StartCandidate{std::move(label), std::move(m)});
}

// Small list of starting sets for the endpoint scan: the whole square, the
// union of support rectangles, the single heaviest rectangle, and a few
// superlevel sets of the square function.
std::vector<StartCandidate> start_candidates(const HaarField& g) {
  const Resolution res = g.res();
  std::vector<StartCandidate> out;
  push_unique(out, "full", OpenSetMask::full(res));
  push_unique(out, "support", support_union(g));
  if (!g.empty()) {
    std::int64_t best_idx = g.entries().front().first;
    double best_mass = -1.0;
    for (const auto& [idx, c] : g.entries()) {
      DyadicRect r = rect_from_index(idx, res);
      double mass = c * c * std::ldexp(1.0, r.x.level + r.y.level);
      if (mass > best_mass) {
        best_mass = mass;
        best_idx = idx;
      }
    }
    push_unique(out, "top-rect", rect_shadow(rect_from_index(best_idx, res), res));
  }
  GridFunction s = square_function(g);
  const double smax = grid_max(s);
  if (smax > 0.0) {
    const int k0 = std::ilogb(smax);
    for (int k = k0; k >= k0 - 3; --k)
      push_unique(out, "superlevel-2^" + std::to_string(k),
                  superlevel_set(s, std::ldexp(1.0, k)));
  }
  return out;
}

}  // namespace

VerificationReport verify_theorem_II(const CorpusSpec& spec, double p,
                                     int trials) {
  if (!(p > 0.0)) throw std::invalid_argument("exponent must be positive");
  if (trials < 1) throw std::invalid_argument("need at least one trial");
  std::vector<HaarField> corpus = generate_corpus(spec);
  ordered_json doc = report_header("theorem-II", spec.seed);
  {
    ordered_json params;
    params["corpus"] = corpus_json(spec);
    params["p"] = p;
    params["trials"] = trials;
    params["eta"] = kDefaultEta;
    doc["params"] = std::move(params);
  }

  const std::int64_t m = static_cast<std::int64_t>(corpus.size());
  std::vector<ordered_json> slots(static_cast<std::size_t>(m));
  parallel_for(m, [&](std::int64_t i) {
    ordered_json rec;
    rec["id"] = i;
    const HaarField& g = corpus[static_cast<std::size_t>(i)];
    if (g.empty()) {
      rec["zero"] = true;
      rec["bmo_lower"] = 0.0;
      rec["lower_estimate"] = 0.0;
      rec["l_over_b"] = 0.0;
      slots[static_cast<std::size_t>(i)] = std::move(rec);
      return;
    }
    try {
      const std::uint64_t iseed =
          rng::draw(spec.seed, "inst", static_cast<std::uint64_t>(i));
      const double b_low = bmo_norm_lower(g, bmo_candidates(g));
      rec["bmo_lower"] = b_low;

      GridFunction sg = square_function(g);
      std::vector<StartCandidate> cands = start_candidates(g);
      ordered_json crecs = ordered_json::array();
      double witness_lower = 0.0;
      double indicator_lower = 0.0;
      int candidate_errors = 0;
      bool dom_ok_all = true;
      for (std::size_t ci = 0; ci < cands.size(); ++ci) {
        const StartCandidate& cand = cands[ci];
        ordered_json crec;
        crec["label"] = cand.label;
        crec["cells"] = cand.omega.true_cells();
        HaarField g_loc = restrict_to(g, cand.omega);
        if (g_loc.empty()) {
          crec["empty_restriction"] = true;
          crecs.push_back(std::move(crec));
          continue;
        }
        crec["bmo_local"] =
            std::sqrt(field_energy(g_loc) / cand.omega.measure());
        try {
          LowerBoundDetails det = lower_bound_details_split(
              g, g_loc, cand.omega, p, p, 0.0, kDefaultEta, trials,
              rng::draw(iseed, "cand", ci));
          crec["witness_ratio"] = det.best_ratio;
          crec["family_size"] = det.family_size;
          crec["eta_used"] = det.eta_used;
          witness_lower = std::max(witness_lower, det.best_ratio);
        } catch (const std::exception& ex) {
          crec["error"] = ex.what();
          ++candidate_errors;
        }
        // indicator probe, with the pointwise-domination cap on the same
        // input: ||S(pi_g chi)||_p can never exceed ||S(g) M(chi)||_p
        GridFunction f = GridFunction::indicator(cand.omega);
        double num =
            lp_quasinorm(square_function(paraproduct_apply(g, f)), p);
        double den = hardy_norm(f, p);
        GridFunction capg = dyadic_maximal(f);
        for (std::size_t c = 0; c < capg.values().size(); ++c)
          capg.values()[c] *= sg.values()[c];
        double cap_num = lp_quasinorm(capg, p);
        double ind = den > 0.0 ? num / den : 0.0;
        crec["indicator_ratio"] = ind;
        crec["dom_cap"] = den > 0.0 ? cap_num / den : 0.0;
        bool dom_ok = num <= cap_num * (1.0 + 1e-9);
        crec["dom_ok"] = dom_ok;
        dom_ok_all = dom_ok_all && dom_ok;
        indicator_lower = std::max(indicator_lower, ind);
        crecs.push_back(std::move(crec));
      }
      rec["candidates"] = std::move(crecs);

      // stand-alone record of the support-union probe; for a single
      // coefficient this is the probe at the rectangle itself
      {
        OpenSetMask sup = support_union(g);
        GridFunction f = GridFunction::indicator(sup);
        double num =
            lp_quasinorm(square_function(paraproduct_apply(g, f)), p);
        double den = hardy_norm(f, p);
        ordered_json sp;
        sp["cells"] = sup.true_cells();
        sp["num"] = num;
        sp["den"] = den;
        sp["ratio"] = den > 0.0 ? num / den : 0.0;
        indicator_lower =
            std::max(indicator_lower, sp["ratio"].get<double>());
        rec["support_probe"] = std::move(sp);
      }

      const double lower = std::max(witness_lower, indicator_lower);
      rec["witness_lower"] = witness_lower;
      rec["indicator_lower"] = indicator_lower;
      rec["lower_estimate"] = lower;
      rec["l_over_b"] = b_low > 0.0 ? lower / b_low : 0.0;
      rec["candidate_errors"] = candidate_errors;
      rec["checks_ok"] =
          dom_ok_all && witness_lower <= lower * (1.0 + kRoundoffSlack);
    } catch (const std::exception& ex) {
      rec["error"] = ex.what();
    }
    slots[static_cast<std::size_t>(i)] = std::move(rec);
  });

  ordered_json instances = ordered_json::array();
  std::vector<double> ratios;
  int zeros = 0, errors = 0, violations = 0, candidate_errors = 0;
  for (auto& rec : slots) {
    if (rec.contains("zero")) {
      ++zeros;
    } else if (rec.contains("error")) {
      ++errors;
    } else {
      if (!rec["checks_ok"].get<bool>()) ++violations;
      candidate_errors += rec["candidate_errors"].get<int>();
      ratios.push_back(rec["l_over_b"].get<double>());
    }
    instances.push_back(std::move(rec));
  }
  doc["instances"] = std::move(instances);
  ordered_json agg;
  agg["evaluated"] = static_cast<std::int64_t>(ratios.size());
  agg["zero_symbols"] = zeros;
  agg["errors"] = errors;
  agg["check_violations"] = violations;
  agg["candidate_errors"] = candidate_errors;
  agg["l_over_b"] = ratio_stats(std::move(ratios));
  doc["aggregates"] = std::move(agg);
  const bool passed = errors == 0 && violations == 0;
  doc["passed"] = passed;
  return {std::move(doc), passed};
}

VerificationReport verify_adjoint_corollary(const CorpusSpec& spec) {
  std::vector<HaarField> corpus = generate_corpus(spec);
  ordered_json doc = report_header("adjoint", spec.seed);
  {
    ordered_json params;
    params["corpus"] = corpus_json(spec);
    params["max_probes"] = 16;
    doc["params"] = std::move(params);
  }

  const std::int64_t m = static_cast<std::int64_t>(corpus.size());
  std::vector<ordered_json> slots(static_cast<std::size_t>(m));
  parallel_for(m, [&](std::int64_t i) {
    ordered_json rec;
    rec["id"] = i;
    const HaarField& g = corpus[static_cast<std::size_t>(i)];
    if (g.empty()) {
      rec["bmo_g"] = 0.0;
      rec["max_response"] = 0.0;
      rec["ratio"] = 0.0;
      slots[static_cast<std::size_t>(i)] = std::move(rec);
      return;
    }
    try {
      const Resolution res = g.res();
      const double b_g = bmo_norm_lower(g, bmo_candidates(g));

      // probe atoms at the heaviest support rectangles (g_R^2/|R| ranking,
      // ties by index), reported in index order
      std::vector<std::pair<double, std::int64_t>> ranked;
      ranked.reserve(g.size());
      for (const auto& [idx, c] : g.entries()) {
        DyadicRect r = rect_from_index(idx, res);
        ranked.emplace_back(c * c * std::ldexp(1.0, r.x.level + r.y.level),
                            idx);
      }
      std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
      });
      if (ranked.size() > 16) ranked.resize(16);
      std::sort(ranked.begin(), ranked.end(),
                [](const auto& a, const auto& b) { return a.second < b.second; });

      ordered_json probes = ordered_json::array();
      double best = 0.0;
      for (const auto& [mass, idx] : ranked) {
        DyadicRect r = rect_from_index(idx, res);
        HaarField h(res);
        h.set(r, std::sqrt(measure(r)));  // BMO-normalized single atom
        HaarField resp = analyze(paraproduct_adjoint(g, h));
        double val =
            resp.empty() ? 0.0 : bmo_norm_lower(resp, bmo_candidates(resp));
        ordered_json pr;
        pr["jx"] = r.x.level;
        pr["kx"] = r.x.pos;
        pr["jy"] = r.y.level;
        pr["ky"] = r.y.pos;
        pr["response"] = val;
        probes.push_back(std::move(pr));
        best = std::max(best, val);
      }
      rec["bmo_g"] = b_g;
      rec["probes"] = std::move(probes);
      rec["max_response"] = best;
      rec["ratio"] = b_g > 0.0 ? best / b_g : 0.0;
    } catch (const std::exception& ex) {
      rec["error"] = ex.what();
    }
    slots[static_cast<std::size_t>(i)] = std::move(rec);
  });

  ordered_json instances = ordered_json::array();
  std::vector<double> ratios;
  int errors = 0;
  for (auto& rec : slots) {
    if (rec.contains("error"))
      ++errors;
    else if (rec["bmo_g"].get<double>() > 0.0)
      ratios.push_back(rec["ratio"].get<double>());
    instances.push_back(std::move(rec));
  }
  doc["instances"] = std::move(instances);
  ordered_json agg;
  agg["evaluated"] = static_cast<std::int64_t>(ratios.size());
  agg["errors"] = errors;
  agg["response_over_bmo"] = ratio_stats(std::move(ratios));
  doc["aggregates"] = std::move(agg);
  const bool passed = errors == 0;
  doc["passed"] = passed;
  return {std::move(doc), passed};
}

VerificationReport verify_brossard(const CorpusSpec& spec) {
  std::vector<GridFunction> fs = generate_grid_corpus(spec);
  ordered_json doc = report_header("brossard", spec.seed);
  {
    ordered_json params;
    params["corpus"] = corpus_json(spec);
    params["delta_exponents"] = {-10, 4};
    doc["params"] = std::move(params);
  }

  const std::int64_t m = static_cast<std::int64_t>(fs.size());
  std::vector<ordered_json> slots(static_cast<std::size_t>(m));
  parallel_for(m, [&](std::int64_t i) {
    ordered_json rec;
    rec["id"] = i;
    const GridFunction& f = fs[static_cast<std::size_t>(i)];
    if (grid_is_zero(f)) {
      rec["skipped"] = "zero function";
      slots[static_cast<std::size_t>(i)] = std::move(rec);
      return;
    }
    try {
      const double mmax = grid_max(dyadic_maximal(f));
      ordered_json rows = ordered_json::array();
      double cmax = 0.0;
      bool any_infinite = false;
      for (int k = -10; k <= 4; ++k) {
        const double delta = std::ldexp(1.0, k);
        if (delta > mmax) break;
        BrossardParts parts = brossard_parts(f, delta);
        ordered_json row;
        row["delta"] = delta;
        row["lhs"] = parts.lhs;
        row["rhs"] = parts.rhs;
        row["ratio"] = parts.ratio;
        row["infinite"] = parts.infinite;
        rows.push_back(std::move(row));
        if (parts.infinite)
          any_infinite = true;
        else
          cmax = std::max(cmax, parts.ratio);
      }
      rec["rows"] = std::move(rows);
      rec["max_ratio"] = cmax;
      rec["infinite"] = any_infinite;
    } catch (const std::exception& ex) {
      rec["error"] = ex.what();
    }
    slots[static_cast<std::size_t>(i)] = std::move(rec);
  });

  ordered_json instances = ordered_json::array();
  double c_emp = 0.0;
  int errors = 0, skipped = 0, infinite_count = 0;
  for (auto& rec : slots) {
    if (rec.contains("skipped")) {
      ++skipped;
    } else if (rec.contains("error")) {
      ++errors;
    } else {
      c_emp = std::max(c_emp, rec["max_ratio"].get<double>());
      if (rec["infinite"].get<bool>()) ++infinite_count;
    }
    instances.push_back(std::move(rec));
  }
  doc["instances"] = std::move(instances);
  ordered_json agg;
  agg["skipped"] = skipped;
  agg["errors"] = errors;
  agg["infinite_count"] = infinite_count;
  agg["c_emp"] = c_emp;
  doc["aggregates"] = std::move(agg);
  const bool passed = errors == 0 && infinite_count == 0;
  doc["passed"] = passed;
  return {std::move(doc), passed};
}

namespace {

// Nested cell-union family with the strict halving property, deterministic
// in (seed, instance). Each stage keeps at most half of the previous cells.
std::vector<OpenSetMask> random_contracting_masks(Resolution res,
                                                  std::uint64_t seed,
                                                  std::uint64_t inst,
                                                  int max_items) {
  const int side = res.side();
  std::vector<OpenSetMask> fam;
  OpenSetMask cur(res);
  for (int i = 0; i < side; ++i)
    for (int j = 0; j < side; ++j)
      if (rng::uniform01(seed, "fam0", inst,
                         static_cast<std::uint64_t>(i) * side + j) < 0.75)
        cur.set(i, j, true);
  if (cur.empty()) cur = OpenSetMask::full(res);
  fam.push_back(cur);
  while (static_cast<int>(fam.size()) < max_items) {
    const OpenSetMask& prev = fam.back();
    const std::int64_t budget = prev.true_cells() / 2;
    if (budget == 0) break;
    OpenSetMask next(res);
    std::int64_t taken = 0;
    const std::uint64_t stage = fam.size();
    for (int i = 0; i < side && taken < budget; ++i)
      for (int j = 0; j < side && taken < budget; ++j)
        if (prev.test(i, j) &&
            rng::uniform01(seed, "shrink", inst,
                           stage * static_cast<std::uint64_t>(side) * side +
                               static_cast<std::uint64_t>(i) * side + j) < 0.45) {
          next.set(i, j, true);
          ++taken;
        }
    if (next.empty()) break;
    fam.push_back(std::move(next));
  }
  return fam;
}

// Random subset of omega holding at least ceil(eta * cells) cells, chosen
// by a deterministic partial shuffle of the cell list.
OpenSetMask random_chunk(const OpenSetMask& omega, double eta,
                         std::uint64_t seed, std::uint64_t inst, int item) {
  const int side = omega.side();
  std::vector<std::pair<int, int>> cells;
  for (int i = 0; i < side; ++i)
    for (int j = 0; j < side; ++j)
      if (omega.test(i, j)) cells.emplace_back(i, j);
  const std::int64_t total = static_cast<std::int64_t>(cells.size());
  std::int64_t need = static_cast<std::int64_t>(
      std::ceil(eta * static_cast<double>(total)));
  if (need < 1) need = 1;
  const std::int64_t count =
      need + static_cast<std::int64_t>(rng::below(
                 seed, "ecount", static_cast<std::uint64_t>(total - need + 1),
                 inst, static_cast<std::uint64_t>(item)));
  for (std::int64_t k = 0; k < count; ++k) {
    std::uint64_t pick = rng::below(
        seed, "epick", static_cast<std::uint64_t>(total - k), inst,
        static_cast<std::uint64_t>(item) * 65536 + static_cast<std::uint64_t>(k));
    std::swap(cells[static_cast<std::size_t>(k)],
              cells[static_cast<std::size_t>(k) + pick]);
  }
  OpenSetMask out(omega.res());
  for (std::int64_t k = 0; k < count; ++k)
    out.set(cells[static_cast<std::size_t>(k)].first,
            cells[static_cast<std::size_t>(k)].second, true);
  return out;
}

// Trimmed candidate list for the moment-ratio probe: whole square,
// superlevel sets of S(g), and growing unions of the heaviest rectangles.
// Both functionals below are evaluated on the same list, so their ratio is
// comparable even though the list is not exhaustive.
BmoCandidates probe_candidates(const HaarField& g) {
  const Resolution res = g.res();
  BmoCandidates out;
  auto push = [&out](OpenSetMask m) {
    if (m.empty()) return;
    for (const auto& prev : out.sets)
      if (prev == m) return;
    out.sets.push_back(std::move(m));
  };
  push(OpenSetMask::full(res));
  GridFunction s = square_function(g);
  const double smax = grid_max(s);
  if (smax > 0.0) {
    const int k0 = std::ilogb(smax);
    for (int k = k0; k >= k0 - 6; --k)
      push(superlevel_set(s, std::ldexp(1.0, k)));
  }
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
  OpenSetMask acc(res);
  for (std::size_t k = 0; k < ranked.size() && k < 16; ++k) {
    CellRange cr = cell_range(rect_from_index(ranked[k].second, res), res);
    for (int a = cr.r0; a < cr.r1; ++a)
      for (int b = cr.c0; b < cr.c1; ++b) acc.set(a, b, true);
    push(acc);
  }
  return out;
}

}  // namespace

VerificationReport verify_lemmas(int n, int instances, std::uint64_t seed) {
  if (instances < 1) throw std::invalid_argument("need at least one instance");
  const Resolution res(n);
  ordered_json doc = report_header("lemmas", seed);
  {
    ordered_json params;
    params["n"] = n;
    params["instances"] = instances;
    doc["params"] = std::move(params);
  }
  bool passed = true;

  // Two-sided sparse-sum comparison: with nested halving sets and
  // nonnegative weights, || sum a_i chi_i ||_p is at least
  // (1/2 sum a_i^p |Omega_i|)^{1/p}; for p <= 1 the p-th power is at most
  // the plain sum; for p > 1 the normalized ratio stays small.
  {
    ordered_json rows = ordered_json::array();
    int violations = 0;
    double max_ratio_p2 = 0.0, max_ratio_p3 = 0.0;
    const double ps[4] = {0.5, 1.0, 2.0, 3.0};
    for (int i = 0; i < instances; ++i) {
      std::vector<OpenSetMask> fam = random_contracting_masks(
          res, seed, static_cast<std::uint64_t>(i), 8);
      std::vector<double> amp(fam.size());
      GridFunction r(res);
      for (std::size_t k = 0; k < fam.size(); ++k) {
        amp[k] = 2.0 * rng::uniform01(seed, "amp",
                                      static_cast<std::uint64_t>(i), k);
        const int side = res.side();
        for (int a = 0; a < side; ++a)
          for (int b = 0; b < side; ++b)
            if (fam[k].test(a, b)) r.at(a, b) += amp[k];
      }
      for (double p : ps) {
        double sum_p = 0.0;
        for (std::size_t k = 0; k < fam.size(); ++k)
          sum_p += std::pow(amp[k], p) * fam[k].measure();
        const double lhs = lp_quasinorm(r, p);
        const double lower = std::pow(0.5 * sum_p, 1.0 / p);
        bool ok = lhs >= lower * (1.0 - kRoundoffSlack);
        ordered_json row;
        row["i"] = i;
        row["p"] = p;
        row["lhs"] = lhs;
        row["lower"] = lower;
        row["sum"] = sum_p;
        if (p <= 1.0) {
          ok = ok && std::pow(lhs, p) <= sum_p * (1.0 + kRoundoffSlack);
        } else {
          const double ratio = lhs / std::pow(sum_p, 1.0 / p);
          row["ratio"] = ratio;
          if (p == 2.0) max_ratio_p2 = std::max(max_ratio_p2, ratio);
          if (p == 3.0) max_ratio_p3 = std::max(max_ratio_p3, ratio);
        }
        row["ok"] = ok;
        if (!ok) ++violations;
        rows.push_back(std::move(row));
      }
    }
    ordered_json sub;
    sub["rows"] = std::move(rows);
    sub["violations"] = violations;
    sub["max_ratio_p2"] = max_ratio_p2;
    sub["max_ratio_p3"] = max_ratio_p3;
    sub["ratio_bound"] = 8.0;
    const bool ok =
        violations == 0 && max_ratio_p2 <= 8.0 && max_ratio_p3 <= 8.0;
    sub["ok"] = ok;
    passed = passed && ok;
    doc["sparse_sum"] = std::move(sub);
  }

  // Overlap bound: chunks E_i covering at least an eta fraction of nested
  // sets satisfy sum_{i in A} |E_i| <= (4/3) k |union E_i| for every A,
  // with k the least integer making 2^{-k}/eta <= 1/4. Checked in exact
  // cell counts (3 sum <= 4 k union).
  {
    ordered_json rows = ordered_json::array();
    int violations = 0;
    const double etas[2] = {0x1p-4, 0x1p-6};
    const int overlap_instances = std::min(instances, 50);
    for (int ei = 0; ei < 2; ++ei) {
      const double eta = etas[ei];
      int k = 1;
      while (std::ldexp(1.0, -k) / eta > 0.25) ++k;
      for (int i = 0; i < overlap_instances; ++i) {
        const std::uint64_t inst =
            static_cast<std::uint64_t>(ei) * 65536 +
            static_cast<std::uint64_t>(i) + 1000000;
        std::vector<OpenSetMask> fam =
            random_contracting_masks(res, seed, inst, 12);
        const int len = static_cast<int>(fam.size());
        std::vector<OpenSetMask> chunks;
        std::vector<std::int64_t> counts;
        chunks.reserve(fam.size());
        for (int item = 0; item < len; ++item) {
          chunks.push_back(random_chunk(fam[static_cast<std::size_t>(item)],
                                        eta, seed, inst, item));
          counts.push_back(chunks.back().true_cells());
        }
        const std::size_t words = chunks.front().words().size();
        const std::uint32_t subsets = 1u << len;
        std::vector<std::vector<std::uint64_t>> unions(subsets);
        std::vector<std::int64_t> sums(subsets, 0);
        unions[0].assign(words, 0);
        double worst = 0.0;
        bool ok = true;
        for (std::uint32_t a = 1; a < subsets; ++a) {
          const int low = __builtin_ctz(a);
          const std::uint32_t rest = a & (a - 1);
          unions[a] = unions[rest];
          const auto& cw = chunks[static_cast<std::size_t>(low)].words();
          for (std::size_t w = 0; w < words; ++w) unions[a][w] |= cw[w];
          sums[a] = sums[rest] + counts[static_cast<std::size_t>(low)];
          std::int64_t ucells = 0;
          for (std::size_t w = 0; w < words; ++w)
            ucells += __builtin_popcountll(unions[a][w]);
          if (3 * sums[a] > 4 * static_cast<std::int64_t>(k) * ucells)
            ok = false;
          worst = std::max(worst, static_cast<double>(sums[a]) /
                                      (static_cast<double>(k) *
                                       static_cast<double>(ucells)));
        }
        ordered_json row;
        row["i"] = i;
        row["eta"] = eta;
        row["k"] = k;
        row["len"] = len;
        row["max_ratio"] = worst;
        row["ok"] = ok;
        if (!ok) ++violations;
        rows.push_back(std::move(row));
      }
    }
    ordered_json sub;
    sub["rows"] = std::move(rows);
    sub["violations"] = violations;
    sub["ok"] = violations == 0;
    passed = passed && violations == 0;
    doc["overlap"] = std::move(sub);
  }

  // Exact weak-(1,1) bound for the family maximal operator:
  // |{m(g) > lambda}| lambda <= ||g||_1, nesting making the superlevel set
  // a single family member.
  {
    ordered_json rows = ordered_json::array();
    int violations = 0, skipped = 0;
    for (int i = 0; i < instances; ++i) {
      const std::uint64_t inst = static_cast<std::uint64_t>(i) + 2000000;
      std::vector<OpenSetMask> masks =
          random_contracting_masks(res, seed, inst, 8);
      ContractingFamily fam;
      fam.eta = 0.0;
      for (auto& m : masks)
        fam.items.push_back(FamilyItem{std::move(m), std::nullopt});
      GridFunction g(res);
      for (std::size_t c = 0; c < g.values().size(); ++c)
        g.values()[c] =
            2.0 * rng::uniform01(seed, "wg", inst, c) - 1.0;
      GridFunction m = family_maximal(g, fam);
      const double mmax = grid_max(m);
      if (mmax <= 0.0) {
        ++skipped;
        continue;
      }
      const double lambda =
          mmax * (0.05 + 0.9 * rng::uniform01(seed, "lam", inst));
      const double lev = superlevel_set(m, lambda).measure();
      const double l1 = lp_quasinorm(g, 1.0);
      const bool ok = lev * lambda <= l1 * (1.0 + kRoundoffSlack);
      ordered_json row;
      row["i"] = i;
      row["lambda"] = lambda;
      row["level_measure"] = lev;
      row["l1"] = l1;
      row["ok"] = ok;
      if (!ok) ++violations;
      rows.push_back(std::move(row));
    }
    ordered_json sub;
    sub["rows"] = std::move(rows);
    sub["violations"] = violations;
    sub["skipped"] = skipped;
    sub["ok"] = violations == 0;
    passed = passed && violations == 0;
    doc["weak11"] = std::move(sub);
  }

  // Vector-valued iterated-maximal ratio at s = 1/2, p = 2, recorded for
  // cross-resolution stability comparisons.
  {
    ordered_json rows = ordered_json::array();
    double max_ratio = 0.0;
    const int fs_instances = std::min(instances, 20);
    for (int i = 0; i < fs_instances; ++i) {
      const std::uint64_t inst = static_cast<std::uint64_t>(i) + 3000000;
      GridFunction num2(res), den2(res);
      for (int j = 0; j < 4; ++j) {
        GridFunction f(res);
        for (std::size_t c = 0; c < f.values().size(); ++c)
          f.values()[c] = 2.0 * rng::uniform01(seed, "fs", inst,
                                               static_cast<std::uint64_t>(j) *
                                                       f.values().size() +
                                                   c) -
                          1.0;
        GridFunction ms = m_s(f, 0.5);
        for (std::size_t c = 0; c < f.values().size(); ++c) {
          num2.values()[c] += ms.values()[c] * ms.values()[c];
          den2.values()[c] += f.values()[c] * f.values()[c];
        }
      }
      for (std::size_t c = 0; c < num2.values().size(); ++c) {
        num2.values()[c] = std::sqrt(num2.values()[c]);
        den2.values()[c] = std::sqrt(den2.values()[c]);
      }
      const double ratio =
          lp_quasinorm(num2, 2.0) / lp_quasinorm(den2, 2.0);
      max_ratio = std::max(max_ratio, ratio);
      ordered_json row;
      row["i"] = i;
      row["ratio"] = ratio;
      rows.push_back(std::move(row));
    }
    ordered_json sub;
    sub["rows"] = std::move(rows);
    sub["max_ratio"] = max_ratio;
    doc["iterated"] = std::move(sub);
  }

  // Moment-ratio probe of the BMO functionals over a shared candidate
  // list; the second moment coincides with the energy form, so its ratio
  // must be 1 to roundoff.
  {
    ordered_json rows = ordered_json::array();
    CorpusSpec cs;
    cs.kind = CorpusKind::band_gaussian;
    cs.n = n;
    cs.sparsity = 16;
    cs.seed = rng::draw(seed, "jn");
    cs.count = std::min(instances, 8);
    std::vector<HaarField> symbols = generate_corpus(cs);
    bool band_ok = true;
    std::vector<double> r1, r2, r4;
    for (std::size_t si = 0; si < symbols.size(); ++si) {
      const HaarField& g = symbols[si];
      if (g.empty()) continue;
      BmoCandidates cands = probe_candidates(g);
      const double b = bmo_norm_lower(g, cands);
      if (b <= 0.0) continue;
      const double pvals[3] = {1.0, 2.0, 4.0};
      for (double p : pvals) {
        const double ratio = john_nirenberg_ratio(g, p, cands) / b;
        ordered_json row;
        row["symbol"] = si;
        row["p"] = p;
        row["ratio"] = ratio;
        rows.push_back(std::move(row));
        if (p == 1.0) r1.push_back(ratio);
        if (p == 2.0) {
          r2.push_back(ratio);
          if (std::fabs(ratio - 1.0) > 1e-9) band_ok = false;
        }
        if (p == 4.0) r4.push_back(ratio);
      }
    }
    ordered_json sub;
    sub["rows"] = std::move(rows);
    sub["p1"] = ratio_stats(std::move(r1));
    sub["p2"] = ratio_stats(std::move(r2));
    sub["p4"] = ratio_stats(std::move(r4));
    sub["p2_unit_ok"] = band_ok;
    passed = passed && band_ok;
    doc["moment_probe"] = std::move(sub);
  }

  doc["passed"] = passed;
  return {std::move(doc), passed};
}

std::string report_csv(const VerificationReport& report) {
  const ordered_json& doc = report.doc;
  const std::string experiment = doc.at("experiment").get<std::string>();
  std::string out;
  if (experiment == "theorem-I") {
    out = "id,upper,lower,lower_over_upper\n";
    for (const auto& rec : doc.at("instances")) {
      if (rec.contains("skipped") || rec.contains("error")) continue;
      out += std::to_string(rec.at("id").get<std::int64_t>()) + "," +
             fmt(rec.at("upper").get<double>()) + "," +
             fmt(rec.at("lower").get<double>()) + "," +
             fmt(rec.at("lower_over_upper").get<double>()) + "\n";
    }
  } else if (experiment == "theorem-II") {
    out = "id,bmo_lower,witness_lower,indicator_lower,lower_estimate,l_over_b\n";
    for (const auto& rec : doc.at("instances")) {
      if (rec.contains("zero") || rec.contains("error")) continue;
      out += std::to_string(rec.at("id").get<std::int64_t>()) + "," +
             fmt(rec.at("bmo_lower").get<double>()) + "," +
             fmt(rec.at("witness_lower").get<double>()) + "," +
             fmt(rec.at("indicator_lower").get<double>()) + "," +
             fmt(rec.at("lower_estimate").get<double>()) + "," +
             fmt(rec.at("l_over_b").get<double>()) + "\n";
    }
  } else if (experiment == "adjoint") {
    out = "id,bmo_g,max_response,ratio\n";
    for (const auto& rec : doc.at("instances")) {
      if (rec.contains("error")) continue;
      out += std::to_string(rec.at("id").get<std::int64_t>()) + "," +
             fmt(rec.at("bmo_g").get<double>()) + "," +
             fmt(rec.at("max_response").get<double>()) + "," +
             fmt(rec.at("ratio").get<double>()) + "\n";
    }
  } else if (experiment == "brossard") {
    const int n = doc.at("params").at("corpus").at("n").get<int>();
    out = "corpus_id,n,delta,lhs,rhs,ratio\n";
    for (const auto& rec : doc.at("instances")) {
      if (rec.contains("skipped") || rec.contains("error")) continue;
      for (const auto& row : rec.at("rows")) {
        double ratio = row.at("infinite").get<bool>()
                           ? std::numeric_limits<double>::infinity()
                           : row.at("ratio").get<double>();
        out += std::to_string(rec.at("id").get<std::int64_t>()) + "," +
               std::to_string(n) + "," + fmt(row.at("delta").get<double>()) +
               "," + fmt(row.at("lhs").get<double>()) + "," +
               fmt(row.at("rhs").get<double>()) + "," + fmt(ratio) + "\n";
      }
    }
  } else if (experiment == "lemmas") {
    out = "check,instance,param,value,ok\n";
    for (const auto& row : doc.at("sparse_sum").at("rows"))
      out += "sparse_sum," + std::to_string(row.at("i").get<int>()) + "," +
             fmt(row.at("p").get<double>()) + "," +
             fmt(row.at("lhs").get<double>()) + "," +
             (row.at("ok").get<bool>() ? "1" : "0") + "\n";
    for (const auto& row : doc.at("overlap").at("rows"))
      out += "overlap," + std::to_string(row.at("i").get<int>()) + "," +
             fmt(row.at("eta").get<double>()) + "," +
             fmt(row.at("max_ratio").get<double>()) + "," +
             (row.at("ok").get<bool>() ? "1" : "0") + "\n";
    for (const auto& row : doc.at("weak11").at("rows"))
      out += "weak11," + std::to_string(row.at("i").get<int>()) + "," +
             fmt(row.at("lambda").get<double>()) + "," +
             fmt(row.at("level_measure").get<double>() *
                 row.at("lambda").get<double>() /
                 row.at("l1").get<double>()) +
             "," + (row.at("ok").get<bool>() ? "1" : "0") + "\n";
    for (const auto& row : doc.at("iterated").at("rows"))
      out += "iterated," + std::to_string(row.at("i").get<int>()) + ",0.5," +
             fmt(row.at("ratio").get<double>()) + ",1\n";
    for (const auto& row : doc.at("moment_probe").at("rows"))
      out += "moment," + std::to_string(row.at("symbol").get<int>()) + "," +
             fmt(row.at("p").get<double>()) + "," +
             fmt(row.at("ratio").get<double>()) + ",1\n";
  } else {
    throw std::invalid_argument("no tabular form for experiment " + experiment);
  }
  return out;
}

}  // namespace bipara
