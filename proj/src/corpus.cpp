#include "bipara/corpus.hpp"

#include <algorithm>
#include <stdexcept>

#include "bipara/rng.hpp"

namespace bipara {

CorpusKind corpus_kind_from_string(const std::string& s) {
  if (s == "single_coeff") return CorpusKind::single_coeff;
  if (s == "band_gaussian") return CorpusKind::band_gaussian;
  if (s == "diagonal_lacunary") return CorpusKind::diagonal_lacunary;
  if (s == "indicator_derived") return CorpusKind::indicator_derived;
  if (s == "dense_random") return CorpusKind::dense_random;
  throw std::invalid_argument("unknown corpus kind: " + s);
}

std::string to_string(CorpusKind kind) {
  switch (kind) {
    case CorpusKind::single_coeff: return "single_coeff";
    case CorpusKind::band_gaussian: return "band_gaussian";
    case CorpusKind::diagonal_lacunary: return "diagonal_lacunary";
    case CorpusKind::indicator_derived: return "indicator_derived";
    case CorpusKind::dense_random: return "dense_random";
  }
  throw std::invalid_argument("unknown corpus kind");
}

namespace {

OpenSetMask random_mask(Resolution res, std::uint64_t seed, std::uint64_t inst) {
  OpenSetMask m(res);
  const int s = res.side();
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j)
      if (rng::draw(seed, "cell", inst,
                    static_cast<std::uint64_t>(i) * s + j) & 1u)
        m.set(i, j, true);
  return m;
}

HaarField make_instance(const CorpusSpec& spec, Resolution res,
                        std::uint64_t inst) {
  std::vector<HaarField::Entry> entries;
  switch (spec.kind) {
    case CorpusKind::single_coeff: {
      std::int64_t idx = static_cast<std::int64_t>(
          rng::below(spec.seed, "rect", static_cast<std::uint64_t>(rect_count(res)),
                     inst));
      entries.emplace_back(idx, 1.0);
      break;
    }
    case CorpusKind::band_gaussian: {
      // mid-scale band, both axes at levels 1..3 (clipped at n-1)
      const int jlo = std::min(1, res.n() - 1);
      const int jhi = std::min(3, res.n() - 1);
      std::vector<std::int64_t> band;
      for (int jx = jlo; jx <= jhi; ++jx)
        for (int kx = 0; kx < (1 << jx); ++kx)
          for (int jy = jlo; jy <= jhi; ++jy)
            for (int ky = 0; ky < (1 << jy); ++ky)
              band.push_back(rect_index(DyadicRect{{jx, kx}, {jy, ky}}, res));
      std::size_t take = std::min<std::size_t>(
          band.size(), static_cast<std::size_t>(std::max(spec.sparsity, 1)));
      // deterministic partial shuffle
      for (std::size_t k = 0; k < take; ++k) {
        std::size_t j = k + static_cast<std::size_t>(rng::below(
                                spec.seed, "pick", band.size() - k, inst, k));
        std::swap(band[k], band[j]);
        entries.emplace_back(band[k], rng::normal(spec.seed, "coef", inst, k));
      }
      break;
    }
    case CorpusKind::diagonal_lacunary: {
      int depth = std::min(res.n(), std::max(spec.sparsity, 1));
      for (int j = 0; j < depth; ++j) {
        int kx = static_cast<int>(rng::below(spec.seed, "kx", 1u << j, inst, j));
        int ky = static_cast<int>(rng::below(spec.seed, "ky", 1u << j, inst, j));
        entries.emplace_back(rect_index(DyadicRect{{j, kx}, {j, ky}}, res), 1.0);
      }
      break;
    }
    case CorpusKind::indicator_derived:
      return analyze(GridFunction::indicator(random_mask(res, spec.seed, inst)));
    case CorpusKind::dense_random: {
      std::int64_t total = rect_count(res);
      for (std::int64_t idx = 0; idx < total; ++idx)
        entries.emplace_back(idx, rng::normal(spec.seed, "coef", inst,
                                              static_cast<std::uint64_t>(idx)));
      break;
    }
  }
  return HaarField::from_entries(res, std::move(entries));
}

}  // namespace

std::vector<HaarField> generate_corpus(const CorpusSpec& spec) {
  Resolution res(spec.n);
  if (spec.count < 1) throw std::invalid_argument("corpus count must be >= 1");
  std::vector<HaarField> out;
  out.reserve(static_cast<std::size_t>(spec.count));
  for (int i = 0; i < spec.count; ++i)
    out.push_back(make_instance(spec, res, static_cast<std::uint64_t>(i)));
  return out;
}

std::vector<GridFunction> generate_grid_corpus(const CorpusSpec& spec) {
  Resolution res(spec.n);
  if (spec.count < 1) throw std::invalid_argument("corpus count must be >= 1");
  std::vector<GridFunction> out;
  out.reserve(static_cast<std::size_t>(spec.count));
  for (int i = 0; i < spec.count; ++i) {
    std::uint64_t inst = static_cast<std::uint64_t>(i);
    switch (spec.kind) {
      case CorpusKind::indicator_derived:
        out.push_back(GridFunction::indicator(random_mask(res, spec.seed, inst)));
        break;
      case CorpusKind::dense_random: {
        GridFunction f(res);
        const int s = res.side();
        for (int a = 0; a < s; ++a)
          for (int b = 0; b < s; ++b)
            f.at(a, b) = 2.0 * rng::uniform01(
                                   spec.seed, "grid", inst,
                                   static_cast<std::uint64_t>(a) * s + b) -
                         1.0;
        out.push_back(std::move(f));
        break;
      }
      default:
        out.push_back(synthesize(make_instance(spec, res, inst)));
        break;
    }
  }
  return out;
}

}  // namespace bipara
