#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bipara/grid.hpp"
#include "bipara/haar.hpp"

namespace bipara {

// Symbol families for the empirical harness. Everything is a pure function
// of the CorpusSpec fields, seed included, so corpora serialize identically
// across runs and machines.
enum class CorpusKind {
  single_coeff,      // one unit coefficient at a random carrier
  band_gaussian,     // iid gaussians on a fixed mid-scale band
  diagonal_lacunary, // one unit coefficient per diagonal scale (j,j)
  indicator_derived, // analyze(chi_omega) for a random cell union
  dense_random,      // iid gaussians on every carrier
};

CorpusKind corpus_kind_from_string(const std::string& s);
std::string to_string(CorpusKind kind);

struct CorpusSpec {
  CorpusKind kind = CorpusKind::band_gaussian;
  int n = 5;
  int sparsity = 16;
  std::uint64_t seed = 0;
  int count = 1;
};

std::vector<HaarField> generate_corpus(const CorpusSpec& spec);

// Pointwise inputs for operators that take a grid argument: dense_random
// draws uniform values in [-1,1], indicator_derived yields the indicator
// itself, and the Haar kinds are synthesized to grids.
std::vector<GridFunction> generate_grid_corpus(const CorpusSpec& spec);

}  // namespace bipara
