#pragma once

#include <optional>
#include <vector>

#include "bipara/grid.hpp"

namespace bipara {

// One level of a contracting family: the set and its stopping exponent.
// lambda = nullopt encodes -infinity (threshold 2^lambda = 0).
struct FamilyItem {
  OpenSetMask omega;
  std::optional<int> lambda;
};

struct ContractingFamily {
  std::vector<FamilyItem> items;
  double eta = 0.0;
};

// Checks nesting and the halving property |omega_{i+1}| <= |omega_i| / 2.
// Cell counts are integers, so both checks are exact. Throws on violation.
void validate_contracting(const ContractingFamily& fam);

}  // namespace bipara
