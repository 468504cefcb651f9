#pragma once

#include <map>
#include <string>
#include <vector>

#include "weylforge/hwdata.hpp"
#include "weylforge/rootsys.hpp"

namespace weylforge::charcalc {

using hwdata::IdealSequence;
using hwdata::Psi;
using hwdata::Weight;
using rootsys::TablePtr;

/// Truncated element of the group ring of the root lattice: coefficients on
/// Q_+ coordinate tuples of height <= H, all exponents written as e^{-eta}.
struct FormalCharacter {
  TablePtr table;
  int height_bound = 0;
  Weight base_weight;
  std::map<std::vector<int>, long long> coeffs;

  long long at(const std::vector<int>& eta) const {
    auto it = coeffs.find(eta);
    return it == coeffs.end() ? 0 : it->second;
  }
};

FormalCharacter unit_character(TablePtr table, int H, const Weight& base);

/// (1 - e^{-alpha})^{-c} truncated at height H: coefficient binom(j+c-1, c-1)
/// on j*alpha.
FormalCharacter geometric_factor(TablePtr table, int root_index, long c, int H);

/// Truncated convolution; base weights add.
FormalCharacter multiply(const FormalCharacter& a, const FormalCharacter& b);

/// prod_{alpha} (1 - e^{-alpha})^{-codim(I_alpha) * l_alpha}, evaluated
/// factor-by-factor in increasing root height.
FormalCharacter character_of_M(const Psi& psi, const IdealSequence& seq, int H);

struct DimReport {
  bool pass = true;
  std::string first_discrepancy;
  std::vector<long> k_codims;  // codim(K_alpha) per table root
};

/// Per-root codimension additivity codim(K_alpha) = codim(I^N) + codim(J^M),
/// then coefficientwise equality of the K-sequence character with the product
/// of the two standard-sequence characters.
DimReport verify_t1_dimensions(const Weight& lambda, const commalg::CofiniteIdeal& I,
                               const Weight& mu, const commalg::CofiniteIdeal& J, TablePtr table,
                               int H);

}  // namespace weylforge::charcalc
