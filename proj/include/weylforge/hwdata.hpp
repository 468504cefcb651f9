#pragma once

#include <optional>
#include <string>
#include <vector>

#include "weylforge/commalg.hpp"
#include "weylforge/rootsys.hpp"

namespace weylforge::hwdata {

using commalg::CofiniteIdeal;
using rootsys::RootVector;
using rootsys::TablePtr;

/// Integral weight given by its values on the simple coroots, plus an
/// optional action of a chosen basis of the complement h'' of the span of
/// the coroots (affine bookkeeping only).
struct Weight {
  std::vector<int> coroot_values;
  std::vector<Rat> hpp_values;

  int rank() const { return static_cast<int>(coroot_values.size()); }
  bool dominant() const;
  bool is_zero() const;
  Weight operator+(const Weight& o) const;
  bool operator==(const Weight& o) const = default;
  std::string str() const;
};

/// lambda(alpha_i^vee); 1-based index per the interface convention.
int coroot_pairing(const Weight& lambda, int i);

/// N_{lambda,alpha} = sum_i m_i lambda(alpha_i^vee) for alpha = sum m_i alpha_i.
long n_lambda_alpha(const Weight& lambda, const RootVector& alpha);

/// Highest-weight functional in evaluation form: a finite sum of point
/// evaluations against dominant weights, together with the cofinite ideal it
/// annihilates. evaluation_data may be empty for character-only use.
struct PsiSummand {
  std::vector<Rat> point;
  Weight weight;
};

struct Psi {
  Weight weight;
  std::vector<PsiSummand> evaluation_data;
  CofiniteIdeal annihilating_ideal;
};

/// Single-summand psi: evaluation at `point` with weight `lambda`,
/// annihilating `ideal`.
Psi make_psi(const Weight& lambda, const std::vector<Rat>& point, const CofiniteIdeal& ideal);
/// Character-side psi carrying only (lambda, ideal).
Psi make_formal_psi(const Weight& lambda, const CofiniteIdeal& ideal);

/// Every evaluation point lies in the vanishing locus of the annihilating
/// ideal (so psi kills h' tensor I).
bool psi_consistency(const Psi& psi);

/// Union of evaluation data; weights add; ideals intersect. Evaluation points
/// must be disjoint.
Psi psi_add(const Psi& a, const Psi& b);

/// Map from each table root to a cofinite ideal, with the two monotonicity
/// conditions and an envelope ideal containing every entry.
struct IdealSequence {
  TablePtr table;
  std::vector<CofiniteIdeal> entries;  // parallel to table->roots
  CofiniteIdeal envelope;

  const CofiniteIdeal& at(int root_index) const { return entries.at(root_index); }
};

/// I_alpha = I^{N_{lambda,alpha}} (unit ideal when the exponent vanishes).
IdealSequence standard_sequence(const Weight& lambda, const CofiniteIdeal& I, TablePtr table);

/// K_alpha = I^{N_{lambda,alpha}} cap J^{N_{mu,alpha}} for coprime I, J.
IdealSequence k_sequence(const Weight& lambda, const CofiniteIdeal& I, const Weight& mu,
                         const CofiniteIdeal& J, TablePtr table);

struct SequenceReport {
  bool pass = true;
  std::vector<std::string> violations;
};

/// Checks downward monotonicity along the root order, multiplicativity on
/// root sums, and envelope containment (unit entries exempt).
SequenceReport validate_sequence(const IdealSequence& seq);

}  // namespace weylforge::hwdata
