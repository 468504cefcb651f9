#pragma once

#include <string>
#include <vector>

#include "weylforge/charcalc.hpp"
#include "weylforge/modeng.hpp"

namespace weylforge::theorems {

using commalg::CofiniteIdeal;
using hwdata::Weight;
using modeng::BuildOptions;

struct DimTable {
  std::string label;
  std::map<std::vector<int>, long> dims;
};

struct CheckItem {
  std::string name;
  bool pass = false;
  std::string detail;
  std::vector<DimTable> tables;
};

/// Machine verification record for one instance of one statement.
struct VerificationReport {
  std::string check;     // T1 | tw | max | l1 | remark
  std::string instance;  // human-readable descriptor
  std::vector<CheckItem> items;
  std::vector<DimTable> tables;
  double seconds = 0;

  bool pass() const;
  /// First failing item's detail, empty when passing.
  std::string first_discrepancy() const;
};

struct T1Options {
  int H = 4;
  bool brute_force = true;
  /// Negative control: drops the first relation generator of the combined
  /// module so the harness must detect the mismatch.
  bool seed_violation = false;
};

/// Tensor factorization of the constrained modules M: character-level
/// codimension additivity and character identity, and (optionally) the
/// brute-force module comparison with the highest-vector relation evidence.
VerificationReport check_t1(const Weight& lambda, const CofiniteIdeal& I, const Weight& mu,
                            const CofiniteIdeal& J, rootsys::TablePtr table,
                            const T1Options& options);

struct TwOptions {
  int H = 4;
  bool ladder = true;  // replay the minimal-power ladder inside M1 (x) M2
};

/// Tensor factorization of the Weyl modules at coprime radical ideals,
/// with the minimal-power ladder replay.
VerificationReport check_tw(const Weight& lambda, const CofiniteIdeal& I, const Weight& mu,
                            const CofiniteIdeal& J, int H, const TwOptions& options = {});

/// Factorization of W(psi, cap m_i) into single-point Weyl modules, checked
/// against the evaluation construction.
VerificationReport check_max(const std::vector<std::pair<std::vector<Rat>, Weight>>& points,
                             const rootsys::GeneralizedCartanMatrix& gcm, int H);

/// Nested annihilation instances (the inductive vanishing used for finite
/// dimensionality), over generated instances on A1 and A2.
VerificationReport check_l1(unsigned seed, int instances);

/// (X_{-alpha_i} tensor f)^{lambda_i + 1} v = 0 in a Weyl-module build.
bool check_power_nilpotency(const modeng::QuotientModule& w_state, int i, const SparseVec& f);

/// Wrapper producing a report over several (i, f) choices for one instance.
VerificationReport check_remark(const Weight& lambda, const CofiniteIdeal& I, int H);

}  // namespace weylforge::theorems
