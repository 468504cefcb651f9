#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "weylforge/errors.hpp"

namespace weylforge::rootsys {

enum class GcmType { Finite, AffineUntwisted };

std::string gcm_type_name(GcmType t);
GcmType gcm_type_parse(const std::string& s);

/// Generalized Cartan matrix with a verified type tag. Entry (i,j) is
/// alpha_j(alpha_i^vee).
struct GeneralizedCartanMatrix {
  std::vector<std::vector<int>> a;
  int rank = 0;
  GcmType type = GcmType::Finite;

  int operator()(int i, int j) const { return a[i][j]; }
  bool operator==(const GeneralizedCartanMatrix& o) const { return a == o.a && type == o.type; }
  bool operator<(const GeneralizedCartanMatrix& o) const {
    return a != o.a ? a < o.a : type < o.type;
  }
};

/// Positive root in simple-root coordinates.
struct RootVector {
  std::vector<int> coords;
  int height = 0;
  int mult = 1;
};

/// All positive roots of height <= height_bound, sorted by (height, coords).
struct RootSystemTable {
  GeneralizedCartanMatrix gcm;
  int height_bound = 0;
  std::vector<RootVector> roots;
  std::vector<int> delta;  // null-root coordinates; empty for finite type

  int find(const std::vector<int>& coords) const;  // -1 if absent
  const RootVector& simple(int i) const;
};

using TablePtr = std::shared_ptr<const RootSystemTable>;

/// Checks the Cartan axioms and certifies the declared type through the
/// principal-minor criterion (rank <= 8).
GeneralizedCartanMatrix validate_gcm(const std::vector<std::vector<int>>& entries,
                                     GcmType declared);

/// Positive roots of height <= H with exact multiplicities. Finite tables are
/// independent of H once H reaches the highest root and are cached per GCM.
TablePtr positive_roots(const GeneralizedCartanMatrix& gcm, int H);

/// beta - alpha in Q_+, i.e. coordinatewise dominance.
bool root_leq(const RootVector& alpha, const RootVector& beta);

/// alpha + beta if that sum is in the table, else -1.
int root_sum_index(const RootSystemTable& table, int ia, int ib);

}  // namespace weylforge::rootsys
