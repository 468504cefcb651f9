#pragma once

#include <map>
#include <utility>
#include <vector>

#include "weylforge/rational.hpp"

namespace weylforge {

/// Sparse vector over Rat: (index, coefficient) pairs, sorted by index,
/// coefficients nonzero.
using SparseVec = std::vector<std::pair<int, Rat>>;

SparseVec sv_add(const SparseVec& a, const SparseVec& b);
/// a + c*b
SparseVec sv_axpy(const SparseVec& a, const Rat& c, const SparseVec& b);
void sv_scale(SparseVec& a, const Rat& c);
bool sv_equal(const SparseVec& a, const SparseVec& b);
Rat sv_get(const SparseVec& a, int idx);

/// Incrementally maintained reduced row echelon basis of a row space.
/// Rows are kept fully reduced against each other with leading coefficient 1,
/// so membership tests are a single reduction pass.
class RowBasis {
public:
  /// Reduces v against the basis and inserts the residual if nonzero.
  /// Returns true when the rank grew.
  bool add(SparseVec v);

  /// Residual of v after subtracting its projection onto the row space.
  SparseVec reduce(SparseVec v) const;

  bool contains(const SparseVec& v) const { return reduce(v).empty(); }
  int rank() const { return static_cast<int>(rows_.size()); }
  const std::map<int, SparseVec>& rows() const { return rows_; }
  bool is_pivot(int col) const { return rows_.count(col) != 0; }

private:
  std::map<int, SparseVec> rows_;  // pivot column -> row
};

/// Solution basis of the homogeneous system {row . x = 0 for each row},
/// x ranging over ncols coordinates. Returned vectors are dense.
std::vector<std::vector<Rat>> kernel_basis(const std::vector<SparseVec>& rows, int ncols);

}  // namespace weylforge
