#pragma once

#include <memory>
#include <string>
#include <vector>

#include "weylforge/rootsys.hpp"
#include "weylforge/sparse_linalg.hpp"

namespace weylforge::modeng {

using Mat = std::vector<std::vector<Rat>>;

/// Sparse combination of Chevalley basis elements (index, coefficient).
using LieComb = SparseVec;

/// Chevalley-style basis of a finite-type simple Lie algebra of rank <= 3
/// (A1, A2, B2, G2), with exact structure constants.
///
/// Basis indexing: 0..m-1 are the lowering vectors X_{-beta} (betas in table
/// order), m..m+l-1 the coroots h_i, m+l..2m+l-1 the raising vectors X_beta.
/// Structure constants come from an explicit faithful matrix realization of a
/// defining representation (sl2, sl3, sp4, and the derivation algebra of the
/// split octonions for G2) and are exhaustively verified: Jacobi on all basis
/// triples, Serre relations in the adjoint action, one-dimensional root
/// spaces, and sl2-normalized [X_beta, X_{-beta}] = beta^vee.
class ChevalleyBasis {
public:
  static std::shared_ptr<const ChevalleyBasis> build(
      const rootsys::GeneralizedCartanMatrix& gcm);

  int rank() const { return l_; }
  int num_pos() const { return m_; }
  int dim() const { return 2 * m_ + l_; }
  rootsys::TablePtr table() const { return table_; }

  int lower_index(int root_idx) const { return root_idx; }
  int cartan_index(int i) const { return m_ + i; }
  int raise_index(int root_idx) const { return m_ + l_ + root_idx; }
  bool is_lowering(int k) const { return k < m_; }
  bool is_cartan(int k) const { return k >= m_ && k < m_ + l_; }
  bool is_raising(int k) const { return k >= m_ + l_; }
  /// Table index of the root of a raising/lowering element, -1 for Cartan.
  int root_of(int k) const;

  const LieComb& bracket(int i, int j) const { return brackets_[i][j]; }
  /// beta(alpha_i^vee) for the table root.
  int pairing(int root_idx, int i) const;
  /// Coordinates of beta^vee over the h_i, i.e. bracket(X_beta, X_{-beta}).
  LieComb coroot(int root_idx) const;

  const Mat& matrix(int k) const { return mats_[k]; }
  const std::string& realization_note() const { return note_; }

  /// Exhaustive structure-constant verification; throws Error(Internal) on
  /// any violation.
  void verify() const;

private:
  ChevalleyBasis() = default;

  rootsys::GeneralizedCartanMatrix gcm_;
  rootsys::TablePtr table_;
  int l_ = 0, m_ = 0;
  std::vector<Mat> mats_;
  std::vector<std::vector<LieComb>> brackets_;
  std::string note_;
};

using ChevalleyPtr = std::shared_ptr<const ChevalleyBasis>;

/// Bilinear extension of the basis bracket.
LieComb comb_bracket(const ChevalleyBasis& cb, const LieComb& a, const LieComb& b);

}  // namespace weylforge::modeng
