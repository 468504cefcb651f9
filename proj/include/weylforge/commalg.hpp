#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "weylforge/polynomial.hpp"
#include "weylforge/rational.hpp"
#include "weylforge/sparse_linalg.hpp"

namespace weylforge::commalg {

/// One primary component m_p^exp of a point-supported ideal.
struct PointSupport {
  std::vector<Rat> point;
  unsigned exp = 1;
};

/// Cofinite ideal of Q[x_1..x_n]. Point-supported ideals (finite intersections
/// of powers of maximal ideals at rational points) are the primary format; a
/// generator presentation exists to certify cofiniteness and codimension by
/// degree-bounded row reduction.
class CofiniteIdeal {
public:
  enum class Pres { PointSupported, Generated };

  /// Default-constructs the unit ideal of Q[t].
  CofiniteIdeal() = default;

  static CofiniteIdeal unit(int nvars);
  static CofiniteIdeal point_supported(int nvars, std::vector<PointSupport> supp);
  static CofiniteIdeal maximal(std::vector<Rat> point, unsigned exp = 1);
  static CofiniteIdeal generated(int nvars, std::vector<Poly> gens, int truncation_degree);

  int nvars() const { return nvars_; }
  Pres presentation() const { return pres_; }
  bool is_unit() const { return pres_ == Pres::PointSupported && support_.empty(); }
  const std::vector<PointSupport>& support() const;
  const std::vector<Poly>& generators() const;
  int truncation_degree() const { return truncation_degree_; }

  /// Vanishing order required at `point`; 0 when the point is not in the support.
  unsigned order_at(const std::vector<Rat>& point) const;

  bool operator==(const CofiniteIdeal& o) const;
  std::string str() const;

private:
  int nvars_ = 1;
  Pres pres_ = Pres::PointSupported;
  std::vector<PointSupport> support_;  // sorted by point, distinct, exp >= 1
  std::vector<Poly> gens_;
  int truncation_degree_ = 0;
};

/// dim Q[x]/I. Point-supported: exact binomial count per point. Generated:
/// corank of the degree-bounded row reduction, guarded by the stabilization
/// certificate (corank at D-1 must equal corank at D).
long codim(const CofiniteIdeal& I);

/// I^N; N = 0 gives the unit ideal.
CofiniteIdeal power(const CofiniteIdeal& I, unsigned N);

CofiniteIdeal intersect(const CofiniteIdeal& I, const CofiniteIdeal& J);
CofiniteIdeal product(const CofiniteIdeal& I, const CofiniteIdeal& J);
bool coprime(const CofiniteIdeal& I, const CofiniteIdeal& J);

/// I subseteq J, decided by exponent comparison at support points.
bool subset_of(const CofiniteIdeal& I, const CofiniteIdeal& J);

/// f in I^N and g in J^N with f + g = 1 exactly. Built by interpolating a
/// splitting of 1 across the two supports and slicing the binomial expansion
/// of (f0+g0)^(2N-1) at the threshold; memberships are re-verified by Taylor
/// vanishing before returning.
std::pair<Poly, Poly> bezout_witness(const CofiniteIdeal& I, const CofiniteIdeal& J, unsigned N);

/// Primary components m_p^{k_p}.
std::vector<CofiniteIdeal> crt_split(const CofiniteIdeal& I);

/// Q[x]/I for point-supported I. Elements are stored as tuples of truncated
/// Taylor expansions, one per support point; the published basis consists of
/// the elements that restrict to a single shifted monomial (x-p)^a at one
/// point and to 0 elsewhere, i.e. idempotent-times-monomial representatives.
class QuotientAlgebra {
public:
  explicit QuotientAlgebra(CofiniteIdeal I);

  const CofiniteIdeal& ideal() const { return ideal_; }
  int nvars() const { return ideal_.nvars(); }
  int dim() const { return static_cast<int>(basis_.size()); }

  struct BasisElem {
    int comp;  // support-point index
    Expo expo;
  };
  const std::vector<BasisElem>& basis() const { return basis_; }
  const std::vector<PointSupport>& points() const { return ideal_.support(); }

  /// Product of two basis elements (zero or a single basis element).
  SparseVec mul_basis(int i, int j) const;
  SparseVec mul(const SparseVec& a, const SparseVec& b) const;
  /// Coordinates of 1.
  const SparseVec& one() const { return one_; }

  /// Image of f in the quotient.
  SparseVec reduce(const Poly& f) const;
  /// Polynomial representative of basis element i (CRT idempotent times
  /// shifted monomial).
  const Poly& representative(int i) const { return reps_[i]; }

  /// Value of basis element i at a point (the order-0 jet coefficient there).
  Rat value_at(int i, const std::vector<Rat>& point) const;

  /// Basis indices spanning the image of K in the quotient; requires
  /// ideal() contained in K.
  std::vector<int> ideal_image_basis(const CofiniteIdeal& K) const;

  int basis_index(int comp, const Expo& e) const;  // -1 if truncated away

  /// Exhaustive commutativity/associativity/unit check of the product.
  void verify_table() const;

private:
  CofiniteIdeal ideal_;
  std::vector<BasisElem> basis_;
  std::vector<int> comp_offset_;
  std::vector<Poly> reps_;
  SparseVec one_;
};

using QuotientPtr = std::shared_ptr<const QuotientAlgebra>;

QuotientPtr quotient_algebra(const CofiniteIdeal& I);

/// Basis map for A/(ideal of `from`) -> A/(ideal of `to`) when to's ideal
/// contains from's; entries are basis indices of `to` or -1.
std::vector<int> projection(const QuotientAlgebra& from, const QuotientAlgebra& to);

}  // namespace weylforge::commalg
