#include "weylforge/commalg.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "weylforge/errors.hpp"

namespace weylforge::commalg {

namespace {

long binom(long n, long k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Monomials of total degree < bound in n variables, graded-lex order.
std::vector<Expo> monomials_below(int n, unsigned bound) {
  std::vector<Expo> out;
  std::vector<Expo> cur{Expo(n, 0)};
  if (bound == 0) return out;
  out.push_back(Expo(n, 0));
  for (unsigned d = 1; d < bound; ++d) {
    std::vector<Expo> next;
    // all exponent tuples of total degree d
    Expo e(n, 0);
    // iterate compositions of d into n parts
    std::function<void(int, unsigned)> rec = [&](int pos, unsigned rem) {
      if (pos == n - 1) {
        e[pos] = rem;
        next.push_back(e);
        return;
      }
      for (unsigned k = 0; k <= rem; ++k) {
        e[pos] = k;
        rec(pos + 1, rem - k);
      }
    };
    rec(0, d);
    for (auto& m : next) out.push_back(std::move(m));
  }
  return out;
}

bool point_less(const std::vector<Rat>& a, const std::vector<Rat>& b) {
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return true;
    if (b[i] < a[i]) return false;
  }
  return false;
}

}  // namespace

CofiniteIdeal CofiniteIdeal::unit(int nvars) {
  CofiniteIdeal I;
  I.nvars_ = nvars;
  I.pres_ = Pres::PointSupported;
  return I;
}

CofiniteIdeal CofiniteIdeal::point_supported(int nvars, std::vector<PointSupport> supp) {
  for (auto& s : supp) {
    require(static_cast<int>(s.point.size()) == nvars, Err::InvalidInput,
            "support point arity mismatch");
    require(s.exp >= 1, Err::InvalidInput, "support exponent must be >= 1");
  }
  std::sort(supp.begin(), supp.end(),
            [](const PointSupport& a, const PointSupport& b) { return point_less(a.point, b.point); });
  for (size_t i = 1; i < supp.size(); ++i)
    require(point_less(supp[i - 1].point, supp[i].point), Err::InvalidInput,
            "duplicate support point " + point_str(supp[i].point));
  CofiniteIdeal I;
  I.nvars_ = nvars;
  I.pres_ = Pres::PointSupported;
  I.support_ = std::move(supp);
  return I;
}

CofiniteIdeal CofiniteIdeal::maximal(std::vector<Rat> point, unsigned exp) {
  int n = static_cast<int>(point.size());
  return point_supported(n, {PointSupport{std::move(point), exp}});
}

CofiniteIdeal CofiniteIdeal::generated(int nvars, std::vector<Poly> gens, int truncation_degree) {
  require(!gens.empty(), Err::InvalidInput, "generated ideal needs generators");
  require(truncation_degree >= 1, Err::InvalidInput, "truncation degree must be >= 1");
  for (const auto& g : gens)
    require(g.nvars() == nvars, Err::InvalidInput, "generator arity mismatch");
  CofiniteIdeal I;
  I.nvars_ = nvars;
  I.pres_ = Pres::Generated;
  I.gens_ = std::move(gens);
  I.truncation_degree_ = truncation_degree;
  return I;
}

const std::vector<PointSupport>& CofiniteIdeal::support() const {
  require(pres_ == Pres::PointSupported, Err::UnsupportedPresentation,
          "operation requires a point-supported ideal");
  return support_;
}

const std::vector<Poly>& CofiniteIdeal::generators() const {
  require(pres_ == Pres::Generated, Err::UnsupportedPresentation, "ideal has no generators");
  return gens_;
}

unsigned CofiniteIdeal::order_at(const std::vector<Rat>& point) const {
  for (const auto& s : support())
    if (s.point == point) return s.exp;
  return 0;
}

bool CofiniteIdeal::operator==(const CofiniteIdeal& o) const {
  if (nvars_ != o.nvars_ || pres_ != o.pres_) return false;
  if (pres_ == Pres::Generated)
    return gens_ == o.gens_ && truncation_degree_ == o.truncation_degree_;
  if (support_.size() != o.support_.size()) return false;
  for (size_t i = 0; i < support_.size(); ++i)
    if (support_[i].point != o.support_[i].point || support_[i].exp != o.support_[i].exp)
      return false;
  return true;
}

std::string CofiniteIdeal::str() const {
  if (pres_ == Pres::Generated) {
    std::string s = "(";
    for (size_t i = 0; i < gens_.size(); ++i) {
      if (i) s += ", ";
      s += gens_[i].str();
    }
    return s + ")";
  }
  if (support_.empty()) return "A";
  std::string s;
  for (size_t i = 0; i < support_.size(); ++i) {
    if (i) s += " ∩ ";
    s += "m" + point_str(support_[i].point);
    if (support_[i].exp > 1) s += "^" + std::to_string(support_[i].exp);
  }
  return s;
}

namespace {

/// Rank of the span of {m*g : deg(m*g) <= D} inside polynomials of degree <= D,
/// and the number of monomials of degree <= D.
std::pair<long, long> truncated_rank(const CofiniteIdeal& I, unsigned D) {
  int n = I.nvars();
  std::vector<Expo> monos = monomials_below(n, D + 1);
  std::map<Expo, int> index;
  for (size_t i = 0; i < monos.size(); ++i) index[monos[i]] = static_cast<int>(i);
  RowBasis rb;
  for (const auto& g : I.generators()) {
    unsigned dg = g.degree();
    if (dg > D) continue;
    for (const auto& m : monos) {
      if (expo_degree(m) + dg > D) continue;
      SparseVec row;
      for (const auto& [e, c] : g.terms()) {
        Expo s(n);
        for (int i = 0; i < n; ++i) s[i] = e[i] + m[i];
        row.emplace_back(index.at(s), c);
      }
      std::sort(row.begin(), row.end());
      rb.add(row);
    }
  }
  return {rb.rank(), static_cast<long>(monos.size())};
}

}  // namespace

long codim(const CofiniteIdeal& I) {
  if (I.presentation() == CofiniteIdeal::Pres::PointSupported) {
    long total = 0;
    int n = I.nvars();
    for (const auto& s : I.support()) total += binom(n + s.exp - 1, n);
    return total;
  }
  unsigned D = static_cast<unsigned>(I.truncation_degree());
  auto [rank_d, count_d] = truncated_rank(I, D);
  auto [rank_d1, count_d1] = truncated_rank(I, D - 1);
  long corank_d = count_d - rank_d;
  long corank_d1 = count_d1 - rank_d1;
  require(corank_d == corank_d1, Err::NotCofinite,
          "quotient dimension did not stabilize at the truncation degree (" +
              std::to_string(corank_d1) + " at D-1 vs " + std::to_string(corank_d) + " at D)");
  return corank_d;
}

CofiniteIdeal power(const CofiniteIdeal& I, unsigned N) {
  if (N == 0) return CofiniteIdeal::unit(I.nvars());
  std::vector<PointSupport> supp = I.support();
  for (auto& s : supp) s.exp *= N;
  return CofiniteIdeal::point_supported(I.nvars(), std::move(supp));
}

namespace {

CofiniteIdeal merge(const CofiniteIdeal& I, const CofiniteIdeal& J, bool sum_exponents) {
  require(I.nvars() == J.nvars(), Err::InvalidInput, "ideals of different algebras");
  std::map<std::vector<Rat>, unsigned, bool (*)(const std::vector<Rat>&, const std::vector<Rat>&)>
      acc(point_less);
  for (const auto& s : I.support()) acc[s.point] = s.exp;
  for (const auto& s : J.support()) {
    auto it = acc.find(s.point);
    if (it == acc.end())
      acc[s.point] = s.exp;
    else
      it->second = sum_exponents ? it->second + s.exp : std::max(it->second, s.exp);
  }
  std::vector<PointSupport> supp;
  for (auto& [p, e] : acc) supp.push_back(PointSupport{p, e});
  return CofiniteIdeal::point_supported(I.nvars(), std::move(supp));
}

}  // namespace

CofiniteIdeal intersect(const CofiniteIdeal& I, const CofiniteIdeal& J) {
  return merge(I, J, /*sum_exponents=*/false);
}

CofiniteIdeal product(const CofiniteIdeal& I, const CofiniteIdeal& J) {
  // primary decompositions multiply componentwise: powers of one maximal ideal
  // add exponents, coprime factors intersect
  return merge(I, J, /*sum_exponents=*/true);
}

bool coprime(const CofiniteIdeal& I, const CofiniteIdeal& J) {
  require(I.nvars() == J.nvars(), Err::InvalidInput, "ideals of different algebras");
  for (const auto& s : I.support())
    for (const auto& t : J.support())
      if (s.point == t.point) return false;
  return true;
}

bool subset_of(const CofiniteIdeal& I, const CofiniteIdeal& J) {
  // I subseteq J iff J's vanishing conditions are implied by I's
  require(I.nvars() == J.nvars(), Err::InvalidInput, "ideals of different algebras");
  for (const auto& s : J.support())
    if (I.order_at(s.point) < s.exp) return false;
  return true;
}

namespace {

/// Linear polynomial vanishing at `other` and equal to 1 at `here`.
Poly separating_linear(int n, const std::vector<Rat>& here, const std::vector<Rat>& other) {
  for (int i = 0; i < n; ++i) {
    if (here[i] != other[i]) {
      Rat d = here[i] - other[i];
      // (x_i - other_i) / d
      Poly p = Poly::variable(n, i) - Poly::constant(n, other[i]);
      return p * (1 / d);
    }
  }
  fail(Err::InvalidInput, "coincident points");
}

/// e == 1 mod m_{pts[k]}^{ords[k]} and e == 0 mod m_{pts[j]}^{ords[j]} for j != k.
Poly crt_idempotent(int n, const std::vector<std::vector<Rat>>& pts,
                    const std::vector<unsigned>& ords, size_t k) {
  Poly u = Poly::constant(n, 1);
  for (size_t j = 0; j < pts.size(); ++j) {
    if (j == k) continue;
    u = u * separating_linear(n, pts[k], pts[j]).pow(ords[j]);
  }
  // u(p_k) = 1; Newton-sharpen to the required order at p_k
  Poly one = Poly::constant(n, 1);
  return one - (one - u).pow(ords[k]);
}

bool vanishes_to_order(const Poly& f, const std::vector<Rat>& p, unsigned order) {
  Poly sh = f.shift(p);
  for (const auto& [e, c] : sh.terms())
    if (expo_degree(e) < order) return false;
  return true;
}

}  // namespace

std::pair<Poly, Poly> bezout_witness(const CofiniteIdeal& I, const CofiniteIdeal& J, unsigned N) {
  require(N >= 1, Err::InvalidInput, "bezout exponent must be >= 1");
  require(coprime(I, J), Err::NotCoprime, "ideals share a support point");
  int n = I.nvars();
  if (I.is_unit()) return {Poly::constant(n, 1), Poly(n)};
  if (J.is_unit()) return {Poly(n), Poly::constant(n, 1)};

  std::vector<std::vector<Rat>> pts;
  std::vector<unsigned> ords;
  size_t ni = I.support().size();
  for (const auto& s : I.support()) {
    pts.push_back(s.point);
    ords.push_back(s.exp);
  }
  for (const auto& s : J.support()) {
    pts.push_back(s.point);
    ords.push_back(s.exp);
  }
  // f0 = sum of idempotents at J's points: f0 in I, 1 - f0 in J
  Poly f0(n);
  for (size_t k = ni; k < pts.size(); ++k) f0 = f0 + crt_idempotent(n, pts, ords, k);
  Poly g0 = Poly::constant(n, 1) - f0;

  // slice (f0+g0)^(2N-1): terms with f0-exponent >= N land in I^N, the rest in J^N
  Poly f(n), g(n);
  unsigned M = 2 * N - 1;
  for (unsigned j = 0; j <= M; ++j) {
    Poly term = f0.pow(j) * g0.pow(M - j) * Rat(binom(M, j));
    if (j >= N)
      f = f + term;
    else
      g = g + term;
  }

  require(f + g == Poly::constant(n, 1), Err::Internal, "bezout identity failed");
  for (const auto& s : I.support())
    require(vanishes_to_order(f, s.point, N * s.exp), Err::Internal,
            "bezout witness f not in I^N");
  for (const auto& s : J.support())
    require(vanishes_to_order(g, s.point, N * s.exp), Err::Internal,
            "bezout witness g not in J^N");
  return {f, g};
}

std::vector<CofiniteIdeal> crt_split(const CofiniteIdeal& I) {
  std::vector<CofiniteIdeal> out;
  for (const auto& s : I.support()) out.push_back(CofiniteIdeal::maximal(s.point, s.exp));
  return out;
}

QuotientAlgebra::QuotientAlgebra(CofiniteIdeal I) : ideal_(std::move(I)) {
  const auto& supp = ideal_.support();
  int n = ideal_.nvars();
  std::vector<std::vector<Rat>> pts;
  std::vector<unsigned> ords;
  for (const auto& s : supp) {
    pts.push_back(s.point);
    ords.push_back(s.exp);
  }
  comp_offset_.resize(supp.size() + 1, 0);
  for (size_t c = 0; c < supp.size(); ++c) {
    comp_offset_[c] = static_cast<int>(basis_.size());
    Poly idem = supp.size() == 1 ? Poly::constant(n, 1)
                                 : crt_idempotent(n, pts, ords, c);
    for (const auto& e : monomials_below(n, supp[c].exp)) {
      basis_.push_back(BasisElem{static_cast<int>(c), e});
      // representative: idempotent * prod (x_i - p_i)^{e_i}
      Poly mono = Poly::constant(n, 1);
      for (int i = 0; i < n; ++i)
        if (e[i] > 0)
          mono = mono * (Poly::variable(n, i) - Poly::constant(n, supp[c].point[i])).pow(e[i]);
      reps_.push_back(idem * mono);
    }
  }
  comp_offset_[supp.size()] = static_cast<int>(basis_.size());
  for (size_t c = 0; c < supp.size(); ++c) {
    int idx = basis_index(static_cast<int>(c), Expo(n, 0));
    one_.emplace_back(idx, Rat(1));
  }
  std::sort(one_.begin(), one_.end());
}

int QuotientAlgebra::basis_index(int comp, const Expo& e) const {
  const auto& supp = ideal_.support();
  if (comp < 0 || comp >= static_cast<int>(supp.size())) return -1;
  if (expo_degree(e) >= supp[comp].exp) return -1;
  for (int i = comp_offset_[comp]; i < comp_offset_[comp + 1]; ++i)
    if (basis_[i].expo == e) return i;
  return -1;
}

SparseVec QuotientAlgebra::mul_basis(int i, int j) const {
  const BasisElem& a = basis_.at(i);
  const BasisElem& b = basis_.at(j);
  if (a.comp != b.comp) return {};
  Expo e(nvars());
  for (int k = 0; k < nvars(); ++k) e[k] = a.expo[k] + b.expo[k];
  int idx = basis_index(a.comp, e);
  if (idx < 0) return {};
  return {{idx, Rat(1)}};
}

SparseVec QuotientAlgebra::mul(const SparseVec& a, const SparseVec& b) const {
  SparseVec acc;
  for (const auto& [i, ci] : a)
    for (const auto& [j, cj] : b) acc = sv_axpy(acc, ci * cj, mul_basis(i, j));
  return acc;
}

SparseVec QuotientAlgebra::reduce(const Poly& f) const {
  require(f.nvars() == nvars(), Err::InvalidInput, "polynomial arity mismatch");
  SparseVec out;
  const auto& supp = ideal_.support();
  for (size_t c = 0; c < supp.size(); ++c) {
    Poly jet = f.shift(supp[c].point);
    for (const auto& [e, coef] : jet.terms()) {
      int idx = basis_index(static_cast<int>(c), e);
      if (idx >= 0) out.emplace_back(idx, coef);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Rat QuotientAlgebra::value_at(int i, const std::vector<Rat>& point) const {
  const BasisElem& b = basis_.at(i);
  const auto& supp = ideal_.support();
  if (supp[b.comp].point != point) return Rat(0);
  return expo_degree(b.expo) == 0 ? Rat(1) : Rat(0);
}

std::vector<int> QuotientAlgebra::ideal_image_basis(const CofiniteIdeal& K) const {
  // by CRT the image of K is the product of its local images: at each support
  // point the jets of order >= order_K(p) (everything when K is invertible
  // there, nothing once order_K(p) reaches the truncation order)
  std::vector<int> out;
  const auto& supp = ideal_.support();
  for (size_t i = 0; i < basis_.size(); ++i) {
    unsigned need = K.order_at(supp[basis_[i].comp].point);
    if (expo_degree(basis_[i].expo) >= need) out.push_back(static_cast<int>(i));
  }
  return out;
}

void QuotientAlgebra::verify_table() const {
  int d = dim();
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < i; ++j)
      require(mul_basis(i, j) == mul_basis(j, i), Err::Internal, "product not commutative");
  for (int i = 0; i < d; ++i) {
    require(mul(one_, {{i, Rat(1)}}) == SparseVec{{i, Rat(1)}}, Err::Internal, "1 not a unit");
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) {
        SparseVec l = mul(mul_basis(i, j), {{k, Rat(1)}});
        SparseVec r = mul({{i, Rat(1)}}, mul_basis(j, k));
        require(l == r, Err::Internal, "product not associative");
      }
  }
  // representatives must reduce back to the basis vectors they present
  for (int i = 0; i < d; ++i)
    require(reduce(reps_[i]) == SparseVec{{i, Rat(1)}}, Err::Internal,
            "representative does not reduce to its basis vector");
}

QuotientPtr quotient_algebra(const CofiniteIdeal& I) {
  require(I.presentation() == CofiniteIdeal::Pres::PointSupported, Err::UnsupportedPresentation,
          "quotient algebra requires a point-supported ideal");
  require(!I.is_unit(), Err::InvalidInput, "quotient by the unit ideal is the zero algebra");
  auto q = std::make_shared<QuotientAlgebra>(I);
  q->verify_table();
  return q;
}

std::vector<int> projection(const QuotientAlgebra& from, const QuotientAlgebra& to) {
  require(subset_of(from.ideal(), to.ideal()), Err::IncompatibleCoefficients,
          "projection requires the source ideal to refine the target");
  std::vector<int> map(from.dim(), -1);
  const auto& fsupp = from.ideal().support();
  const auto& tsupp = to.ideal().support();
  for (int i = 0; i < from.dim(); ++i) {
    const auto& be = from.basis()[i];
    const auto& p = fsupp[be.comp].point;
    for (size_t c = 0; c < tsupp.size(); ++c)
      if (tsupp[c].point == p) map[i] = to.basis_index(static_cast<int>(c), be.expo);
  }
  return map;
}

}  // namespace weylforge::commalg
