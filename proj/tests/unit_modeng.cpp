#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "weylforge/charcalc.hpp"
#include "weylforge/modeng.hpp"

using namespace weylforge;
using namespace weylforge::modeng;
using namespace weylforge::hwdata;
using rootsys::GcmType;
using rootsys::validate_gcm;

namespace {

rootsys::GeneralizedCartanMatrix gcm_a1() { return validate_gcm({{2}}, GcmType::Finite); }
rootsys::GeneralizedCartanMatrix gcm_a2() {
  return validate_gcm({{2, -1}, {-1, 2}}, GcmType::Finite);
}

CofiniteIdeal mt(long p, unsigned e = 1) { return CofiniteIdeal::maximal({Rat(p)}, e); }
Weight w(std::vector<int> v) { return Weight{std::move(v), {}}; }

QuotientPtr quot(const CofiniteIdeal& I) { return commalg::quotient_algebra(I); }

ModuleVector vac() {
  ModuleVector v;
  v[PBWMonomial{}] = 1;
  return v;
}

}  // namespace

TEST_CASE("sl2 verma straightening identities") {
  auto B = quot(mt(0));
  Weight lam = w({2});
  auto psi = make_psi(lam, {Rat(0)}, mt(0));
  auto M = build_M(gcm_a1(), psi, std::nullopt, B, 6);
  for (const auto& [eta, d] : M.dims(6)) CHECK(d == 1);

  const auto& cb = M.algebra().chev();
  // e (f v) = lambda v
  ModuleVector fv = M.act(cb.lower_index(0), 0, vac());
  ModuleVector efv = M.act(cb.raise_index(0), 0, fv);
  REQUIRE(efv.size() == 1);
  CHECK(efv.begin()->second == Rat(2));
  // e (f^2 v) = 2(lambda-1) f v
  ModuleVector f2v = M.act(cb.lower_index(0), 0, fv);
  ModuleVector ef2v = M.act(cb.raise_index(0), 0, f2v);
  REQUIRE(ef2v.size() == 1);
  CHECK(ef2v.begin()->first == PBWMonomial{{0, 1}});
  CHECK(ef2v.begin()->second == Rat(2 * (2 - 1)));
  // WeightOverflow beyond the bound
  ModuleVector top;
  top[PBWMonomial{{0, 6}}] = 1;
  CHECK_THROWS_WITH_AS(static_cast<void>(M.act(cb.lower_index(0), 0, top)),
                       doctest::Contains("WeightOverflow"), Error);
}

TEST_CASE("nilpotent current kills the vacuum through t^2 = 0") {
  // sl2 tensor Q[t]/(t^2), psi at 0 with lambda = 1: (e ox t)(f ox t)v = 0
  auto B = quot(mt(0, 2));
  auto psi = make_psi(w({1}), {Rat(0)}, mt(0));
  auto M = build_M(gcm_a1(), psi, std::nullopt, B, 4);
  const auto& cb = M.algebra().chev();
  int bt = B->basis_index(0, {1});
  REQUIRE(bt >= 0);
  ModuleVector ft_v = M.act(cb.lower_index(0), bt, vac());
  CHECK(M.act(cb.raise_index(0), bt, ft_v).empty());
  // while (e ox 1)(f ox t)v = psi(h ox t)v = 0 too (weight at point 0 times t(0))
  CHECK(M.act(cb.raise_index(0), 0, ft_v).empty());
  // and (e ox 1)(f ox 1)v = v
  ModuleVector f1v = M.act(cb.lower_index(0), 0, vac());
  ModuleVector back = M.act(cb.raise_index(0), 0, f1v);
  REQUIRE(back.size() == 1);
  CHECK(back.begin()->second == Rat(1));
}

TEST_CASE("build_M dims match the character table") {
  // sl2, lambda=2, I=(t), B=Q[t]/(t^4): dim at k alpha is k+1
  auto table = rootsys::positive_roots(gcm_a1(), 8);
  Weight lam = w({2});
  auto psi = make_psi(lam, {Rat(0)}, mt(0));
  auto seq = standard_sequence(lam, mt(0), table);
  auto M = build_M(gcm_a1(), psi, seq, quot(mt(0, 4)), 5);
  auto ch = charcalc::character_of_M(psi, seq, 5);
  for (const auto& [eta, d] : M.dims(5)) {
    CHECK(d == ch.at(eta));
    CHECK(d == eta[0] + 1);
  }
  // lambda = 0 kills the string instantly
  auto psi0 = make_psi(w({0}), {Rat(0)}, mt(0));
  auto seq0 = standard_sequence(w({0}), mt(0), table);
  auto M0 = build_M(gcm_a1(), psi0, seq0, quot(mt(0, 4)), 3);
  CHECK(M0.dim_at({0}) == 1);
  CHECK(M0.dim_at({1}) == 0);
}

TEST_CASE("oracle equivalence on a2") {
  auto table = rootsys::positive_roots(gcm_a2(), 6);
  for (auto lam : {w({1, 0}), w({1, 1})}) {
    auto psi = make_psi(lam, {Rat(0)}, mt(0));
    auto seq = standard_sequence(lam, mt(0), table);
    long maxN = 0;
    for (const auto& r : table->roots) maxN = std::max(maxN, n_lambda_alpha(lam, r));
    auto B = quot(mt(0, static_cast<unsigned>(std::max(1L, maxN))));
    int H = 4;
    auto M = build_M(gcm_a2(), psi, seq, B, H);
    auto ch = charcalc::character_of_M(psi, seq, H);
    for (const auto& [eta, d] : M.dims(H)) CHECK(d == ch.at(eta));
  }
}

TEST_CASE("pbw order independence") {
  auto table = rootsys::positive_roots(gcm_a2(), 6);
  Weight lam = w({1, 1});
  auto psi = make_psi(lam, {Rat(0)}, mt(0));
  auto seq = standard_sequence(lam, mt(0), table);
  auto B = quot(mt(0, 2));
  BuildOptions o1, o2;
  o1.order = PBWOrder::HeightLex;
  o2.order = PBWOrder::HeightRevLex;
  auto M1 = build_M(gcm_a2(), psi, seq, B, 4, o1);
  auto M2 = build_M(gcm_a2(), psi, seq, B, 4, o2);
  CHECK(M1.dims(4) == M2.dims(4));

  auto W1 = build_W(gcm_a1(), make_psi(w({2}), {Rat(0)}, mt(0)), mt(0), quot(mt(0, 2)), 5, o1);
  auto W2 = build_W(gcm_a1(), make_psi(w({2}), {Rat(0)}, mt(0)), mt(0), quot(mt(0, 2)), 5, o2);
  CHECK(W1.dims(5) == W2.dims(5));
}

TEST_CASE("action axiom on random triples") {
  auto table = rootsys::positive_roots(gcm_a2(), 6);
  Weight lam = w({1, 1});
  auto psi = make_psi(lam, {Rat(0)}, mt(0));
  auto seq = standard_sequence(lam, mt(0), table);
  auto B = quot(mt(0, 2));
  auto M = build_M(gcm_a2(), psi, seq, B, 4);
  auto engine = M.engine();
  const auto& alg = M.algebra();
  int ngen = alg.chev().dim() * alg.dimB();

  std::mt19937_64 rng(23);
  // random ambient vectors of height <= 2 so brackets stay inside the budget
  std::vector<PBWMonomial> pool;
  for (const auto& eta : std::vector<std::vector<int>>{{0, 0}, {1, 0}, {0, 1}, {1, 1}})
    for (const auto& m : M.ambient_basis(eta)) pool.push_back(m);
  for (int trial = 0; trial < 300; ++trial) {
    int g1 = static_cast<int>(rng() % ngen), g2 = static_cast<int>(rng() % ngen);
    ModuleVector v;
    v[pool[rng() % pool.size()]] = Rat(1 + static_cast<long>(rng() % 3));
    if (trial % 2) v[pool[rng() % pool.size()]] += Rat(-2);
    ModuleVector lhs = engine->apply_comb(alg.bracket_gens(g1, g2), v);
    ModuleVector g2v = engine->apply_gen(g2, v);
    ModuleVector rhs = engine->apply_gen(g1, g2v);
    ModuleVector g1v = engine->apply_gen(g1, v);
    mv_axpy(rhs, Rat(-1), engine->apply_gen(g2, g1v));
    CHECK(lhs == rhs);
  }
}

TEST_CASE("closure soundness: relation vectors die in the quotient") {
  auto table = rootsys::positive_roots(gcm_a2(), 6);
  Weight lam = w({1, 1});
  auto psi = make_psi(lam, {Rat(0)}, mt(0));
  auto seq = standard_sequence(lam, mt(0), table);
  auto B = quot(mt(0, 2));
  auto M = build_M(gcm_a2(), psi, seq, B, 4);
  // every defining relation vector reduces to zero
  for (size_t r = 0; r < table->roots.size(); ++r) {
    for (int b : B->ideal_image_basis(seq.entries[r])) {
      ModuleVector v;
      v[PBWMonomial{{static_cast<int>(r) * B->dim() + b, 1}}] = 1;
      CHECK(M.in_closure(v));
    }
  }
  // and stays dead under lowering
  ModuleVector rel;
  int b1 = B->basis_index(0, {1});
  rel[PBWMonomial{{0 * B->dim() + b1, 1}}] = 1;  // X_{-alpha} ox t with N=1
  auto moved = M.engine()->apply_gen(M.algebra().gen(M.algebra().chev().lower_index(1), 0), rel);
  CHECK(M.in_closure(moved));
}

TEST_CASE("weyl modules at desk scale") {
  // lambda=1, I=(t), B=Q[t]/(t): the fundamental evaluation module
  auto W1 = build_W(gcm_a1(), make_psi(w({1}), {Rat(0)}, mt(0)), mt(0), quot(mt(0)), 4);
  CHECK(W1.dims(4) == std::map<std::vector<int>, long>{{{0}, 1}, {{1}, 1}, {{2}, 0}, {{3}, 0}, {{4}, 0}});
  CHECK(W1.total_dim() == 2);
  CHECK(W1.audit().ran);
  CHECK(W1.audit().pass);

  // lambda=2 at one point: the dims of the order-2 string (recorded data)
  auto W2 = build_W(gcm_a1(), make_psi(w({2}), {Rat(0)}, mt(0)), mt(0), quot(mt(0, 2)), 5);
  CHECK(W2.dim_at({0}) == 1);
  CHECK(W2.dim_at({1}) == 2);
  CHECK(W2.dim_at({2}) == 1);
  CHECK(W2.dim_at({3}) == 0);
  CHECK(W2.total_dim() == 4);
  CHECK(W2.audit().pass);

  // two points, lambda_i = 1 each: total 4 = dim V(1) tensor V(1)
  auto I = commalg::intersect(mt(0), mt(1));
  auto psi = psi_add(make_psi(w({1}), {Rat(0)}, mt(0)), make_psi(w({1}), {Rat(1)}, mt(1)));
  auto W = build_W(gcm_a1(), psi, I, quot(I), 4);
  CHECK(W.total_dim() == 4);
  CHECK(W.audit().pass);
  CHECK(W.complete());
}

TEST_CASE("evaluation module construction") {
  auto psi = psi_add(make_psi(w({1}), {Rat(0)}, mt(0)), make_psi(w({1}), {Rat(1)}, mt(1)));
  auto E = evaluation_module(gcm_a1(), psi);
  CHECK(E.total_dim() == 4);
  CHECK(cyclicity_audit(E));
  // (f ox t)(v ox v) = v ox (f v): acting by t selects the slot at point 1
  const auto& cb = *E.chev;
  int dB = E.B->dim();
  SparseVec timg = E.B->reduce(poly_parse("t", 1));
  std::vector<int> eta0{0};
  std::vector<Rat> out(static_cast<size_t>(E.dim_at({1})), Rat(0));
  for (const auto& [b, c] : timg) {
    auto part = E.apply(cb.lower_index(0) * dB + b, eta0, E.highest);
    for (size_t k = 0; k < out.size(); ++k) out[k] += c * part[k];
  }
  // exactly one nonzero coordinate with coefficient 1 (the v ox fv line)
  int nonzero = 0;
  for (const auto& c : out)
    if (!is_zero(c)) ++nonzero;
  CHECK(nonzero == 1);
  // (f ox t(t-1)) kills the highest vector
  SparseVec qimg = E.B->reduce(poly_parse("t*(t-1)", 1));
  CHECK(qimg.empty());
  // single point, lambda = 2: the classical three-dimensional module
  auto E2 = evaluation_module(gcm_a1(), make_psi(w({2}), {Rat(0)}, mt(0)));
  CHECK(E2.total_dim() == 3);
  // singular vectors: only the highest line
  CHECK(singular_vectors(E, {0}).size() == 1);
  CHECK(singular_vectors(E, {1}).empty());
  CHECK(singular_vectors(E, {2}).empty());
  CHECK_THROWS_WITH_AS(
      static_cast<void>(evaluation_module(
          gcm_a1(), Psi{w({2}),
                        {PsiSummand{{Rat(0)}, w({1})}, PsiSummand{{Rat(0)}, w({1})}},
                        mt(0)})),
      doctest::Contains("DuplicatePoint"), Error);
}

TEST_CASE("tensor module dims are the graded convolution") {
  auto table = rootsys::positive_roots(gcm_a1(), 6);
  auto psi1 = make_psi(w({1}), {Rat(0)}, mt(0));
  auto psi2 = make_psi(w({1}), {Rat(1)}, mt(1));
  auto seq1 = standard_sequence(w({1}), mt(0), table);
  auto seq2 = standard_sequence(w({1}), mt(1), table);
  auto M1 = build_M(gcm_a1(), psi1, seq1, quot(mt(0)), 4);
  auto M2 = build_M(gcm_a1(), psi2, seq2, quot(mt(1)), 4);
  auto E1 = explicit_from_quotient(M1);
  auto E2 = explicit_from_quotient(M2);
  auto T = tensor_module(E1, E2, 4);
  for (int k = 0; k <= 4; ++k) {
    long expect = 0;
    for (int a = 0; a <= k; ++a) expect += E1.dim_at({a}) * E2.dim_at({k - a});
    CHECK(T.dim_at({k}) == expect);
    CHECK(T.dim_at({k}) == k + 1);  // both factors are single strings
  }
  // coproduct Leibniz check on random vectors: delta(g) after delta(h) minus
  // the reverse equals delta([g,h])
  std::mt19937_64 rng(5);
  int dB = T.B->dim();
  for (int trial = 0; trial < 60; ++trial) {
    int ngen = T.chev->dim() * dB;
    int g1 = static_cast<int>(rng() % ngen), g2 = static_cast<int>(rng() % ngen);
    std::vector<int> eta{static_cast<int>(rng() % 3)};
    long d = T.dim_at(eta);
    std::vector<Rat> v(d);
    for (auto& x : v) x = Rat(static_cast<long>(rng() % 5) - 2);
    // compute [g1,g2] in the map algebra over T.B
    MapAlgebra alg(T.chev, T.B);
    std::vector<int> e1 = eta, e2 = eta;
    auto shift = [&](int g, std::vector<int> from) {
      int lie = g / dB;
      int r = T.chev->root_of(lie);
      if (r >= 0) {
        const auto& c = T.chev->table()->roots[r].coords;
        for (size_t i = 0; i < from.size(); ++i)
          from[i] += (T.chev->is_lowering(lie) ? c[i] : -c[i]);
      }
      return from;
    };
    auto ok = [&](const std::vector<int>& e) {
      for (int x : e)
        if (x < 0) return false;
      int h = 0;
      for (int x : e) h += x;
      return h <= T.height_bound;
    };
    std::vector<int> m1 = shift(g2, eta);
    if (!ok(m1) || !ok(shift(g1, m1)) || !ok(shift(g2, shift(g1, eta)))) continue;
    auto lhs1 = T.apply(g1, m1, T.apply(g2, eta, v));
    auto rhs1 = T.apply(g2, shift(g1, eta), T.apply(g1, eta, v));
    std::vector<Rat> diff(lhs1.size(), Rat(0));
    for (size_t k = 0; k < diff.size(); ++k) diff[k] = lhs1[k] - rhs1[k];
    std::vector<Rat> want(diff.size(), Rat(0));
    for (const auto& [gb, c] : alg.bracket_gens(g1, g2)) {
      if (!ok(shift(gb, eta))) continue;
      auto part = T.apply(gb, eta, v);
      for (size_t k = 0; k < want.size(); ++k) want[k] += c * part[k];
    }
    CHECK(diff == want);
  }
  // mismatched algebras
  auto tableb = rootsys::positive_roots(gcm_a2(), 6);
  auto psib = make_psi(w({1, 0}), {Rat(0)}, mt(0));
  auto seqb = standard_sequence(w({1, 0}), mt(0), tableb);
  auto Mb = build_M(gcm_a2(), psib, seqb, quot(mt(0)), 3);
  CHECK_THROWS_WITH_AS(static_cast<void>(tensor_module(E1, explicit_from_quotient(Mb), 3)),
                       doctest::Contains("AlgebraMismatch"), Error);
}

TEST_CASE("nested annihilation instances") {
  // n = 0: the defining relation
  auto table = rootsys::positive_roots(gcm_a1(), 6);
  Weight lam = w({1});
  auto psi = make_psi(lam, {Rat(0)}, mt(0));
  auto seq = standard_sequence(lam, mt(0), table);
  auto B = quot(mt(0, 4));
  auto M = build_M(gcm_a1(), psi, seq, B, 5);
  CHECK(verify_nested_annihilation(M, 0, {}, {}));

  // sl2, n = 1, I_beta = (t)^2, B = Q[t]/(t^4): X ox t^3 after X ox t
  Weight lam2 = w({2});
  auto psi2 = make_psi(lam2, {Rat(0)}, mt(0));
  auto seq2 = standard_sequence(lam2, mt(0), table);
  auto M2 = build_M(gcm_a1(), psi2, seq2, B, 5);
  int bt = B->basis_index(0, {1});
  CHECK(verify_nested_annihilation(M2, 0, {0}, {SparseVec{{bt, Rat(1)}}}));

  // A2 with beta = alpha1+alpha2, gamma1 = alpha1
  auto ta2 = rootsys::positive_roots(gcm_a2(), 6);
  Weight lama = w({1, 1});
  auto psia = make_psi(lama, {Rat(0)}, mt(0));
  auto seqa = standard_sequence(lama, mt(0), ta2);
  auto Ba = quot(mt(0, 6));
  auto Ma = build_M(gcm_a2(), psia, seqa, Ba, 4);
  int beta = ta2->find({1, 1});
  int gamma = ta2->find({1, 0});
  CHECK(verify_nested_annihilation(Ma, beta, {gamma}, {SparseVec{{0, Rat(1)}}}));
  // order violation: gamma not below beta
  int alpha2 = ta2->find({0, 1});
  CHECK_THROWS_WITH_AS(
      static_cast<void>(verify_nested_annihilation(Ma, gamma, {alpha2}, {SparseVec{{0, Rat(1)}}})),
      doctest::Contains("OrderViolation"), Error);
}

TEST_CASE("resource cap is enforced") {
  auto table = rootsys::positive_roots(gcm_a1(), 8);
  Weight lam = w({1});
  auto psi = make_psi(lam, {Rat(0)}, mt(0));
  auto seq = standard_sequence(lam, mt(0), table);
  BuildOptions opts;
  opts.max_space_dim = 3;
  CHECK_THROWS_WITH_AS(
      static_cast<void>(build_M(gcm_a1(), psi, seq, quot(mt(0, 4)), 6, opts)),
      doctest::Contains("ResourceCap"), Error);
}
