#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "weylforge/hwdata.hpp"

using namespace weylforge;
using namespace weylforge::hwdata;
using rootsys::GcmType;
using rootsys::validate_gcm;

namespace {

CofiniteIdeal mt(long p, unsigned e = 1) { return CofiniteIdeal::maximal({Rat(p)}, e); }

rootsys::TablePtr table_a1() { return rootsys::positive_roots(validate_gcm({{2}}, GcmType::Finite), 6); }
rootsys::TablePtr table_a2() {
  return rootsys::positive_roots(validate_gcm({{2, -1}, {-1, 2}}, GcmType::Finite), 6);
}
rootsys::TablePtr table_b2() {
  return rootsys::positive_roots(validate_gcm({{2, -1}, {-2, 2}}, GcmType::Finite), 6);
}

Weight w(std::vector<int> v) { return Weight{std::move(v), {}}; }

}  // namespace

TEST_CASE("coroot pairing and n_lambda_alpha") {
  CHECK(coroot_pairing(w({1, 1}), 1) == 1);
  CHECK(coroot_pairing(w({0, 3}), 1) == 0);
  CHECK(coroot_pairing(w({2}), 1) == 2);
  CHECK_THROWS_WITH_AS(static_cast<void>(coroot_pairing(w({1}), 2)),
                       doctest::Contains("IndexOutOfRange"), Error);

  auto a2 = table_a2();
  const auto& hr = a2->roots[2];  // alpha1+alpha2
  CHECK(n_lambda_alpha(w({1, 1}), hr) == 2);
  CHECK(n_lambda_alpha(w({0, 2}), a2->roots[1]) == 0);
  CHECK(n_lambda_alpha(w({3}), table_a1()->roots[0]) == 3);
  CHECK_THROWS_WITH_AS(static_cast<void>(n_lambda_alpha(w({-1, 0}), hr)),
                       doctest::Contains("NotDominant"), Error);
  // additivity over root sums
  for (auto table : {table_a2(), table_b2()}) {
    for (size_t a = 0; a < table->roots.size(); ++a)
      for (size_t b = 0; b < table->roots.size(); ++b) {
        int s = rootsys::root_sum_index(*table, static_cast<int>(a), static_cast<int>(b));
        if (s < 0) continue;
        Weight lam = w({2, 1});
        CHECK(n_lambda_alpha(lam, table->roots[s]) ==
              n_lambda_alpha(lam, table->roots[a]) + n_lambda_alpha(lam, table->roots[b]));
      }
  }
}

TEST_CASE("standard sequence examples") {
  auto a1 = table_a1();
  auto seq = standard_sequence(w({2}), mt(0), a1);
  CHECK(seq.entries[0] == mt(0, 2));
  CHECK(codim(seq.entries[0]) == 2);
  CHECK(validate_sequence(seq).pass);

  auto a2 = table_a2();
  auto seq2 = standard_sequence(w({1, 1}), mt(0), a2);
  CHECK(seq2.entries[0] == mt(0));
  CHECK(seq2.entries[2] == mt(0, 2));
  CHECK(codim(seq2.entries[0]) == 1);
  CHECK(codim(seq2.entries[2]) == 2);
  CHECK(validate_sequence(seq2).pass);

  auto zero = standard_sequence(w({0, 0}), mt(0), a2);
  for (const auto& e : zero.entries) CHECK(e.is_unit());
  CHECK(validate_sequence(zero).pass);
}

TEST_CASE("k sequence examples") {
  auto a1 = table_a1();
  auto seq = k_sequence(w({1}), mt(0), w({1}), mt(1), a1);
  CHECK(seq.entries[0] == intersect(mt(0), mt(1)));
  CHECK(codim(seq.entries[0]) == 2);
  CHECK(validate_sequence(seq).pass);

  // mu = 0 absorbs into the I side
  auto seq0 = k_sequence(w({2}), mt(0), w({0}), mt(1), a1);
  CHECK(seq0.entries[0] == mt(0, 2));

  auto a2 = table_a2();
  auto seqk = k_sequence(w({1, 1}), mt(0), w({1, 1}), mt(1), a2);
  CHECK(codim(seqk.entries[2]) == 4);
  CHECK(validate_sequence(seqk).pass);

  CHECK_THROWS_WITH_AS(static_cast<void>(k_sequence(w({1}), mt(0), w({1}), mt(0), a1)),
                       doctest::Contains("NotCoprime"), Error);
}

TEST_CASE("validate_sequence flags seeded violations") {
  auto a2 = table_a2();
  auto seq = standard_sequence(w({1, 1}), mt(0), a2);
  std::swap(seq.entries[0], seq.entries[2]);  // reverse containment at alpha2 vs highest root
  auto rep = validate_sequence(seq);
  CHECK_FALSE(rep.pass);
  CHECK(!rep.violations.empty());
  CHECK(rep.violations.front().find("condition (1)") != std::string::npos);
}

TEST_CASE("sequence validation over random instances") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    auto table = (trial % 3 == 0) ? table_a1() : (trial % 3 == 1 ? table_a2() : table_b2());
    int l = table->gcm.rank;
    std::vector<int> lam(l), mu(l);
    for (auto& x : lam) x = static_cast<int>(rng() % 4);
    for (auto& x : mu) x = static_cast<int>(rng() % 3);
    auto I = mt(static_cast<long>(rng() % 3), 1 + static_cast<unsigned>(rng() % 2));
    auto J = mt(5 + static_cast<long>(rng() % 3), 1 + static_cast<unsigned>(rng() % 2));
    CHECK(validate_sequence(standard_sequence(w(lam), I, table)).pass);
    CHECK(validate_sequence(k_sequence(w(lam), I, w(mu), J, table)).pass);
  }
}

TEST_CASE("psi consistency") {
  auto psi0 = make_psi(w({1}), {Rat(0)}, mt(0, 2));
  CHECK(psi_consistency(psi0));
  auto psi_bad = make_psi(w({1}), {Rat(1)}, mt(0));
  CHECK_FALSE(psi_consistency(psi_bad));
  auto psi1 = make_psi(w({1}), {Rat(1)}, mt(1));
  auto sum = psi_add(psi0, psi1);
  CHECK(psi_consistency(sum));
  CHECK(sum.weight == w({2}));
  CHECK(sum.annihilating_ideal == intersect(mt(0, 2), mt(1)));
}

TEST_CASE("psi_add rejects shared points and is commutative-associative") {
  auto p0 = make_psi(w({1}), {Rat(0)}, mt(0));
  auto p1 = make_psi(w({2}), {Rat(1)}, mt(1));
  auto p2 = make_psi(w({1}), {Rat(2)}, mt(2));
  CHECK_THROWS_WITH_AS(static_cast<void>(psi_add(p0, p0)), doctest::Contains("SharedPoint"),
                       Error);
  auto ab = psi_add(p0, p1);
  auto ba = psi_add(p1, p0);
  CHECK(ab.weight == ba.weight);
  CHECK(ab.annihilating_ideal == ba.annihilating_ideal);
  CHECK(ab.evaluation_data.size() == ba.evaluation_data.size());
  for (size_t i = 0; i < ab.evaluation_data.size(); ++i)
    CHECK(ab.evaluation_data[i].point == ba.evaluation_data[i].point);
  auto abc = psi_add(psi_add(p0, p1), p2);
  auto acb = psi_add(p0, psi_add(p1, p2));
  CHECK(abc.weight == acb.weight);
  CHECK(abc.annihilating_ideal == acb.annihilating_ideal);
  // psi + zero functional = psi
  Psi zero{w({0}), {}, CofiniteIdeal::unit(1)};
  auto same = psi_add(p0, zero);
  CHECK(same.weight == p0.weight);
  CHECK(same.evaluation_data.size() == 1);
}

TEST_CASE("three summands across three points") {
  auto p0 = make_psi(w({1}), {Rat(0)}, mt(0));
  auto p1 = make_psi(w({1}), {Rat(1)}, mt(1));
  auto p2 = make_psi(w({1}), {Rat(2)}, mt(2));
  auto psi = psi_add(psi_add(p0, p1), p2);
  CHECK(psi.weight == w({3}));
  CHECK(psi.evaluation_data.size() == 3);
  CHECK(codim(psi.annihilating_ideal) == 3);
  CHECK(psi_consistency(psi));
}
