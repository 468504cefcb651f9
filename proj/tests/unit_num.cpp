#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "weylforge/polynomial.hpp"
#include "weylforge/rational.hpp"
#include "weylforge/sparse_linalg.hpp"

using namespace weylforge;

TEST_CASE("rational parse and print") {
  CHECK(rat_str(rat_parse("3/6")) == "1/2");
  CHECK(rat_str(rat_parse("-4/2")) == "-2");
  CHECK(rat_str(rat_parse(" 7 ")) == "7");
  CHECK(rat_parse("2/3") + rat_parse("1/3") == Rat(1));
  CHECK_THROWS_AS(rat_parse("a/b"), Error);
  CHECK_THROWS_AS(rat_parse("1/0"), Error);
}

TEST_CASE("sparse axpy") {
  SparseVec a{{0, Rat(1)}, {2, Rat(3)}};
  SparseVec b{{0, Rat(-1)}, {1, Rat(5)}};
  SparseVec c = sv_add(a, b);
  CHECK(c == SparseVec{{1, Rat(5)}, {2, Rat(3)}});
  CHECK(sv_axpy(a, Rat(0), b) == a);
  CHECK(sv_get(a, 2) == Rat(3));
  CHECK(sv_get(a, 1) == Rat(0));
}

TEST_CASE("row basis rank and membership") {
  RowBasis rb;
  CHECK(rb.add({{0, Rat(1)}, {1, Rat(2)}}));
  CHECK(rb.add({{1, Rat(1)}, {2, Rat(1)}}));
  CHECK_FALSE(rb.add({{0, Rat(2)}, {1, Rat(6)}, {2, Rat(2)}}));  // sum of the two
  CHECK(rb.rank() == 2);
  CHECK(rb.contains({{0, Rat(-1)}, {1, Rat(-1)}, {2, Rat(1)}}));
  CHECK_FALSE(rb.contains({{2, Rat(1)}}));
}

TEST_CASE("row basis matches dense gauss on random matrices") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 50; ++trial) {
    int rows = 1 + static_cast<int>(rng() % 6), cols = 1 + static_cast<int>(rng() % 6);
    std::vector<std::vector<long>> m(rows, std::vector<long>(cols));
    for (auto& r : m)
      for (auto& x : r) x = static_cast<long>(rng() % 7) - 3;
    // dense rank by fraction-free elimination oracle
    auto dense = m;
    int rank = 0;
    for (int c = 0; c < cols && rank < rows; ++c) {
      int p = -1;
      for (int r = rank; r < rows; ++r)
        if (dense[r][c] != 0) {
          p = r;
          break;
        }
      if (p < 0) continue;
      std::swap(dense[p], dense[rank]);
      for (int r = rank + 1; r < rows; ++r) {
        // row_r := row_r * lead - row_rank * entry  (stays integral)
        long f = dense[r][c], lead = dense[rank][c];
        for (int k = 0; k < cols; ++k) dense[r][k] = dense[r][k] * lead - dense[rank][k] * f;
      }
      ++rank;
    }
    RowBasis rb;
    for (const auto& r : m) {
      SparseVec v;
      for (int k = 0; k < cols; ++k)
        if (r[k] != 0) v.emplace_back(k, Rat(r[k]));
      rb.add(v);
    }
    CHECK(rb.rank() == rank);
  }
}

TEST_CASE("kernel basis solves the equations") {
  std::vector<SparseVec> rows{{{0, Rat(1)}, {1, Rat(1)}, {2, Rat(1)}},
                              {{1, Rat(1)}, {2, Rat(2)}}};
  auto ker = kernel_basis(rows, 3);
  REQUIRE(ker.size() == 1);
  for (const auto& row : rows) {
    Rat dot(0);
    for (const auto& [i, c] : row) dot += c * ker[0][i];
    CHECK(dot == Rat(0));
  }
}

TEST_CASE("polynomial arithmetic and parser") {
  Poly p = poly_parse("t^2-t", 1);
  CHECK(p.degree() == 2);
  CHECK(p.eval({Rat(1)}) == Rat(0));
  CHECK(p.eval({Rat(2)}) == Rat(2));
  Poly q = poly_parse("(t-1)*t", 1);
  CHECK(p == q);
  CHECK(poly_parse("x*y - 2*z^3", 3).eval({Rat(1), Rat(2), Rat(1)}) == Rat(0));
  CHECK(poly_parse("1/2*t + 1/2*t", 1) == poly_parse("t", 1));
  CHECK_THROWS_AS(poly_parse("u+1", 1), Error);
  CHECK_THROWS_AS(poly_parse("t+", 1), Error);
}

TEST_CASE("taylor shift recentres exactly") {
  Poly p = poly_parse("t^3 - 2*t + 5", 1);
  Poly sh = p.shift({Rat(2)});  // p(t+2) = t^3 + 6t^2 + 10t + 9
  CHECK(sh.coeff({0}) == Rat(9));
  CHECK(sh.coeff({1}) == Rat(10));
  CHECK(sh.coeff({2}) == Rat(6));
  CHECK(sh.coeff({3}) == Rat(1));
  // multivariate: f(x+1, y-1) at (0,0) equals f(1,-1)
  Poly f = poly_parse("x^2*y + 3*y^2 - x", 2);
  Poly g = f.shift({Rat(1), Rat(-1)});
  CHECK(g.coeff({0, 0}) == f.eval({Rat(1), Rat(-1)}));
}
