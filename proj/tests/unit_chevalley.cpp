#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "weylforge/chevalley.hpp"

using namespace weylforge;
using namespace weylforge::modeng;
using rootsys::GcmType;
using rootsys::validate_gcm;

namespace {

ChevalleyPtr build(std::vector<std::vector<int>> a) {
  return ChevalleyBasis::build(validate_gcm(std::move(a), GcmType::Finite));
}

}  // namespace

TEST_CASE("sl2 relations") {
  auto cb = build({{2}});
  CHECK(cb->dim() == 3);
  int e = cb->raise_index(0), f = cb->lower_index(0), h = cb->cartan_index(0);
  CHECK(cb->bracket(e, f) == LieComb{{h, Rat(1)}});
  CHECK(cb->bracket(h, e) == LieComb{{e, Rat(2)}});
  CHECK(cb->bracket(h, f) == LieComb{{f, Rat(-2)}});
}

TEST_CASE("a2 chain bracket sign is recorded") {
  auto cb = build({{2, -1}, {-1, 2}});
  CHECK(cb->num_pos() == 3);
  // [X_alpha1, X_alpha2] = +-X_{alpha1+alpha2}; the chain construction pins it
  int r1 = cb->table()->find({1, 0});
  int r2 = cb->table()->find({0, 1});
  int r12 = cb->table()->find({1, 1});
  LieComb b = cb->bracket(cb->raise_index(r1), cb->raise_index(r2));
  REQUIRE(b.size() == 1);
  CHECK(b[0].first == cb->raise_index(r12));
  CHECK((b[0].second == 1 || b[0].second == -1));
  CHECK(cb->realization_note().find("sl3") != std::string::npos);
}

TEST_CASE("all supported types verify and have the right root counts") {
  CHECK(build({{2}})->num_pos() == 1);
  CHECK(build({{2, -1}, {-1, 2}})->num_pos() == 3);
  CHECK(build({{2, -1}, {-2, 2}})->num_pos() == 4);
  CHECK(build({{2, -2}, {-1, 2}})->num_pos() == 4);  // transposed labeling
  CHECK(build({{2, -1}, {-3, 2}})->num_pos() == 6);
  CHECK(build({{2, -3}, {-1, 2}})->num_pos() == 6);
  // verify() runs at build time; run it once more explicitly
  build({{2, -1}, {-3, 2}})->verify();
}

TEST_CASE("b2 labelings agree up to swapping simple roots") {
  auto cb1 = build({{2, -1}, {-2, 2}});
  auto cb2 = build({{2, -2}, {-1, 2}});
  // highest root heights agree; pairings transpose
  CHECK(cb1->table()->roots.back().height == 3);
  CHECK(cb2->table()->roots.back().height == 3);
  int s1 = cb1->table()->find({1, 0});
  CHECK(cb1->pairing(s1, 0) == 2);
}

TEST_CASE("coroots of non-simple roots are integer h-combinations") {
  for (auto gcm : {std::vector<std::vector<int>>{{2, -1}, {-1, 2}},
                   std::vector<std::vector<int>>{{2, -1}, {-2, 2}},
                   std::vector<std::vector<int>>{{2, -1}, {-3, 2}}}) {
    auto cb = build(gcm);
    for (int r = 0; r < cb->num_pos(); ++r) {
      LieComb co = cb->coroot(r);
      CHECK(!co.empty());
      for (const auto& [k, c] : co) {
        CHECK(cb->is_cartan(k));
        CHECK(c.get_den() == 1);  // integral coroot coordinates
      }
    }
  }
}

TEST_CASE("unsupported inputs are rejected") {
  CHECK_THROWS_WITH_AS(static_cast<void>(build({{2, 0}, {0, 2}})),
                       doctest::Contains("UnsupportedType"), Error);  // A1 x A1
  CHECK_THROWS_WITH_AS(
      static_cast<void>(build({{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}})),
      doctest::Contains("UnsupportedType"), Error);  // A3 beyond the supported set
  auto aff = validate_gcm({{2, -2}, {-2, 2}}, GcmType::AffineUntwisted);
  CHECK_THROWS_AS(static_cast<void>(ChevalleyBasis::build(aff)), Error);
}

TEST_CASE("g2 realization acts on the octonions") {
  auto cb = build({{2, -1}, {-3, 2}});
  CHECK(cb->matrix(0).size() == 8);
  CHECK(cb->realization_note().find("octonion") != std::string::npos);
  // highest root (3,2)... wait in (alpha1 long?) user labeling: heights go to 5
  CHECK(cb->table()->roots.back().height == 5);
}
