#include "doctest.h"
#include "leib/catalog.hpp"
#include "leib/literal.hpp"
#include "../support/printing.hpp"

using namespace leib;

TEST_CASE("catalog inventory") {
  const auto& cat = builtin_catalog();
  CHECK(cat.size() == 48);
  std::size_t non_lie = 0, lie = 0, nil = 0;
  for (const auto& e : cat) {
    if (e.group == CatalogGroup::non_lie) ++non_lie;
    if (e.group == CatalogGroup::lie) ++lie;
    if (e.group == CatalogGroup::nilpotent) ++nil;
  }
  CHECK(non_lie == 40);
  CHECK(lie == 4);
  CHECK(nil == 4);
}

TEST_CASE("tag coherence") {
  for (const auto& e : builtin_catalog()) {
    CHECK(derive_tags(e.algebra) == e.tags);
    if (e.group == CatalogGroup::non_lie) {
      CHECK_MESSAGE(!is_lie(e.algebra), e.label());
      CHECK_MESSAGE(!is_nilpotent(e.algebra), e.label());
      CHECK_MESSAGE(is_solvable(e.algebra), e.label());
    }
  }
}

TEST_CASE("builtin lookups") {
  const auto& r3 = builtin("R_3").algebra;
  CHECK(r3.at(1, 3, 3) == Scalar(-1));
  CHECK(r3.at(2, 0, 2) == Scalar(1));
  CHECK(r3.at(3, 1, 3) == Scalar(1));
  const auto& n3 = builtin("N_3^a").algebra;
  CHECK(n3.at(0, 1, 3) == parse_scalar("a"));
  CHECK(n3.at(1, 0, 3) == parse_scalar("-a"));
  CHECK(builtin("sl_2").algebra.at(1, 2, 0) == Scalar(1));
  CHECK(builtin("g_5(a)").label() == "g_5^a");
  CHECK_THROWS_AS(builtin("L_99"), std::out_of_range);
}

TEST_CASE("parse algebra") {
  auto e = parse_algebra("name: L_44\ndim: 4\ne1 e2 = -e2\ne2 e1 = e2\ne2 e2 = e3\ne3 e1 = 2 e3\ne3 e2 = e4\ne4 e1 = 3 e4\n");
  CHECK(e.algebra.same_constants(builtin("L_44").algebra));
  auto zero = parse_algebra("name: Z\ndim: 4\n");
  CHECK(zero.algebra.is_zero());
  auto g5 = parse_algebra("name: g\ndim: 4\nparams: a\ne1 e4 = (a+1) e4\ne4 e1 = -(a+1)*e4\n");
  CHECK(g5.algebra.at(0, 3, 3) == parse_scalar("a+1"));
  CHECK(g5.algebra.at(3, 0, 3) == parse_scalar("-a-1"));
  CHECK_THROWS_AS(parse_algebra("name: X\ndim: 4\ne1 e2 = q e3\n"), ParseError);
  CHECK_THROWS_AS(parse_algebra("name: X\ndim: 4\ne1 e5 = e3\n"), ParseError);
  CHECK_THROWS_AS(parse_algebra("name: X\ndim: 4\ne1 e2 = e3 +\n"), ParseError);
  auto l8 = builtin("L_8");
  CHECK(l8.restrictions.size() == 2);
}

TEST_CASE("serialize round trip") {
  for (const auto& e : builtin_catalog()) {
    auto again = parse_algebra(serialize_algebra(e));
    CHECK_MESSAGE(again.algebra.same_constants(e.algebra), e.label());
    CHECK(again.label() == e.label());
    CHECK(again.algebra.params() == e.algebra.params());
    REQUIRE(again.restrictions.size() == e.restrictions.size());
    for (std::size_t i = 0; i < e.restrictions.size(); ++i)
      CHECK(again.restrictions[i].poly == e.restrictions[i].poly);
  }
}
