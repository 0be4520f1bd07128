#include <random>

#include "doctest.h"
#include "leib/groebner.hpp"
#include "leib/literal.hpp"
#include "leib/locus.hpp"
#include "leib/matrix.hpp"
#include "../support/printing.hpp"
#include "../support/random_scalars.hpp"

using namespace leib;

namespace {
Scalar S(const char* text) { return parse_scalar(text); }
MultiPoly P(const char* text) { return parse_poly(text); }
}  // namespace

TEST_CASE("gaussian arithmetic") {
  CHECK(Gaussian::fraction(1, 2) + Gaussian::fraction(1, 2) == Gaussian(1));
  CHECK(Gaussian::imag_unit() * Gaussian::imag_unit() == Gaussian(-1));
  CHECK((Gaussian(1, 2) / Gaussian(1, 2)).is_one());
  CHECK(Gaussian(0, 1).to_string() == "i");
  CHECK(Gaussian(0, -1).to_string() == "-i");
  CHECK(Gaussian(Rational(0), Rational(1, 2)).to_string() == "1/2*i");
}

TEST_CASE("scalar arithmetic examples") {
  CHECK(S("1/2") + S("1/2") == Scalar(1));
  CHECK(S("i") * S("i") == Scalar(-1));
  CHECK(S("a^2-1") / S("a-1") == S("a+1"));
  CHECK((S("a^2-1") / S("a-1")).is_polynomial());
  CHECK_THROWS_AS(S("1") / Scalar(0), std::domain_error);
}

TEST_CASE("polynomial long division oracle") {
  // (a^3 - 2a + 1) = (a - 1)(a^2 + a - 1)
  auto q = divide_exact(P("a^3-2*a+1"), P("a-1"));
  REQUIRE(q);
  CHECK(*q == P("a^2+a-1"));
  CHECK_FALSE(divide_exact(P("a^2+1"), P("a-1")));
}

TEST_CASE("substitution") {
  CHECK(substitute(S("a+1"), {{"a", S("t-1")}}) == S("t"));
  CHECK(substitute(S("-a/(1-a)^2"), {{"a", Scalar(2)}}) == Scalar(-2));
  CHECK_THROWS_AS(substitute(S("1/(a-1)"), {{"a", Scalar(1)}}), ExceptionalValue);
  // simultaneous: a -> b, b -> a
  CHECK(substitute(S("a-2*b"), {{"a", S("b")}, {"b", S("a")}}) == S("b-2*a"));
}

TEST_CASE("literal round trip") {
  for (const char* text : {"-a/(1-a)^2", "1/2*i", "(t^2+1)/4", "a*b - 3/7", "(1+2*i)*a"}) {
    Scalar x = S(text);
    CHECK(parse_scalar(x.to_string()) == x);
  }
  CHECK_THROWS_AS(parse_scalar("a+q", new std::set<std::string>{"a"}), ParseError);
}

TEST_CASE("matrix examples") {
  CHECK(rank(ScalarMatrix::identity(2)) == 2);
  ScalarMatrix m = ScalarMatrix::from_rows(std::vector<ScalarVector>{ScalarVector{S("1"), S("a")}, ScalarVector{S("0"), S("0")}}, 2);
  auto e = eliminate(m);
  auto ker = kernel_basis(e);
  REQUIRE(ker.size() == 1);
  CHECK(ker[0][0] == S("-a"));
  CHECK(ker[0][1] == Scalar(1));
  CHECK(e.pivot_product.is_constant());

  ScalarMatrix t = ScalarMatrix::from_rows(std::vector<ScalarVector>{ScalarVector{S("t"), S("0")}, ScalarVector{S("1"), S("t")}}, 2);
  ScalarMatrix inv = inverse(t);
  CHECK(inv(0, 0) == S("1/t"));
  CHECK(inv(0, 1) == Scalar(0));
  CHECK(inv(1, 0) == S("-1/t^2"));
  CHECK(inv(1, 1) == S("1/t"));
  CHECK_THROWS_AS(inverse(ScalarMatrix::from_rows(std::vector<ScalarVector>{ScalarVector{S("a"), S("1")}, ScalarVector{S("a^2"), S("a")}}, 2)), SingularMatrix);
}

TEST_CASE("locus resolution") {
  auto pts = resolve_locus(P("a^2+a"));
  REQUIRE(pts.size() == 2);
  std::set<std::string> seen;
  for (const auto& p : pts) seen.insert(p.binding->at("a").to_string());
  CHECK(seen == std::set<std::string>{"-1", "0"});
  auto roots = gaussian_roots(P("a^2+1"));
  REQUIRE(roots.size() == 2);
  auto lin = resolve_locus(P("a*b-1"));
  REQUIRE(lin.size() == 1);
  REQUIRE(lin[0].binding);
  CHECK(gaussian_roots(P("a^2-2")).empty());
  CHECK(gaussian_sqrt(Gaussian(0, 2)) == Gaussian(1, 1));
}

TEST_CASE("groebner examples") {
  auto ring = Ring::make({"x", "y"});
  auto unit1 = groebner(PolyIdeal::in(ring, {P("x"), P("x-1")}));
  CHECK(unit1.is_unit());
  auto unit2 = groebner(PolyIdeal::in(ring, {P("x*y-1"), P("x^2")}));
  CHECK(unit2.is_unit());
  auto xring = Ring::make({"x"});
  auto principal = groebner(PolyIdeal::in(xring, {P("x^2+1")}));
  REQUIRE(principal.basis.gens.size() == 1);
  CHECK(principal.basis.gens[0] == P("x^2+1").in_ring(xring));
  CHECK(ideal_is_unit(principal) == Tristate::no);
  auto gx = groebner(PolyIdeal::in(xring, {P("x")}));
  CHECK(ideal_contains(gx, P("x^2+x")) == Tristate::yes);
  CHECK(ideal_contains(gx, P("x+1")) == Tristate::no);
}

TEST_CASE("groebner budget is honest") {
  auto ring = Ring::make({"x", "y", "z"});
  GroebnerBudget tiny{3, 24};
  auto r = groebner(PolyIdeal::in(ring, {P("x+y+z"), P("x*y+y*z+z*x"), P("x*y*z-1")}), tiny);
  CHECK(r.status == GbStatus::budget_exceeded);
  CHECK(ideal_is_unit(r) == Tristate::inconclusive);
}

TEST_CASE("property: scalar round trips" * doctest::description("random cases")) {
  std::mt19937 rng(1234);
  int checked = 0;
  for (int n = 0; n < 300; ++n) {
    Scalar x = testing::random_scalar(rng);
    Scalar y = testing::random_scalar(rng);
    CHECK((x - x).is_zero());
    CHECK(parse_scalar(x.to_string()) == x);
    if (y.is_zero()) continue;
    CHECK((x * y) / y == x);
    CHECK((x + y) - y == x);
    ++checked;
  }
  CHECK(checked >= 200);
}

TEST_CASE("property: elimination correctness") {
  std::mt19937 rng(99);
  for (int n = 0; n < 200; ++n) {
    std::size_t rows = 1 + rng() % 3;
    std::size_t cols = 1 + rng() % 4;
    ScalarMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < cols; ++c) {
        m(r, c) = rng() % 2 ? Scalar(0) : Scalar(testing::random_poly(rng, {"a"}, 1, 2));
      }
    }
    auto e = eliminate(m);
    auto ker = kernel_basis(e);
    CHECK(e.rank + ker.size() == cols);
    for (const auto& v : ker) {
      for (const auto& entry : mat_vec(m, v)) CHECK(entry.is_zero());
    }
  }
}

TEST_CASE("property: groebner soundness and criterion") {
  std::mt19937 rng(7);
  auto ring = Ring::make({"x", "y", "z"});
  int complete = 0;
  for (int n = 0; n < 200; ++n) {
    std::vector<MultiPoly> gens;
    int count = 1 + static_cast<int>(rng() % 3);
    for (int k = 0; k < count; ++k) gens.push_back(testing::random_poly(rng, {"x", "y", "z"}, 1, 3));
    auto gb = groebner(PolyIdeal::in(ring, gens));
    if (!gb.complete()) continue;
    ++complete;
    for (const auto& g : gens) CHECK(normal_form(g.in_ring(ring), gb.basis.gens).is_zero());
    std::vector<MultiPoly> augmented = PolyIdeal::in(ring, gens).gens;
    augmented.insert(augmented.end(), gb.basis.gens.begin(), gb.basis.gens.end());
    for (const auto& g : gb.basis.gens) CHECK(normal_form(g, augmented).is_zero());
    CHECK(satisfies_buchberger_criterion(gb.basis.gens));
  }
  CHECK(complete >= 200);
}
