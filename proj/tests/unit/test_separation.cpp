#include <random>

#include "doctest.h"
#include "leib/degeneration.hpp"
#include "leib/literal.hpp"
#include "leib/separation.hpp"
#include "../support/algebras.hpp"
#include "../support/printing.hpp"

using namespace leib;

namespace {

const std::string kSeparations = std::string(LEIB_BUNDLE_DIR) + "/certificates/separations";

const AlgebraStructure& alg(const char* label) { return builtin(label).algebra; }

SeparationCertificate sep(const std::string& name) {
  for (auto& c : load_separations(kSeparations))
    if (c.name == name) return c;
  throw std::out_of_range(name);
}

std::vector<std::string> tuple_text(const SixTuple& t) {
  std::vector<std::string> out;
  for (const auto& x : t.v) out.push_back(x.to_string());
  return out;
}

// rank of the span of forms, as 7-vectors
std::size_t form_rank(const std::vector<AffineForm>& forms) {
  std::vector<ScalarVector> rows;
  for (const auto& f : forms) {
    ScalarVector r;
    for (const auto& x : f) r.push_back(Scalar(x));
    rows.push_back(r);
  }
  return rows.empty() ? 0 : rank(ScalarMatrix::from_rows(rows, 7));
}

AffineForm form(std::initializer_list<long> coeffs) {
  AffineForm f;
  std::size_t i = 0;
  for (long c : coeffs) f[i++] = Gaussian(c);
  return f;
}

}  // namespace

TEST_CASE("standard structures") {
  CHECK(check_standard(alg("L_44")));
  CHECK_FALSE(check_standard(alg("L_2^n")));
  CHECK_FALSE(check_standard(AlgebraStructure("zero", 4)));
  CHECK_THROWS_AS(six_tuple(alg("L_2^n")), std::invalid_argument);
}

TEST_CASE("six-tuples") {
  using V = std::vector<std::string>;
  CHECK(tuple_text(six_tuple(alg("L_2"))) == V{"1", "-1", "0", "-1", "1", "0"});
  CHECK(tuple_text(six_tuple(alg("L_44"))) == V{"1", "2", "3", "-1", "0", "0"});
  CHECK(tuple_text(six_tuple(alg("L_21"))) == V{"1", "a", "b", "-1", "-a", "0"});
}

TEST_CASE("vanishing forms") {
  auto l4 = vanishing_forms({six_tuple(alg("L_4"))});
  CHECK(l4.size() == 5);
  std::vector<AffineForm> want = {form({-1, 1, 0, 0, 0, 0, 0}), form({1, 0, 0, 0, 1, 0, 0}),
                                  form({0, 0, 0, 0, 0, 1, 0}), form({0, 0, 0, 0, 0, 0, 1}),
                                  form({0, -1, -1, 1, 0, 0, 0})};
  auto both = l4;
  both.insert(both.end(), want.begin(), want.end());
  CHECK(form_rank(both) == 5);

  auto l23 = vanishing_forms({six_tuple(alg("L_23"))});
  CHECK(l23.size() == 4);
  std::vector<AffineForm> want23 = {form({-1, 1, 0, 0, 0, 0, 0}), form({0, 0, 0, 0, 1, 0, 0}),
                                    form({0, 0, 0, 0, 0, 1, 0}), form({0, 0, 0, 0, 0, 0, 1})};
  both = l23;
  both.insert(both.end(), want23.begin(), want23.end());
  CHECK(form_rank(both) == 4);

  SixTuple v{{Scalar(1), Scalar(2), Scalar(3), Scalar(-1), Scalar(0), Scalar(5)}};
  CHECK(vanishing_forms({v}).size() == 6);  // 7 coefficients, one condition
}

TEST_CASE("six-tuple obstruction") {
  auto l4 = vanishing_forms({six_tuple(alg("L_4"))});
  CHECK(six_tuple_obstruction(l4, six_tuple(alg("L_2"))).verdict == Obstruction::refuted);
  auto member = specialize(alg("L_4"), {{"a", parse_scalar("5/3")}});
  CHECK(six_tuple_obstruction(l4, six_tuple(member)).verdict == Obstruction::not_refuted);
  SixTuple v{{Scalar(1), Scalar(2), Scalar(3), Scalar(-1), Scalar(0), Scalar(5)}};
  SixTuple v2{{Scalar(2), Scalar(4), Scalar(6), Scalar(-2), Scalar(0), Scalar(10)}};
  auto r = six_tuple_obstruction(vanishing_forms({v}), v2);
  CHECK(r.verdict == Obstruction::not_refuted);
  CHECK(r.scale == parse_scalar("1/2"));
}

TEST_CASE("closed set membership") {
  auto r1 = *sep("c1_L44_L5n").closed_set;
  auto r2 = *sep("c2_L9_L15").closed_set;
  CHECK(closed_set_membership(alg("L_44"), r1));
  ScalarMatrix swap = permutation_matrix({0, 2, 1, 3});
  for (const char* l : {"L_9", "L_10"}) {
    CHECK(closed_set_membership(change_basis(alg(l), swap), r2));
    CHECK_FALSE(closed_set_membership(alg(l), r2));
  }
  CHECK(closed_set_membership(AlgebraStructure("zero", 4), r1));
  CHECK(closed_set_membership(AlgebraStructure("zero", 4), r2));
}

TEST_CASE("Borel stability") {
  ClosedSetSpec only_contain{{{1, 3, 5}, {2, 2, 3}}, {}};
  CHECK(borel_stability(only_contain).verdict == Stability::stable);
  CHECK(borel_stability(*sep("c1_L44_L5n").closed_set).verdict == Stability::stable);
  CHECK(borel_stability(*sep("c2_L9_L15").closed_set).verdict == Stability::stable);
  ClosedSetSpec unit_const{{}, {parse_poly("c_1_1_1 - 1")}};
  auto rep = borel_stability(unit_const);
  CHECK(rep.verdict == Stability::not_stable);
  CHECK(rep.failures.size() == 1);
}

TEST_CASE("orbit refutation") {
  auto r1 = *sep("c1_L44_L5n").closed_set;
  auto r2 = *sep("c2_L9_L15").closed_set;
  CHECK(orbit_refute(alg("L_5^n"), r1).verdict == Refutation::refuted);
  CHECK(orbit_refute(alg("L_44"), r1).verdict != Refutation::refuted);
  auto l15 = orbit_refute(alg("L_15"), r2);
  CHECK(l15.verdict == Refutation::refuted);
  CHECK(l15.exceptional.empty());
  auto l18 = orbit_refute(alg("L_18"), r2);
  CHECK(l18.verdict == Refutation::refuted);
  CHECK(l18.exceptional.empty());
}

TEST_CASE("property: diagonal scaling of six-tuples") {
  std::mt19937 rng(4041);
  std::vector<const CatalogEntry*> standard;
  for (const auto& e : builtin_catalog())
    if (check_standard(e.algebra)) standard.push_back(&e);
  REQUIRE(standard.size() >= 9);
  int cases = 0;
  while (cases < 220) {
    const auto& e = *standard[rng() % standard.size()];
    auto mu = testing::random_member(rng, e);
    if (!check_standard(mu)) continue;
    Gaussian d = testing::random_gaussian(rng);
    if (d.is_zero()) continue;
    ScalarMatrix g = ScalarMatrix::identity(4);
    g(0, 0) = Scalar(d);
    auto moved = six_tuple(act(g, mu));
    auto base = six_tuple(mu);
    for (std::size_t i = 0; i < 6; ++i) CHECK(moved[i] == base[i] / Scalar(d));
    ++cases;
  }
}

TEST_CASE("property: obstruction never refutes a shipped degeneration") {
  std::vector<ClosureEdge> edges;
  for (const auto& c : load_degenerations(std::string(LEIB_BUNDLE_DIR) + "/certificates/degenerations"))
    edges.push_back({c.source, c.target, c.name});
  auto rel = closure_chain(edges);
  std::size_t checked = 0;
  for (const auto& from : builtin_catalog()) {
    if (!check_standard(from.algebra)) continue;
    auto forms = vanishing_forms({six_tuple(from.algebra)});
    for (const auto& to : rel.reachable(from.label())) {
      const auto& target = builtin(to).algebra;
      if (!check_standard(target)) continue;
      INFO(from.label() << " -> " << to);
      CHECK(six_tuple_obstruction(forms, six_tuple(target)).verdict == Obstruction::not_refuted);
      ++checked;
    }
  }
  CHECK(checked >= 6);
}

TEST_CASE("property: closed sets are stable under random lower-triangular g") {
  std::mt19937 rng(977);
  auto r1 = *sep("c1_L44_L5n").closed_set;
  auto r2 = *sep("c2_L9_L15").closed_set;
  ScalarMatrix swap = permutation_matrix({0, 2, 1, 3});
  for (int n = 0; n < 210; ++n) {
    ScalarMatrix g = ScalarMatrix::identity(4);
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = 0; j <= i; ++j) {
        Gaussian x = testing::random_gaussian(rng);
        if (i == j && x.is_zero()) x = Gaussian(1);
        g(i, j) = Scalar(x);
      }
    }
    CHECK(closed_set_membership(act(g, alg("L_44")), r1));
    const char* l = n % 2 ? "L_9" : "L_10";
    auto member = testing::random_member(rng, builtin(l));
    CHECK(closed_set_membership(act(g, change_basis(member, swap)), r2));
  }
}

TEST_CASE("property: closed-set coherence") {
  for (const auto* name : {"c1_L44_L5n", "c2_L9_L15"}) {
    auto cert = sep(name);
    REQUIRE(borel_stability(*cert.closed_set).verdict == Stability::stable);
    for (const auto& e : builtin_catalog()) {
      for (const auto& perm : {std::vector<std::size_t>{0, 1, 2, 3}, std::vector<std::size_t>{0, 2, 1, 3}}) {
        auto b = change_basis(e.algebra, permutation_matrix(perm));
        if (!closed_set_membership(b, *cert.closed_set)) continue;
        INFO(name << " " << e.label());
        CHECK(orbit_refute(e.algebra, *cert.closed_set).verdict != Refutation::refuted);
      }
    }
  }
}

TEST_CASE("orbit refutation: the direct route never contradicts the Bruhat route") {
  // The 17-unknown direct system does not finish on these inputs; a small budget keeps it cheap.
  GroebnerBudget small;
  small.max_reductions = 5000;
  auto r1 = *sep("c1_L44_L5n").closed_set;
  REQUIRE(orbit_refute(alg("L_5^n"), r1, OrbitRoute::bruhat).verdict == Refutation::refuted);
  CHECK(orbit_refute(alg("L_5^n"), r1, OrbitRoute::direct, small).verdict != Refutation::not_refuted);
  CHECK(orbit_refute(alg("L_44"), r1, OrbitRoute::direct, small).verdict != Refutation::refuted);
  ClosedSetSpec everything{{}, {}};
  CHECK(orbit_refute(alg("L_44"), everything, OrbitRoute::direct, small).verdict == Refutation::not_refuted);
}
