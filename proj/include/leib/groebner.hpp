#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "leib/poly.hpp"

namespace leib {

// Generators over one ring; the ring carries the monomial order.
struct PolyIdeal {
  RingPtr ring;
  std::vector<MultiPoly> gens;

  // Moves every generator into `ring`.
  static PolyIdeal in(RingPtr ring, const std::vector<MultiPoly>& gens);
};

enum class GbStatus { complete, budget_exceeded };

struct GroebnerBudget {
  std::size_t max_reductions = 200000;
  unsigned max_degree = 24;
};

struct GroebnerResult {
  PolyIdeal basis;
  GbStatus status = GbStatus::complete;
  std::size_t reductions = 0;

  bool complete() const { return status == GbStatus::complete; }
  bool is_unit() const { return basis.gens.size() == 1 && basis.gens[0].is_constant() && !basis.gens[0].is_zero(); }
};

// Buchberger with the Gebauer-Moeller criteria and sugar selection.
// On complete status the basis is the reduced Groebner basis.
GroebnerResult groebner(const PolyIdeal& ideal, const GroebnerBudget& budget = {});

// Full reduction of p by the list (any list, not necessarily a basis).
MultiPoly normal_form(const MultiPoly& p, const std::vector<MultiPoly>& divisors);
MultiPoly s_polynomial(const MultiPoly& f, const MultiPoly& g);
// True when every S-polynomial of the list reduces to zero against it.
bool satisfies_buchberger_criterion(const std::vector<MultiPoly>& basis);

enum class Tristate { yes, no, inconclusive };
std::string to_string(Tristate t);

// With a partial basis only positive answers are definite.
Tristate ideal_contains(const GroebnerResult& gb, const MultiPoly& f);
Tristate ideal_is_unit(const GroebnerResult& gb);

}  // namespace leib
