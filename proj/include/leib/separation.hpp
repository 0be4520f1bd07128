#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "leib/catalog.hpp"
#include "leib/groebner.hpp"
#include "leib/subspace.hpp"

namespace leib {

// (c_21^2, c_31^3, c_41^4, c_12^2, c_13^3, c_14^4) = (a_1, a_2, a_3, b_1, b_2, b_3).
// The pairs (a_k, b_k) = (c_{k+1,1}^{k+1}, c_{1,k+1}^{k+1}) move together under permutations.
struct SixTuple {
  std::array<Scalar, 6> v;
  const Scalar& operator[](std::size_t i) const { return v[i]; }
  std::string to_string() const;
};

// Throws std::invalid_argument when check_standard fails.
SixTuple six_tuple(const AlgebraStructure& a);

// Affine form f_0 + sum f_i x_i, stored as {f_0, f_1, ..., f_6}.
using AffineForm = std::array<Gaussian, 7>;
std::string form_to_string(const AffineForm& f);

// Basis of the affine forms vanishing identically on every tuple of the family.
std::vector<AffineForm> vanishing_forms(const std::vector<SixTuple>& family);

enum class Obstruction { refuted, not_refuted };
std::string to_string(Obstruction o);

struct ObstructionResult {
  Obstruction verdict = Obstruction::not_refuted;
  // For not_refuted: the pair permutation and scale that satisfy every form.
  std::array<std::size_t, 3> sigma{0, 1, 2};
  Scalar scale{1};
};

// A parametric target is treated generically in its parameters.
ObstructionResult six_tuple_obstruction(const std::vector<AffineForm>& forms, const SixTuple& target);

// S_i = <e_i, ..., e_n>; S_{n+1} = 0.
struct Containment {
  std::size_t i, j, k;  // S_i S_j inside S_k, 1-based
};

struct ClosedSetSpec {
  std::vector<Containment> contain;
  std::vector<MultiPoly> equations;  // in the variables c_i_j_k (1-based)
  std::string to_string() const;
};

std::string constant_var(std::size_t i, std::size_t j, std::size_t k);  // 0-based in, "c_i_j_k" 1-based out

bool closed_set_membership(const AlgebraStructure& a, const ClosedSetSpec& r);

enum class Stability { stable, not_stable, inconclusive };
std::string to_string(Stability s);

struct StabilityReport {
  Stability verdict = Stability::inconclusive;
  std::vector<std::string> failures;  // conditions whose transform left the ideal
};

StabilityReport borel_stability(const ClosedSetSpec& r, std::size_t n = 4, const GroebnerBudget& budget = {});

enum class Refutation { refuted, not_refuted, inconclusive };
std::string to_string(Refutation r);

enum class OrbitRoute {
  bruhat,  // g = b w u over the 24 Weyl cells, b absorbed by stability; 6 unknowns per cell
  direct   // 16 entries of g plus y with det(g) y = 1
};

struct OrbitReport {
  Refutation verdict = Refutation::inconclusive;
  std::vector<std::string> detail;
  // Parameter values of B where the generic refutation had to be rechecked.
  std::vector<std::string> rechecked;
  std::vector<std::string> exceptional;  // rechecks that were not refuted
};

// Assumes R is Borel stable (the bruhat route relies on it).
OrbitReport orbit_refute(const AlgebraStructure& b, const ClosedSetSpec& r, OrbitRoute route = OrbitRoute::bruhat,
                         const GroebnerBudget& budget = {});

enum class Rule {
  der_dim,
  ann_left_gt,
  square_lt,
  plus_square_lt,
  nilradical_dim,
  solvable,  // solvable source family, non-solvable target
  trivial_subalg,
  anticomm_subalg,
  six_tuple,
  lie_ann,
  closed_set
};
std::string to_string(Rule r);
std::optional<Rule> rule_from_string(std::string_view s);
const std::vector<Rule>& all_rules();  // cheapest first

struct SeparationCertificate {
  std::string name;
  Rule rule = Rule::der_dim;
  std::string source;
  std::string target;
  std::optional<ClosedSetSpec> closed_set;
  std::vector<std::size_t> permutation;  // source basis order for closed_set membership, 1-based
  std::optional<std::size_t> k;          // subalgebra dimension
  std::optional<std::size_t> image_bound;
  std::vector<std::string> notes;
};

SeparationCertificate parse_separation(std::string_view text, std::string name = {});
std::string serialize_separation(const SeparationCertificate& c);
std::vector<SeparationCertificate> load_separations(const std::string& dir);

enum class Verdict { verified, failed, inconclusive };
std::string to_string(Verdict v);

struct SeparationReport {
  Verdict verdict = Verdict::failed;
  std::string summary;
  std::vector<std::string> detail;
  std::vector<std::string> exceptional;
};

// Per-structure data the invariant rules compare; computed once and reused.
struct InvariantProfile {
  std::string label;
  std::size_t params = 0;
  ParametricCount der, ann_left, ann, square, plus_square;
  bool lie = false;
  bool solvable = false;
  bool standard = false;
  std::optional<std::size_t> nilradical;
  std::optional<std::size_t> max_trivial;
  std::optional<std::size_t> max_anticomm;  // with dim(A D) <= 1
  std::vector<std::string> notes;
};

InvariantProfile profile(const AlgebraStructure& a, const GroebnerBudget& budget = {});
// Exceptional points outside the entry's parameter restrictions are dropped.
InvariantProfile profile(const CatalogEntry& e, const GroebnerBudget& budget = {});
ParametricCount within_family(const ParametricCount& c, const std::vector<Restriction>& restrictions);

// Source family vs the generic member of the target family.
SeparationReport invariant_separation(Rule rule, const InvariantProfile& source, const InvariantProfile& target);
SeparationReport six_tuple_separation(const AlgebraStructure& source, const AlgebraStructure& target);
// Parameter values excluded by `restrictions` do not belong to the family.
SeparationReport lie_ann_separation(const std::vector<AlgebraStructure>& family, const AlgebraStructure& b,
                                    const std::vector<Restriction>& restrictions = {});
SeparationReport closed_set_separation(const SeparationCertificate& c, const AlgebraStructure& source,
                                       const AlgebraStructure& target, const GroebnerBudget& budget = {});

SeparationReport verify_separation(const SeparationCertificate& c, const std::vector<CatalogEntry>& catalog,
                                   const GroebnerBudget& budget = {});
SeparationReport verify_separation(const SeparationCertificate& c, const GroebnerBudget& budget = {});

}  // namespace leib
