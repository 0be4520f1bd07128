#pragma once

#include <optional>
#include <string>
#include <vector>

#include "leib/algebra.hpp"
#include "leib/groebner.hpp"

namespace leib {

// One Schubert-style chart of the Grassmannian Gr(k, n): subspaces whose
// reduced row echelon basis has exactly these pivot columns.
struct EchelonCell {
  std::size_t n = 0;
  std::size_t k = 0;
  std::vector<std::size_t> pivots;  // 0-based, increasing
  struct Slot {
    std::size_t row, col;
    std::string var;
  };
  std::vector<Slot> free;  // entries right of the row's pivot, off the pivot columns

  std::vector<std::string> vars() const;
  // Basis rows with the free entries as symbols.
  std::vector<ScalarVector> rows() const;
  Subspace at(const std::map<std::string, Gaussian>& values) const;
  std::string to_string() const;
};

std::vector<EchelonCell> enumerate_cells(std::size_t n, std::size_t k);
// The cell owning u and the coordinates of u in it.
std::pair<EchelonCell, std::map<std::string, Scalar>> locate(const Subspace& u);

enum class PropertyKind { trivial, anticommutative_image, nilpotent_ideal };

struct SubspaceProperty {
  PropertyKind kind = PropertyKind::trivial;
  std::size_t image_bound = 0;  // anticommutative_image only: dim(A U) <= image_bound

  static SubspaceProperty trivial() { return {PropertyKind::trivial, 0}; }
  static SubspaceProperty anticommutative_image(std::size_t m) { return {PropertyKind::anticommutative_image, m}; }
  static SubspaceProperty nilpotent_ideal() { return {PropertyKind::nilpotent_ideal, 0}; }
  std::string to_string() const;
};

// Direct check with algebra_core primitives; used to confirm every witness.
bool satisfies(const AlgebraStructure& a, const Subspace& u, const SubspaceProperty& p);
// Multiplication of A restricted to a subalgebra, in the subspace's echelon basis.
AlgebraStructure restrict_to(const AlgebraStructure& a, const Subspace& u);

// Polynomial equations in the cell unknowns (and A's parameters) whose zero set
// is the set of cell points with the property. Denominators from A's constants are cleared.
std::vector<MultiPoly> compile_property(const AlgebraStructure& a, const EchelonCell& cell, const SubspaceProperty& p);

struct SubspaceResult {
  Tristate answer = Tristate::inconclusive;
  std::optional<Subspace> witness;
  // Witness satisfies the property identically in A's parameters.
  bool witness_generic = false;
  std::string detail;
};

// For parametric A the answer is the generic one: "no" means the property
// fails for generic parameters, "yes" that it holds for generic parameters.
SubspaceResult exists_subspace(const AlgebraStructure& a, std::size_t k, const SubspaceProperty& p,
                               const GroebnerBudget& budget = {});

struct SubspacePoint {
  std::string constraint;
  Bindings binding;
  SubspaceResult result;
};

// Generic answer plus the parameter specializations where it changes.
struct FamilySubspaceResult {
  SubspaceResult generic;
  std::vector<SubspacePoint> exceptional;
  std::vector<std::string> unresolved;
  std::string to_string() const;
};

FamilySubspaceResult exists_subspace_family(const AlgebraStructure& a, std::size_t k, const SubspaceProperty& p,
                                            const GroebnerBudget& budget = {}, int depth = 2);

struct MaxDimResult {
  std::optional<std::size_t> dim;  // empty when some scan step was inconclusive
  std::optional<Subspace> witness;
};

MaxDimResult max_dim_subspace(const AlgebraStructure& a, const SubspaceProperty& p, const GroebnerBudget& budget = {});

// Rejects non-solvable input with std::invalid_argument.
MaxDimResult nilradical_dim(const AlgebraStructure& a, const GroebnerBudget& budget = {});

// Deterministic parameter values avoiding the vanishing of any listed polynomial.
Bindings sample_point(const std::vector<std::string>& params, const std::vector<MultiPoly>& avoid, unsigned salt = 0);

}  // namespace leib
