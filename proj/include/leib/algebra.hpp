#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "leib/locus.hpp"
#include "leib/matrix.hpp"

namespace leib {

// n^3 structure constants: e_i e_j = sum_k c(i,j,k) e_k, indices 0-based here.
class AlgebraStructure {
 public:
  AlgebraStructure() = default;
  AlgebraStructure(std::string label, std::size_t dim, std::vector<std::string> params = {});

  const std::string& label() const { return label_; }
  void set_label(std::string l) { label_ = std::move(l); }
  std::size_t dim() const { return n_; }
  const std::vector<std::string>& params() const { return params_; }
  void set_params(std::vector<std::string> p) { params_ = std::move(p); }

  Scalar& at(std::size_t i, std::size_t j, std::size_t k) { return c_[(i * n_ + j) * n_ + k]; }
  const Scalar& at(std::size_t i, std::size_t j, std::size_t k) const { return c_[(i * n_ + j) * n_ + k]; }
  const std::vector<Scalar>& constants() const { return c_; }

  ScalarVector product(const ScalarVector& x, const ScalarVector& y) const;
  ScalarVector product_basis(std::size_t i, std::size_t j) const;
  bool is_zero() const;

  // Same constants, ignoring labels.
  bool same_constants(const AlgebraStructure& o) const { return n_ == o.n_ && c_ == o.c_; }

  // "e1 e2 = -e2" lines for the nonzero products.
  std::string to_string() const;

 private:
  std::string label_;
  std::size_t n_ = 0;
  std::vector<std::string> params_;
  std::vector<Scalar> c_;
};

std::string vector_to_string(const ScalarVector& v);

struct Defect {
  std::size_t i, j, l, k;
  Scalar value;
};

// Nonzero coordinates of (e_i e_j) e_l - (e_i e_l) e_j - e_i (e_j e_l).
std::vector<Defect> leibniz_defect(const AlgebraStructure& a);
bool is_leibniz(const AlgebraStructure& a);
bool is_anticommutative(const AlgebraStructure& a);
bool is_lie(const AlgebraStructure& a);

// Constants in the basis E_i = sum_j basis(i,j) e_j.
AlgebraStructure change_basis(const AlgebraStructure& a, const ScalarMatrix& basis);
// (g * mu)(x, y) = g mu(g^-1 x, g^-1 y).
AlgebraStructure act(const ScalarMatrix& g, const AlgebraStructure& a);
ScalarMatrix permutation_matrix(const std::vector<std::size_t>& images);

// Substitutes parameters; unbound parameters stay, new names from the values are appended.
AlgebraStructure specialize(const AlgebraStructure& a, const Bindings& b);

// Collects the square-free pieces of pivot products met while computing a generic answer.
class LocusTracker {
 public:
  void note(const Scalar& pivot_product);
  void note(const MultiPoly& p);
  const std::map<std::string, MultiPoly>& pieces() const { return pieces_; }

 private:
  std::map<std::string, MultiPoly> pieces_;
};

class Subspace {
 public:
  explicit Subspace(std::size_t n = 0) : n_(n), basis_(0, n) {}
  static Subspace span(std::size_t n, const std::vector<ScalarVector>& vectors, LocusTracker* tracker = nullptr);
  static Subspace whole(std::size_t n);
  // <e_first, ..., e_n>, first counted from 1; first = n + 1 gives the zero subspace.
  static Subspace tail(std::size_t n, std::size_t first);

  std::size_t ambient() const { return n_; }
  std::size_t dim() const { return basis_.rows(); }
  const ScalarMatrix& basis() const { return basis_; }
  std::vector<ScalarVector> vectors() const;
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  bool contains(const ScalarVector& v) const;
  bool contains(const Subspace& o) const;
  Subspace sum(const Subspace& o, LocusTracker* tracker = nullptr) const;
  friend bool operator==(const Subspace& a, const Subspace& b) { return a.n_ == b.n_ && a.basis_ == b.basis_; }

  std::string to_string() const;

 private:
  std::size_t n_;
  ScalarMatrix basis_;
  std::vector<std::size_t> pivots_;
};

Subspace subspace_product(const AlgebraStructure& a, const Subspace& u, const Subspace& w,
                          LocusTracker* tracker = nullptr);

struct Annihilators {
  Subspace left;   // x with x v = 0 for all v
  Subspace right;  // x with v x = 0 for all v
  Subspace both;
};
Annihilators annihilators(const AlgebraStructure& a, LocusTracker* tracker = nullptr);
Subspace square(const AlgebraStructure& a, LocusTracker* tracker = nullptr);
Subspace plus_square(const AlgebraStructure& a, LocusTracker* tracker = nullptr);

enum class SeriesKind { derived, lower_central };
// Chain starting at A (lower central) or A^2 (derived), ending when it stabilizes.
std::vector<Subspace> series(const AlgebraStructure& a, SeriesKind kind, LocusTracker* tracker = nullptr);
bool is_nilpotent(const AlgebraStructure& a, LocusTracker* tracker = nullptr);
bool is_solvable(const AlgebraStructure& a, LocusTracker* tracker = nullptr);

// Derivation equations as a linear system in the n^2 entries of d, where d(e_i) = sum_m d[i*n+m] e_m.
ScalarMatrix derivation_system(const AlgebraStructure& a);
std::size_t derivation_dim_generic(const AlgebraStructure& a, LocusTracker* tracker = nullptr);

// A count-valued invariant over a parameter family: the generic value plus
// every specialization (found from the tracked pivot loci) where it differs.
struct PointValue {
  std::string constraint;
  Bindings binding;
  std::size_t value;
};

struct ParametricCount {
  std::size_t generic = 0;
  std::vector<PointValue> exceptional;
  // Locus pieces that could not be specialized over Q(i); the claim is open there.
  std::vector<std::string> unresolved;

  std::size_t min() const;
  std::size_t max() const;
  std::string to_string() const;
};

// outer's values rewritten through inner, then inner's own bindings.
Bindings compose_bindings(const Bindings& outer, const Bindings& inner);

using CountFn = std::function<std::size_t(const AlgebraStructure&, LocusTracker&)>;
ParametricCount parametric_count(const AlgebraStructure& a, const CountFn& f, int depth = 3);

using DerivationReport = ParametricCount;
DerivationReport derivation_dim(const AlgebraStructure& a);
ParametricCount ann_left_dim(const AlgebraStructure& a);
ParametricCount ann_right_dim(const AlgebraStructure& a);
ParametricCount ann_dim(const AlgebraStructure& a);
ParametricCount square_dim(const AlgebraStructure& a);
ParametricCount plus_square_dim(const AlgebraStructure& a);

}  // namespace leib
