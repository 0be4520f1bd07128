#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "leib/gaussian.hpp"

namespace leib {

enum class OrderKind { grevlex, lex, block_grevlex };

// block_grevlex: grevlex on the first `block` variables, ties broken by grevlex on the rest.
// With the eliminated unknowns first, it is an elimination order for them.
struct MonomialOrder {
  OrderKind kind = OrderKind::grevlex;
  std::size_t block = 0;
  bool operator==(const MonomialOrder&) const = default;
};

struct Monomial {
  std::vector<std::uint16_t> exp;
  std::uint32_t deg = 0;

  bool operator==(const Monomial& o) const { return exp == o.exp; }
  bool divides(const Monomial& o) const;
  bool coprime(const Monomial& o) const;
  Monomial operator*(const Monomial& o) const;
  Monomial operator/(const Monomial& o) const;  // requires divides
  Monomial lcm(const Monomial& o) const;
  bool is_one() const { return deg == 0; }
};

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

class Ring {
 public:
  Ring(std::vector<std::string> vars, MonomialOrder order);

  static RingPtr make(std::vector<std::string> vars, MonomialOrder order = {});
  // Sorted, de-duplicated variable list under grevlex: the canonical ring used by scalars.
  static RingPtr canonical(std::vector<std::string> vars);
  static const RingPtr& empty();

  const std::vector<std::string>& vars() const { return vars_; }
  std::size_t size() const { return vars_.size(); }
  std::optional<std::size_t> index_of(std::string_view name) const;
  const MonomialOrder& order() const { return order_; }
  bool is_canonical() const { return canonical_; }
  bool same_as(const Ring& o) const { return vars_ == o.vars_ && order_ == o.order_; }

  // -1, 0, 1 comparing a against b under the ring's order.
  int compare(const Monomial& a, const Monomial& b) const;
  Monomial one() const { return Monomial{std::vector<std::uint16_t>(vars_.size(), 0), 0}; }
  Monomial var_monomial(std::size_t idx, std::uint16_t power = 1) const;

 private:
  std::vector<std::string> vars_;
  MonomialOrder order_;
  bool canonical_ = false;
};

struct Term {
  Monomial mono;
  Gaussian coef;
};

// Sparse multivariate polynomial over Q(i). Terms are kept strictly decreasing
// under the ring's monomial order, with no zero coefficients.
class MultiPoly {
 public:
  MultiPoly() : ring_(Ring::empty()) {}
  explicit MultiPoly(RingPtr ring) : ring_(std::move(ring)) {}
  MultiPoly(RingPtr ring, std::vector<Term> terms);  // sorts and combines

  static MultiPoly constant(const Gaussian& c, RingPtr ring = Ring::empty());
  static MultiPoly variable(const std::string& name);
  static MultiPoly variable(RingPtr ring, std::size_t idx);

  const RingPtr& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  bool is_one() const { return is_constant() && !is_zero() && terms_[0].coef.is_one(); }
  // Constant term (coefficient of the unit monomial).
  Gaussian constant_term() const;
  const Term& lead() const { return terms_.front(); }
  const Gaussian& lead_coef() const { return terms_.front().coef; }

  std::uint32_t total_degree() const;
  unsigned degree_in(std::size_t idx) const;
  unsigned degree_in(std::string_view name) const;
  std::vector<std::string> used_vars() const;
  bool uses_var(std::string_view name) const;

  // Coefficients with respect to one variable, indexed by its exponent; same ring.
  std::vector<MultiPoly> coefficients_in(std::size_t idx) const;

  MultiPoly in_ring(const RingPtr& target) const;
  // Same polynomial in the canonical ring of the variables it actually uses.
  MultiPoly compact() const;
  MultiPoly monic() const;
  MultiPoly derivative(std::size_t idx) const;
  MultiPoly pow(unsigned e) const;
  MultiPoly scaled(const Gaussian& c) const;
  MultiPoly mul_term(const Monomial& m, const Gaussian& c) const;
  // Substitutes constants for some variables (by name); others stay.
  MultiPoly evaluate(const std::map<std::string, Gaussian>& values) const;

  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly& operator*=(const MultiPoly& o);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  MultiPoly operator-() const;

  friend bool operator==(const MultiPoly& a, const MultiPoly& b);

  std::string to_string() const;

  // Adds c*m in place (no reordering of other terms required by callers).
  void add_term(const Monomial& m, const Gaussian& c);

 private:
  friend MultiPoly combine(const MultiPoly& a, const MultiPoly& b, bool subtract);
  RingPtr ring_;
  std::vector<Term> terms_;
};

// Ring both operands can be expressed in (identity when they already agree).
RingPtr common_ring(const RingPtr& a, const RingPtr& b);

std::optional<MultiPoly> divide_exact(const MultiPoly& num, const MultiPoly& den);
MultiPoly poly_gcd(const MultiPoly& a, const MultiPoly& b);
// gcd of the coefficients with respect to variable idx.
MultiPoly content_in(const MultiPoly& p, std::size_t idx);
// Square-free pieces found by content and derivative gcd splitting. Not a full factorization.
std::vector<MultiPoly> split_factors(const MultiPoly& p);

}  // namespace leib
