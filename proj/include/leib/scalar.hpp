#pragma once

#include <map>
#include <stdexcept>
#include <string>

#include "leib/poly.hpp"

namespace leib {

// Raised when a specialization makes a denominator vanish identically.
class ExceptionalValue : public std::domain_error {
 public:
  ExceptionalValue(const std::string& what, std::string denominator)
      : std::domain_error(what), denominator_(std::move(denominator)) {}
  const std::string& denominator() const { return denominator_; }

 private:
  std::string denominator_;
};

// Exact element of Q(i)(x_1, ..., x_m): a reduced fraction whose denominator
// has leading coefficient 1. Numerator and denominator always share the
// canonical ring of the variables they use, so equal values print identically.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long v) : num_(MultiPoly::constant(Gaussian(v))), den_(one()) {}  // NOLINT
  Scalar(const Gaussian& g) : num_(MultiPoly::constant(g)), den_(one()) {}  // NOLINT
  explicit Scalar(const MultiPoly& p);
  Scalar(const MultiPoly& num, const MultiPoly& den);

  static Scalar var(const std::string& name) { return Scalar(MultiPoly::variable(name)); }
  static Scalar imag_unit() { return Scalar(Gaussian::imag_unit()); }

  const MultiPoly& num() const { return num_; }
  const MultiPoly& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_polynomial() const { return den_.is_one(); }
  bool is_constant() const { return num_.is_constant() && den_.is_one(); }
  Gaussian constant_value() const;  // requires is_constant()
  std::vector<std::string> used_vars() const;
  bool uses_var(std::string_view name) const { return num_.uses_var(name) || den_.uses_var(name); }
  // Crude size measure used for pivot selection.
  std::size_t complexity() const;

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  Scalar operator-() const;
  Scalar pow(unsigned e) const;
  Scalar inverse() const;

  friend bool operator==(const Scalar& a, const Scalar& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

  // Canonical literal; parse_scalar(to_string()) reproduces the value.
  std::string to_string() const;

 private:
  static MultiPoly one() { return MultiPoly::constant(Gaussian(1)); }
  void normalize();

  MultiPoly num_;
  MultiPoly den_ = one();
};

using Bindings = std::map<std::string, Scalar>;

// Simultaneous substitution. Throws ExceptionalValue when the denominator
// specializes to zero.
Scalar substitute(const Scalar& x, const Bindings& bindings);
// Substitution into a polynomial, returning a scalar.
Scalar substitute(const MultiPoly& p, const Bindings& bindings);

std::string bindings_to_string(const Bindings& b);

}  // namespace leib
