#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>

namespace leib {

using Rational = mpq_class;

// Exact element re + im*i of Q(i). Components are kept canonical by gmpxx.
class Gaussian {
 public:
  Gaussian() = default;
  Gaussian(long value) : re_(value) {}  // NOLINT(google-explicit-constructor)
  Gaussian(Rational re, Rational im = 0) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }

  static Gaussian imag_unit() { return Gaussian(0, 1); }
  static Gaussian fraction(long num, long den);

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_one() const { return re_ == 1 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  Gaussian conj() const { return Gaussian(re_, -im_); }
  Rational norm() const { return re_ * re_ + im_ * im_; }
  Gaussian inverse() const;

  Gaussian& operator+=(const Gaussian& o);
  Gaussian& operator-=(const Gaussian& o);
  Gaussian& operator*=(const Gaussian& o);
  Gaussian& operator/=(const Gaussian& o);

  friend Gaussian operator+(Gaussian a, const Gaussian& b) { return a += b; }
  friend Gaussian operator-(Gaussian a, const Gaussian& b) { return a -= b; }
  friend Gaussian operator*(Gaussian a, const Gaussian& b) { return a *= b; }
  friend Gaussian operator/(Gaussian a, const Gaussian& b) { return a /= b; }
  Gaussian operator-() const { return Gaussian(-re_, -im_); }

  friend bool operator==(const Gaussian& a, const Gaussian& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  // Total order used only for deterministic sorting.
  friend std::strong_ordering operator<=>(const Gaussian& a, const Gaussian& b);

  // Literal form accepted back by the scalar parser: "3/2", "-i", "1/2*i", "(1+2*i)".
  std::string to_string() const;
  // True when to_string() is a single signed token (no parentheses needed in a product).
  bool prints_atomic() const { return is_real() || sgn(re_) == 0; }

 private:
  Rational re_{0};
  Rational im_{0};
};

std::string rational_to_string(const Rational& q);

}  // namespace leib
