#pragma once

#include <random>
#include <string>
#include <vector>

#include "leib/matrix.hpp"

namespace leib::testing {

inline Gaussian random_gaussian(std::mt19937& rng, bool allow_imag = true) {
  std::uniform_int_distribution<int> num(-5, 5);
  std::uniform_int_distribution<int> den(1, 4);
  Rational re(num(rng), den(rng));
  Rational im = allow_imag && rng() % 3 == 0 ? Rational(num(rng), den(rng)) : Rational(0);
  return Gaussian(re, im);
}

inline MultiPoly random_poly(std::mt19937& rng, const std::vector<std::string>& vars, unsigned max_deg = 2,
                             int max_terms = 3) {
  MultiPoly out = MultiPoly::constant(Gaussian(0));
  int terms = 1 + static_cast<int>(rng() % max_terms);
  for (int k = 0; k < terms; ++k) {
    MultiPoly mono = MultiPoly::constant(random_gaussian(rng));
    for (const auto& v : vars) {
      unsigned e = rng() % (max_deg + 1);
      if (e > 0) mono *= MultiPoly::variable(v).pow(e);
    }
    out += mono;
  }
  return out;
}

inline Scalar random_scalar(std::mt19937& rng, const std::vector<std::string>& vars = {"a", "b"}) {
  Scalar num(random_poly(rng, vars));
  MultiPoly den = random_poly(rng, vars, 1, 2);
  if (den.is_zero()) return num;
  return num / Scalar(den);
}

// Random invertible matrix with small rational entries.
inline ScalarMatrix random_invertible(std::mt19937& rng, std::size_t n, bool allow_imag = false) {
  for (;;) {
    ScalarMatrix m(n, n);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) {
        m(r, c) = rng() % 3 == 0 ? Scalar(0) : Scalar(random_gaussian(rng, allow_imag));
      }
    }
    if (!determinant(m).is_zero()) return m;
  }
}

}  // namespace leib::testing
