#pragma once

#include <random>

#include "leib/catalog.hpp"
#include "random_scalars.hpp"

namespace leib::testing {

// A catalog structure with its parameters set to random small rationals.
inline AlgebraStructure random_member(std::mt19937& rng, const CatalogEntry& e) {
  Bindings b;
  for (const auto& p : e.algebra.params()) {
    std::uniform_int_distribution<int> num(-7, 7);
    std::uniform_int_distribution<int> den(1, 3);
    b[p] = Scalar(Gaussian(Rational(num(rng), den(rng))));
  }
  return specialize(e.algebra, b);
}

inline const CatalogEntry& random_entry(std::mt19937& rng) {
  const auto& cat = builtin_catalog();
  return cat[rng() % cat.size()];
}

inline ScalarVector unit_vector(std::size_t n, std::size_t i) {
  ScalarVector v(n);
  v[i] = Scalar(1);
  return v;
}

}  // namespace leib::testing
