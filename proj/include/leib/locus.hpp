#pragma once

#include <optional>
#include <string>
#include <vector>

#include "leib/scalar.hpp"

namespace leib {

// One point (or sub-family) of an exceptional parameter locus.
struct LocusPoint {
  MultiPoly constraint;              // square-free piece that vanishes there
  std::optional<Bindings> binding;   // explicit specialization on the piece, when one was found
  std::string text() const;
};

// Roots in Q(i) of a univariate polynomial: rational roots, then the
// remaining linear or quadratic cofactor when it splits over Q(i).
std::vector<Gaussian> gaussian_roots(const MultiPoly& p);
std::optional<Gaussian> gaussian_sqrt(const Gaussian& d);

// Splits p into square-free pieces and attaches a specialization to each:
// all Q(i) roots for univariate pieces, or x = -q/c for a piece c*x + q.
std::vector<LocusPoint> resolve_locus(const MultiPoly& p);
std::vector<LocusPoint> resolve_locus(const std::vector<MultiPoly>& polys);

}  // namespace leib
