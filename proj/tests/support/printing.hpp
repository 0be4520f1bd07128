#pragma once

#include "doctest.h"
#include "leib/matrix.hpp"

namespace doctest {
template <>
struct StringMaker<leib::Scalar> {
  static String convert(const leib::Scalar& x) { return x.to_string().c_str(); }
};
template <>
struct StringMaker<leib::MultiPoly> {
  static String convert(const leib::MultiPoly& x) { return x.to_string().c_str(); }
};
template <>
struct StringMaker<leib::Gaussian> {
  static String convert(const leib::Gaussian& x) { return x.to_string().c_str(); }
};
}  // namespace doctest
