#pragma once

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>

#include "leib/scalar.hpp"

namespace leib {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t line, std::size_t column);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& message() const { return msg_; }

 private:
  std::string msg_;
  std::size_t line_;
  std::size_t column_;
};

// Parses the scalar literal grammar: integers, p/q, the token i, parameter
// names, + - * / ( ) and ^ with a nonnegative integer exponent.
// When `allowed` is given, any other identifier is rejected.
Scalar parse_scalar(std::string_view text, const std::set<std::string>* allowed = nullptr,
                    std::size_t line = 1, std::size_t column_offset = 0);

// Parses a literal that must be a polynomial (no division by non-constants).
MultiPoly parse_poly(std::string_view text, const std::set<std::string>* allowed = nullptr);

}  // namespace leib
