#pragma once

#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "leib/scalar.hpp"

namespace leib {

class SingularMatrix : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

using ScalarVector = std::vector<Scalar>;

class ScalarMatrix {
 public:
  ScalarMatrix() = default;
  ScalarMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}
  ScalarMatrix(std::size_t rows, std::size_t cols, std::vector<Scalar> entries);
  static ScalarMatrix identity(std::size_t n);
  static ScalarMatrix from_rows(const std::vector<ScalarVector>& rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Scalar& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  std::span<const Scalar> row(std::size_t r) const { return {entries_.data() + r * cols_, cols_}; }
  ScalarVector row_vector(std::size_t r) const { return {row(r).begin(), row(r).end()}; }

  ScalarMatrix transpose() const;
  ScalarMatrix map(const std::function<Scalar(const Scalar&)>& f) const;
  friend ScalarMatrix operator*(const ScalarMatrix& a, const ScalarMatrix& b);
  friend bool operator==(const ScalarMatrix& a, const ScalarMatrix& b) = default;

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> entries_;
};

// Reduced row echelon form over the fraction field of the parameters.
struct Elimination {
  std::size_t rank = 0;
  ScalarMatrix rref;
  std::vector<std::size_t> pivot_cols;
  // Product of the pivots used: the nonvanishing minor behind the generic
  // rank. Its zero set is the exceptional locus of the pivot pattern.
  Scalar pivot_product{1};
  int sign = 1;
};

Elimination eliminate(const ScalarMatrix& m);
std::size_t rank(const ScalarMatrix& m);
// Kernel (right null space) basis read off the reduced echelon form.
std::vector<ScalarVector> kernel_basis(const ScalarMatrix& m);
std::vector<ScalarVector> kernel_basis(const Elimination& e);
Scalar determinant(const ScalarMatrix& m);
ScalarMatrix inverse(const ScalarMatrix& m);
ScalarVector mat_vec(const ScalarMatrix& m, const ScalarVector& v);

}  // namespace leib
