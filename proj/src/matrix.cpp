#include "leib/matrix.hpp"

#include <functional>

namespace leib {

ScalarMatrix::ScalarMatrix(std::size_t rows, std::size_t cols, std::vector<Scalar> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_) throw std::invalid_argument("matrix entry count mismatch");
}

ScalarMatrix ScalarMatrix::identity(std::size_t n) {
  ScalarMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar(1);
  return m;
}

ScalarMatrix ScalarMatrix::from_rows(const std::vector<ScalarVector>& rows, std::size_t cols) {
  ScalarMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw std::invalid_argument("ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

ScalarMatrix ScalarMatrix::transpose() const {
  ScalarMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

ScalarMatrix ScalarMatrix::map(const std::function<Scalar(const Scalar&)>& f) const {
  ScalarMatrix out(rows_, cols_);
  for (std::size_t i = 0; i < entries_.size(); ++i) out.entries_[i] = f(entries_[i]);
  return out;
}

ScalarMatrix operator*(const ScalarMatrix& a, const ScalarMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shape mismatch");
  ScalarMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Scalar& x = a(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        if (!b(k, j).is_zero()) out(i, j) += x * b(k, j);
      }
    }
  }
  return out;
}

std::string ScalarMatrix::to_string() const {
  std::string out;
  for (std::size_t r = 0; r < rows_; ++r) {
    out += "[";
    for (std::size_t c = 0; c < cols_; ++c) {
      if (c) out += ", ";
      out += (*this)(r, c).to_string();
    }
    out += "]\n";
  }
  return out;
}

Elimination eliminate(const ScalarMatrix& m) {
  Elimination e;
  e.rref = m;
  ScalarMatrix& a = e.rref;
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t best = rows;
    std::size_t best_cost = 0;
    for (std::size_t i = r; i < rows; ++i) {
      if (a(i, c).is_zero()) continue;
      std::size_t cost = a(i, c).complexity();
      if (best == rows || cost < best_cost) {
        best = i;
        best_cost = cost;
      }
    }
    if (best == rows) continue;
    if (best != r) {
      for (std::size_t j = 0; j < cols; ++j) std::swap(a(best, j), a(r, j));
      e.sign = -e.sign;
    }
    Scalar pivot = a(r, c);
    e.pivot_product *= pivot;
    if (!pivot.is_one()) {
      Scalar inv = pivot.inverse();
      for (std::size_t j = c; j < cols; ++j) {
        if (!a(r, j).is_zero()) a(r, j) *= inv;
      }
    }
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a(i, c).is_zero()) continue;
      Scalar f = a(i, c);
      for (std::size_t j = c; j < cols; ++j) {
        if (!a(r, j).is_zero()) a(i, j) -= f * a(r, j);
      }
    }
    e.pivot_cols.push_back(c);
    ++r;
  }
  e.rank = r;
  return e;
}

std::size_t rank(const ScalarMatrix& m) { return eliminate(m).rank; }

std::vector<ScalarVector> kernel_basis(const Elimination& e) {
  const std::size_t cols = e.rref.cols();
  std::vector<bool> is_pivot(cols, false);
  for (auto c : e.pivot_cols) is_pivot[c] = true;
  std::vector<ScalarVector> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    ScalarVector v(cols);
    v[f] = Scalar(1);
    for (std::size_t i = 0; i < e.rank; ++i) v[e.pivot_cols[i]] = -e.rref(i, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<ScalarVector> kernel_basis(const ScalarMatrix& m) { return kernel_basis(eliminate(m)); }

Scalar determinant(const ScalarMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  Elimination e = eliminate(m);
  if (e.rank < m.rows()) return Scalar(0);
  return e.sign < 0 ? -e.pivot_product : e.pivot_product;
}

ScalarMatrix inverse(const ScalarMatrix& m) {
  const std::size_t n = m.rows();
  if (n != m.cols()) throw std::invalid_argument("inverse of a non-square matrix");
  ScalarMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = Scalar(1);
  }
  Elimination e = eliminate(aug);
  if (e.rank < n || e.pivot_cols[n - 1] != n - 1) throw SingularMatrix("matrix is singular");
  ScalarMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.rref(i, n + j);
  return inv;
}

ScalarVector mat_vec(const ScalarMatrix& m, const ScalarVector& v) {
  ScalarVector out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero() && !v[j].is_zero()) out[i] += m(i, j) * v[j];
  return out;
}

}  // namespace leib
