#include "leib/algebra.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace leib {

AlgebraStructure::AlgebraStructure(std::string label, std::size_t dim, std::vector<std::string> params)
    : label_(std::move(label)), n_(dim), params_(std::move(params)), c_(dim * dim * dim) {}

ScalarVector AlgebraStructure::product(const ScalarVector& x, const ScalarVector& y) const {
  ScalarVector out(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < n_; ++j) {
      if (y[j].is_zero()) continue;
      Scalar xy = x[i] * y[j];
      for (std::size_t k = 0; k < n_; ++k) {
        const Scalar& c = at(i, j, k);
        if (!c.is_zero()) out[k] += xy * c;
      }
    }
  }
  return out;
}

ScalarVector AlgebraStructure::product_basis(std::size_t i, std::size_t j) const {
  ScalarVector out(n_);
  for (std::size_t k = 0; k < n_; ++k) out[k] = at(i, j, k);
  return out;
}

bool AlgebraStructure::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const Scalar& s) { return s.is_zero(); });
}

std::string vector_to_string(const ScalarVector& v) {
  std::string out;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k].is_zero()) continue;
    std::string coef = v[k].to_string();
    std::string basis = "e" + std::to_string(k + 1);
    bool compound = !v[k].is_constant() || !v[k].constant_value().prints_atomic();
    if (compound && (v[k].num().size() > 1 || !v[k].is_polynomial())) coef = "(" + coef + ")";
    std::string piece;
    if (coef == "1") piece = basis;
    else if (coef == "-1") piece = "-" + basis;
    else piece = coef + " " + basis;
    if (out.empty()) {
      out = piece;
    } else if (piece[0] == '-') {
      out += " - " + piece.substr(1);
    } else {
      out += " + " + piece;
    }
  }
  return out.empty() ? "0" : out;
}

std::string AlgebraStructure::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      ScalarVector v = product_basis(i, j);
      if (std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_zero(); })) continue;
      out += "e" + std::to_string(i + 1) + " e" + std::to_string(j + 1) + " = " + vector_to_string(v) + "\n";
    }
  }
  return out;
}

std::vector<Defect> leibniz_defect(const AlgebraStructure& a) {
  const std::size_t n = a.dim();
  std::vector<Defect> out;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t l = 0; l < n; ++l) {
        for (std::size_t k = 0; k < n; ++k) {
          Scalar v;
          for (std::size_t r = 0; r < n; ++r) {
            if (!a.at(i, j, r).is_zero() && !a.at(r, l, k).is_zero()) v += a.at(i, j, r) * a.at(r, l, k);
            if (!a.at(i, l, r).is_zero() && !a.at(r, j, k).is_zero()) v -= a.at(i, l, r) * a.at(r, j, k);
            if (!a.at(j, l, r).is_zero() && !a.at(i, r, k).is_zero()) v -= a.at(j, l, r) * a.at(i, r, k);
          }
          if (!v.is_zero()) out.push_back(Defect{i, j, l, k, v});
        }
      }
    }
  }
  return out;
}

bool is_leibniz(const AlgebraStructure& a) { return leibniz_defect(a).empty(); }

bool is_anticommutative(const AlgebraStructure& a) {
  const std::size_t n = a.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (!(a.at(i, j, k) + a.at(j, i, k)).is_zero()) return false;
  return true;
}

bool is_lie(const AlgebraStructure& a) { return is_anticommutative(a) && is_leibniz(a); }

AlgebraStructure change_basis(const AlgebraStructure& a, const ScalarMatrix& basis) {
  const std::size_t n = a.dim();
  if (basis.rows() != n || basis.cols() != n) throw std::invalid_argument("basis has the wrong size");
  ScalarMatrix inv = inverse(basis);
  // t1[i][q][r] = sum_p B(i,p) c(p,q,r)
  std::vector<Scalar> t1(n * n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t p = 0; p < n; ++p) {
      if (basis(i, p).is_zero()) continue;
      for (std::size_t q = 0; q < n; ++q)
        for (std::size_t r = 0; r < n; ++r)
          if (!a.at(p, q, r).is_zero()) t1[(i * n + q) * n + r] += basis(i, p) * a.at(p, q, r);
    }
  // t2[i][j][r] = sum_q B(j,q) t1[i][q][r]
  std::vector<Scalar> t2(n * n * n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t q = 0; q < n; ++q) {
      if (basis(j, q).is_zero()) continue;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t r = 0; r < n; ++r) {
          const Scalar& x = t1[(i * n + q) * n + r];
          if (!x.is_zero()) t2[(i * n + j) * n + r] += basis(j, q) * x;
        }
    }
  AlgebraStructure out(a.label(), n, a.params());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t r = 0; r < n; ++r) {
        const Scalar& x = t2[(i * n + j) * n + r];
        if (x.is_zero()) continue;
        for (std::size_t k = 0; k < n; ++k)
          if (!inv(r, k).is_zero()) out.at(i, j, k) += x * inv(r, k);
      }
  return out;
}

AlgebraStructure act(const ScalarMatrix& g, const AlgebraStructure& a) {
  return change_basis(a, inverse(g).transpose());
}

ScalarMatrix permutation_matrix(const std::vector<std::size_t>& images) {
  std::size_t n = images.size();
  ScalarMatrix p(n, n);
  for (std::size_t i = 0; i < n; ++i) p(images[i], i) = Scalar(1);
  return p;
}

AlgebraStructure specialize(const AlgebraStructure& a, const Bindings& b) {
  const std::size_t n = a.dim();
  AlgebraStructure out(a.label(), n);
  std::vector<std::string> params;
  for (const auto& p : a.params()) {
    if (!b.count(p)) params.push_back(p);
  }
  std::set<std::string> extra;
  for (const auto& [name, value] : b) {
    if (std::find(a.params().begin(), a.params().end(), name) == a.params().end()) continue;
    for (const auto& v : value.used_vars()) {
      if (std::find(params.begin(), params.end(), v) == params.end()) extra.insert(v);
    }
  }
  params.insert(params.end(), extra.begin(), extra.end());
  out.set_params(params);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (!a.at(i, j, k).is_zero()) out.at(i, j, k) = substitute(a.at(i, j, k), b);
  return out;
}

void LocusTracker::note(const MultiPoly& p) {
  if (p.is_constant()) return;
  for (const auto& piece : split_factors(p)) {
    MultiPoly m = piece.monic().compact();
    pieces_.emplace(m.to_string(), m);
  }
}

void LocusTracker::note(const Scalar& pivot_product) {
  note(pivot_product.num());
  note(pivot_product.den());
}

Subspace Subspace::span(std::size_t n, const std::vector<ScalarVector>& vectors, LocusTracker* tracker) {
  Subspace s(n);
  if (vectors.empty()) return s;
  Elimination e = eliminate(ScalarMatrix::from_rows(vectors, n));
  if (tracker) tracker->note(e.pivot_product);
  s.basis_ = ScalarMatrix(e.rank, n);
  for (std::size_t r = 0; r < e.rank; ++r)
    for (std::size_t c = 0; c < n; ++c) s.basis_(r, c) = e.rref(r, c);
  s.pivots_ = e.pivot_cols;
  return s;
}

Subspace Subspace::whole(std::size_t n) { return tail(n, 1); }

Subspace Subspace::tail(std::size_t n, std::size_t first) {
  std::vector<ScalarVector> rows;
  for (std::size_t i = first; i <= n; ++i) {
    ScalarVector v(n);
    v[i - 1] = Scalar(1);
    rows.push_back(v);
  }
  return span(n, rows);
}

std::vector<ScalarVector> Subspace::vectors() const {
  std::vector<ScalarVector> out;
  for (std::size_t r = 0; r < basis_.rows(); ++r) out.push_back(basis_.row_vector(r));
  return out;
}

bool Subspace::contains(const ScalarVector& v) const {
  // Reduce v by the echelon rows.
  ScalarVector w = v;
  for (std::size_t r = 0; r < basis_.rows(); ++r) {
    Scalar f = w[pivots_[r]];
    if (f.is_zero()) continue;
    for (std::size_t c = 0; c < n_; ++c)
      if (!basis_(r, c).is_zero()) w[c] -= f * basis_(r, c);
  }
  return std::all_of(w.begin(), w.end(), [](const Scalar& s) { return s.is_zero(); });
}

bool Subspace::contains(const Subspace& o) const {
  for (const auto& v : o.vectors())
    if (!contains(v)) return false;
  return true;
}

Subspace Subspace::sum(const Subspace& o, LocusTracker* tracker) const {
  auto rows = vectors();
  auto more = o.vectors();
  rows.insert(rows.end(), more.begin(), more.end());
  return span(n_, rows, tracker);
}

std::string Subspace::to_string() const {
  std::string out = "<";
  for (std::size_t r = 0; r < basis_.rows(); ++r) {
    if (r) out += ", ";
    out += vector_to_string(basis_.row_vector(r));
  }
  return out + ">";
}

Subspace subspace_product(const AlgebraStructure& a, const Subspace& u, const Subspace& w, LocusTracker* tracker) {
  std::vector<ScalarVector> rows;
  for (const auto& x : u.vectors())
    for (const auto& y : w.vectors()) rows.push_back(a.product(x, y));
  return Subspace::span(a.dim(), rows, tracker);
}

namespace {

Subspace kernel_subspace(const ScalarMatrix& m, LocusTracker* tracker) {
  Elimination e = eliminate(m);
  if (tracker) tracker->note(e.pivot_product);
  return Subspace::span(m.cols(), kernel_basis(e), tracker);
}

}  // namespace

Annihilators annihilators(const AlgebraStructure& a, LocusTracker* tracker) {
  const std::size_t n = a.dim();
  // Rows indexed by (v, k), columns by the coordinate of x.
  ScalarMatrix left(n * n, n);
  ScalarMatrix right(n * n, n);
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t x = 0; x < n; ++x) {
        left(v * n + k, x) = a.at(x, v, k);
        right(v * n + k, x) = a.at(v, x, k);
      }
  ScalarMatrix stacked(2 * n * n, n);
  for (std::size_t r = 0; r < n * n; ++r)
    for (std::size_t x = 0; x < n; ++x) {
      stacked(r, x) = left(r, x);
      stacked(n * n + r, x) = right(r, x);
    }
  return Annihilators{kernel_subspace(left, tracker), kernel_subspace(right, tracker),
                      kernel_subspace(stacked, tracker)};
}

Subspace square(const AlgebraStructure& a, LocusTracker* tracker) {
  Subspace all = Subspace::whole(a.dim());
  return subspace_product(a, all, all, tracker);
}

Subspace plus_square(const AlgebraStructure& a, LocusTracker* tracker) {
  const std::size_t n = a.dim();
  std::vector<ScalarVector> rows;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      ScalarVector v(n);
      for (std::size_t k = 0; k < n; ++k) v[k] = a.at(i, j, k) + a.at(j, i, k);
      rows.push_back(v);
    }
  return Subspace::span(n, rows, tracker);
}

std::vector<Subspace> series(const AlgebraStructure& a, SeriesKind kind, LocusTracker* tracker) {
  const std::size_t n = a.dim();
  Subspace all = Subspace::whole(n);
  std::vector<Subspace> chain;
  if (kind == SeriesKind::lower_central) {
    chain.push_back(all);
    for (;;) {
      const Subspace& cur = chain.back();
      Subspace next = subspace_product(a, all, cur, tracker).sum(subspace_product(a, cur, all, tracker), tracker);
      if (next.dim() == cur.dim()) break;
      chain.push_back(next);
      if (next.dim() == 0) break;
    }
  } else {
    chain.push_back(square(a, tracker));
    for (;;) {
      const Subspace& cur = chain.back();
      if (cur.dim() == 0) break;
      Subspace next = subspace_product(a, cur, cur, tracker);
      if (next.dim() == cur.dim()) break;
      chain.push_back(next);
    }
  }
  return chain;
}

bool is_nilpotent(const AlgebraStructure& a, LocusTracker* tracker) {
  return series(a, SeriesKind::lower_central, tracker).back().dim() == 0;
}

bool is_solvable(const AlgebraStructure& a, LocusTracker* tracker) {
  return series(a, SeriesKind::derived, tracker).back().dim() == 0;
}

ScalarMatrix derivation_system(const AlgebraStructure& a) {
  const std::size_t n = a.dim();
  ScalarMatrix m(n * n * n, n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        std::size_t row = (i * n + j) * n + k;
        // d(e_i e_j)_k - (d(e_i) e_j)_k - (e_i d(e_j))_k
        for (std::size_t r = 0; r < n; ++r) {
          if (!a.at(i, j, r).is_zero()) m(row, r * n + k) += a.at(i, j, r);
        }
        for (std::size_t s = 0; s < n; ++s) {
          if (!a.at(s, j, k).is_zero()) m(row, i * n + s) -= a.at(s, j, k);
          if (!a.at(i, s, k).is_zero()) m(row, j * n + s) -= a.at(i, s, k);
        }
      }
  return m;
}

std::size_t derivation_dim_generic(const AlgebraStructure& a, LocusTracker* tracker) {
  Elimination e = eliminate(derivation_system(a));
  if (tracker) tracker->note(e.pivot_product);
  return a.dim() * a.dim() - e.rank;
}

std::size_t ParametricCount::min() const {
  std::size_t m = generic;
  for (const auto& p : exceptional) m = std::min(m, p.value);
  return m;
}

std::size_t ParametricCount::max() const {
  std::size_t m = generic;
  for (const auto& p : exceptional) m = std::max(m, p.value);
  return m;
}

std::string ParametricCount::to_string() const {
  std::string out = std::to_string(generic);
  for (const auto& p : exceptional) out += "; " + bindings_to_string(p.binding) + ": " + std::to_string(p.value);
  for (const auto& u : unresolved) out += "; unresolved " + u;
  return out;
}

Bindings compose_bindings(const Bindings& outer, const Bindings& inner) {
  Bindings out;
  for (const auto& [k, v] : outer) out[k] = substitute(v, inner);
  for (const auto& [k, v] : inner) out.emplace(k, v);
  return out;
}

ParametricCount parametric_count(const AlgebraStructure& a, const CountFn& f, int depth) {
  LocusTracker tracker;
  ParametricCount res;
  res.generic = f(a, tracker);
  if (a.params().empty()) return res;
  std::set<std::string> seen;
  auto push = [&](PointValue pv) {
    std::string key = bindings_to_string(pv.binding);
    if (seen.insert(key).second) res.exceptional.push_back(std::move(pv));
  };
  for (const auto& [text, piece] : tracker.pieces()) {
    bool relevant = false;
    for (const auto& v : piece.used_vars())
      if (std::find(a.params().begin(), a.params().end(), v) != a.params().end()) relevant = true;
    if (!relevant) continue;
    if (depth <= 0) {
      res.unresolved.push_back(text + " = 0");
      continue;
    }
    for (const auto& point : resolve_locus(piece)) {
      if (!point.binding) {
        res.unresolved.push_back(point.text());
        continue;
      }
      AlgebraStructure sub;
      try {
        sub = specialize(a, *point.binding);
      } catch (const ExceptionalValue&) {
        res.unresolved.push_back(point.text());
        continue;
      }
      ParametricCount inner = parametric_count(sub, f, depth - 1);
      if (inner.generic != res.generic) push(PointValue{piece.to_string() + " = 0", *point.binding, inner.generic});
      for (const auto& e : inner.exceptional) {
        if (e.value == res.generic) continue;
        push(PointValue{e.constraint, compose_bindings(*point.binding, e.binding), e.value});
      }
      for (const auto& u : inner.unresolved) res.unresolved.push_back(u);
    }
  }
  std::sort(res.exceptional.begin(), res.exceptional.end(), [](const PointValue& x, const PointValue& y) {
    return bindings_to_string(x.binding) < bindings_to_string(y.binding);
  });
  std::sort(res.unresolved.begin(), res.unresolved.end());
  res.unresolved.erase(std::unique(res.unresolved.begin(), res.unresolved.end()), res.unresolved.end());
  return res;
}

DerivationReport derivation_dim(const AlgebraStructure& a) {
  return parametric_count(a, [](const AlgebraStructure& x, LocusTracker& t) { return derivation_dim_generic(x, &t); });
}

ParametricCount ann_left_dim(const AlgebraStructure& a) {
  return parametric_count(a, [](const AlgebraStructure& x, LocusTracker& t) { return annihilators(x, &t).left.dim(); });
}

ParametricCount ann_right_dim(const AlgebraStructure& a) {
  return parametric_count(a, [](const AlgebraStructure& x, LocusTracker& t) { return annihilators(x, &t).right.dim(); });
}

ParametricCount ann_dim(const AlgebraStructure& a) {
  return parametric_count(a, [](const AlgebraStructure& x, LocusTracker& t) { return annihilators(x, &t).both.dim(); });
}

ParametricCount square_dim(const AlgebraStructure& a) {
  return parametric_count(a, [](const AlgebraStructure& x, LocusTracker& t) { return square(x, &t).dim(); });
}

ParametricCount plus_square_dim(const AlgebraStructure& a) {
  return parametric_count(a, [](const AlgebraStructure& x, LocusTracker& t) { return plus_square(x, &t).dim(); });
}

}  // namespace leib
