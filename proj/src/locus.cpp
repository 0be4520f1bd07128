#include "leib/locus.hpp"

#include <algorithm>

namespace leib {

std::string LocusPoint::text() const {
  if (binding) {
    std::string out;
    for (const auto& [k, v] : *binding) {
      if (!out.empty()) out += ", ";
      out += k + " = " + v.to_string();
    }
    return out;
  }
  return constraint.to_string() + " = 0";
}

namespace {

std::optional<Rational> rational_sqrt(const Rational& q) {
  if (sgn(q) < 0) return std::nullopt;
  if (!mpz_perfect_square_p(q.get_num().get_mpz_t()) || !mpz_perfect_square_p(q.get_den().get_mpz_t())) {
    return std::nullopt;
  }
  mpz_class n = sqrt(q.get_num());
  mpz_class d = sqrt(q.get_den());
  Rational r(n, d);
  r.canonicalize();
  return r;
}

std::vector<mpz_class> divisors(const mpz_class& v) {
  mpz_class a = abs(v);
  std::vector<mpz_class> out;
  if (a == 0) return out;
  if (a > mpz_class("1000000000000")) return {mpz_class(1)};  // too large to enumerate; only the trivial one
  for (mpz_class d = 1; d * d <= a; ++d) {
    if (a % d == 0) {
      out.push_back(d);
      if (d * d != a) out.push_back(a / d);
    }
  }
  return out;
}

Gaussian eval_univariate(const std::vector<Gaussian>& coeffs, const Gaussian& x) {
  Gaussian acc(0);
  for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * x + coeffs[k];
  return acc;
}

// Divides by (x - r); coefficients indexed by degree.
std::vector<Gaussian> deflate(const std::vector<Gaussian>& coeffs, const Gaussian& r) {
  std::vector<Gaussian> out(coeffs.size() - 1);
  Gaussian carry(0);
  for (std::size_t k = coeffs.size(); k-- > 1;) {
    carry = coeffs[k] + carry * r;
    out[k - 1] = carry;
  }
  return out;
}

}  // namespace

std::optional<Gaussian> gaussian_sqrt(const Gaussian& d) {
  if (d.is_zero()) return Gaussian(0);
  auto modulus = rational_sqrt(d.norm());
  if (!modulus) return std::nullopt;
  // (x + iy)^2 = d with x^2 = (re + |d|)/2, y^2 = (|d| - re)/2.
  auto x = rational_sqrt((d.re() + *modulus) / 2);
  auto y = rational_sqrt((*modulus - d.re()) / 2);
  if (!x || !y) return std::nullopt;
  Rational yy = *y;
  if (sgn(d.im()) < 0) yy = -yy;
  Gaussian root(*x, yy);
  if (!(root * root == d)) return std::nullopt;
  return root;
}

std::vector<Gaussian> gaussian_roots(const MultiPoly& p) {
  auto vars = p.used_vars();
  if (vars.size() != 1) return {};
  std::size_t idx = *p.ring()->index_of(vars[0]);
  unsigned deg = p.degree_in(idx);
  std::vector<Gaussian> coeffs(deg + 1);
  for (const auto& t : p.terms()) coeffs[t.mono.exp[idx]] += t.coef;

  std::vector<Gaussian> roots;
  while (coeffs.size() > 1 && coeffs[0].is_zero()) {
    if (std::find(roots.begin(), roots.end(), Gaussian(0)) == roots.end()) roots.push_back(Gaussian(0));
    coeffs.erase(coeffs.begin());
  }
  bool real = std::all_of(coeffs.begin(), coeffs.end(), [](const Gaussian& c) { return c.is_real(); });
  if (real && coeffs.size() > 3) {
    mpz_class scale = 1;
    for (const auto& c : coeffs) scale = lcm(scale, c.re().get_den());
    std::vector<mpz_class> ints;
    for (const auto& c : coeffs) ints.push_back(mpz_class(c.re() * scale));
    for (const auto& num : divisors(ints.front())) {
      for (const auto& den : divisors(ints.back())) {
        for (int s : {1, -1}) {
          Rational q(num * s, den);
          q.canonicalize();
          Gaussian cand(q);
          while (coeffs.size() > 1 && eval_univariate(coeffs, cand).is_zero()) {
            if (std::find(roots.begin(), roots.end(), cand) == roots.end()) roots.push_back(cand);
            coeffs = deflate(coeffs, cand);
          }
        }
      }
    }
  }
  if (coeffs.size() == 2) {
    Gaussian r = -coeffs[0] / coeffs[1];
    if (std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
  } else if (coeffs.size() == 3) {
    const Gaussian& a = coeffs[2];
    const Gaussian& b = coeffs[1];
    const Gaussian& c = coeffs[0];
    if (auto s = gaussian_sqrt(b * b - Gaussian(4) * a * c)) {
      for (const Gaussian& r : {(-b + *s) / (Gaussian(2) * a), (-b - *s) / (Gaussian(2) * a)}) {
        if (std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
      }
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

std::vector<LocusPoint> resolve_locus(const MultiPoly& p) {
  std::vector<LocusPoint> out;
  if (p.is_constant()) return out;
  for (const MultiPoly& piece : split_factors(p)) {
    auto vars = piece.used_vars();
    if (vars.size() == 1) {
      auto roots = gaussian_roots(piece);
      if (roots.empty()) out.push_back(LocusPoint{piece, std::nullopt});
      for (const auto& r : roots) out.push_back(LocusPoint{piece, Bindings{{vars[0], Scalar(r)}}});
      continue;
    }
    // Linear in some variable: prefer a constant coefficient.
    std::optional<std::size_t> chosen;
    bool chosen_const = false;
    for (const auto& v : vars) {
      std::size_t idx = *piece.ring()->index_of(v);
      if (piece.degree_in(idx) != 1) continue;
      bool is_const = piece.coefficients_in(idx)[1].is_constant();
      if (!chosen || (is_const && !chosen_const)) {
        chosen = idx;
        chosen_const = is_const;
      }
    }
    if (!chosen) {
      out.push_back(LocusPoint{piece, std::nullopt});
      continue;
    }
    auto coeffs = piece.coefficients_in(*chosen);
    Scalar value = -Scalar(coeffs[0].compact()) / Scalar(coeffs[1].compact());
    out.push_back(LocusPoint{piece, Bindings{{piece.ring()->vars()[*chosen], value}}});
  }
  return out;
}

std::vector<LocusPoint> resolve_locus(const std::vector<MultiPoly>& polys) {
  MultiPoly prod = MultiPoly::constant(Gaussian(1));
  for (const auto& p : polys) {
    if (!p.is_zero()) prod *= p;
  }
  return resolve_locus(prod);
}

}  // namespace leib
