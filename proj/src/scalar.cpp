#include "leib/scalar.hpp"

#include <algorithm>

namespace leib {

namespace {

bool needs_parens_as_factor(const MultiPoly& p) {
  if (p.size() > 1) return true;
  if (p.size() == 1 && !p.lead().mono.is_one() && !p.lead_coef().is_one()) return true;
  // A product of several variables would bind wrongly after '/'.
  if (p.size() == 1) {
    int vars = 0;
    for (auto e : p.lead().mono.exp) vars += e > 0 ? 1 : 0;
    if (vars > 1) return true;
  }
  return false;
}

}  // namespace

Scalar::Scalar(const MultiPoly& p) : num_(p.compact()), den_(one()) {}

Scalar::Scalar(const MultiPoly& num, const MultiPoly& den) : num_(num), den_(den) {
  if (den_.is_zero()) throw std::domain_error("division by the zero scalar");
  normalize();
}

void Scalar::normalize() {
  if (num_.is_zero()) {
    num_ = MultiPoly();
    den_ = one();
    return;
  }
  if (den_.is_constant()) {
    Gaussian inv = den_.lead_coef().inverse();
    num_ = num_.scaled(inv).compact();
    den_ = one();
    return;
  }
  RingPtr ring = common_ring(num_.ring(), den_.ring());
  MultiPoly n = num_.in_ring(ring);
  MultiPoly d = den_.in_ring(ring);
  MultiPoly g = poly_gcd(n, d);
  if (!g.is_constant()) {
    n = *divide_exact(n, g);
    d = *divide_exact(d, g);
  }
  if (d.is_constant()) {
    num_ = n.scaled(d.lead_coef().inverse()).compact();
    den_ = one();
    return;
  }
  // Leading coefficient of the denominator is 1 in the canonical ring of the used variables.
  std::vector<std::string> vars = n.used_vars();
  auto dv = d.used_vars();
  vars.insert(vars.end(), dv.begin(), dv.end());
  RingPtr canon = Ring::canonical(std::move(vars));
  n = n.in_ring(canon);
  d = d.in_ring(canon);
  Gaussian inv = d.lead_coef().inverse();
  num_ = n.scaled(inv);
  den_ = d.scaled(inv);
}

Gaussian Scalar::constant_value() const {
  if (!is_constant()) throw std::logic_error("scalar is not constant: " + to_string());
  return num_.constant_term();
}

std::vector<std::string> Scalar::used_vars() const {
  auto v = num_.used_vars();
  auto d = den_.used_vars();
  v.insert(v.end(), d.begin(), d.end());
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::size_t Scalar::complexity() const {
  std::size_t c = 0;
  for (const auto* p : {&num_, &den_}) {
    for (const auto& t : p->terms()) c += 1 + t.mono.deg;
  }
  return c;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_.is_one() && o.den_.is_one()) {
    num_ = (num_ + o.num_).compact();
    return *this;
  }
  if (den_ == o.den_) {
    num_ = num_ + o.num_;
  } else {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ = den_ * o.den_;
  }
  normalize();
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o) {
  if (is_zero() || o.is_zero()) return *this = Scalar();
  if (den_.is_one() && o.den_.is_one()) {
    num_ = (num_ * o.num_).compact();
    return *this;
  }
  // Cross-cancel before multiplying to keep the gcd work small.
  MultiPoly g1 = poly_gcd(num_, o.den_);
  MultiPoly g2 = poly_gcd(o.num_, den_);
  MultiPoly n1 = g1.is_constant() ? num_ : *divide_exact(num_, g1);
  MultiPoly d2 = g1.is_constant() ? o.den_ : *divide_exact(o.den_, g1);
  MultiPoly n2 = g2.is_constant() ? o.num_ : *divide_exact(o.num_, g2);
  MultiPoly d1 = g2.is_constant() ? den_ : *divide_exact(den_, g2);
  num_ = n1 * n2;
  den_ = d1 * d2;
  normalize();
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) { return *this *= o.inverse(); }

Scalar Scalar::inverse() const {
  if (is_zero()) throw std::domain_error("division by the zero scalar");
  return Scalar(den_, num_);
}

Scalar Scalar::operator-() const {
  Scalar s = *this;
  s.num_ = -s.num_;
  return s;
}

Scalar Scalar::pow(unsigned e) const {
  Scalar r(1);
  Scalar b = *this;
  while (e > 0) {
    if (e & 1U) r *= b;
    e >>= 1U;
    if (e > 0) b *= b;
  }
  return r;
}

std::string Scalar::to_string() const {
  if (den_.is_one()) return num_.to_string();
  std::string n = num_.to_string();
  if (num_.size() > 1) n = "(" + n + ")";
  std::string d = den_.to_string();
  if (needs_parens_as_factor(den_)) d = "(" + d + ")";
  return n + "/" + d;
}

Scalar substitute(const MultiPoly& p, const Bindings& bindings) {
  const Ring& ring = *p.ring();
  std::vector<const Scalar*> bound(ring.size(), nullptr);
  bool any = false;
  for (std::size_t i = 0; i < ring.size(); ++i) {
    auto it = bindings.find(ring.vars()[i]);
    if (it != bindings.end() && p.degree_in(i) > 0) {
      bound[i] = &it->second;
      any = true;
    }
  }
  if (!any) return Scalar(p);
  // Powers of bound values, computed lazily.
  std::vector<std::vector<Scalar>> powers(ring.size());
  auto power_of = [&](std::size_t idx, unsigned e) -> const Scalar& {
    auto& cache = powers[idx];
    if (cache.empty()) cache.push_back(Scalar(1));
    while (cache.size() <= e) cache.push_back(cache.back() * *bound[idx]);
    return cache[e];
  };
  // Group terms by their unbound part to limit rational-function additions.
  Scalar result;
  MultiPoly poly_part(p.ring());
  std::vector<Scalar> rational_terms;
  for (const auto& t : p.terms()) {
    Monomial rest = t.mono;
    Scalar factor(1);
    bool has_bound = false;
    for (std::size_t i = 0; i < ring.size(); ++i) {
      if (bound[i] && t.mono.exp[i] > 0) {
        factor *= power_of(i, t.mono.exp[i]);
        rest.deg -= rest.exp[i];
        rest.exp[i] = 0;
        has_bound = true;
      }
    }
    MultiPoly mono_poly(p.ring(), {Term{rest, t.coef}});
    if (!has_bound) {
      poly_part += mono_poly;
    } else if (factor.is_polynomial()) {
      poly_part += factor.num().in_ring(common_ring(factor.num().ring(), p.ring())) * mono_poly;
    } else {
      rational_terms.push_back(factor * Scalar(mono_poly));
    }
  }
  result = Scalar(poly_part);
  for (auto& s : rational_terms) result += s;
  return result;
}

Scalar substitute(const Scalar& x, const Bindings& bindings) {
  Scalar n = substitute(x.num(), bindings);
  Scalar d = substitute(x.den(), bindings);
  if (d.is_zero()) {
    throw ExceptionalValue("denominator " + x.den().to_string() + " vanishes at " + bindings_to_string(bindings),
                           x.den().to_string());
  }
  return n / d;
}

std::string bindings_to_string(const Bindings& b) {
  std::string out = "{";
  bool first = true;
  for (const auto& [k, v] : b) {
    if (!first) out += ", ";
    first = false;
    out += k + " = " + v.to_string();
  }
  return out + "}";
}

}  // namespace leib
