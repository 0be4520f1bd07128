#include "leib/poly.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace leib {

bool Monomial::divides(const Monomial& o) const {
  if (deg > o.deg) return false;
  for (std::size_t i = 0; i < exp.size(); ++i)
    if (exp[i] > o.exp[i]) return false;
  return true;
}

bool Monomial::coprime(const Monomial& o) const {
  for (std::size_t i = 0; i < exp.size(); ++i)
    if (exp[i] != 0 && o.exp[i] != 0) return false;
  return true;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r{exp, deg + o.deg};
  for (std::size_t i = 0; i < exp.size(); ++i) r.exp[i] = static_cast<std::uint16_t>(exp[i] + o.exp[i]);
  return r;
}

Monomial Monomial::operator/(const Monomial& o) const {
  Monomial r{exp, deg - o.deg};
  for (std::size_t i = 0; i < exp.size(); ++i) r.exp[i] = static_cast<std::uint16_t>(exp[i] - o.exp[i]);
  return r;
}

Monomial Monomial::lcm(const Monomial& o) const {
  Monomial r{exp, 0};
  for (std::size_t i = 0; i < exp.size(); ++i) {
    r.exp[i] = std::max(exp[i], o.exp[i]);
    r.deg += r.exp[i];
  }
  return r;
}

// ---------------------------------------------------------------------------

Ring::Ring(std::vector<std::string> vars, MonomialOrder order) : vars_(std::move(vars)), order_(order) {
  std::set<std::string> seen(vars_.begin(), vars_.end());
  if (seen.size() != vars_.size()) throw std::invalid_argument("duplicate variable in ring");
  canonical_ = order_.kind == OrderKind::grevlex && std::is_sorted(vars_.begin(), vars_.end());
}

RingPtr Ring::make(std::vector<std::string> vars, MonomialOrder order) {
  return std::make_shared<const Ring>(std::move(vars), order);
}

RingPtr Ring::canonical(std::vector<std::string> vars) {
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  if (vars.empty()) return empty();
  return make(std::move(vars));
}

const RingPtr& Ring::empty() {
  static const RingPtr ring = std::make_shared<const Ring>(std::vector<std::string>{}, MonomialOrder{});
  return ring;
}

std::optional<std::size_t> Ring::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i] == name) return i;
  return std::nullopt;
}

Monomial Ring::var_monomial(std::size_t idx, std::uint16_t power) const {
  Monomial m = one();
  m.exp[idx] = power;
  m.deg = power;
  return m;
}

namespace {

int grevlex_range(const Monomial& a, const Monomial& b, std::size_t lo, std::size_t hi) {
  std::uint32_t da = 0;
  std::uint32_t db = 0;
  for (std::size_t i = lo; i < hi; ++i) {
    da += a.exp[i];
    db += b.exp[i];
  }
  if (da != db) return da > db ? 1 : -1;
  for (std::size_t i = hi; i-- > lo;) {
    if (a.exp[i] != b.exp[i]) return a.exp[i] < b.exp[i] ? 1 : -1;
  }
  return 0;
}

}  // namespace

int Ring::compare(const Monomial& a, const Monomial& b) const {
  switch (order_.kind) {
    case OrderKind::grevlex: {
      if (a.deg != b.deg) return a.deg > b.deg ? 1 : -1;
      for (std::size_t i = a.exp.size(); i-- > 0;) {
        if (a.exp[i] != b.exp[i]) return a.exp[i] < b.exp[i] ? 1 : -1;
      }
      return 0;
    }
    case OrderKind::lex: {
      for (std::size_t i = 0; i < a.exp.size(); ++i) {
        if (a.exp[i] != b.exp[i]) return a.exp[i] > b.exp[i] ? 1 : -1;
      }
      return 0;
    }
    case OrderKind::block_grevlex: {
      std::size_t k = std::min(order_.block, a.exp.size());
      int c = grevlex_range(a, b, 0, k);
      if (c != 0) return c;
      return grevlex_range(a, b, k, a.exp.size());
    }
  }
  return 0;
}

RingPtr common_ring(const RingPtr& a, const RingPtr& b) {
  if (a == b || a->same_as(*b)) return a;
  if (b->size() == 0) return a;
  if (a->size() == 0) return b;
  auto contains_all = [](const Ring& big, const Ring& small) {
    return std::all_of(small.vars().begin(), small.vars().end(),
                       [&](const std::string& v) { return big.index_of(v).has_value(); });
  };
  if (!a->is_canonical() && contains_all(*a, *b)) return a;
  if (!b->is_canonical() && contains_all(*b, *a)) return b;
  if (contains_all(*a, *b) && a->is_canonical()) return a;
  if (contains_all(*b, *a) && b->is_canonical()) return b;
  std::vector<std::string> vars = a->vars();
  vars.insert(vars.end(), b->vars().begin(), b->vars().end());
  return Ring::canonical(std::move(vars));
}

// ---------------------------------------------------------------------------

MultiPoly::MultiPoly(RingPtr ring, std::vector<Term> terms) : ring_(std::move(ring)) {
  const Ring& r = *ring_;
  std::sort(terms.begin(), terms.end(),
            [&](const Term& x, const Term& y) { return r.compare(x.mono, y.mono) > 0; });
  for (auto& t : terms) {
    if (!terms_.empty() && terms_.back().mono == t.mono) {
      terms_.back().coef += t.coef;
      if (terms_.back().coef.is_zero()) terms_.pop_back();
    } else if (!t.coef.is_zero()) {
      terms_.push_back(std::move(t));
    }
  }
}

MultiPoly MultiPoly::constant(const Gaussian& c, RingPtr ring) {
  MultiPoly p(std::move(ring));
  if (!c.is_zero()) p.terms_.push_back(Term{p.ring_->one(), c});
  return p;
}

MultiPoly MultiPoly::variable(const std::string& name) {
  auto ring = Ring::make({name});
  return variable(ring, 0);
}

MultiPoly MultiPoly::variable(RingPtr ring, std::size_t idx) {
  MultiPoly p(std::move(ring));
  p.terms_.push_back(Term{p.ring_->var_monomial(idx), Gaussian(1)});
  return p;
}

Gaussian MultiPoly::constant_term() const {
  if (!terms_.empty() && terms_.back().mono.is_one()) return terms_.back().coef;
  return Gaussian(0);
}

std::uint32_t MultiPoly::total_degree() const {
  std::uint32_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.deg);
  return d;
}

unsigned MultiPoly::degree_in(std::size_t idx) const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max<unsigned>(d, t.mono.exp[idx]);
  return d;
}

unsigned MultiPoly::degree_in(std::string_view name) const {
  auto idx = ring_->index_of(name);
  return idx ? degree_in(*idx) : 0;
}

std::vector<std::string> MultiPoly::used_vars() const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < ring_->size(); ++i)
    if (degree_in(i) > 0) out.push_back(ring_->vars()[i]);
  return out;
}

bool MultiPoly::uses_var(std::string_view name) const { return degree_in(name) > 0; }

std::vector<MultiPoly> MultiPoly::coefficients_in(std::size_t idx) const {
  std::vector<std::vector<Term>> buckets(degree_in(idx) + 1);
  for (const auto& t : terms_) {
    Term s = t;
    s.mono.deg -= s.mono.exp[idx];
    unsigned e = s.mono.exp[idx];
    s.mono.exp[idx] = 0;
    buckets[e].push_back(std::move(s));
  }
  std::vector<MultiPoly> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) out.emplace_back(ring_, std::move(b));
  return out;
}

MultiPoly MultiPoly::in_ring(const RingPtr& target) const {
  if (target == ring_ || target->same_as(*ring_)) {
    MultiPoly p = *this;
    p.ring_ = target;
    return p;
  }
  std::vector<std::size_t> map(ring_->size());
  for (std::size_t i = 0; i < ring_->size(); ++i) {
    auto j = target->index_of(ring_->vars()[i]);
    if (!j) {
      if (degree_in(i) > 0) throw std::invalid_argument("variable " + ring_->vars()[i] + " missing in target ring");
      map[i] = static_cast<std::size_t>(-1);
    } else {
      map[i] = *j;
    }
  }
  std::vector<Term> terms;
  terms.reserve(terms_.size());
  for (const auto& t : terms_) {
    Term s{target->one(), t.coef};
    for (std::size_t i = 0; i < map.size(); ++i) {
      if (t.mono.exp[i] != 0) s.mono.exp[map[i]] = t.mono.exp[i];
    }
    s.mono.deg = t.mono.deg;
    terms.push_back(std::move(s));
  }
  return MultiPoly(target, std::move(terms));
}

MultiPoly MultiPoly::compact() const {
  auto used = used_vars();
  if (ring_->is_canonical() && used.size() == ring_->size()) return *this;
  return in_ring(Ring::canonical(std::move(used)));
}

MultiPoly MultiPoly::monic() const {
  if (is_zero() || lead_coef().is_one()) return *this;
  return scaled(lead_coef().inverse());
}

MultiPoly MultiPoly::derivative(std::size_t idx) const {
  std::vector<Term> out;
  for (const auto& t : terms_) {
    if (t.mono.exp[idx] == 0) continue;
    Term s = t;
    s.coef *= Gaussian(static_cast<long>(t.mono.exp[idx]));
    s.mono.exp[idx] -= 1;
    s.mono.deg -= 1;
    out.push_back(std::move(s));
  }
  return MultiPoly(ring_, std::move(out));
}

MultiPoly MultiPoly::pow(unsigned e) const {
  MultiPoly result = constant(Gaussian(1), ring_);
  MultiPoly base = *this;
  while (e > 0) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e > 0) base = base * base;
  }
  return result;
}

MultiPoly MultiPoly::scaled(const Gaussian& c) const {
  if (c.is_zero()) return MultiPoly(ring_);
  MultiPoly p = *this;
  for (auto& t : p.terms_) t.coef *= c;
  return p;
}

MultiPoly MultiPoly::mul_term(const Monomial& m, const Gaussian& c) const {
  if (c.is_zero()) return MultiPoly(ring_);
  MultiPoly p(ring_);
  p.terms_.reserve(terms_.size());
  for (const auto& t : terms_) p.terms_.push_back(Term{t.mono * m, t.coef * c});
  return p;
}

MultiPoly MultiPoly::evaluate(const std::map<std::string, Gaussian>& values) const {
  std::vector<std::pair<std::size_t, const Gaussian*>> hits;
  for (std::size_t i = 0; i < ring_->size(); ++i) {
    auto it = values.find(ring_->vars()[i]);
    if (it != values.end()) hits.emplace_back(i, &it->second);
  }
  if (hits.empty()) return *this;
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    Term s = t;
    for (auto [idx, val] : hits) {
      for (unsigned k = 0; k < t.mono.exp[idx]; ++k) s.coef *= *val;
      s.mono.deg -= s.mono.exp[idx];
      s.mono.exp[idx] = 0;
    }
    out.push_back(std::move(s));
  }
  return MultiPoly(ring_, std::move(out));
}

void MultiPoly::add_term(const Monomial& m, const Gaussian& c) {
  if (c.is_zero()) return;
  MultiPoly t(ring_);
  t.terms_.push_back(Term{m, c});
  *this += t;
}

MultiPoly combine(const MultiPoly& a, const MultiPoly& b, bool subtract) {
  RingPtr ring = common_ring(a.ring_, b.ring_);
  if (!(ring == a.ring_ || ring->same_as(*a.ring_)) || !(ring == b.ring_ || ring->same_as(*b.ring_))) {
    return combine(a.in_ring(ring), b.in_ring(ring), subtract);
  }
  const Ring& r = *ring;
  MultiPoly out(ring);
  out.terms_.reserve(a.terms_.size() + b.terms_.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.terms_.size() || j < b.terms_.size()) {
    int c;
    if (i == a.terms_.size()) {
      c = -1;
    } else if (j == b.terms_.size()) {
      c = 1;
    } else {
      c = r.compare(a.terms_[i].mono, b.terms_[j].mono);
    }
    if (c > 0) {
      out.terms_.push_back(a.terms_[i++]);
    } else if (c < 0) {
      Term t = b.terms_[j++];
      if (subtract) t.coef = -t.coef;
      out.terms_.push_back(std::move(t));
    } else {
      Gaussian s = subtract ? a.terms_[i].coef - b.terms_[j].coef : a.terms_[i].coef + b.terms_[j].coef;
      if (!s.is_zero()) out.terms_.push_back(Term{a.terms_[i].mono, std::move(s)});
      ++i;
      ++j;
    }
  }
  return out;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  *this = combine(*this, o, false);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  *this = combine(*this, o, true);
  return *this;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& o) {
  *this = *this * o;
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  RingPtr ring = common_ring(a.ring_, b.ring_);
  bool a_ok = ring == a.ring_ || ring->same_as(*a.ring_);
  bool b_ok = ring == b.ring_ || ring->same_as(*b.ring_);
  if (!a_ok || !b_ok) return a.in_ring(ring) * b.in_ring(ring);
  if (a.is_zero() || b.is_zero()) return MultiPoly(ring);
  if (b.terms_.size() == 1) {
    MultiPoly p = a.mul_term(b.terms_[0].mono, b.terms_[0].coef);
    p.ring_ = ring;
    return p;
  }
  if (a.terms_.size() == 1) {
    MultiPoly p = b.mul_term(a.terms_[0].mono, a.terms_[0].coef);
    p.ring_ = ring;
    return p;
  }
  std::vector<Term> prod;
  prod.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& x : a.terms_)
    for (const auto& y : b.terms_) prod.push_back(Term{x.mono * y.mono, x.coef * y.coef});
  return MultiPoly(ring, std::move(prod));
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly p = *this;
  for (auto& t : p.terms_) t.coef = -t.coef;
  return p;
}

bool operator==(const MultiPoly& a, const MultiPoly& b) {
  if (a.ring_ == b.ring_ || a.ring_->same_as(*b.ring_)) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
      if (!(a.terms_[i].mono == b.terms_[i].mono) || !(a.terms_[i].coef == b.terms_[i].coef)) return false;
    }
    return true;
  }
  return (a - b).is_zero();
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : terms_) {
    std::string mono;
    for (std::size_t i = 0; i < ring_->size(); ++i) {
      if (t.mono.exp[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += ring_->vars()[i];
      if (t.mono.exp[i] > 1) mono += "^" + std::to_string(t.mono.exp[i]);
    }
    std::string term;
    if (mono.empty()) {
      term = t.coef.to_string();
    } else if (t.coef.is_one()) {
      term = mono;
    } else if (t.coef == Gaussian(-1)) {
      term = "-" + mono;
    } else {
      term = t.coef.to_string() + "*" + mono;
    }
    if (first) {
      out = term;
      first = false;
    } else if (term.front() == '-') {
      out += " - " + term.substr(1);
    } else {
      out += " + " + term;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

std::optional<MultiPoly> divide_exact(const MultiPoly& num, const MultiPoly& den) {
  if (den.is_zero()) throw std::domain_error("polynomial division by zero");
  RingPtr ring = common_ring(num.ring(), den.ring());
  MultiPoly r = num.in_ring(ring);
  MultiPoly d = den.in_ring(ring);
  if (d.is_constant()) return r.scaled(d.lead_coef().inverse());
  std::vector<Term> quotient;
  const Term& lt = d.lead();
  Gaussian inv = lt.coef.inverse();
  while (!r.is_zero()) {
    const Term& head = r.lead();
    if (!lt.mono.divides(head.mono)) return std::nullopt;
    Monomial q = head.mono / lt.mono;
    Gaussian c = head.coef * inv;
    r -= d.mul_term(q, c);
    quotient.push_back(Term{std::move(q), std::move(c)});
  }
  return MultiPoly(ring, std::move(quotient));
}

namespace {

MultiPoly exact_quotient(const MultiPoly& a, const MultiPoly& b) {
  auto q = divide_exact(a, b);
  if (!q) throw std::logic_error("expected exact polynomial division");
  return *q;
}

// Leading coefficient of p viewed as a polynomial in variable idx.
MultiPoly lc_in(const MultiPoly& p, std::size_t idx) { return p.coefficients_in(idx).back(); }

MultiPoly pseudo_remainder(MultiPoly a, const MultiPoly& b, std::size_t idx) {
  unsigned db = b.degree_in(idx);
  MultiPoly lcb = lc_in(b, idx);
  const Ring& ring = *a.ring();
  while (!a.is_zero() && a.degree_in(idx) >= db) {
    unsigned da = a.degree_in(idx);
    MultiPoly lca = lc_in(a, idx);
    MultiPoly shift = lca * MultiPoly(a.ring(), {Term{ring.var_monomial(idx, static_cast<std::uint16_t>(da - db)), Gaussian(1)}});
    a = lcb * a - shift * b;
  }
  return a;
}

MultiPoly gcd_same_ring(const MultiPoly& a, const MultiPoly& b);

MultiPoly content_same_ring(const MultiPoly& p, std::size_t idx) {
  auto coeffs = p.coefficients_in(idx);
  MultiPoly g(p.ring());
  for (const auto& c : coeffs) {
    if (c.is_zero()) continue;
    g = g.is_zero() ? c.monic() : gcd_same_ring(g, c);
    if (g.is_one()) break;
  }
  return g;
}

MultiPoly gcd_same_ring(const MultiPoly& a, const MultiPoly& b) {
  const RingPtr& ring = a.ring();
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return MultiPoly::constant(Gaussian(1), ring);
  if (a.size() == 1 && b.size() == 1) {
    Monomial m = a.lead().mono;
    const Monomial& n = b.lead().mono;
    m.deg = 0;
    for (std::size_t i = 0; i < m.exp.size(); ++i) {
      m.exp[i] = std::min(m.exp[i], n.exp[i]);
      m.deg += m.exp[i];
    }
    return MultiPoly(ring, {Term{m, Gaussian(1)}});
  }
  std::size_t idx = ring->size();
  for (std::size_t i = 0; i < ring->size(); ++i) {
    if (a.degree_in(i) > 0 || b.degree_in(i) > 0) {
      idx = i;
      break;
    }
  }
  if (a.degree_in(idx) == 0) return gcd_same_ring(a, content_same_ring(b, idx));
  if (b.degree_in(idx) == 0) return gcd_same_ring(content_same_ring(a, idx), b);

  MultiPoly ca = content_same_ring(a, idx);
  MultiPoly cb = content_same_ring(b, idx);
  MultiPoly c = gcd_same_ring(ca, cb);
  MultiPoly pa = exact_quotient(a, ca);
  MultiPoly pb = exact_quotient(b, cb);
  if (pa.degree_in(idx) < pb.degree_in(idx)) std::swap(pa, pb);
  while (true) {
    MultiPoly r = pseudo_remainder(pa, pb, idx);
    if (r.is_zero()) break;
    if (r.degree_in(idx) == 0) return c.monic();
    pa = std::move(pb);
    pb = exact_quotient(r, content_same_ring(r, idx));
  }
  MultiPoly g = exact_quotient(pb, content_same_ring(pb, idx));
  return (c * g).monic();
}

}  // namespace

MultiPoly content_in(const MultiPoly& p, std::size_t idx) { return content_same_ring(p, idx); }

MultiPoly poly_gcd(const MultiPoly& a, const MultiPoly& b) {
  RingPtr ring = common_ring(a.ring(), b.ring());
  return gcd_same_ring(a.in_ring(ring), b.in_ring(ring));
}

namespace {

void split_into(const MultiPoly& q, std::vector<MultiPoly>& out) {
  if (q.is_constant()) return;
  const RingPtr& ring = q.ring();
  // Monomial factors first.
  for (std::size_t i = 0; i < ring->size(); ++i) {
    unsigned lo = q.degree_in(i);
    for (const auto& t : q.terms()) lo = std::min<unsigned>(lo, t.mono.exp[i]);
    if (lo > 0) {
      MultiPoly v = MultiPoly::variable(ring, i);
      out.push_back(v);
      split_into(exact_quotient(q, v.pow(lo)), out);
      return;
    }
  }
  for (std::size_t i = 0; i < ring->size(); ++i) {
    if (q.degree_in(i) == 0) continue;
    MultiPoly c = content_same_ring(q, i);
    if (!c.is_constant()) {
      split_into(c, out);
      split_into(exact_quotient(q, c), out);
      return;
    }
  }
  for (std::size_t i = 0; i < ring->size(); ++i) {
    if (q.degree_in(i) == 0) continue;
    MultiPoly g = gcd_same_ring(q, q.derivative(i));
    if (!g.is_constant()) {
      split_into(g, out);
      split_into(exact_quotient(q, g), out);
      return;
    }
    break;
  }
  out.push_back(q.monic());
}

}  // namespace

std::vector<MultiPoly> split_factors(const MultiPoly& p) {
  std::vector<MultiPoly> raw;
  split_into(p.compact(), raw);
  std::vector<MultiPoly> out;
  for (auto& f : raw) {
    MultiPoly g = f.compact();
    bool dup = std::any_of(out.begin(), out.end(), [&](const MultiPoly& h) { return h == g; });
    if (!dup) out.push_back(std::move(g));
  }
  // Pieces sharing a factor are refined by pairwise gcd.
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < out.size() && !changed; ++i) {
      for (std::size_t j = i + 1; j < out.size() && !changed; ++j) {
        MultiPoly g = poly_gcd(out[i], out[j]).compact();
        if (g.is_constant()) continue;
        MultiPoly a = exact_quotient(out[i], g).compact();
        MultiPoly b = exact_quotient(out[j], g).compact();
        std::vector<MultiPoly> next;
        for (std::size_t k = 0; k < out.size(); ++k)
          if (k != i && k != j) next.push_back(out[k]);
        for (auto* piece : {&g, &a, &b}) {
          if (piece->is_constant()) continue;
          MultiPoly m = piece->monic();
          if (std::none_of(next.begin(), next.end(), [&](const MultiPoly& h) { return h == m; }))
            next.push_back(m);
        }
        out = std::move(next);
        changed = true;
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const MultiPoly& x, const MultiPoly& y) {
    if (x.total_degree() != y.total_degree()) return x.total_degree() < y.total_degree();
    return x.to_string() < y.to_string();
  });
  return out;
}

}  // namespace leib
