#include "leib/groebner.hpp"

#include <algorithm>
#include <optional>

namespace leib {

PolyIdeal PolyIdeal::in(RingPtr ring, const std::vector<MultiPoly>& gens) {
  PolyIdeal out{ring, {}};
  for (const auto& g : gens) {
    if (!g.is_zero()) out.gens.push_back(g.in_ring(ring));
  }
  return out;
}

std::string to_string(Tristate t) {
  switch (t) {
    case Tristate::yes: return "yes";
    case Tristate::no: return "no";
    case Tristate::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

namespace {

using Terms = std::vector<Term>;

// p - c*m*g over terms sorted descending; p read from index `from`.
Terms sub_mul(const Ring& r, const Terms& p, std::size_t from, const Gaussian& c, const Monomial& m, const Terms& g) {
  Terms out;
  out.reserve(p.size() - from + g.size());
  std::size_t i = from;
  std::size_t j = 0;
  std::optional<Monomial> gm;
  while (i < p.size() || j < g.size()) {
    if (j < g.size() && !gm) gm = g[j].mono * m;
    int cmp;
    if (i >= p.size()) cmp = -1;
    else if (j >= g.size()) cmp = 1;
    else cmp = r.compare(p[i].mono, *gm);
    if (cmp > 0) {
      out.push_back(p[i++]);
    } else if (cmp < 0) {
      out.push_back(Term{std::move(*gm), -(c * g[j].coef)});
      gm.reset();
      ++j;
    } else {
      Gaussian v = p[i].coef - c * g[j].coef;
      if (!v.is_zero()) out.push_back(Term{p[i].mono, std::move(v)});
      ++i;
      ++j;
      gm.reset();
    }
  }
  return out;
}

void make_monic(Terms& t) {
  if (t.empty() || t[0].coef.is_one()) return;
  Gaussian inv = t[0].coef.inverse();
  for (auto& term : t) term.coef *= inv;
}

struct Poly {
  Terms terms;
  unsigned sugar = 0;
  bool active = true;
};

struct Pair {
  std::size_t i;
  std::size_t j;
  Monomial lcm;
  unsigned sugar;
};

class Engine {
 public:
  Engine(RingPtr ring, const GroebnerBudget& budget) : ring_(std::move(ring)), r_(*ring_), budget_(budget) {}

  // Reduces `t` fully against the active polynomials. Returns false on budget exhaustion.
  bool reduce(Terms& t) {
    Terms done;
    std::size_t from = 0;
    while (from < t.size()) {
      const Term& lead = t[from];
      const Poly* red = nullptr;
      for (const auto& g : polys_) {
        if (g.active && g.terms[0].mono.divides(lead.mono)) {
          red = &g;
          break;
        }
      }
      if (!red) {
        done.push_back(t[from++]);
        continue;
      }
      if (++reductions_ > budget_.max_reductions) return false;
      Gaussian c = lead.coef / red->terms[0].coef;
      Monomial m = lead.mono / red->terms[0].mono;
      t = sub_mul(r_, t, from + 1, c, m, Terms(red->terms.begin() + 1, red->terms.end()));
      from = 0;
    }
    t = std::move(done);
    return true;
  }

  void insert(Terms h, unsigned sugar) {
    make_monic(h);
    std::size_t hi = polys_.size();
    polys_.push_back(Poly{std::move(h), sugar, true});
    const Monomial& hm = polys_[hi].terms[0].mono;

    // Gebauer-Moeller update.
    std::vector<Pair> fresh;
    for (std::size_t g = 0; g < hi; ++g) {
      if (!polys_[g].active) continue;
      fresh.push_back(make_pair(g, hi));
    }
    // Criterion M: drop pairs whose lcm is a proper multiple of another new lcm.
    std::vector<bool> alive(fresh.size(), true);
    for (std::size_t a = 0; a < fresh.size(); ++a) {
      for (std::size_t b = 0; b < fresh.size(); ++b) {
        if (a != b && fresh[b].lcm.divides(fresh[a].lcm) && !(fresh[b].lcm == fresh[a].lcm)) {
          alive[a] = false;
          break;
        }
      }
    }
    // Criterion F and the product criterion: one pair per lcm, none if any
    // pair with that lcm has coprime leading monomials.
    std::vector<Pair> useful;
    std::vector<bool> seen(fresh.size(), false);
    for (std::size_t a = 0; a < fresh.size(); ++a) {
      if (!alive[a] || seen[a]) continue;
      bool any_coprime = false;
      for (std::size_t b = a; b < fresh.size(); ++b) {
        if (alive[b] && fresh[b].lcm == fresh[a].lcm) {
          seen[b] = true;
          if (polys_[fresh[b].i].terms[0].mono.coprime(hm)) any_coprime = true;
        }
      }
      if (!any_coprime) useful.push_back(fresh[a]);
    }
    std::vector<Pair> next;
    for (const auto& p : pairs_) {
      bool drop = hm.divides(p.lcm) && !(polys_[p.i].terms[0].mono.lcm(hm) == p.lcm) &&
                  !(polys_[p.j].terms[0].mono.lcm(hm) == p.lcm);
      if (!drop) next.push_back(p);
    }
    next.insert(next.end(), useful.begin(), useful.end());
    pairs_ = std::move(next);
    for (std::size_t g = 0; g < hi; ++g) {
      if (polys_[g].active && hm.divides(polys_[g].terms[0].mono)) polys_[g].active = false;
    }
  }

  GroebnerResult run(const std::vector<MultiPoly>& gens) {
    GroebnerResult res;
    std::vector<Poly> inputs;
    for (const auto& g : gens) {
      if (g.is_zero()) continue;
      inputs.push_back(Poly{g.terms(), g.total_degree(), true});
    }
    std::stable_sort(inputs.begin(), inputs.end(), [&](const Poly& a, const Poly& b) {
      if (a.sugar != b.sugar) return a.sugar < b.sugar;
      return r_.compare(a.terms[0].mono, b.terms[0].mono) < 0;
    });
    bool exhausted = false;
    for (auto& in : inputs) {
      Terms t = in.terms;
      if (!reduce(t)) {
        exhausted = true;
        break;
      }
      if (t.empty()) continue;
      if (t[0].mono.is_one()) return unit(res);
      insert(std::move(t), in.sugar);
    }
    while (!exhausted && !pairs_.empty()) {
      auto best = std::min_element(pairs_.begin(), pairs_.end(), [&](const Pair& a, const Pair& b) {
        if (a.sugar != b.sugar) return a.sugar < b.sugar;
        int c = r_.compare(a.lcm, b.lcm);
        if (c != 0) return c < 0;
        return std::tie(a.i, a.j) < std::tie(b.i, b.j);
      });
      Pair p = *best;
      pairs_.erase(best);
      if (p.sugar > budget_.max_degree) {
        exhausted = true;
        break;
      }
      Terms s = spoly(polys_[p.i].terms, polys_[p.j].terms);
      if (!reduce(s)) {
        exhausted = true;
        break;
      }
      if (s.empty()) continue;
      if (s[0].mono.is_one()) return unit(res);
      insert(std::move(s), p.sugar);
    }
    res.reductions = reductions_;
    res.status = exhausted ? GbStatus::budget_exceeded : GbStatus::complete;
    std::vector<MultiPoly> basis;
    for (const auto& g : polys_) {
      if (exhausted || g.active) basis.push_back(MultiPoly(ring_, g.terms));
    }
    if (!exhausted) basis = interreduce(basis);
    res.basis = PolyIdeal{ring_, std::move(basis)};
    return res;
  }

 private:
  Pair make_pair(std::size_t i, std::size_t j) const {
    const Poly& a = polys_[i];
    const Poly& b = polys_[j];
    Monomial l = a.terms[0].mono.lcm(b.terms[0].mono);
    unsigned sa = a.sugar + l.deg - a.terms[0].mono.deg;
    unsigned sb = b.sugar + l.deg - b.terms[0].mono.deg;
    return Pair{i, j, std::move(l), std::max(sa, sb)};
  }

  Terms spoly(const Terms& f, const Terms& g) const {
    Monomial l = f[0].mono.lcm(g[0].mono);
    Terms a;
    Monomial mf = l / f[0].mono;
    Gaussian cf = f[0].coef.inverse();
    for (std::size_t k = 1; k < f.size(); ++k) a.push_back(Term{f[k].mono * mf, f[k].coef * cf});
    Gaussian cg = g[0].coef.inverse();
    return sub_mul(r_, a, 0, cg, l / g[0].mono, Terms(g.begin() + 1, g.end()));
  }

  GroebnerResult unit(GroebnerResult& res) const {
    res.reductions = reductions_;
    res.status = GbStatus::complete;
    res.basis = PolyIdeal{ring_, {MultiPoly::constant(Gaussian(1), ring_)}};
    return res;
  }

  std::vector<MultiPoly> interreduce(std::vector<MultiPoly> basis) const {
    std::vector<MultiPoly> minimal;
    for (std::size_t a = 0; a < basis.size(); ++a) {
      bool redundant = false;
      for (std::size_t b = 0; b < basis.size() && !redundant; ++b) {
        if (a == b) continue;
        const Monomial& la = basis[a].lead().mono;
        const Monomial& lb = basis[b].lead().mono;
        if (lb.divides(la) && (!(la == lb) || b < a)) redundant = true;
      }
      if (!redundant) minimal.push_back(basis[a].monic());
    }
    for (std::size_t a = 0; a < minimal.size(); ++a) {
      std::vector<MultiPoly> others;
      for (std::size_t b = 0; b < minimal.size(); ++b) {
        if (a != b) others.push_back(minimal[b]);
      }
      minimal[a] = normal_form(minimal[a], others).monic();
    }
    std::sort(minimal.begin(), minimal.end(), [&](const MultiPoly& x, const MultiPoly& y) {
      return r_.compare(x.lead().mono, y.lead().mono) > 0;
    });
    return minimal;
  }

  RingPtr ring_;
  const Ring& r_;
  GroebnerBudget budget_;
  std::vector<Poly> polys_;
  std::vector<Pair> pairs_;
  std::size_t reductions_ = 0;
};

}  // namespace

GroebnerResult groebner(const PolyIdeal& ideal, const GroebnerBudget& budget) {
  Engine engine(ideal.ring, budget);
  std::vector<MultiPoly> gens;
  for (const auto& g : ideal.gens) gens.push_back(g.in_ring(ideal.ring));
  return engine.run(gens);
}

MultiPoly normal_form(const MultiPoly& p, const std::vector<MultiPoly>& divisors) {
  if (p.is_zero()) return p;
  const RingPtr& ring = p.ring();
  const Ring& r = *ring;
  std::vector<Terms> divs;
  for (const auto& d : divisors) {
    if (!d.is_zero()) divs.push_back(d.in_ring(ring).terms());
  }
  Terms t = p.terms();
  Terms done;
  std::size_t from = 0;
  while (from < t.size()) {
    const Terms* red = nullptr;
    for (const auto& d : divs) {
      if (d[0].mono.divides(t[from].mono)) {
        red = &d;
        break;
      }
    }
    if (!red) {
      done.push_back(t[from++]);
      continue;
    }
    Gaussian c = t[from].coef / (*red)[0].coef;
    Monomial m = t[from].mono / (*red)[0].mono;
    t = sub_mul(r, t, from + 1, c, m, Terms(red->begin() + 1, red->end()));
    from = 0;
  }
  return MultiPoly(ring, std::move(done));
}

MultiPoly s_polynomial(const MultiPoly& f, const MultiPoly& g) {
  RingPtr ring = common_ring(f.ring(), g.ring());
  MultiPoly a = f.in_ring(ring);
  MultiPoly b = g.in_ring(ring);
  Monomial l = a.lead().mono.lcm(b.lead().mono);
  return a.mul_term(l / a.lead().mono, a.lead_coef().inverse()) - b.mul_term(l / b.lead().mono, b.lead_coef().inverse());
}

bool satisfies_buchberger_criterion(const std::vector<MultiPoly>& basis) {
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = i + 1; j < basis.size(); ++j) {
      if (!normal_form(s_polynomial(basis[i], basis[j]), basis).is_zero()) return false;
    }
  }
  return true;
}

Tristate ideal_contains(const GroebnerResult& gb, const MultiPoly& f) {
  if (gb.is_unit()) return Tristate::yes;
  if (normal_form(f.in_ring(gb.basis.ring), gb.basis.gens).is_zero()) return Tristate::yes;
  return gb.complete() ? Tristate::no : Tristate::inconclusive;
}

Tristate ideal_is_unit(const GroebnerResult& gb) {
  if (gb.is_unit()) return Tristate::yes;
  return gb.complete() ? Tristate::no : Tristate::inconclusive;
}

}  // namespace leib
