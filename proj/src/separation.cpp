#include "leib/separation.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "leib/literal.hpp"

namespace leib {

namespace {

std::string trim(std::string s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

const std::array<std::array<std::size_t, 3>, 6> kPairPerms = {
    {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};

// Polynomial matrices for the symbolic basis changes.
using PolyMatrix = std::vector<std::vector<MultiPoly>>;

MultiPoly pconst(long v) { return MultiPoly::constant(Gaussian(v)); }

MultiPoly det_laplace(const PolyMatrix& m) {
  const std::size_t n = m.size();
  if (n == 0) return pconst(1);
  if (n == 1) return m[0][0];
  MultiPoly out = pconst(0);
  for (std::size_t c = 0; c < n; ++c) {
    if (m[0][c].is_zero()) continue;
    PolyMatrix minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<MultiPoly> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      minor.push_back(row);
    }
    MultiPoly term = m[0][c] * det_laplace(minor);
    if (c % 2) out -= term;
    else out += term;
  }
  return out;
}

PolyMatrix adjugate(const PolyMatrix& m) {
  const std::size_t n = m.size();
  PolyMatrix adj(n, std::vector<MultiPoly>(n, pconst(0)));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      PolyMatrix minor;
      for (std::size_t i = 0; i < n; ++i) {
        if (i == r) continue;
        std::vector<MultiPoly> row;
        for (std::size_t k = 0; k < n; ++k)
          if (k != c) row.push_back(m[i][k]);
        minor.push_back(row);
      }
      MultiPoly d = det_laplace(minor);
      adj[c][r] = (r + c) % 2 ? -d : d;
    }
  return adj;
}

// Constants c[(i*n+j)*n+k] as polynomials; returns N with c' = N / det(E) in the basis E_i = sum_p E(i,p) e_p.
std::vector<MultiPoly> transformed_numerators(const std::vector<MultiPoly>& c, const PolyMatrix& e, std::size_t n) {
  PolyMatrix adj = adjugate(e);
  std::vector<MultiPoly> out(n * n * n, pconst(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<MultiPoly> m(n, pconst(0));
      for (std::size_t p = 0; p < n; ++p) {
        if (e[i][p].is_zero()) continue;
        for (std::size_t q = 0; q < n; ++q) {
          if (e[j][q].is_zero()) continue;
          MultiPoly w = e[i][p] * e[j][q];
          for (std::size_t r = 0; r < n; ++r) {
            const MultiPoly& x = c[(p * n + q) * n + r];
            if (!x.is_zero()) m[r] += w * x;
          }
        }
      }
      for (std::size_t k = 0; k < n; ++k) {
        MultiPoly acc = pconst(0);
        for (std::size_t r = 0; r < n; ++r)
          if (!m[r].is_zero() && !adj[r][k].is_zero()) acc += m[r] * adj[r][k];
        out[(i * n + j) * n + k] = acc;
      }
    }
  return out;
}

// p with variables replaced by polynomials; scale^(deg p - deg term) homogenizes a division by scale.
MultiPoly substitute_homogenized(const MultiPoly& p, const std::map<std::string, MultiPoly>& vals,
                                 const MultiPoly& scale) {
  const auto& vars = p.ring()->vars();
  unsigned deg = p.total_degree();
  MultiPoly out = pconst(0);
  for (const auto& t : p.terms()) {
    MultiPoly term = MultiPoly::constant(t.coef);
    unsigned used = 0;
    for (std::size_t v = 0; v < vars.size(); ++v) {
      unsigned e = t.mono.exp[v];
      if (!e) continue;
      auto it = vals.find(vars[v]);
      if (it == vals.end()) {
        term *= MultiPoly::variable(vars[v]).pow(e);
      } else {
        term *= it->second.pow(e);
        used += e;
      }
    }
    if (deg > used) term *= scale.pow(deg - used);
    out += term;
  }
  return out;
}

std::vector<MultiPoly> polynomial_constants(const AlgebraStructure& a) {
  std::vector<MultiPoly> out;
  for (const auto& c : a.constants()) {
    if (!c.is_polynomial()) throw std::invalid_argument(a.label() + " has non-polynomial structure constants");
    out.push_back(c.num());
  }
  return out;
}

// Conditions of R on the structure with constants `c` (any polynomials), as a list of polynomials.
std::vector<MultiPoly> conditions_on(const ClosedSetSpec& r, const std::vector<MultiPoly>& c, std::size_t n,
                                     const MultiPoly& scale) {
  std::map<std::string, MultiPoly> vals;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) vals[constant_var(i, j, k)] = c[(i * n + j) * n + k];
  std::vector<MultiPoly> out;
  for (const auto& ct : r.contain)
    for (std::size_t p = ct.i; p <= n; ++p)
      for (std::size_t q = ct.j; q <= n; ++q)
        for (std::size_t s = 1; s < ct.k && s <= n; ++s) out.push_back(c[((p - 1) * n + (q - 1)) * n + (s - 1)]);
  for (const auto& eq : r.equations) out.push_back(substitute_homogenized(eq, vals, scale));
  return out;
}

std::vector<std::string> vars_of(const std::vector<MultiPoly>& polys) {
  std::set<std::string> s;
  for (const auto& p : polys)
    for (const auto& v : p.used_vars()) s.insert(v);
  return {s.begin(), s.end()};
}

}  // namespace

std::string SixTuple::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < 6; ++i) out += (i ? "," : "") + v[i].to_string();
  return out + ")";
}

SixTuple six_tuple(const AlgebraStructure& a) {
  if (!check_standard(a)) throw std::invalid_argument(a.label() + " is not a standard structure");
  return SixTuple{{a.at(1, 0, 1), a.at(2, 0, 2), a.at(3, 0, 3), a.at(0, 1, 1), a.at(0, 2, 2), a.at(0, 3, 3)}};
}

std::string form_to_string(const AffineForm& f) {
  Scalar s(f[0]);
  for (std::size_t i = 1; i < 7; ++i) s += Scalar(f[i]) * Scalar::var("x_" + std::to_string(i));
  return s.to_string();
}

std::vector<AffineForm> vanishing_forms(const std::vector<SixTuple>& family) {
  // Unknown coefficients f_0..f_6; one linear equation per parameter monomial.
  std::vector<ScalarVector> rows;
  for (const auto& t : family) {
    MultiPoly d = pconst(1);
    std::set<std::string> seen;
    for (const auto& s : t.v)
      if (!s.den().is_one() && seen.insert(s.den().to_string()).second) d *= s.den();
    std::vector<MultiPoly> parts{d};
    for (const auto& s : t.v) parts.push_back(s.num() * *divide_exact(d, s.den()));
    std::vector<std::string> params = vars_of(parts);
    RingPtr ring = Ring::canonical(params);
    std::map<std::vector<std::uint16_t>, ScalarVector> by_mono;
    for (std::size_t u = 0; u < 7; ++u) {
      MultiPoly p = parts[u].in_ring(ring);
      for (const auto& term : p.terms()) {
        auto& row = by_mono[term.mono.exp];
        if (row.empty()) row.assign(7, Scalar(0));
        row[u] += Scalar(term.coef);
      }
    }
    for (auto& [m, row] : by_mono) rows.push_back(row);
  }
  std::vector<AffineForm> out;
  std::vector<ScalarVector> kernel;
  if (rows.empty()) {
    for (std::size_t u = 0; u < 7; ++u) {
      ScalarVector v(7, Scalar(0));
      v[u] = Scalar(1);
      kernel.push_back(v);
    }
  } else {
    kernel = kernel_basis(ScalarMatrix::from_rows(rows, 7));
  }
  for (const auto& v : kernel) {
    AffineForm f;
    for (std::size_t u = 0; u < 7; ++u) f[u] = v[u].constant_value();
    out.push_back(f);
  }
  return out;
}

std::string to_string(Obstruction o) { return o == Obstruction::refuted ? "refuted" : "not_refuted"; }

ObstructionResult six_tuple_obstruction(const std::vector<AffineForm>& forms, const SixTuple& target) {
  for (const auto& sigma : kPairPerms) {
    std::array<Scalar, 6> y;
    for (std::size_t k = 0; k < 3; ++k) {
      y[k] = target[sigma[k]];
      y[k + 3] = target[sigma[k] + 3];
    }
    // each form reads alpha + c * beta
    std::vector<std::pair<Scalar, Scalar>> eqs;
    for (const auto& f : forms) {
      Scalar beta(0);
      for (std::size_t i = 0; i < 6; ++i)
        if (!f[i + 1].is_zero()) beta += Scalar(f[i + 1]) * y[i];
      eqs.emplace_back(Scalar(f[0]), beta);
    }
    std::optional<Scalar> c;
    bool ok = true;
    for (const auto& [alpha, beta] : eqs) {
      if (beta.is_zero()) {
        if (!alpha.is_zero()) ok = false;
        continue;
      }
      if (!c) c = -alpha / beta;
    }
    if (!ok) continue;
    if (!c) c = Scalar(1);
    if (c->is_zero()) continue;
    for (const auto& [alpha, beta] : eqs)
      if (!(alpha + *c * beta).is_zero()) ok = false;
    if (ok) return {Obstruction::not_refuted, sigma, *c};
  }
  return {Obstruction::refuted, {0, 1, 2}, Scalar(0)};
}

std::string constant_var(std::size_t i, std::size_t j, std::size_t k) {
  return "c_" + std::to_string(i + 1) + "_" + std::to_string(j + 1) + "_" + std::to_string(k + 1);
}

std::string ClosedSetSpec::to_string() const {
  std::string out;
  for (const auto& c : contain)
    out += "S" + std::to_string(c.i) + "S" + std::to_string(c.j) + " < S" + std::to_string(c.k) + "; ";
  for (const auto& e : equations) out += e.to_string() + " = 0; ";
  if (!out.empty()) out.resize(out.size() - 2);
  return out;
}

bool closed_set_membership(const AlgebraStructure& a, const ClosedSetSpec& r) {
  const std::size_t n = a.dim();
  for (const auto& c : r.contain) {
    if (c.i < 1 || c.j < 1 || c.k < 1 || c.i > n + 1 || c.j > n + 1 || c.k > n + 1)
      throw std::invalid_argument("containment index out of range");
    Subspace prod = subspace_product(a, Subspace::tail(n, c.i), Subspace::tail(n, c.j));
    if (!Subspace::tail(n, c.k).contains(prod)) return false;
  }
  Bindings vals;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) vals[constant_var(i, j, k)] = a.at(i, j, k);
  for (const auto& e : r.equations)
    if (!substitute(e, vals).is_zero()) return false;
  return true;
}

std::string to_string(Stability s) {
  switch (s) {
    case Stability::stable:
      return "stable";
    case Stability::not_stable:
      return "not_stable";
    case Stability::inconclusive:
      return "inconclusive";
  }
  return "?";
}

StabilityReport borel_stability(const ClosedSetSpec& r, std::size_t n, const GroebnerBudget& budget) {
  // A lower triangular g acts as the basis change E = (g^-1)^T, which is a
  // generic upper triangular matrix; its inverse has the diagonal product as denominator.
  std::vector<MultiPoly> c(n * n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) c[(i * n + j) * n + k] = MultiPoly::variable(constant_var(i, j, k));
  PolyMatrix e(n, std::vector<MultiPoly>(n, pconst(0)));
  MultiPoly det = pconst(1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      e[i][j] = MultiPoly::variable("b_" + std::to_string(i + 1) + "_" + std::to_string(j + 1));
      if (i == j) det *= e[i][j];
    }
  auto moved = transformed_numerators(c, e, n);
  auto before = conditions_on(r, c, n, pconst(1));
  auto after = conditions_on(r, moved, n, det);

  std::vector<MultiPoly> gens;
  for (const auto& p : before)
    if (!p.is_zero()) gens.push_back(p);
  gens.push_back(MultiPoly::variable("z") * det - pconst(1));
  std::vector<MultiPoly> everything = gens;
  everything.insert(everything.end(), after.begin(), after.end());
  RingPtr ring = Ring::make(vars_of(everything));
  auto gb = groebner(PolyIdeal::in(ring, gens), budget);

  StabilityReport rep;
  if (gb.is_unit()) {
    rep.verdict = Stability::stable;  // empty set
    return rep;
  }
  bool open = false;
  for (std::size_t idx = 0; idx < after.size(); ++idx) {
    if (after[idx].is_zero()) continue;
    switch (ideal_contains(gb, after[idx].in_ring(ring))) {
      case Tristate::yes:
        break;
      case Tristate::no:
        rep.failures.push_back(before[idx].to_string());
        break;
      case Tristate::inconclusive:
        open = true;
        break;
    }
  }
  rep.verdict = !rep.failures.empty() ? Stability::not_stable : open ? Stability::inconclusive : Stability::stable;
  return rep;
}

std::string to_string(Refutation r) {
  switch (r) {
    case Refutation::refuted:
      return "refuted";
    case Refutation::not_refuted:
      return "not_refuted";
    case Refutation::inconclusive:
      return "inconclusive";
  }
  return "?";
}

namespace {

struct CellVerdict {
  Refutation verdict = Refutation::inconclusive;
  std::vector<MultiPoly> elimination;  // parameter conditions when refuted only generically
  std::string detail;
};

CellVerdict solve_orbit_system(std::vector<MultiPoly> eqs, const std::vector<std::string>& unknowns,
                               const std::vector<std::string>& params, const GroebnerBudget& budget) {
  CellVerdict v;
  std::vector<MultiPoly> kept;
  for (auto& p : eqs) {
    if (p.is_zero()) continue;
    if (p.is_constant()) {
      v.verdict = Refutation::refuted;
      v.detail = "nonzero constant condition";
      return v;
    }
    kept.push_back(p);
  }
  if (kept.empty()) {
    v.verdict = Refutation::not_refuted;
    v.detail = "all conditions vanish";
    return v;
  }
  std::vector<std::string> vars = unknowns;
  for (const auto& q : params) vars.push_back(q);
  RingPtr ring = Ring::make(vars, {OrderKind::block_grevlex, unknowns.size()});
  auto gb = groebner(PolyIdeal::in(ring, kept), budget);
  if (!gb.complete()) {
    v.detail = "budget exceeded after " + std::to_string(gb.reductions) + " reductions";
    return v;
  }
  if (gb.is_unit()) {
    v.verdict = Refutation::refuted;
    v.detail = "unit ideal";
    return v;
  }
  for (const auto& g : gb.basis.gens) {
    bool only_params = true;
    for (const auto& u : unknowns)
      if (g.uses_var(u)) only_params = false;
    if (only_params) v.elimination.push_back(g.compact());
  }
  if (v.elimination.empty()) {
    v.verdict = Refutation::not_refuted;
    v.detail = "solvable";
  } else {
    v.verdict = Refutation::refuted;
    v.detail = "refuted off " + v.elimination.front().to_string() + " = 0";
  }
  return v;
}

OrbitReport orbit_refute_impl(const AlgebraStructure& b, const ClosedSetSpec& r, OrbitRoute route,
                              const GroebnerBudget& budget, int depth) {
  const std::size_t n = b.dim();
  auto c = polynomial_constants(b);
  OrbitReport rep;
  std::vector<MultiPoly> param_conditions;
  bool open = false;
  auto absorb = [&](const CellVerdict& v, const std::string& cell) {
    rep.detail.push_back(cell + ": " + to_string(v.verdict) + " (" + v.detail + ")");
    if (v.verdict == Refutation::inconclusive) open = true;
    if (v.verdict == Refutation::not_refuted) rep.verdict = Refutation::not_refuted;
    if (!v.elimination.empty()) {
      const MultiPoly* best = &v.elimination.front();
      for (const auto& g : v.elimination)
        if (g.total_degree() < best->total_degree()) best = &g;
      param_conditions.push_back(*best);
    }
  };
  if (route == OrbitRoute::bruhat) {
    // g = beta w u with beta lower triangular (absorbed by stability): basis E = W V^T, V lower unitriangular.
    std::vector<std::string> unknowns;
    PolyMatrix vt(n, std::vector<MultiPoly>(n, pconst(0)));
    for (std::size_t i = 0; i < n; ++i) {
      vt[i][i] = pconst(1);
      for (std::size_t j = 0; j < i; ++j) {
        std::string name = "v_" + std::to_string(i + 1) + "_" + std::to_string(j + 1);
        unknowns.push_back(name);
        vt[j][i] = MultiPoly::variable(name);
      }
    }
    std::vector<std::size_t> w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = i;
    do {
      // E = W V^T with W the permutation matrix sending row i to e_{w[i]}
      PolyMatrix e(n, std::vector<MultiPoly>(n, pconst(0)));
      for (std::size_t i = 0; i < n; ++i) e[i] = vt[w[i]];
      MultiPoly det = det_laplace(e);
      auto moved = transformed_numerators(c, e, n);
      auto eqs = conditions_on(r, moved, n, det);
      std::string cell = "w=";
      for (auto x : w) cell += std::to_string(x + 1);
      absorb(solve_orbit_system(eqs, unknowns, b.params(), budget), cell);
      if (rep.verdict == Refutation::not_refuted) break;
    } while (std::next_permutation(w.begin(), w.end()));
  } else {
    std::vector<std::string> unknowns;
    PolyMatrix e(n, std::vector<MultiPoly>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        std::string name = "g_" + std::to_string(i + 1) + "_" + std::to_string(j + 1);
        unknowns.push_back(name);
        e[i][j] = MultiPoly::variable(name);
      }
    unknowns.push_back("y");
    MultiPoly det = det_laplace(e);
    auto moved = transformed_numerators(c, e, n);
    auto eqs = conditions_on(r, moved, n, det);
    eqs.push_back(det * MultiPoly::variable("y") - pconst(1));
    absorb(solve_orbit_system(eqs, unknowns, b.params(), budget), "GL");
  }
  if (rep.verdict == Refutation::not_refuted) return rep;
  if (open) {
    rep.verdict = Refutation::inconclusive;
    return rep;
  }
  rep.verdict = Refutation::refuted;
  // recheck the parameter values the generic argument excludes
  std::set<std::string> seen;
  for (const auto& cond : param_conditions) {
    for (const auto& point : resolve_locus(cond)) {
      if (!point.binding) {
        rep.exceptional.push_back(point.text() + " (not specialized)");
        continue;
      }
      std::string key = bindings_to_string(*point.binding);
      if (!seen.insert(key).second) continue;
      rep.rechecked.push_back(key);
      if (depth <= 0) {
        rep.exceptional.push_back(key + " (depth limit)");
        continue;
      }
      auto inner = orbit_refute_impl(specialize(b, *point.binding), r, route, budget, depth - 1);
      if (inner.verdict != Refutation::refuted) rep.exceptional.push_back(key + ": " + to_string(inner.verdict));
      for (const auto& x : inner.exceptional) rep.exceptional.push_back(key + " then " + x);
    }
  }
  return rep;
}

}  // namespace

OrbitReport orbit_refute(const AlgebraStructure& b, const ClosedSetSpec& r, OrbitRoute route,
                         const GroebnerBudget& budget) {
  return orbit_refute_impl(b, r, route, budget, 2);
}

std::string to_string(Rule r) {
  switch (r) {
    case Rule::der_dim:
      return "der_dim";
    case Rule::ann_left_gt:
      return "ann_left_gt";
    case Rule::square_lt:
      return "square_lt";
    case Rule::plus_square_lt:
      return "plus_square_lt";
    case Rule::nilradical_dim:
      return "nilradical_dim";
    case Rule::solvable:
      return "solvable";
    case Rule::trivial_subalg:
      return "trivial_subalg";
    case Rule::anticomm_subalg:
      return "anticomm_subalg";
    case Rule::six_tuple:
      return "six_tuple";
    case Rule::lie_ann:
      return "lie_ann";
    case Rule::closed_set:
      return "closed_set";
  }
  return "?";
}

const std::vector<Rule>& all_rules() {
  static const std::vector<Rule> rules = {Rule::der_dim,        Rule::ann_left_gt,    Rule::square_lt,
                                          Rule::plus_square_lt, Rule::nilradical_dim, Rule::solvable, Rule::trivial_subalg,
                                          Rule::anticomm_subalg, Rule::six_tuple,     Rule::lie_ann,
                                          Rule::closed_set};
  return rules;
}

std::optional<Rule> rule_from_string(std::string_view s) {
  for (Rule r : all_rules())
    if (to_string(r) == s) return r;
  return std::nullopt;
}

SeparationCertificate parse_separation(std::string_view text, std::string name) {
  SeparationCertificate c;
  c.name = std::move(name);
  bool have_rule = false;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  auto count = [&](const std::string& v, std::size_t col) -> std::size_t {
    try {
      std::size_t used = 0;
      long x = std::stol(v, &used);
      if (used != v.size() || x < 0) throw std::invalid_argument(v);
      return static_cast<std::size_t>(x);
    } catch (const std::exception&) {
      throw ParseError("expected a count, got '" + v + "'", line_no, col);
    }
  };
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    auto colon = line.find(':');
    if (colon == std::string::npos) throw ParseError("expected 'key: value'", line_no, 1);
    std::string key = trim(line.substr(0, colon));
    std::string value = trim(line.substr(colon + 1));
    std::size_t col = colon + 2;
    if (key == "rule") {
      auto r = rule_from_string(value);
      if (!r) throw ParseError("unknown rule '" + value + "'", line_no, col);
      c.rule = *r;
      have_rule = true;
    } else if (key == "source") {
      c.source = value;
    } else if (key == "target") {
      c.target = value;
    } else if (key == "name") {
      c.name = value;
    } else if (key == "note") {
      c.notes.push_back(value);
    } else if (key == "k") {
      c.k = count(value, col);
    } else if (key == "image_bound") {
      c.image_bound = count(value, col);
    } else if (key == "permutation") {
      std::istringstream ps(value);
      std::string tok;
      while (ps >> tok) c.permutation.push_back(count(tok, col));
    } else if (key == "closed_set") {
      if (!c.closed_set) c.closed_set = ClosedSetSpec{};
    } else if (key == "contain") {
      if (!c.closed_set) throw ParseError("'contain' outside a closed_set block", line_no, 1);
      std::istringstream ps(value);
      std::string a, b, d, extra;
      if (!(ps >> a >> b >> d) || (ps >> extra)) throw ParseError("contain takes three indices", line_no, col);
      c.closed_set->contain.push_back({count(a, col), count(b, col), count(d, col)});
    } else if (key == "eq") {
      if (!c.closed_set) throw ParseError("'eq' outside a closed_set block", line_no, 1);
      c.closed_set->equations.push_back(parse_poly(value));
    } else {
      throw ParseError("unknown key '" + key + "'", line_no, 1);
    }
  }
  if (!have_rule) throw ParseError("missing rule", 1, 1);
  if (c.source.empty() || c.target.empty()) throw ParseError("certificate needs source and target", 1, 1);
  if (c.rule == Rule::closed_set && !c.closed_set) throw ParseError("closed_set rule without a closed_set block", 1, 1);
  if (!c.permutation.empty()) {
    auto sorted = c.permutation;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i)
      if (sorted[i] != i + 1) throw ParseError("permutation must list 1..n once each", 1, 1);
  }
  return c;
}

std::string serialize_separation(const SeparationCertificate& c) {
  std::string out;
  if (!c.name.empty()) out += "name: " + c.name + "\n";
  out += "rule: " + to_string(c.rule) + "\nsource: " + c.source + "\ntarget: " + c.target + "\n";
  for (const auto& n : c.notes) out += "note: " + n + "\n";
  if (c.k) out += "k: " + std::to_string(*c.k) + "\n";
  if (c.image_bound) out += "image_bound: " + std::to_string(*c.image_bound) + "\n";
  if (!c.permutation.empty()) {
    out += "permutation:";
    for (auto p : c.permutation) out += " " + std::to_string(p);
    out += "\n";
  }
  if (c.closed_set) {
    out += "closed_set:\n";
    for (const auto& ct : c.closed_set->contain)
      out += "contain: " + std::to_string(ct.i) + " " + std::to_string(ct.j) + " " + std::to_string(ct.k) + "\n";
    for (const auto& e : c.closed_set->equations) out += "eq: " + e.to_string() + "\n";
  }
  return out;
}

std::vector<SeparationCertificate> load_separations(const std::string& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& f : std::filesystem::directory_iterator(dir))
    if (f.path().extension() == ".sep") files.push_back(f.path());
  std::sort(files.begin(), files.end());
  std::vector<SeparationCertificate> out;
  for (const auto& f : files) {
    std::ifstream in(f);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
      out.push_back(parse_separation(ss.str(), f.stem().string()));
    } catch (const ParseError& e) {
      throw std::runtime_error(f.string() + ": " + e.what());
    }
  }
  return out;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::verified:
      return "verified";
    case Verdict::failed:
      return "failed";
    case Verdict::inconclusive:
      return "inconclusive";
  }
  return "?";
}

InvariantProfile profile(const AlgebraStructure& a, const GroebnerBudget& budget) {
  InvariantProfile p;
  p.label = a.label();
  p.params = a.params().size();
  p.der = derivation_dim(a);
  p.ann_left = ann_left_dim(a);
  p.ann = ann_dim(a);
  p.square = square_dim(a);
  p.plus_square = plus_square_dim(a);
  p.lie = is_lie(a);
  p.solvable = is_solvable(a);
  p.standard = a.dim() == 4 && check_standard(a);
  if (p.solvable) p.nilradical = nilradical_dim(a, budget).dim;
  p.max_trivial = max_dim_subspace(a, SubspaceProperty::trivial(), budget).dim;
  p.max_anticomm = max_dim_subspace(a, SubspaceProperty::anticommutative_image(1), budget).dim;
  return p;
}

ParametricCount within_family(const ParametricCount& c, const std::vector<Restriction>& restrictions) {
  ParametricCount out = c;
  out.exceptional.clear();
  for (const auto& p : c.exceptional) {
    bool excluded = std::any_of(restrictions.begin(), restrictions.end(), [&](const Restriction& r) {
      return substitute(Scalar(r.poly), p.binding).is_zero();
    });
    if (!excluded) out.exceptional.push_back(p);
  }
  return out;
}

InvariantProfile profile(const CatalogEntry& e, const GroebnerBudget& budget) {
  InvariantProfile p = profile(e.algebra, budget);
  for (auto* c : {&p.der, &p.ann_left, &p.ann, &p.square, &p.plus_square}) *c = within_family(*c, e.restrictions);
  return p;
}

namespace {

SeparationReport make_report(bool ok, std::string summary) {
  SeparationReport r;
  r.verdict = ok ? Verdict::verified : Verdict::failed;
  r.summary = std::move(summary);
  return r;
}

std::string n2s(std::size_t v) { return std::to_string(v); }

}  // namespace

SeparationReport invariant_separation(Rule rule, const InvariantProfile& s, const InvariantProfile& t) {
  auto open_loci = [](const ParametricCount& pc) { return !pc.unresolved.empty(); };
  switch (rule) {
    case Rule::der_dim: {
      // Boundary points of a p-parameter family of orbits have orbit dimension below
      // n^2 - min dim Der + p, hence dim Der above min dim Der - p. The target is not
      // isomorphic to a family member (distinct catalog classes).
      if (open_loci(s.der)) return {Verdict::inconclusive, "unresolved Der loci in " + s.label, {}, {}};
      std::size_t lo = s.der.min();
      bool ok = t.der.generic + s.params <= lo;
      return make_report(ok, "dim Der " + t.label + " = " + n2s(t.der.generic) + ", min dim Der " + s.label + " = " +
                                 n2s(lo) + " over " + n2s(s.params) + " parameter(s)");
    }
    case Rule::ann_left_gt: {
      if (open_loci(s.ann_left)) return {Verdict::inconclusive, "unresolved Ann_L loci", {}, {}};
      bool ok = s.ann_left.min() > t.ann_left.generic;
      return make_report(ok, "dim Ann_L " + s.label + " >= " + n2s(s.ann_left.min()) + ", " + t.label + " = " +
                                 n2s(t.ann_left.generic));
    }
    case Rule::square_lt: {
      if (open_loci(s.square)) return {Verdict::inconclusive, "unresolved A^2 loci", {}, {}};
      bool ok = s.square.max() < t.square.generic;
      return make_report(ok, "dim " + s.label + "^2 <= " + n2s(s.square.max()) + ", " + t.label + "^2 = " +
                                 n2s(t.square.generic));
    }
    case Rule::plus_square_lt: {
      if (open_loci(s.plus_square)) return {Verdict::inconclusive, "unresolved A^(+2) loci", {}, {}};
      bool ok = s.plus_square.max() < t.plus_square.generic;
      return make_report(ok, "dim " + s.label + "^(+2) <= " + n2s(s.plus_square.max()) + ", " + t.label +
                                 "^(+2) = " + n2s(t.plus_square.generic));
    }
    case Rule::nilradical_dim: {
      if (!s.solvable || !t.solvable) return make_report(false, "nilradical rule needs solvable structures");
      if (!s.nilradical || !t.nilradical) return {Verdict::inconclusive, "nilradical undecided", {}, {}};
      bool ok = *s.nilradical > *t.nilradical;
      return make_report(ok, "nilradical " + s.label + " = " + n2s(*s.nilradical) + ", " + t.label + " = " +
                                 n2s(*t.nilradical));
    }
    case Rule::solvable:
      // Solvability is a closed condition: A^(n) = 0.
      return make_report(s.solvable && !t.solvable, s.label + (s.solvable ? " is" : " is not") + " solvable, " +
                                                        t.label + (t.solvable ? " is" : " is not") + " solvable");
    case Rule::trivial_subalg: {
      if (!s.max_trivial || !t.max_trivial) return {Verdict::inconclusive, "trivial subalgebra undecided", {}, {}};
      bool ok = *s.max_trivial > *t.max_trivial;
      return make_report(ok, "max trivial subalgebra " + s.label + " = " + n2s(*s.max_trivial) + ", " + t.label +
                                 " = " + n2s(*t.max_trivial));
    }
    case Rule::anticomm_subalg: {
      if (!s.max_anticomm || !t.max_anticomm) return {Verdict::inconclusive, "anticommutative subalgebra undecided", {}, {}};
      bool ok = *s.max_anticomm > *t.max_anticomm;
      return make_report(ok, "max anticommutative D with dim(AD) <= 1: " + s.label + " = " + n2s(*s.max_anticomm) +
                                 ", " + t.label + " = " + n2s(*t.max_anticomm));
    }
    default:
      throw std::invalid_argument("not an invariant rule: " + to_string(rule));
  }
}

SeparationReport six_tuple_separation(const AlgebraStructure& source, const AlgebraStructure& target) {
  if (!check_standard(source)) return make_report(false, source.label() + " is not standard");
  if (!check_standard(target)) return make_report(false, target.label() + " is not standard");
  auto forms = vanishing_forms({six_tuple(source)});
  auto st = six_tuple(target);
  auto res = six_tuple_obstruction(forms, st);
  SeparationReport rep = make_report(res.verdict == Obstruction::refuted,
                                     "S(" + target.label() + ") = " + st.to_string() + " against " +
                                         std::to_string(forms.size()) + " forms of " + source.label());
  for (const auto& f : forms) rep.detail.push_back(form_to_string(f));
  return rep;
}

SeparationReport lie_ann_separation(const std::vector<AlgebraStructure>& family, const AlgebraStructure& b,
                                    const std::vector<Restriction>& restrictions) {
  SeparationReport rep;
  for (const auto& a : family) {
    auto ps = within_family(plus_square_dim(a), restrictions);
    if (!ps.unresolved.empty()) return {Verdict::inconclusive, "unresolved A^(+2) loci for " + a.label(), ps.unresolved, {}};
    if (ps.min() == 0) {
      std::string where = ps.generic == 0 ? "generically" : "";
      for (const auto& e : ps.exceptional)
        if (e.value == 0) where += " " + bindings_to_string(e.binding);
      return make_report(false, a.label() + " has Lie members: " + where);
    }
  }
  if (!is_lie(b)) return make_report(false, b.label() + " is not a Lie algebra");
  auto ann = ann_dim(b);
  if (ann.generic != 0) return make_report(false, "Ann(" + b.label() + ") has dimension " + n2s(ann.generic));
  rep.verdict = Verdict::verified;
  rep.summary = "Ann(" + b.label() + ") = 0";
  for (const auto& e : ann.exceptional) rep.exceptional.push_back(e.constraint);
  for (const auto& u : ann.unresolved) rep.exceptional.push_back(u + " (unresolved)");
  if (!rep.exceptional.empty()) rep.summary += " off the exceptional locus";
  return rep;
}

SeparationReport closed_set_separation(const SeparationCertificate& c, const AlgebraStructure& source,
                                       const AlgebraStructure& target, const GroebnerBudget& budget) {
  if (!c.closed_set) return make_report(false, "no closed set given");
  const ClosedSetSpec& r = *c.closed_set;
  SeparationReport rep;
  auto stab = borel_stability(r, source.dim(), budget);
  rep.detail.push_back("borel stability: " + to_string(stab.verdict));
  for (const auto& f : stab.failures) rep.detail.push_back("moves: " + f);
  if (stab.verdict != Stability::stable) {
    rep.verdict = stab.verdict == Stability::inconclusive ? Verdict::inconclusive : Verdict::failed;
    rep.summary = "closed set is not Borel stable";
    return rep;
  }
  AlgebraStructure placed = source;
  if (!c.permutation.empty()) {
    if (c.permutation.size() != source.dim()) return make_report(false, "permutation has the wrong length");
    ScalarMatrix e(source.dim(), source.dim());
    for (std::size_t i = 0; i < source.dim(); ++i) e(i, c.permutation[i] - 1) = Scalar(1);
    placed = change_basis(source, e);
  }
  if (!closed_set_membership(placed, r)) {
    rep.verdict = Verdict::failed;
    rep.summary = source.label() + " is not in the closed set";
    return rep;
  }
  rep.detail.push_back(source.label() + " lies in the set identically in its parameters");
  auto orbit = orbit_refute(target, r, OrbitRoute::bruhat, budget);
  for (const auto& d : orbit.detail) rep.detail.push_back(d);
  rep.exceptional = orbit.exceptional;
  switch (orbit.verdict) {
    case Refutation::refuted:
      rep.verdict = Verdict::verified;
      rep.summary = "orbit of " + target.label() + " misses the set";
      if (!orbit.rechecked.empty()) {
        std::string all;
        for (const auto& x : orbit.rechecked) all += (all.empty() ? "" : ", ") + x;
        rep.summary += " (rechecked " + all + ")";
      }
      break;
    case Refutation::not_refuted:
      rep.verdict = Verdict::failed;
      rep.summary = "orbit of " + target.label() + " meets the set";
      break;
    case Refutation::inconclusive:
      rep.verdict = Verdict::inconclusive;
      rep.summary = "orbit refutation exhausted the budget";
      break;
  }
  return rep;
}

SeparationReport verify_separation(const SeparationCertificate& c, const std::vector<CatalogEntry>& catalog,
                                   const GroebnerBudget& budget) {
  const CatalogEntry* s = find_entry(catalog, c.source);
  const CatalogEntry* t = find_entry(catalog, c.target);
  if (!s || !t) return make_report(false, "unknown label in " + c.source + " / " + c.target);
  const AlgebraStructure& a = s->algebra;
  const AlgebraStructure& b = t->algebra;
  switch (c.rule) {
    case Rule::six_tuple:
      return six_tuple_separation(a, b);
    case Rule::lie_ann:
      return lie_ann_separation({a}, b, s->restrictions);
    case Rule::closed_set:
      return closed_set_separation(c, a, b, budget);
    case Rule::trivial_subalg:
    case Rule::anticomm_subalg:
      if (c.k) {
        SubspaceProperty p = c.rule == Rule::trivial_subalg
                                 ? SubspaceProperty::trivial()
                                 : SubspaceProperty::anticommutative_image(c.image_bound.value_or(1));
        auto in_source = exists_subspace(a, *c.k, p, budget);
        auto in_target = exists_subspace(b, *c.k, p, budget);
        if (in_source.answer == Tristate::inconclusive || in_target.answer == Tristate::inconclusive)
          return {Verdict::inconclusive, "subspace search exhausted the budget", {}, {}};
        bool ok = in_source.answer == Tristate::yes && in_target.answer == Tristate::no;
        SeparationReport rep = make_report(ok, p.to_string() + " of dimension " + n2s(*c.k) + ": " + c.source + " " +
                                                   to_string(in_source.answer) + ", " + c.target + " " +
                                                   to_string(in_target.answer));
        if (in_source.witness) rep.detail.push_back("witness " + in_source.witness->to_string());
        return rep;
      }
      [[fallthrough]];
    default:
      return invariant_separation(c.rule, profile(*s, budget), profile(*t, budget));
  }
}

SeparationReport verify_separation(const SeparationCertificate& c, const GroebnerBudget& budget) {
  return verify_separation(c, builtin_catalog(), budget);
}

}  // namespace leib
