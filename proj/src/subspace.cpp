#include "leib/subspace.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace leib {

std::vector<std::string> EchelonCell::vars() const {
  std::vector<std::string> out;
  for (const auto& s : free) out.push_back(s.var);
  return out;
}

std::vector<ScalarVector> EchelonCell::rows() const {
  std::vector<ScalarVector> out(k, ScalarVector(n));
  for (std::size_t s = 0; s < k; ++s) out[s][pivots[s]] = Scalar(1);
  for (const auto& f : free) out[f.row][f.col] = Scalar::var(f.var);
  return out;
}

Subspace EchelonCell::at(const std::map<std::string, Gaussian>& values) const {
  std::vector<ScalarVector> r(k, ScalarVector(n));
  for (std::size_t s = 0; s < k; ++s) r[s][pivots[s]] = Scalar(1);
  for (const auto& f : free) {
    auto it = values.find(f.var);
    r[f.row][f.col] = it == values.end() ? Scalar(0) : Scalar(it->second);
  }
  return Subspace::span(n, r);
}

std::string EchelonCell::to_string() const {
  std::string out = "cell{";
  for (std::size_t s = 0; s < pivots.size(); ++s) out += (s ? "," : "") + std::to_string(pivots[s] + 1);
  return out + "}";
}

std::vector<EchelonCell> enumerate_cells(std::size_t n, std::size_t k) {
  if (k > n) throw std::invalid_argument("subspace dimension exceeds ambient dimension");
  std::vector<EchelonCell> out;
  std::vector<bool> mask(n, false);
  std::fill(mask.begin(), mask.begin() + static_cast<long>(k), true);
  // prev_permutation walks the k-subsets in lexicographic order of pivot sets
  do {
    EchelonCell c;
    c.n = n;
    c.k = k;
    for (std::size_t i = 0; i < n; ++i)
      if (mask[i]) c.pivots.push_back(i);
    for (std::size_t s = 0; s < k; ++s)
      for (std::size_t col = c.pivots[s] + 1; col < n; ++col) {
        if (mask[col]) continue;
        c.free.push_back({s, col, "x" + std::to_string(s + 1) + std::to_string(col + 1)});
      }
    out.push_back(std::move(c));
  } while (std::prev_permutation(mask.begin(), mask.end()));
  return out;
}

std::pair<EchelonCell, std::map<std::string, Scalar>> locate(const Subspace& u) {
  for (auto& c : enumerate_cells(u.ambient(), u.dim())) {
    if (c.pivots != u.pivots()) continue;
    std::map<std::string, Scalar> coords;
    for (const auto& f : c.free) coords[f.var] = u.basis()(f.row, f.col);
    return {c, coords};
  }
  throw std::logic_error("no echelon cell for " + u.to_string());
}

std::string SubspaceProperty::to_string() const {
  switch (kind) {
    case PropertyKind::trivial:
      return "trivial";
    case PropertyKind::anticommutative_image:
      return "anticommutative_with_image_bound " + std::to_string(image_bound);
    case PropertyKind::nilpotent_ideal:
      return "nilpotent_ideal";
  }
  return "?";
}

namespace {

bool is_zero_vector(const ScalarVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& x) { return x.is_zero(); });
}

ScalarVector unit(std::size_t n, std::size_t i) {
  ScalarVector v(n);
  v[i] = Scalar(1);
  return v;
}

// v minus its projection along the echelon rows; zero exactly when v lies in the span.
ScalarVector residual(const std::vector<ScalarVector>& rows, const std::vector<std::size_t>& pivots,
                      ScalarVector v) {
  for (std::size_t s = 0; s < rows.size(); ++s) {
    Scalar c = v[pivots[s]];
    if (c.is_zero()) continue;
    for (std::size_t j = 0; j < v.size(); ++j)
      if (!rows[s][j].is_zero()) v[j] -= c * rows[s][j];
  }
  return v;
}

}  // namespace

AlgebraStructure restrict_to(const AlgebraStructure& a, const Subspace& u) {
  const std::size_t k = u.dim();
  AlgebraStructure out(a.label() + "|" + u.to_string(), k, a.params());
  auto rows = u.vectors();
  for (std::size_t s = 0; s < k; ++s)
    for (std::size_t t = 0; t < k; ++t) {
      ScalarVector v = a.product(rows[s], rows[t]);
      if (!is_zero_vector(residual(rows, u.pivots(), v))) throw std::invalid_argument("not a subalgebra: " + u.to_string());
      for (std::size_t r = 0; r < k; ++r) out.at(s, t, r) = v[u.pivots()[r]];
    }
  return out;
}

bool satisfies(const AlgebraStructure& a, const Subspace& u, const SubspaceProperty& p) {
  const std::size_t n = a.dim();
  auto rows = u.vectors();
  switch (p.kind) {
    case PropertyKind::trivial:
      return subspace_product(a, u, u).dim() == 0;
    case PropertyKind::anticommutative_image: {
      if (!u.contains(subspace_product(a, u, u))) return false;
      for (std::size_t s = 0; s < rows.size(); ++s)
        for (std::size_t t = s; t < rows.size(); ++t) {
          ScalarVector x = a.product(rows[s], rows[t]);
          ScalarVector y = a.product(rows[t], rows[s]);
          for (std::size_t j = 0; j < n; ++j)
            if (!(x[j] + y[j]).is_zero()) return false;
        }
      return subspace_product(a, Subspace::whole(n), u).dim() <= p.image_bound;
    }
    case PropertyKind::nilpotent_ideal: {
      Subspace all = Subspace::whole(n);
      if (!u.contains(subspace_product(a, all, u)) || !u.contains(subspace_product(a, u, all))) return false;
      if (u.dim() == 0) return true;
      return is_nilpotent(restrict_to(a, u));
    }
  }
  return false;
}

std::vector<MultiPoly> compile_property(const AlgebraStructure& a, const EchelonCell& cell,
                                        const SubspaceProperty& p) {
  for (const auto& v : cell.vars())
    if (std::find(a.params().begin(), a.params().end(), v) != a.params().end())
      throw std::invalid_argument("parameter name clashes with cell unknown " + v);
  const std::size_t n = a.dim();
  const auto rows = cell.rows();
  std::vector<MultiPoly> eqs;
  std::set<std::string> seen;
  auto add = [&](const Scalar& s) {
    if (s.is_zero()) return;
    MultiPoly num = s.num().monic();
    if (seen.insert(num.to_string()).second) eqs.push_back(num);
  };
  auto add_vec = [&](const ScalarVector& v) {
    for (const auto& x : v) add(x);
  };
  switch (p.kind) {
    case PropertyKind::trivial:
      for (const auto& x : rows)
        for (const auto& y : rows) add_vec(a.product(x, y));
      break;
    case PropertyKind::anticommutative_image: {
      for (std::size_t s = 0; s < rows.size(); ++s)
        for (std::size_t t = 0; t < rows.size(); ++t) {
          ScalarVector xy = a.product(rows[s], rows[t]);
          add_vec(residual(rows, cell.pivots, xy));
          if (t < s) continue;
          ScalarVector yx = a.product(rows[t], rows[s]);
          for (std::size_t j = 0; j < n; ++j) add(xy[j] + yx[j]);
        }
      std::vector<ScalarVector> image;
      for (std::size_t i = 0; i < n; ++i)
        for (const auto& r : rows) {
          ScalarVector v = a.product(unit(n, i), r);
          if (!is_zero_vector(v)) image.push_back(v);
        }
      const std::size_t m = p.image_bound + 1;
      if (image.size() < m || m > n) break;
      // every m x m minor of the image matrix
      std::vector<bool> rsel(image.size(), false), csel(n, false);
      std::fill(rsel.begin(), rsel.begin() + static_cast<long>(m), true);
      do {
        std::vector<std::size_t> ri;
        for (std::size_t i = 0; i < rsel.size(); ++i)
          if (rsel[i]) ri.push_back(i);
        std::fill(csel.begin(), csel.end(), false);
        std::fill(csel.begin(), csel.begin() + static_cast<long>(m), true);
        do {
          std::vector<std::size_t> ci;
          for (std::size_t j = 0; j < n; ++j)
            if (csel[j]) ci.push_back(j);
          ScalarMatrix minor(m, m);
          for (std::size_t x = 0; x < m; ++x)
            for (std::size_t y = 0; y < m; ++y) minor(x, y) = image[ri[x]][ci[y]];
          add(determinant(minor));
        } while (std::prev_permutation(csel.begin(), csel.end()));
      } while (std::prev_permutation(rsel.begin(), rsel.end()));
      break;
    }
    case PropertyKind::nilpotent_ideal: {
      for (std::size_t i = 0; i < n; ++i)
        for (const auto& r : rows) {
          add_vec(residual(rows, cell.pivots, a.product(unit(n, i), r)));
          add_vec(residual(rows, cell.pivots, a.product(r, unit(n, i))));
        }
      // a k-dimensional nilpotent algebra has U^{k+1} = 0, spanned by left-normed products
      std::vector<ScalarVector> level = rows;
      for (std::size_t len = 2; len <= cell.k + 1 && !level.empty(); ++len) {
        std::vector<ScalarVector> next;
        std::set<std::string> dedup;
        for (const auto& x : level)
          for (const auto& r : rows) {
            ScalarVector v = a.product(x, r);
            if (is_zero_vector(v)) continue;
            if (dedup.insert(vector_to_string(v)).second) next.push_back(std::move(v));
          }
        level = std::move(next);
      }
      for (const auto& v : level) add_vec(v);
      break;
    }
  }
  return eqs;
}

Bindings sample_point(const std::vector<std::string>& params, const std::vector<MultiPoly>& avoid, unsigned salt) {
  static const long nums[] = {17, -11, 23, 29, -31, 37, 41, -43, 47, 53};
  static const long dens[] = {7, 5, 13, 3, 11, 19, 9, 17, 7, 23};
  for (unsigned attempt = 0; attempt < 200; ++attempt) {
    Bindings b;
    std::map<std::string, Gaussian> vals;
    for (std::size_t i = 0; i < params.size(); ++i) {
      std::size_t idx = (i + salt + attempt) % 10;
      Gaussian g(Rational(nums[idx] + static_cast<long>(attempt) * 3, dens[(idx + i) % 10]));
      vals[params[i]] = g;
      b[params[i]] = Scalar(g);
    }
    bool ok = true;
    for (const auto& p : avoid)
      if (p.evaluate(vals).is_zero()) ok = false;
    if (ok) return b;
  }
  throw std::runtime_error("no sample point found");
}

namespace {

std::vector<MultiPoly> denominators(const AlgebraStructure& a) {
  std::vector<MultiPoly> out;
  std::set<std::string> seen;
  for (const auto& c : a.constants())
    if (!c.den().is_constant() && seen.insert(c.den().to_string()).second) out.push_back(c.den());
  return out;
}

// Rational point of V(gens) found greedily, one unknown at a time.
std::optional<std::map<std::string, Gaussian>> find_point(std::vector<MultiPoly> gens,
                                                          const std::vector<std::string>& vars,
                                                          const GroebnerBudget& budget) {
  std::map<std::string, Gaussian> values;
  for (std::size_t vi = 0; vi < vars.size(); ++vi) {
    const std::string& v = vars[vi];
    std::vector<std::string> rest;
    for (std::size_t j = vi + 1; j < vars.size(); ++j) rest.push_back(vars[j]);
    std::vector<std::string> order = rest;
    order.push_back(v);
    RingPtr ring = Ring::make(order, {OrderKind::block_grevlex, rest.size()});
    auto gb = groebner(PolyIdeal::in(ring, gens), budget);
    if (!gb.complete() || gb.is_unit()) return std::nullopt;
    std::vector<Gaussian> cands;
    for (const auto& g : gb.basis.gens) {
      auto used = g.used_vars();
      if (used.size() == 1 && used[0] == v) {
        cands = gaussian_roots(g.compact());
        if (cands.empty()) return std::nullopt;  // only irrational values remain
        break;
      }
    }
    if (cands.empty())
      for (long x : {0L, 1L, -1L, 2L, -2L, 3L, -3L, 5L, 7L}) cands.push_back(Gaussian(x));
    bool placed = false;
    for (const auto& c : cands) {
      std::vector<MultiPoly> sub;
      for (const auto& g : gens) {
        MultiPoly e = g.evaluate({{v, c}});
        if (!e.is_zero()) sub.push_back(e);
      }
      if (rest.empty()) {
        if (std::all_of(sub.begin(), sub.end(), [](const MultiPoly& p) { return p.is_zero(); })) {
          values[v] = c;
          placed = true;
          break;
        }
        continue;
      }
      RingPtr rr = Ring::make(rest);
      auto check = groebner(PolyIdeal::in(rr, sub), budget);
      if (check.complete() && !check.is_unit()) {
        values[v] = c;
        gens = std::move(sub);
        placed = true;
        break;
      }
    }
    if (!placed) return std::nullopt;
  }
  return values;
}

struct CellOutcome {
  Tristate answer = Tristate::inconclusive;
  std::optional<Subspace> witness;
};

CellOutcome solve_cell(const AlgebraStructure& a, const EchelonCell& cell, const SubspaceProperty& p,
                       const GroebnerBudget& budget) {
  auto eqs = compile_property(a, cell, p);
  if (eqs.empty()) return {Tristate::yes, cell.at({})};
  auto vars = cell.vars();
  if (vars.empty()) {
    // no unknowns: the equations are constants
    return {Tristate::no, std::nullopt};
  }
  auto gb = groebner(PolyIdeal::in(Ring::make(vars), eqs), budget);
  if (!gb.complete()) return {Tristate::inconclusive, std::nullopt};
  if (gb.is_unit()) return {Tristate::no, std::nullopt};
  auto pt = find_point(eqs, vars, budget);
  if (!pt) return {Tristate::inconclusive, std::nullopt};
  return {Tristate::yes, cell.at(*pt)};
}

SubspaceResult solve_fixed(const AlgebraStructure& a, std::size_t k, const SubspaceProperty& p,
                           const GroebnerBudget& budget) {
  SubspaceResult res;
  bool open = false;
  for (const auto& cell : enumerate_cells(a.dim(), k)) {
    auto out = solve_cell(a, cell, p, budget);
    if (out.answer == Tristate::yes) {
      if (!satisfies(a, *out.witness, p))
        throw std::logic_error("witness " + out.witness->to_string() + " fails the direct check");
      res.answer = Tristate::yes;
      res.witness = out.witness;
      res.witness_generic = true;
      res.detail = "witness in " + cell.to_string();
      return res;
    }
    if (out.answer == Tristate::inconclusive) {
      open = true;
      res.detail += cell.to_string() + " inconclusive; ";
    }
  }
  res.answer = open ? Tristate::inconclusive : Tristate::no;
  if (!open) res.detail = "unit ideal in every cell";
  return res;
}

// Elimination ideal of the cell system in the parameters; nullopt on budget exhaustion.
std::optional<std::vector<MultiPoly>> parameter_conditions(const AlgebraStructure& a, const EchelonCell& cell,
                                                           const SubspaceProperty& p,
                                                           const GroebnerBudget& budget) {
  auto eqs = compile_property(a, cell, p);
  if (eqs.empty()) return std::vector<MultiPoly>{};
  auto vars = cell.vars();
  std::size_t block = vars.size();
  for (const auto& q : a.params()) vars.push_back(q);
  auto gb = groebner(PolyIdeal::in(Ring::make(vars, {OrderKind::block_grevlex, block}), eqs), budget);
  if (!gb.complete()) return std::nullopt;
  std::vector<MultiPoly> out;
  for (const auto& g : gb.basis.gens) {
    bool free_of_cell = true;
    for (const auto& v : cell.vars())
      if (g.uses_var(v)) free_of_cell = false;
    if (free_of_cell) out.push_back(g.compact());
  }
  return out;
}

}  // namespace

SubspaceResult exists_subspace(const AlgebraStructure& a, std::size_t k, const SubspaceProperty& p,
                               const GroebnerBudget& budget) {
  if (k > a.dim()) throw std::invalid_argument("subspace dimension exceeds ambient dimension");
  if (a.params().empty()) return solve_fixed(a, k, p, budget);

  Bindings at = sample_point(a.params(), denominators(a));
  SubspaceResult s = solve_fixed(specialize(a, at), k, p, budget);
  if (s.answer == Tristate::no) {
    // the property is Zariski closed, so failing at one member means failing generically
    s.detail = "fails at " + bindings_to_string(at);
    return s;
  }
  if (s.answer == Tristate::yes && satisfies(a, *s.witness, p)) {
    s.witness_generic = true;
    s.detail = "witness holds identically";
    return s;
  }
  // the sample witness moves with the parameters: decide by elimination
  bool open = false;
  for (const auto& cell : enumerate_cells(a.dim(), k)) {
    auto cond = parameter_conditions(a, cell, p, budget);
    if (!cond) {
      open = true;
      continue;
    }
    if (cond->empty()) {
      SubspaceResult r;
      r.answer = Tristate::yes;
      r.witness = s.witness;
      r.witness_generic = false;
      r.detail = cell.to_string() + " has zero elimination ideal; witness shown at " + bindings_to_string(at);
      return r;
    }
  }
  SubspaceResult r;
  r.answer = open ? Tristate::inconclusive : Tristate::no;
  r.detail = open ? "elimination exceeded budget" : "every cell constrains the parameters";
  return r;
}

std::string FamilySubspaceResult::to_string() const {
  std::string out = leib::to_string(generic.answer);
  if (generic.witness) out += " " + generic.witness->to_string();
  for (const auto& e : exceptional) {
    out += "; " + bindings_to_string(e.binding) + ": " + leib::to_string(e.result.answer);
    if (e.result.witness) out += " " + e.result.witness->to_string();
  }
  for (const auto& u : unresolved) out += "; unresolved " + u;
  return out;
}

FamilySubspaceResult exists_subspace_family(const AlgebraStructure& a, std::size_t k, const SubspaceProperty& p,
                                            const GroebnerBudget& budget, int depth) {
  FamilySubspaceResult res;
  res.generic = exists_subspace(a, k, p, budget);
  // A closed property holding generically holds on every member.
  if (a.params().empty() || res.generic.answer != Tristate::no) return res;
  std::set<std::string> seen;
  for (const auto& cell : enumerate_cells(a.dim(), k)) {
    auto cond = parameter_conditions(a, cell, p, budget);
    if (!cond) {
      res.unresolved.push_back(cell.to_string() + ": budget exceeded");
      continue;
    }
    if (cond->empty()) {
      res.unresolved.push_back(cell.to_string() + ": no parameter condition");
      continue;
    }
    // V(cond) lies inside the zero set of its simplest member
    const MultiPoly* best = &cond->front();
    for (const auto& g : *cond)
      if (g.total_degree() < best->total_degree()) best = &g;
    for (const auto& point : resolve_locus(*best)) {
      if (!point.binding) {
        res.unresolved.push_back(point.text());
        continue;
      }
      std::string key = bindings_to_string(*point.binding);
      if (!seen.insert(key).second) continue;
      if (depth <= 0) {
        res.unresolved.push_back(point.text());
        continue;
      }
      AlgebraStructure sub;
      try {
        sub = specialize(a, *point.binding);
      } catch (const ExceptionalValue&) {
        continue;  // not a member of the family
      }
      auto inner = exists_subspace_family(sub, k, p, budget, depth - 1);
      if (inner.generic.answer != Tristate::no)
        res.exceptional.push_back({best->to_string() + " = 0", *point.binding, inner.generic});
      for (const auto& e : inner.exceptional)
        res.exceptional.push_back({e.constraint, compose_bindings(*point.binding, e.binding), e.result});
      for (const auto& u : inner.unresolved) res.unresolved.push_back(u);
    }
  }
  std::sort(res.exceptional.begin(), res.exceptional.end(), [](const SubspacePoint& x, const SubspacePoint& y) {
    return bindings_to_string(x.binding) < bindings_to_string(y.binding);
  });
  return res;
}

MaxDimResult max_dim_subspace(const AlgebraStructure& a, const SubspaceProperty& p, const GroebnerBudget& budget) {
  for (std::size_t k = a.dim() + 1; k-- > 0;) {
    auto r = exists_subspace(a, k, p, budget);
    if (r.answer == Tristate::yes) return {k, r.witness};
    if (r.answer == Tristate::inconclusive) return {};
  }
  return {0, Subspace(a.dim())};
}

MaxDimResult nilradical_dim(const AlgebraStructure& a, const GroebnerBudget& budget) {
  if (!is_solvable(a)) throw std::invalid_argument(a.label() + " is not solvable");
  return max_dim_subspace(a, SubspaceProperty::nilpotent_ideal(), budget);
}

}  // namespace leib
