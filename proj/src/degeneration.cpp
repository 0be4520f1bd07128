#include "leib/degeneration.hpp"

#include <algorithm>
#include <deque>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "leib/literal.hpp"

namespace leib {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char ch : s) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == ',' && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(trim(cur));
  return out;
}

}  // namespace

DegenerationCertificate parse_degeneration(std::string_view text, std::string name) {
  DegenerationCertificate c;
  c.name = std::move(name);
  std::vector<std::vector<std::pair<std::size_t, std::string>>> rows;
  std::vector<std::pair<std::size_t, std::string>> index_lines;
  enum class Block { none, basis, index } block = Block::none;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    auto colon = line.find(':');
    std::string key = colon == std::string::npos ? "" : trim(line.substr(0, colon));
    bool is_header = colon != std::string::npos &&
                     (key == "source" || key == "target" || key == "basis" || key == "index" || key == "note" ||
                      key == "name");
    if (is_header) {
      std::string value = trim(line.substr(colon + 1));
      if (key == "source") c.source = value;
      else if (key == "target") c.target = value;
      else if (key == "name") c.name = value;
      else if (key == "note") c.notes.push_back(value);
      else if (key == "basis") {
        block = Block::basis;
        if (!value.empty()) throw ParseError("basis rows go on their own lines", line_no, colon + 2);
      } else {
        block = Block::index;
        if (!value.empty()) index_lines.emplace_back(line_no, value);
      }
      continue;
    }
    if (block == Block::basis) {
      std::vector<std::pair<std::size_t, std::string>> row;
      for (auto& entry : split_commas(line)) row.emplace_back(line_no, entry);
      rows.push_back(row);
    } else if (block == Block::index) {
      index_lines.emplace_back(line_no, line);
    } else {
      throw ParseError("unexpected line", line_no, 1);
    }
  }
  if (c.source.empty() || c.target.empty()) throw ParseError("certificate needs source and target", 1, 1);
  std::size_t n = rows.size();
  if (n == 0) throw ParseError("missing basis", 1, 1);
  c.basis = ScalarMatrix(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    if (rows[r].size() != n) throw ParseError("basis row has the wrong length", rows[r][0].first, 1);
    for (std::size_t k = 0; k < n; ++k) c.basis(r, k) = parse_scalar(rows[r][k].second, nullptr, rows[r][k].first);
  }
  for (const auto& [ln, entry] : index_lines) {
    auto eq = entry.find('=');
    if (eq == std::string::npos) throw ParseError("index line must read 'param = expression'", ln, 1);
    std::string param = trim(entry.substr(0, eq));
    if (c.index.count(param)) throw ParseError("parameter indexed twice", ln, 1);
    c.index[param] = parse_scalar(trim(entry.substr(eq + 1)), nullptr, ln, eq + 2);
  }
  return c;
}

std::string serialize_degeneration(const DegenerationCertificate& c) {
  std::string out;
  if (!c.name.empty()) out += "name: " + c.name + "\n";
  out += "source: " + c.source + "\ntarget: " + c.target + "\n";
  for (const auto& n : c.notes) out += "note: " + n + "\n";
  out += "basis:\n";
  for (std::size_t r = 0; r < c.basis.rows(); ++r) {
    for (std::size_t k = 0; k < c.basis.cols(); ++k) out += (k ? ", " : "") + c.basis(r, k).to_string();
    out += "\n";
  }
  if (!c.index.empty()) {
    out += "index:\n";
    for (const auto& [p, v] : c.index) out += p + " = " + v.to_string() + "\n";
  }
  return out;
}

AlgebraStructure specialize_family(const AlgebraStructure& a, const Bindings& b) { return specialize(a, b); }

AlgebraStructure transport(const DegenerationCertificate& c, const AlgebraStructure& source) {
  return change_basis(specialize_family(source, c.index), c.basis);
}

namespace {

// Polynomial pieces of p (in t and parameters) whose vanishing makes the
// certificate invalid for some t near 0, split into t-constraints and
// parameter-only constraints (the content with respect to t).
void collect_locus(const MultiPoly& p, const std::string& t, std::set<std::string>& t_set,
                   std::map<std::string, MultiPoly>& param_set) {
  if (p.is_constant()) return;
  for (const auto& piece : split_factors(p)) {
    MultiPoly m = piece.monic().compact();
    if (m.uses_var(t)) {
      t_set.insert(m.to_string() + " = 0");
    } else {
      param_set.emplace(m.to_string() + " = 0", m);
    }
  }
}

Scalar at_zero(const Scalar& x, const std::string& t) { return substitute(x, Bindings{{t, Scalar(0)}}); }

DegenerationReport verify_impl(const DegenerationCertificate& c, const std::vector<CatalogEntry>& catalog,
                               const AlgebraStructure* target_override, int depth) {
  DegenerationReport rep;
  const CatalogEntry* src = find_entry(catalog, c.source);
  const CatalogEntry* tgt = find_entry(catalog, c.target);
  if (!src) {
    rep.diagnostics.push_back("unknown source " + c.source);
    return rep;
  }
  if (!tgt) {
    rep.diagnostics.push_back("unknown target " + c.target);
    return rep;
  }
  const AlgebraStructure& target = target_override ? *target_override : tgt->algebra;
  const std::size_t n = src->algebra.dim();
  if (c.basis.rows() != n || target.dim() != n) {
    rep.diagnostics.push_back("dimension mismatch");
    return rep;
  }
  for (const auto& [p, v] : c.index) {
    const auto& ps = src->algebra.params();
    if (std::find(ps.begin(), ps.end(), p) == ps.end()) {
      rep.diagnostics.push_back("index binds " + p + ", which is not a parameter of " + c.source);
      return rep;
    }
  }
  std::set<std::string> t_set;
  std::map<std::string, MultiPoly> param_set;

  Scalar det = determinant(c.basis);
  if (det.is_zero()) {
    rep.diagnostics.push_back("basis is identically singular");
    return rep;
  }
  collect_locus(det.num(), c.t, t_set, param_set);
  collect_locus(det.den(), c.t, t_set, param_set);
  for (const auto& [p, v] : c.index) collect_locus(v.den(), c.t, t_set, param_set);

  // The specialized source must stay inside the family for t near 0.
  for (const auto& r : src->restrictions) {
    Scalar value;
    try {
      value = substitute(r.poly, c.index);
    } catch (const ExceptionalValue& e) {
      rep.diagnostics.push_back(std::string("restriction check failed: ") + e.what());
      return rep;
    }
    if (value.is_zero()) {
      rep.diagnostics.push_back("index violates the source restriction " + r.text);
      return rep;
    }
    collect_locus(value.num(), c.t, t_set, param_set);
  }

  rep.transported = transport(c, src->algebra);
  bool ok = true;
  for (std::size_t i = 0; i < n && ok; ++i)
    for (std::size_t j = 0; j < n && ok; ++j)
      for (std::size_t k = 0; k < n && ok; ++k) {
        const Scalar& x = rep.transported.at(i, j, k);
        collect_locus(x.den(), c.t, t_set, param_set);
        Scalar limit;
        try {
          limit = at_zero(x, c.t);
        } catch (const ExceptionalValue&) {
          rep.diagnostics.push_back("c(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "," +
                                    std::to_string(k + 1) + ") = " + x.to_string() + " has a pole at " + c.t + " = 0");
          ok = false;
          break;
        }
        collect_locus(at_zero(Scalar(x.den()), c.t).num(), c.t, t_set, param_set);
        if (!(limit == target.at(i, j, k))) {
          rep.diagnostics.push_back("c(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "," +
                                    std::to_string(k + 1) + ") tends to " + limit.to_string() + ", target has " +
                                    target.at(i, j, k).to_string());
          ok = false;
        }
      }
  rep.verified = ok;
  rep.exceptional_t.assign(t_set.begin(), t_set.end());
  for (const auto& [text, poly] : param_set) rep.exceptional_params.push_back(text);
  if (!ok || depth <= 0) return rep;

  for (const auto& [text, poly] : param_set) {
    for (const auto& point : resolve_locus(poly)) {
      if (!point.binding) {
        rep.rechecks.push_back(Recheck{text, {}, false, "no exact value on this piece"});
        continue;
      }
      Recheck rc{text, *point.binding, false, ""};
      try {
        DegenerationCertificate sub = restrict_certificate(c, *point.binding);
        AlgebraStructure tsub = specialize(target, *point.binding);
        DegenerationReport inner = verify_impl(sub, catalog, &tsub, depth - 1);
        rc.verified = inner.verified;
        rc.detail = inner.verified ? "verified" : (inner.diagnostics.empty() ? "failed" : inner.diagnostics.front());
      } catch (const std::exception& e) {
        rc.detail = e.what();
      }
      rep.rechecks.push_back(rc);
    }
  }
  return rep;
}

}  // namespace

DegenerationCertificate restrict_certificate(const DegenerationCertificate& c, const Bindings& target_values) {
  DegenerationCertificate out = c;
  out.basis = c.basis.map([&](const Scalar& x) { return substitute(x, target_values); });
  for (auto& [p, v] : out.index) v = substitute(v, target_values);
  return out;
}

DegenerationReport verify_degeneration(const DegenerationCertificate& c, const std::vector<CatalogEntry>& catalog) {
  return verify_impl(c, catalog, nullptr, 1);
}

DegenerationReport verify_degeneration(const DegenerationCertificate& c) {
  return verify_degeneration(c, builtin_catalog());
}

ClosureRelation::ClosureRelation(std::vector<ClosureEdge> edges) : edges_(std::move(edges)) {
  std::sort(edges_.begin(), edges_.end(), [](const ClosureEdge& a, const ClosureEdge& b) {
    return std::tie(a.from, a.to, a.via) < std::tie(b.from, b.to, b.via);
  });
  std::map<std::string, std::vector<const ClosureEdge*>> out;
  std::set<std::string> nodes;
  for (const auto& e : edges_) {
    out[e.from].push_back(&e);
    nodes.insert(e.from);
    nodes.insert(e.to);
  }
  for (const auto& start : nodes) {
    auto& paths = paths_[start];
    std::deque<std::string> queue{start};
    std::map<std::string, std::vector<ClosureEdge>> found{{start, {}}};
    while (!queue.empty()) {
      std::string cur = queue.front();
      queue.pop_front();
      for (const ClosureEdge* e : out[cur]) {
        if (found.count(e->to)) continue;
        auto path = found[cur];
        path.push_back(*e);
        found[e->to] = path;
        queue.push_back(e->to);
      }
    }
    found.erase(start);
    paths = std::move(found);
  }
}

bool ClosureRelation::contains(const std::string& from, const std::string& to) const {
  if (from == to) return true;
  auto it = paths_.find(from);
  return it != paths_.end() && it->second.count(to) > 0;
}

std::vector<ClosureEdge> ClosureRelation::chain(const std::string& from, const std::string& to) const {
  auto it = paths_.find(from);
  if (it == paths_.end()) return {};
  auto jt = it->second.find(to);
  return jt == it->second.end() ? std::vector<ClosureEdge>{} : jt->second;
}

std::vector<std::string> ClosureRelation::reachable(const std::string& from) const {
  std::vector<std::string> out;
  auto it = paths_.find(from);
  if (it == paths_.end()) return out;
  for (const auto& [to, path] : it->second) out.push_back(to);
  return out;
}

std::size_t ClosureRelation::derived_size() const {
  std::size_t n = 0;
  for (const auto& [from, m] : paths_) n += m.size();
  return n;
}

ClosureRelation closure_chain(const std::vector<ClosureEdge>& edges) {
  for (const auto& e : edges) {
    if (e.from.empty() || e.to.empty()) throw std::invalid_argument("broken chain: edge with an empty endpoint");
  }
  return ClosureRelation(edges);
}

std::vector<DegenerationCertificate> load_degenerations(const std::string& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& f : std::filesystem::directory_iterator(dir))
    if (f.path().extension() == ".deg") files.push_back(f.path());
  std::sort(files.begin(), files.end());
  std::vector<DegenerationCertificate> out;
  for (const auto& f : files) {
    std::ifstream in(f);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
      out.push_back(parse_degeneration(ss.str(), f.stem().string()));
    } catch (const ParseError& e) {
      throw std::runtime_error(f.string() + ": " + e.what());
    }
  }
  return out;
}

}  // namespace leib
