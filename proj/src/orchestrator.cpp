#include "leib/orchestrator.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

namespace leib {

namespace {

using Json = nlohmann::ordered_json;

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw std::runtime_error("cannot read " + p.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Runs f(0..n-1) on a small worker pool; results land in index order.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& f) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(n);
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        f(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (const auto& p : parts) out += (out.empty() ? "" : sep) + p;
  return out;
}

const std::set<std::string> kAxiomKeys = {"lie_components", "lie_closed", "nilpotent_components"};

std::string axiom_statement(const std::string& key, const std::vector<std::string>& labels) {
  std::string closures;
  for (const auto& l : labels) closures += (closures.empty() ? "" : " u ") + ("closure(" + l + ")");
  if (key == "lie_components") return "the four dimensional Lie algebras form " + closures + ", with no inclusions";
  if (key == "nilpotent_components") return "the four dimensional nilpotent algebras form " + closures;
  return "the four dimensional Lie algebras form a closed subset";
}

}  // namespace

std::vector<Axiom> parse_axioms(std::string_view text, const std::string& source) {
  std::vector<Axiom> out;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    auto colon = line.find(':');
    if (colon == std::string::npos)
      throw std::runtime_error(source + ":" + std::to_string(line_no) + ": expected 'key: labels'");
    Axiom a;
    a.key = trim(line.substr(0, colon));
    a.source = source;
    if (!kAxiomKeys.count(a.key))
      throw std::runtime_error(source + ":" + std::to_string(line_no) + ": unknown axiom '" + a.key + "'");
    std::istringstream labels(line.substr(colon + 1));
    for (std::string l; labels >> l;) a.labels.push_back(l);
    a.statement = axiom_statement(a.key, a.labels);
    out.push_back(std::move(a));
  }
  return out;
}

Bundle Bundle::load(const std::string& dir) {
  namespace fs = std::filesystem;
  Bundle b;
  b.dir = dir;
  for (const char* sub : {"algebras", "certificates/degenerations", "certificates/separations"})
    if (!fs::is_directory(fs::path(dir) / sub)) throw std::runtime_error("bundle is missing " + std::string(sub));
  b.catalog = load_catalog((fs::path(dir) / "algebras").string());
  b.degenerations = load_degenerations((fs::path(dir) / "certificates/degenerations").string());
  b.separations = load_separations((fs::path(dir) / "certificates/separations").string());
  fs::path ax = fs::path(dir) / "axioms";
  if (fs::is_directory(ax)) {
    std::vector<fs::path> files;
    for (const auto& f : fs::directory_iterator(ax))
      if (f.is_regular_file()) files.push_back(f.path());
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
      auto parsed = parse_axioms(read_file(f), "axioms/" + f.filename().string());
      b.axioms.insert(b.axioms.end(), parsed.begin(), parsed.end());
    }
  }
  return b;
}

const Axiom* Bundle::axiom(const std::string& key) const {
  for (const auto& a : axioms)
    if (a.key == key) return &a;
  return nullptr;
}

bool TheoremReport::success() const {
  bool certs_ok = std::all_of(certificates.begin(), certificates.end(),
                              [](const CertificateStatus& c) { return c.verdict == Verdict::verified; });
  return certs_ok && errors.empty() && uncovered.empty() && unresolved.empty() && inconsistencies.empty() &&
         !inconclusive;
}

namespace {

Json certificate_json(const CertificateStatus& c) {
  return Json{{"name", c.name},       {"kind", c.kind},         {"source", c.source},
              {"target", c.target},   {"verdict", to_string(c.verdict)}, {"summary", c.summary},
              {"exceptional", c.exceptional}};
}

Json theorem_json(const TheoremReport& r) {
  Json j;
  j["success"] = r.success();
  j["component_count"] = r.components.size();
  j["components"] = r.components;
  j["rigid"] = r.rigid;
  Json certs = Json::array();
  for (const auto& c : r.certificates) certs.push_back(certificate_json(c));
  j["certificates"] = certs;
  Json cov = Json::array();
  for (const auto& c : r.coverage) {
    Json chain = Json::array();
    for (const auto& e : c.chain) chain.push_back(Json{{"from", e.from}, {"to", e.to}, {"via", e.via}});
    cov.push_back(Json{{"label", c.label}, {"component", c.component}, {"chain", chain}});
  }
  j["coverage"] = cov;
  j["uncovered"] = r.uncovered;
  Json pairs = Json::array();
  for (const auto& p : r.pairs)
    pairs.push_back(Json{{"component", p.component},
                         {"not_in_closure_of", p.other},
                         {"rules", p.rules},
                         {"detail", p.detail},
                         {"exceptional", p.exceptional}});
  j["pairs"] = pairs;
  j["unresolved"] = r.unresolved;
  j["axiom_usages"] = r.axiom_usages;
  j["inconsistencies"] = r.inconsistencies;
  j["errors"] = r.errors;
  j["inconclusive"] = r.inconclusive;
  return j;
}

}  // namespace

std::string TheoremReport::to_json() const { return theorem_json(*this).dump(2) + "\n"; }

std::string TheoremReport::summary() const {
  std::ostringstream out;
  out << "components (" << components.size() << "): " << join(components, ", ") << "\n";
  out << "rigid (" << rigid.size() << "): " << join(rigid, ", ") << "\n";
  std::size_t ok = std::count_if(certificates.begin(), certificates.end(),
                                 [](const CertificateStatus& c) { return c.verdict == Verdict::verified; });
  out << "certificates verified: " << ok << "/" << certificates.size() << "\n";
  for (const auto& c : certificates)
    if (c.verdict != Verdict::verified) out << "  " << to_string(c.verdict) << ": " << c.name << " " << c.summary << "\n";
  auto covered = std::count_if(coverage.begin(), coverage.end(), [](const CoverageRecord& c) { return !c.component.empty(); });
  out << "catalog entries covered: " << covered << "/" << coverage.size() << "\n";
  for (const auto& u : uncovered) out << "  uncovered: " << u << "\n";
  out << "pairs settled: " << pairs.size() - unresolved.size() << "/" << pairs.size() << "\n";
  for (const auto& u : unresolved) out << "  unresolved: " << u << "\n";
  for (const auto& a : axiom_usages) out << "axiom: " << a << "\n";
  for (const auto& i : inconsistencies) out << "INCONSISTENT: " << i << "\n";
  for (const auto& e : errors) out << "error: " << e << "\n";
  if (inconclusive) out << "some computation exhausted its budget\n";
  out << (success() ? "theorem verified" : "theorem NOT verified") << "\n";
  return out.str();
}

namespace {

struct Evidence {
  std::vector<std::string> rules, detail, exceptional;
  bool inconclusive = false;
};

// Every rule that shows `target` (generic member) outside the closure of the family `source`.
// Axioms are handled by the caller; shipped certificates enter through `certs`.
Evidence run_rules(const CatalogEntry& source, const CatalogEntry& target, const InvariantProfile& ps,
                   const InvariantProfile& pt, const std::vector<const CertificateStatus*>& certs) {
  Evidence ev;
  auto record = [&](const std::string& rule, const SeparationReport& r) {
    if (r.verdict == Verdict::inconclusive) ev.inconclusive = true;
    if (r.verdict != Verdict::verified) return;
    ev.rules.push_back(rule);
    ev.detail.push_back(rule + ": " + r.summary);
    for (const auto& e : r.exceptional) ev.exceptional.push_back(rule + ": " + e);
  };
  for (Rule rule : all_rules()) {
    switch (rule) {
      case Rule::six_tuple:
        if (ps.standard && pt.standard) record(to_string(rule), six_tuple_separation(source.algebra, target.algebra));
        break;
      case Rule::lie_ann:
        if (pt.lie && !ps.lie) record(to_string(rule), lie_ann_separation({source.algebra}, target.algebra, source.restrictions));
        break;
      case Rule::closed_set:
        break;
      case Rule::nilradical_dim:
        if (ps.solvable && pt.solvable) record(to_string(rule), invariant_separation(rule, ps, pt));
        break;
      default:
        record(to_string(rule), invariant_separation(rule, ps, pt));
    }
  }
  for (const auto* c : certs) {
    if (c->verdict != Verdict::verified) continue;
    ev.rules.push_back("certificate:" + c->name);
    ev.detail.push_back("certificate " + c->name + ": " + c->summary);
    for (const auto& e : c->exceptional) ev.exceptional.push_back(c->name + ": " + e);
  }
  return ev;
}

}  // namespace

TheoremReport verify_theorem(const Bundle& bundle, const TheoremOptions& options) {
  TheoremReport rep;
  const auto& cat = bundle.catalog;
  auto canonical = [&](const std::string& label) -> std::string {
    const CatalogEntry* e = find_entry(cat, label);
    return e ? e->label() : std::string();
  };

  for (const auto& e : cat)
    if (!leibniz_defect(e.algebra).empty()) rep.errors.push_back(e.label() + " violates the Leibniz identity");

  // Certificates.
  std::vector<CertificateStatus> deg(bundle.degenerations.size());
  parallel_for(deg.size(), options.threads, [&](std::size_t i) {
    const auto& c = bundle.degenerations[i];
    CertificateStatus& s = deg[i];
    s.name = c.name;
    s.kind = "degeneration";
    s.source = canonical(c.source);
    s.target = canonical(c.target);
    auto r = verify_degeneration(c, cat);
    s.verdict = r.verified ? Verdict::verified : Verdict::failed;
    s.summary = r.verified ? "verified" : join(r.diagnostics, "; ");
    for (const auto& x : r.exceptional_params) s.exceptional.push_back("target parameters: " + x);
    for (const auto& rc : r.rechecks)
      s.exceptional.push_back("recheck " + rc.constraint + ": " + (rc.verified ? "verified" : "fails, covered by closure"));
  });
  std::vector<CertificateStatus> sep(bundle.separations.size());
  parallel_for(sep.size(), options.threads, [&](std::size_t i) {
    const auto& c = bundle.separations[i];
    CertificateStatus& s = sep[i];
    s.name = c.name;
    s.kind = "separation";
    s.source = canonical(c.source);
    s.target = canonical(c.target);
    auto r = verify_separation(c, cat, options.budget);
    s.verdict = r.verdict;
    s.summary = to_string(c.rule) + ": " + r.summary;
    s.exceptional = r.exceptional;
  });
  for (const auto& s : deg) {
    if (s.source.empty() || s.target.empty()) rep.errors.push_back(s.name + " names an unknown structure");
    rep.certificates.push_back(s);
  }
  for (const auto& s : sep) {
    if (s.source.empty() || s.target.empty()) rep.errors.push_back(s.name + " names an unknown structure");
    if (s.verdict == Verdict::inconclusive) rep.inconclusive = true;
    rep.certificates.push_back(s);
  }

  std::vector<ClosureEdge> edges;
  for (const auto& s : deg)
    if (s.verdict == Verdict::verified && !s.source.empty() && !s.target.empty())
      edges.push_back({s.source, s.target, s.name});
  ClosureRelation rel = closure_chain(edges);

  // Components: entries outside the closure of every other entry.
  std::vector<std::string> labels;
  for (const auto& e : cat) labels.push_back(e.label());
  std::sort(labels.begin(), labels.end());
  for (const auto& l : labels) {
    bool reached = std::any_of(labels.begin(), labels.end(),
                               [&](const std::string& o) { return o != l && rel.contains(o, l); });
    if (!reached) rep.components.push_back(l);
  }
  for (const auto& c : rep.components)
    if (find_entry(cat, c)->algebra.params().empty()) rep.rigid.push_back(c);

  // Coverage.
  for (const auto& l : labels) {
    CoverageRecord rec{l, {}, {}};
    if (std::find(rep.components.begin(), rep.components.end(), l) != rep.components.end()) {
      rec.component = l;
    } else {
      for (const auto& c : rep.components) {
        auto ch = rel.chain(c, l);
        if (!ch.empty() && (rec.component.empty() || ch.size() < rec.chain.size())) {
          rec.component = c;
          rec.chain = ch;
        }
      }
    }
    if (rec.component.empty()) rep.uncovered.push_back(l);
    rep.coverage.push_back(rec);
  }

  // Axioms that extend coverage beyond the catalog.
  const Axiom* lie_components = bundle.axiom("lie_components");
  const Axiom* lie_closed = bundle.axiom("lie_closed");
  const Axiom* nil_components = bundle.axiom("nilpotent_components");
  auto in_components = [&](const std::string& l) {
    return std::find(rep.components.begin(), rep.components.end(), l) != rep.components.end();
  };
  if (lie_components) {
    std::vector<std::string> missing;
    for (const auto& l : lie_components->labels)
      if (!in_components(canonical(l))) missing.push_back(l);
    if (missing.empty())
      rep.axiom_usages.push_back("coverage of all Lie algebras [" + lie_components->source +
                                 " lie_components]: " + lie_components->statement);
    else
      rep.errors.push_back("Lie components not among the components: " + join(missing, ", "));
  } else {
    rep.uncovered.push_back("Lie algebras outside the catalog (no lie_components axiom)");
  }
  if (nil_components) {
    std::vector<std::string> missing;
    for (const auto& l : nil_components->labels) {
      std::string c = canonical(l);
      auto it = std::find_if(rep.coverage.begin(), rep.coverage.end(),
                             [&](const CoverageRecord& r) { return r.label == c; });
      if (c.empty() || it == rep.coverage.end() || it->component.empty() || it->component == c) missing.push_back(l);
    }
    if (missing.empty())
      rep.axiom_usages.push_back("coverage of all nilpotent algebras [" + nil_components->source +
                                 " nilpotent_components]: " + nil_components->statement);
    else
      rep.uncovered.push_back("nilpotent components not reached from a non-nilpotent family: " + join(missing, ", "));
  } else {
    rep.uncovered.push_back("nilpotent algebras outside the catalog (no nilpotent_components axiom)");
  }

  // Invariant profiles of every entry, shared by pairs and cross checks.
  std::map<std::string, InvariantProfile> prof;
  {
    std::vector<InvariantProfile> ps(cat.size());
    parallel_for(cat.size(), options.threads, [&](std::size_t i) { ps[i] = profile(cat[i], options.budget); });
    for (std::size_t i = 0; i < cat.size(); ++i) prof[cat[i].label()] = std::move(ps[i]);
  }
  auto certs_for = [&](const std::string& s, const std::string& t) {
    std::vector<const CertificateStatus*> out;
    for (const auto& c : sep)
      if (c.source == s && c.target == t) out.push_back(&c);
    return out;
  };

  // Pairs: component X is not inside the closure of component Y.
  std::vector<std::pair<std::string, std::string>> todo;
  for (const auto& x : rep.components)
    for (const auto& y : rep.components)
      if (x != y) todo.push_back({x, y});
  std::vector<Evidence> found(todo.size());
  parallel_for(todo.size(), options.threads, [&](std::size_t i) {
    const auto& [x, y] = todo[i];
    found[i] = run_rules(*find_entry(cat, y), *find_entry(cat, x), prof.at(y), prof.at(x), certs_for(y, x));
  });
  std::set<std::string> used_axioms;
  for (std::size_t i = 0; i < todo.size(); ++i) {
    const auto& [x, y] = todo[i];
    PairEvidence p{x, y, found[i].rules, found[i].detail, found[i].exceptional};
    auto listed = [&](const Axiom* a, const std::string& l) {
      return a && std::any_of(a->labels.begin(), a->labels.end(),
                              [&](const std::string& m) { return canonical(m) == l; });
    };
    if (listed(lie_components, x) && listed(lie_components, y)) {
      p.rules.insert(p.rules.begin(), "axiom:lie_components");
      p.detail.insert(p.detail.begin(), "axiom: distinct Lie components");
      used_axioms.insert("lie_components");
    }
    if (lie_closed && prof.at(y).lie && !prof.at(x).lie) {
      p.rules.insert(p.rules.begin(), "axiom:lie_closed");
      p.detail.insert(p.detail.begin(), "axiom: " + y + " is Lie, the Lie algebras form a closed set, " + x +
                                            " is not Lie");
      used_axioms.insert("lie_closed");
    }
    if (found[i].inconclusive && p.rules.empty()) rep.inconclusive = true;
    if (!p.settled()) rep.unresolved.push_back(x + " not in closure(" + y + ")");
    rep.pairs.push_back(std::move(p));
  }
  for (const auto& key : used_axioms) {
    const Axiom* a = bundle.axiom(key);
    std::size_t n = std::count_if(rep.pairs.begin(), rep.pairs.end(), [&](const PairEvidence& p) {
      return std::find(p.rules.begin(), p.rules.end(), "axiom:" + key) != p.rules.end();
    });
    rep.axiom_usages.push_back("separation of " + std::to_string(n) + " pairs [" + a->source + " " + key +
                               "]: " + a->statement);
  }

  // Contradictions: a separation claim for a pair joined by verified degenerations.
  std::vector<std::pair<std::string, std::string>> related;
  for (const auto& a : labels)
    for (const auto& b : labels)
      if (a != b && rel.contains(a, b)) related.push_back({a, b});
  for (const auto& c : sep)
    if (c.verdict == Verdict::verified && rel.contains(c.source, c.target))
      rep.inconsistencies.push_back(c.name + " separates " + c.source + " from " + c.target +
                                    ", which it degenerates to");
  if (options.cross_check) {
    std::vector<Evidence> clash(related.size());
    parallel_for(related.size(), options.threads, [&](std::size_t i) {
      const auto& [a, b] = related[i];
      clash[i] = run_rules(*find_entry(cat, a), *find_entry(cat, b), prof.at(a), prof.at(b), {});
    });
    for (std::size_t i = 0; i < related.size(); ++i)
      for (const auto& d : clash[i].detail)
        rep.inconsistencies.push_back(related[i].first + " degenerates to " + related[i].second + " yet " + d);
  }
  return rep;
}

namespace {

bool has_verified(const TheoremReport& t, const std::string& name) {
  return std::any_of(t.certificates.begin(), t.certificates.end(), [&](const CertificateStatus& c) {
    return c.name == name && c.verdict == Verdict::verified;
  });
}

}  // namespace

ConjectureReport check_conjectures(const Bundle& bundle, const TheoremReport& theorem, const GroebnerBudget& budget) {
  (void)budget;
  ConjectureReport rep;
  const auto& cat = bundle.catalog;
  auto nilpotent = [&](const std::string& l) { return is_nilpotent(find_entry(cat, l)->algebra); };

  // Grunewald-O'Halloran fails when no non-nilpotent algebra degenerates to L_5^n.
  {
    ConjectureStatus s;
    s.name = "Grunewald-O'Halloran";
    s.witness = "L_5^n";
    const CatalogEntry* w = find_entry(cat, s.witness);
    if (!w) {
      s.missing.push_back("L_5^n is not in the catalog");
    } else {
      auto wder = derivation_dim(w->algebra);
      auto wann = ann_left_dim(w->algebra);
      s.evidence.push_back("dim Der(L_5^n) = " + std::to_string(wder.generic));
      for (const auto& e : cat) {
        if (e.group != CatalogGroup::non_lie) continue;
        auto der = derivation_dim(e.algebra);
        auto annl = ann_left_dim(e.algebra);
        std::vector<std::string> why;
        if (der.unresolved.empty() && der.min() >= wder.generic)
          why.push_back("dim Der >= " + std::to_string(der.min()));
        if (annl.unresolved.empty() && annl.min() > wann.generic)
          why.push_back("dim Ann_L >= " + std::to_string(annl.min()) + " > " + std::to_string(wann.generic));
        for (const auto& c : theorem.certificates)
          if (c.kind == "separation" && c.verdict == Verdict::verified && c.source == e.label() &&
              c.target == w->label())
            why.push_back("certificate " + c.name);
        if (why.empty())
          s.missing.push_back(e.label());
        else
          s.evidence.push_back(e.label() + ": " + join(why, "; "));
      }
      if (bundle.axiom("lie_closed") && !is_lie(w->algebra))
        s.evidence.push_back("Lie algebras: L_5^n is not Lie and the Lie algebras form a closed set (axiom)");
      else
        s.missing.push_back("Lie algebras (no lie_closed axiom)");
    }
    s.status = s.missing.empty() ? "invalid" : "undecided";
    rep.conjectures.push_back(s);
  }

  // Vergne-Grunewald-O'Halloran: every component contains a non-nilpotent algebra.
  {
    ConjectureStatus s;
    s.name = "Vergne-Grunewald-O'Halloran";
    for (const auto& c : theorem.components) {
      if (nilpotent(c))
        s.missing.push_back(c + " is a nilpotent component");
      else
        s.evidence.push_back(c + " is not nilpotent");
    }
    for (const auto& r : theorem.coverage) {
      if (!nilpotent(r.label)) continue;
      if (r.chain.empty()) {
        s.missing.push_back(r.label + " is not reached from a non-nilpotent family");
        continue;
      }
      bool all_verified = std::all_of(r.chain.begin(), r.chain.end(),
                                      [&](const ClosureEdge& e) { return has_verified(theorem, e.via); });
      std::vector<std::string> via;
      for (const auto& e : r.chain) via.push_back(e.via);
      if (all_verified)
        s.evidence.push_back(r.label + " in closure(" + r.component + ") via " + join(via, ", "));
      else
        s.missing.push_back(r.label + ": unverified chain");
    }
    if (!theorem.success()) s.missing.push_back("theorem report is not a success");
    s.status = s.missing.empty() ? "valid" : "undecided";
    rep.conjectures.push_back(s);
  }

  // Vergne: no nilpotent algebra is rigid.
  {
    ConjectureStatus s;
    s.name = "Vergne";
    for (const auto& r : theorem.rigid)
      if (nilpotent(r)) s.missing.push_back(r + " is rigid and nilpotent");
    for (const auto& r : theorem.coverage) {
      if (!nilpotent(r.label)) continue;
      if (r.chain.empty())
        s.missing.push_back(r.label + " is not shown to be non-rigid");
      else
        s.evidence.push_back(r.label + " lies in the orbit closure of " + r.component + ", so it is not rigid");
    }
    if (!bundle.axiom("nilpotent_components"))
      s.missing.push_back("nilpotent algebras outside the catalog (no nilpotent_components axiom)");
    if (!theorem.success()) s.missing.push_back("theorem report is not a success");
    s.status = s.missing.empty() ? "valid" : "undecided";
    rep.conjectures.push_back(s);
  }
  return rep;
}

std::string ConjectureReport::summary() const {
  std::ostringstream out;
  for (const auto& c : conjectures) {
    out << c.name << ": " << c.status;
    if (!c.witness.empty() && c.status == "invalid") out << " (witness " << c.witness << ")";
    out << "\n";
    for (const auto& m : c.missing) out << "  open: " << m << "\n";
  }
  return out.str();
}

std::string ConjectureReport::to_json() const {
  Json arr = Json::array();
  for (const auto& c : conjectures)
    arr.push_back(Json{{"name", c.name},
                       {"status", c.status},
                       {"witness", c.witness},
                       {"evidence", c.evidence},
                       {"missing", c.missing}});
  return Json{{"conjectures", arr}}.dump(2) + "\n";
}

}  // namespace leib
