// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "leib/orchestrator.hpp"
#include "property_binaries.hpp"

using namespace leib;

namespace {

const std::string kBundle = LEIB_BUNDLE_DIR;

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;
  void fail(const std::string& why) {
    pass = false;
    notes.push_back(why);
  }
  void expect(bool ok, const std::string& why) {
    if (!ok) fail(why);
  }
};

const AlgebraStructure& alg(const char* label) { return builtin(label).algebra; }

const SeparationCertificate& sep(const std::vector<SeparationCertificate>& all, const std::string& name) {
  for (const auto& c : all)
    if (c.name == name) return c;
  throw std::out_of_range("missing certificate " + name);
}

std::string joined(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : ", ") + x;
  return s;
}

Outcome identities() {
  Outcome o;
  std::size_t n = 0;
  for (const auto& e : builtin_catalog()) {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = leibniz_defect(e.algebra).empty();
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.expect(ok, e.label() + " violates the Leibniz identity");
    o.expect(secs < 1.0, e.label() + " identity check took " + std::to_string(secs) + " s");
    ++n;
  }
  o.notes.push_back(std::to_string(n) + " structures checked");
  return o;
}

Outcome degenerations() {
  Outcome o;
  auto certs = load_degenerations(kBundle + "/certificates/degenerations");
  std::set<std::string> names;
  for (const auto& c : certs) {
    names.insert(c.name);
    o.expect(verify_degeneration(c).verified, c.name + " does not verify");
  }
  for (const char* need : {"n1_L40_L2n", "n2_L18_L5n", "n3_L15_L11n", "n4_L9_N3"})
    o.expect(names.count(need) == 1, std::string("missing ") + need);
  std::size_t table = 0;
  for (const auto& n : names) table += n[0] == 't';
  o.expect(table == 27, std::to_string(table) + " degeneration rows instead of 27");
  o.notes.push_back(std::to_string(certs.size()) + " certificates verified exactly");
  return o;
}

Outcome derivations() {
  Outcome o;
  o.expect(derivation_dim(alg("L_5^n")).generic == 3, "dim Der(L_5^n) != 3");
  std::size_t points = 0;
  for (const auto& e : builtin_catalog()) {
    if (e.group != CatalogGroup::non_lie) continue;
    auto d = within_family(derivation_dim(e.algebra), e.restrictions);
    o.expect(d.unresolved.empty(), e.label() + " has unresolved loci");
    points += d.exceptional.size();
    bool low = e.label() == "R_1" || e.label() == "L_44";
    if (low)
      o.expect(d.max() < 3, e.label() + " has dim Der >= 3");
    else
      o.expect(d.min() >= 3, e.label() + " has dim Der < 3 somewhere: " + d.to_string());
  }
  o.notes.push_back(std::to_string(points) + " exceptional parameter values checked");
  return o;
}

Outcome six_tuples() {
  Outcome o;
  const std::vector<std::pair<const char*, std::vector<std::string>>> expected = {
      {"L_2", {"1", "-1", "0", "-1", "1", "0"}},       {"L_4", {"1", "a", "a + 1", "-1", "0", "0"}},
      {"L_8", {"1", "a", "a + 1", "-1", "-a", "0"}},    {"L_9", {"1", "a", "2", "-1", "-a", "0"}},
      {"L_10", {"1", "a", "2", "-1", "0", "0"}},        {"L_15", {"0", "1", "0", "0", "-1", "0"}},
      {"L_18", {"0", "1", "0", "0", "0", "0"}},         {"L_21", {"1", "a", "b", "-1", "-a", "0"}},
      {"L_22", {"1", "a", "b", "-1", "0", "0"}},        {"L_23", {"1", "a", "b", "0", "0", "0"}},
      {"L_44", {"1", "2", "3", "-1", "0", "0"}}};
  std::size_t reproduced = 0;
  for (const auto& [label, want] : expected) {
    const auto& a = alg(label);
    if (!check_standard(a)) {
      o.fail(std::string(label) + " is not a standard structure, no tuple");
      continue;
    }
    std::vector<std::string> got;
    for (const auto& x : six_tuple(a).v) got.push_back(x.to_string());
    if (got == want)
      ++reproduced;
    else
      o.fail(std::string(label) + " tuple (" + joined(got) + ")");
  }
  o.notes.insert(o.notes.begin(), std::to_string(reproduced) + "/11 reproduced");
  return o;
}

Outcome obstruction() {
  Outcome o;
  auto l4 = vanishing_forms({six_tuple(alg("L_4"))});
  o.expect(six_tuple_obstruction(l4, six_tuple(alg("L_2"))).verdict == Obstruction::refuted,
           "L_4 -> L_2 not refuted");
  std::vector<ClosureEdge> edges;
  for (const auto& c : load_degenerations(kBundle + "/certificates/degenerations"))
    if (verify_degeneration(c).verified) edges.push_back({c.source, c.target, c.name});
  auto rel = closure_chain(edges);
  std::size_t checked = 0;
  for (const auto& from : builtin_catalog()) {
    if (!check_standard(from.algebra)) continue;
    auto forms = vanishing_forms({six_tuple(from.algebra)});
    for (const auto& to : rel.reachable(from.label())) {
      const auto& target = builtin(to).algebra;
      if (!check_standard(target)) continue;
      ++checked;
      o.expect(six_tuple_obstruction(forms, six_tuple(target)).verdict == Obstruction::not_refuted,
               from.label() + " -> " + to + " refuted despite a verified degeneration");
    }
  }
  o.notes.push_back(std::to_string(checked) + " degenerations between standard structures cross-checked");
  return o;
}

Outcome closed_sets() {
  Outcome o;
  auto all = load_separations(kBundle + "/certificates/separations");
  auto r1 = *sep(all, "c1_L44_L5n").closed_set;
  auto r2 = *sep(all, "c2_L9_L15").closed_set;
  o.expect(borel_stability(r1).verdict == Stability::stable, "first set not Borel stable");
  o.expect(borel_stability(r2).verdict == Stability::stable, "second set not Borel stable");
  o.expect(closed_set_membership(alg("L_44"), r1), "L_44 outside the first set");
  ScalarMatrix swap = permutation_matrix({0, 2, 1, 3});
  for (const char* l : {"L_9", "L_10"})
    o.expect(closed_set_membership(change_basis(alg(l), swap), r2), std::string(l) + " outside the second set");
  auto check = [&](const char* label, const ClosedSetSpec& r) {
    auto rep = orbit_refute(alg(label), r);
    o.expect(rep.verdict == Refutation::refuted, std::string(label) + " orbit not refuted");
    o.expect(rep.exceptional.empty(), std::string(label) + " exceptional values: " + joined(rep.exceptional));
    if (!rep.rechecked.empty()) o.notes.push_back(std::string(label) + " rechecked " + joined(rep.rechecked));
  };
  check("L_5^n", r1);
  check("L_15", r2);
  check("L_18", r2);
  return o;
}

Outcome lie_annihilators() {
  Outcome o;
  auto check = [&](const char* label, std::size_t loci) {
    std::set<std::string> exceptional;
    for (const auto& e : builtin_catalog()) {
      if (e.group != CatalogGroup::non_lie) continue;
      auto rep = lie_ann_separation({e.algebra}, alg(label), e.restrictions);
      o.expect(rep.verdict == Verdict::verified, e.label() + " vs " + label + ": " + rep.summary);
      exceptional.insert(rep.exceptional.begin(), rep.exceptional.end());
    }
    std::vector<std::string> ex(exceptional.begin(), exceptional.end());
    o.expect(ex.size() == loci, std::string(label) + " exceptional loci {" + joined(ex) + "}");
    if (!ex.empty()) o.notes.push_back(std::string(label) + " off " + joined(ex));
  };
  check("R_2", 0);
  check("g_5", 1);
  check("g_4", 2);
  return o;
}

Outcome subspaces() {
  Outcome o;
  auto trivial = SubspaceProperty::trivial();
  for (const char* l : {"L_21", "L_22", "L_23"}) {
    auto r = exists_subspace(alg(l), 3, trivial);
    o.expect(r.answer == Tristate::yes && r.witness && satisfies(alg(l), *r.witness, trivial),
             std::string(l) + " has no verified 3-dim trivial subalgebra");
  }
  for (const char* l : {"L_2", "L_4", "L_8", "L_9", "L_10", "L_15", "L_18", "L_44"})
    o.expect(exists_subspace(alg(l), 3, trivial).answer == Tristate::no,
             std::string(l) + " 3-dim trivial subalgebra not excluded");
  auto d = exists_subspace(alg("R_3"), 3, SubspaceProperty::anticommutative_image(1));
  o.expect(d.answer == Tristate::yes && d.witness, "R_3 anticommutative D not found");
  for (const auto& e : builtin_catalog()) {
    if (e.group != CatalogGroup::non_lie) continue;
    auto r = nilradical_dim(e.algebra);
    std::size_t want = (e.label() == "R_1" || e.label() == "R_3") ? 2 : 3;
    o.expect(r.dim == want, e.label() + " nilradical dimension");
  }
  return o;
}

Outcome theorem() {
  Outcome o;
  Bundle b = Bundle::load(kBundle);
  auto rep = verify_theorem(b);
  o.notes.push_back(std::to_string(rep.components.size()) + " components, rigid {" + joined(rep.rigid) + "}");
  o.expect(rep.components.size() == 17, "expected 17 components");
  std::set<std::string> rigid(rep.rigid.begin(), rep.rigid.end());
  o.expect(rigid == std::set<std::string>{"sl_2", "R_1", "R_2", "R_3", "L_2", "L_44"},
           "expected rigid {sl_2, R_1, R_2, R_3, L_2, L_44}");
  o.expect(rep.unresolved.empty(), std::to_string(rep.unresolved.size()) + " unresolved pairs");
  o.expect(rep.inconsistencies.empty(), "inconsistencies: " + joined(rep.inconsistencies));
  o.expect(rep.errors.empty(), "errors: " + joined(rep.errors));
  for (const auto& c : rep.coverage)
    if (c.label == "L_2" && !c.chain.empty())
      o.notes.push_back("L_2 lies in closure(" + c.component + ") via " + c.chain.front().via);
  auto conj = check_conjectures(b, rep);
  for (const auto& c : conj.conjectures) {
    bool goh = c.name == "Grunewald-O'Halloran";
    std::string want = goh ? "invalid" : "valid";
    o.expect(c.status == want, c.name + " is " + c.status);
    if (goh) o.expect(c.witness == "L_5^n", "GOH witness " + c.witness);
  }
  o.expect(conj.conjectures.size() == 3, "expected three conjectures");
  return o;
}

Outcome properties() {
  Outcome o;
  std::istringstream bins(LEIB_PROPERTY_BINARIES);
  std::string bin;
  std::size_t runs = 0;
  while (std::getline(bins, bin, ';')) {
    if (bin.empty()) continue;
    std::string cmd = "\"" + bin + "\" --test-case=property* --minimal > /dev/null 2>&1";
    o.expect(std::system(cmd.c_str()) == 0, bin + " property cases fail");
    ++runs;
  }
  o.notes.push_back(std::to_string(runs) + " suites run");
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"identity suite", identities},
      {"degeneration suite", degenerations},
      {"derivation dimensions", derivations},
      {"six-tuple table", six_tuples},
      {"six-tuple obstruction", obstruction},
      {"closed sets", closed_sets},
      {"Lie annihilator rule", lie_annihilators},
      {"subspace solver", subspaces},
      {"theorem reproduction", theorem},
      {"property suites", properties}};
  std::size_t failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    failed += !o.pass;
    std::cout << "criterion " << i + 1 << " " << (o.pass ? "PASS" : "FAIL") << ": " << criteria[i].first;
    if (!o.notes.empty()) std::cout << " (" << joined(o.notes) << ")";
    std::cout << std::endl;
  }
  std::cout << criteria.size() - failed << "/" << criteria.size() << " criteria pass" << std::endl;
  return failed == 0 ? 0 : 1;
}
