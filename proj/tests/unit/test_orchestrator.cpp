#include <algorithm>
#include <filesystem>
#include <set>

#include "doctest.h"
#include "leib/orchestrator.hpp"

using namespace leib;
namespace fs = std::filesystem;

namespace {

const std::string kBundle = LEIB_BUNDLE_DIR;

const TheoremReport& shipped_report() {
  static const TheoremReport rep = verify_theorem(Bundle::load(kBundle));
  return rep;
}

// Copy of the shipped bundle in a fresh temporary directory.
fs::path scratch_bundle(const std::string& tag) {
  fs::path dir = fs::temp_directory_path() / ("leib_bundle_" + tag);
  fs::remove_all(dir);
  fs::copy(kBundle, dir, fs::copy_options::recursive);
  return dir;
}

bool contains(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

const CoverageRecord& coverage_of(const TheoremReport& r, const std::string& label) {
  auto it = std::find_if(r.coverage.begin(), r.coverage.end(), [&](const CoverageRecord& c) { return c.label == label; });
  REQUIRE(it != r.coverage.end());
  return *it;
}

}  // namespace

TEST_CASE("axiom parsing") {
  auto ax = parse_axioms("# comment\nlie_components: sl_2 R_2\n\nlie_closed: all\n", "axioms/x");
  REQUIRE(ax.size() == 2);
  CHECK(ax[0].key == "lie_components");
  CHECK(ax[0].labels == std::vector<std::string>{"sl_2", "R_2"});
  CHECK(ax[1].source == "axioms/x");
  CHECK_THROWS_AS(parse_axioms("lie_everything: sl_2\n", "x"), std::runtime_error);
  CHECK_THROWS_AS(parse_axioms("no colon here\n", "x"), std::runtime_error);
  CHECK_THROWS_AS(Bundle::load("/nonexistent/bundle"), std::runtime_error);
}

TEST_CASE("shipped bundle: every pair settled, no contradictions") {
  const auto& r = shipped_report();
  CHECK(r.success());
  CHECK(r.unresolved.empty());
  CHECK(r.inconsistencies.empty());
  CHECK(r.errors.empty());
  CHECK(r.uncovered.empty());
  for (const auto& c : r.certificates) CHECK_MESSAGE(c.verdict == Verdict::verified, c.name);
  CHECK(r.pairs.size() == r.components.size() * (r.components.size() - 1));
}

TEST_CASE("shipped bundle: component and rigid lists") {
  const auto& r = shipped_report();
  std::set<std::string> rigid(r.rigid.begin(), r.rigid.end());
  CHECK(rigid == std::set<std::string>{"sl_2", "R_1", "R_2", "R_3", "L_44"});
  CHECK(r.components.size() == 16);
  for (const char* l : {"L_4^a", "L_8^a", "L_9^a", "L_10^a", "L_15^a", "L_18^a", "g_4^{a,b}", "g_5^a"})
    CHECK_MESSAGE(contains(r.components, l), l);
}

TEST_CASE("L_2 lies in the closure of L_8") {
  const auto& r = shipped_report();
  CHECK_FALSE(contains(r.components, "L_2"));
  const auto& c = coverage_of(r, "L_2");
  CHECK(c.component == "L_8^a");
  REQUIRE(c.chain.size() == 1);
  CHECK(c.chain[0].via == "d01_L8_L2");
}

TEST_CASE("every pair records all succeeding rules") {
  const auto& r = shipped_report();
  auto pair = std::find_if(r.pairs.begin(), r.pairs.end(),
                           [](const PairEvidence& p) { return p.component == "L_15^a" && p.other == "L_9^a"; });
  REQUIRE(pair != r.pairs.end());
  CHECK(contains(pair->rules, "certificate:c2_L9_L15"));
  CHECK(pair->rules.size() == pair->detail.size());
}

TEST_CASE("determinism: identical reports across runs and thread counts") {
  Bundle b = Bundle::load(kBundle);
  TheoremOptions one;
  one.threads = 1;
  TheoremOptions many;
  many.threads = 8;
  auto a = verify_theorem(b, one).to_json();
  CHECK(a == verify_theorem(b, many).to_json());
  CHECK(a == shipped_report().to_json());
  auto c1 = check_conjectures(b, shipped_report()).to_json();
  CHECK(c1 == check_conjectures(b, shipped_report()).to_json());
}

TEST_CASE("negative control: a missing separation certificate leaves its pair unresolved") {
  auto dir = scratch_bundle("negative");
  fs::remove(dir / "certificates/separations/c2_L9_L15.sep");
  auto r = verify_theorem(Bundle::load(dir.string()));
  CHECK_FALSE(r.success());
  CHECK(r.unresolved == std::vector<std::string>{"L_15^a not in closure(L_9^a)"});
  fs::remove_all(dir);
}

TEST_CASE("a corrupted certificate fails the report") {
  Bundle b = Bundle::load(kBundle);
  auto& c = b.degenerations.front();
  c.target = "L_44";
  auto r = verify_theorem(b);
  CHECK_FALSE(r.success());
  auto it = std::find_if(r.certificates.begin(), r.certificates.end(),
                         [&](const CertificateStatus& s) { return s.name == c.name; });
  REQUIRE(it != r.certificates.end());
  CHECK(it->verdict == Verdict::failed);
}

TEST_CASE("axiom isolation: dropping the Lie axioms only touches Lie evidence") {
  auto dir = scratch_bundle("no_lie");
  fs::remove(dir / "axioms/lie_variety");
  auto r = verify_theorem(Bundle::load(dir.string()));
  const auto& full = shipped_report();
  CHECK_FALSE(r.success());
  CHECK(r.components == full.components);
  CHECK(r.certificates.size() == full.certificates.size());
  CHECK(contains(r.uncovered, "Lie algebras outside the catalog (no lie_components axiom)"));
  REQUIRE(r.pairs.size() == full.pairs.size());
  for (std::size_t i = 0; i < r.pairs.size(); ++i) {
    std::vector<std::string> kept;
    for (const auto& rule : full.pairs[i].rules)
      if (rule.rfind("axiom:lie", 0) != 0) kept.push_back(rule);
    CHECK_MESSAGE(r.pairs[i].rules == kept, r.pairs[i].component << " vs " << r.pairs[i].other);
  }
  for (const auto& u : r.unresolved) {
    auto it = std::find_if(full.pairs.begin(), full.pairs.end(), [&](const PairEvidence& p) {
      return u == p.component + " not in closure(" + p.other + ")";
    });
    REQUIRE(it != full.pairs.end());
    CHECK(std::any_of(it->rules.begin(), it->rules.end(),
                      [](const std::string& s) { return s.rfind("axiom:lie", 0) == 0; }));
  }
  for (const auto& a : r.axiom_usages) CHECK(a.find("lie_variety") == std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("nilpotent components are reached from non-nilpotent families") {
  Bundle full = Bundle::load(kBundle);
  Bundle b;
  b.dir = full.dir;
  b.axioms = full.axioms;
  std::set<std::string> keep;
  for (const auto& c : full.degenerations) {
    if (c.name.rfind("n", 0) != 0) continue;
    b.degenerations.push_back(c);
    keep.insert(find_entry(full.catalog, c.source)->label());
  }
  REQUIRE(b.degenerations.size() == 4);
  for (const auto& e : full.catalog)
    if (e.group == CatalogGroup::nilpotent || keep.count(e.label())) b.catalog.push_back(e);
  auto r = verify_theorem(b);
  for (const auto& e : b.catalog) {
    if (e.group != CatalogGroup::nilpotent) continue;
    const auto& c = coverage_of(r, e.label());
    REQUIRE_MESSAGE(!c.component.empty(), e.label());
    CHECK_MESSAGE(find_entry(b.catalog, c.component)->group != CatalogGroup::nilpotent, e.label());
  }
  CHECK(std::none_of(r.uncovered.begin(), r.uncovered.end(),
                     [](const std::string& u) { return u.find("nilpotent") != std::string::npos; }));
}

TEST_CASE("conjecture statuses") {
  Bundle b = Bundle::load(kBundle);
  auto rep = check_conjectures(b, shipped_report());
  REQUIRE(rep.conjectures.size() == 3);
  for (const auto& c : rep.conjectures) {
    CHECK_MESSAGE(c.missing.empty(), c.name);
    if (c.name == "Grunewald-O'Halloran") {
      CHECK(c.status == "invalid");
      CHECK(c.witness == "L_5^n");
    } else {
      CHECK_MESSAGE(c.status == "valid", c.name);
    }
  }
}

TEST_CASE("GOH becomes undecided without the L_44 closed set") {
  auto dir = scratch_bundle("no_c1");
  fs::remove(dir / "certificates/separations/c1_L44_L5n.sep");
  Bundle b = Bundle::load(dir.string());
  auto rep = check_conjectures(b, verify_theorem(b));
  auto goh = std::find_if(rep.conjectures.begin(), rep.conjectures.end(),
                          [](const ConjectureStatus& c) { return c.name == "Grunewald-O'Halloran"; });
  REQUIRE(goh != rep.conjectures.end());
  CHECK(goh->status == "undecided");
  CHECK_FALSE(goh->missing.empty());
  fs::remove_all(dir);
}
