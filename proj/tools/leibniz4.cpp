#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "leib/orchestrator.hpp"

#ifndef LEIB_BUNDLE_DIR
#define LEIB_BUNDLE_DIR "data/bundle"
#endif

using namespace leib;
using Json = nlohmann::ordered_json;

namespace {

enum Exit { ok = 0, failed = 1, inconclusive = 2 };

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_report(const std::string& path, const std::string& text) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

Json count_json(const ParametricCount& c) {
  Json ex = Json::array();
  for (const auto& e : c.exceptional)
    ex.push_back(Json{{"constraint", e.constraint}, {"binding", bindings_to_string(e.binding)}, {"value", e.value}});
  return Json{{"generic", c.generic}, {"exceptional", ex}, {"unresolved", c.unresolved}};
}

Json profile_json(const InvariantProfile& p) {
  Json j{{"label", p.label},
         {"params", p.params},
         {"der", count_json(p.der)},
         {"ann_left", count_json(p.ann_left)},
         {"ann", count_json(p.ann)},
         {"square", count_json(p.square)},
         {"plus_square", count_json(p.plus_square)},
         {"lie", p.lie},
         {"solvable", p.solvable},
         {"standard", p.standard}};
  j["nilradical"] = p.nilradical ? Json(*p.nilradical) : Json();
  j["max_trivial_subalgebra"] = p.max_trivial ? Json(*p.max_trivial) : Json();
  j["max_anticommutative_subalgebra"] = p.max_anticomm ? Json(*p.max_anticomm) : Json();
  return j;
}

void print_profile(const InvariantProfile& p) {
  auto opt = [](const std::optional<std::size_t>& v) { return v ? std::to_string(*v) : std::string("undecided"); };
  std::cout << "dim Der: " << p.der.to_string() << "\n"
            << "dim Ann_L: " << p.ann_left.to_string() << "\n"
            << "dim Ann: " << p.ann.to_string() << "\n"
            << "dim A^2: " << p.square.to_string() << "\n"
            << "dim A^(+2): " << p.plus_square.to_string() << "\n"
            << "lie: " << (p.lie ? "yes" : "no") << ", solvable: " << (p.solvable ? "yes" : "no")
            << ", standard: " << (p.standard ? "yes" : "no") << "\n"
            << "nilradical: " << (p.solvable ? opt(p.nilradical) : std::string("not solvable")) << "\n"
            << "max trivial subalgebra: " << opt(p.max_trivial) << "\n"
            << "max anticommutative D with dim(AD) <= 1: " << opt(p.max_anticomm) << "\n";
}

std::string defect_text(const Defect& d) {
  return "((e" + std::to_string(d.i + 1) + " e" + std::to_string(d.j + 1) + ") e" + std::to_string(d.l + 1) +
         " - ...)_" + std::to_string(d.k + 1) + " = " + d.value.to_string();
}

int exit_for(Verdict v) {
  return v == Verdict::verified ? ok : v == Verdict::inconclusive ? inconclusive : failed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification of degenerations of four dimensional Leibniz algebras"};
  app.require_subcommand(1);
  std::string bundle_dir = LEIB_BUNDLE_DIR;
  std::size_t budget_steps = GroebnerBudget{}.max_reductions;
  std::string report_path;
  bool json = false;
  unsigned threads = 0;

  auto* check = app.add_subcommand("check", "Leibniz identity and invariants of an algebra file");
  std::string algebra_file;
  check->add_option("file", algebra_file, "algebra file")->required();

  auto* inv = app.add_subcommand("invariants", "Invariant profile of a catalog structure");
  std::string label;
  inv->add_option("label", label, "catalog label, e.g. L_21")->required();

  auto* deg = app.add_subcommand("degenerate", "Verify a degeneration certificate");
  std::string cert_file;
  deg->add_option("file", cert_file, "certificate file")->required();

  auto* sep = app.add_subcommand("separate", "Verify a separation certificate");
  sep->add_option("file", cert_file, "certificate file")->required();

  auto* six = app.add_subcommand("six-tuple", "Six-tuple of a standard structure");
  six->add_option("label", label, "catalog label")->required();

  auto* thm = app.add_subcommand("verify-theorem", "Component and rigidity report for the whole bundle");
  auto* conj = app.add_subcommand("conjectures", "Status of the three nilpotency conjectures");
  for (auto* sub : {thm, conj}) {
    sub->add_option("--report", report_path, "write the JSON report here");
    sub->add_option("--threads", threads, "worker threads (0: all cores)");
  }
  for (auto* sub : {check, inv, deg, sep, six, thm, conj}) {
    sub->add_option("--bundle", bundle_dir, "bundle directory")->check(CLI::ExistingDirectory);
    sub->add_option("--budget", budget_steps, "Groebner reduction steps per computation");
    sub->add_flag("--json", json, "print JSON instead of text");
  }

  CLI11_PARSE(app, argc, argv);
  GroebnerBudget budget;
  budget.max_reductions = budget_steps;

  try {
    auto catalog = [&] { return load_catalog(bundle_dir + "/algebras"); };
    auto entry = [&](const std::vector<CatalogEntry>& cat, const std::string& l) -> const CatalogEntry& {
      const CatalogEntry* e = find_entry(cat, l);
      if (!e) throw std::runtime_error("unknown label " + l);
      return *e;
    };

    if (*check) {
      CatalogEntry e = parse_algebra(read_file(algebra_file));
      auto defects = leibniz_defect(e.algebra);
      auto p = profile(e.algebra, budget);
      if (json) {
        Json d = Json::array();
        for (const auto& x : defects) d.push_back(defect_text(x));
        std::cout << Json{{"label", e.label()}, {"leibniz_defects", d}, {"profile", profile_json(p)}}.dump(2) << "\n";
      } else {
        std::cout << e.label() << ": Leibniz identity " << (defects.empty() ? "holds" : "FAILS") << "\n";
        for (const auto& x : defects) std::cout << "  " << defect_text(x) << "\n";
        print_profile(p);
      }
      return defects.empty() ? ok : failed;
    }
    if (*inv) {
      auto cat = catalog();
      auto p = profile(entry(cat, label).algebra, budget);
      if (json)
        std::cout << profile_json(p).dump(2) << "\n";
      else
        std::cout << p.label << "\n", print_profile(p);
      return ok;
    }
    if (*six) {
      auto cat = catalog();
      const auto& a = entry(cat, label).algebra;
      if (!check_standard(a)) {
        std::cerr << a.label() << " is not a standard structure\n";
        return failed;
      }
      auto t = six_tuple(a);
      if (json) {
        Json v = Json::array();
        for (const auto& x : t.v) v.push_back(x.to_string());
        std::cout << Json{{"label", a.label()}, {"six_tuple", v}}.dump(2) << "\n";
      } else {
        std::cout << "S(" << a.label() << ") = " << t.to_string() << "\n";
      }
      return ok;
    }
    if (*deg) {
      auto c = parse_degeneration(read_file(cert_file), std::filesystem::path(cert_file).stem().string());
      auto r = verify_degeneration(c, catalog());
      if (json) {
        Json rc = Json::array();
        for (const auto& x : r.rechecks)
          rc.push_back(Json{{"constraint", x.constraint}, {"verified", x.verified}, {"detail", x.detail}});
        std::cout << Json{{"name", c.name},
                          {"verified", r.verified},
                          {"exceptional_t", r.exceptional_t},
                          {"exceptional_params", r.exceptional_params},
                          {"rechecks", rc},
                          {"diagnostics", r.diagnostics}}
                         .dump(2)
                  << "\n";
      } else {
        std::cout << c.name << ": " << c.source << " -> " << c.target << " " << (r.verified ? "verified" : "FAILED")
                  << "\n";
        for (const auto& x : r.exceptional_t) std::cout << "  excluded in t: " << x << "\n";
        for (const auto& x : r.exceptional_params) std::cout << "  exceptional parameters: " << x << "\n";
        for (const auto& x : r.rechecks)
          std::cout << "  recheck " << x.constraint << ": " << (x.verified ? "verified" : "fails") << "\n";
        for (const auto& x : r.diagnostics) std::cout << "  " << x << "\n";
      }
      return r.verified ? ok : failed;
    }
    if (*sep) {
      auto c = parse_separation(read_file(cert_file), std::filesystem::path(cert_file).stem().string());
      auto r = verify_separation(c, catalog(), budget);
      if (json) {
        std::cout << Json{{"name", c.name},
                          {"rule", to_string(c.rule)},
                          {"verdict", to_string(r.verdict)},
                          {"summary", r.summary},
                          {"detail", r.detail},
                          {"exceptional", r.exceptional}}
                         .dump(2)
                  << "\n";
      } else {
        std::cout << c.name << ": " << c.source << " -/-> " << c.target << " [" << to_string(c.rule)
                  << "] " << to_string(r.verdict) << "\n  " << r.summary << "\n";
        for (const auto& d : r.detail) std::cout << "  " << d << "\n";
        for (const auto& e : r.exceptional) std::cout << "  exceptional: " << e << "\n";
      }
      return exit_for(r.verdict);
    }
    if (*thm || *conj) {
      Bundle b = Bundle::load(bundle_dir);
      TheoremOptions opt;
      opt.budget = budget;
      opt.threads = threads;
      auto rep = verify_theorem(b, opt);
      if (*thm) {
        write_report(report_path, rep.to_json());
        std::cout << (json ? rep.to_json() : rep.summary());
        if (rep.success()) return ok;
        return rep.inconclusive ? inconclusive : failed;
      }
      auto c = check_conjectures(b, rep, budget);
      write_report(report_path, c.to_json());
      std::cout << (json ? c.to_json() : c.summary());
      bool decided = std::none_of(c.conjectures.begin(), c.conjectures.end(),
                                  [](const ConjectureStatus& s) { return s.status == "undecided"; });
      return decided ? ok : (rep.inconclusive ? inconclusive : failed);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return failed;
  }
  return ok;
}
