#pragma once

#include <map>
#include <string>
#include <vector>

#include "leib/degeneration.hpp"
#include "leib/separation.hpp"

namespace leib {

// Facts imported without proof, one per `key: value` line of a file in axioms/.
struct Axiom {
  std::string key;     // lie_components, lie_closed, nilpotent_components
  std::string source;  // file name
  std::vector<std::string> labels;
  std::string statement;
};

struct Bundle {
  std::string dir;
  std::vector<CatalogEntry> catalog;
  std::vector<DegenerationCertificate> degenerations;
  std::vector<SeparationCertificate> separations;
  std::vector<Axiom> axioms;

  // Throws std::runtime_error on a missing directory or unreadable file.
  static Bundle load(const std::string& dir);
  const Axiom* axiom(const std::string& key) const;
};

std::vector<Axiom> parse_axioms(std::string_view text, const std::string& source);

struct CertificateStatus {
  std::string name;
  std::string kind;  // degeneration or separation
  std::string source, target;
  Verdict verdict = Verdict::failed;
  std::string summary;
  std::vector<std::string> exceptional;
};

struct CoverageRecord {
  std::string label;
  std::string component;          // empty when uncovered
  std::vector<ClosureEdge> chain;  // empty for a component itself
};

// Evidence that `component` is not inside the closure of `other`.
struct PairEvidence {
  std::string component;
  std::string other;
  std::vector<std::string> rules;   // every rule or axiom that succeeded
  std::vector<std::string> detail;  // one line per success
  std::vector<std::string> exceptional;
  bool settled() const { return !rules.empty(); }
};

struct TheoremReport {
  std::vector<std::string> components;
  std::vector<std::string> rigid;
  std::vector<CertificateStatus> certificates;
  std::vector<CoverageRecord> coverage;
  std::vector<std::string> uncovered;
  std::vector<PairEvidence> pairs;
  std::vector<std::string> unresolved;  // "X not in closure(Y)" pairs without evidence
  std::vector<std::string> axiom_usages;
  std::vector<std::string> inconsistencies;
  std::vector<std::string> errors;
  bool inconclusive = false;  // some budget ran out

  bool success() const;
  std::string summary() const;
  std::string to_json() const;  // stable key order, no timestamps
};

struct TheoremOptions {
  GroebnerBudget budget;
  unsigned threads = 0;  // 0: hardware concurrency
  // Pairs related by a verified degeneration are also run through every
  // separation rule; any success there is a fatal inconsistency.
  bool cross_check = true;
};

TheoremReport verify_theorem(const Bundle& bundle, const TheoremOptions& options = {});

struct ConjectureStatus {
  std::string name;
  std::string status;  // valid, invalid, or undecided when evidence is missing
  std::string witness;
  std::vector<std::string> evidence;
  std::vector<std::string> missing;
};

struct ConjectureReport {
  std::vector<ConjectureStatus> conjectures;
  std::string summary() const;
  std::string to_json() const;
};

ConjectureReport check_conjectures(const Bundle& bundle, const TheoremReport& theorem,
                                   const GroebnerBudget& budget = {});

}  // namespace leib
