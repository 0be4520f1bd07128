#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "leib/catalog.hpp"

namespace leib {

// Row i of `basis` holds the coordinates of E_i^t in e_1..e_n. `index`
// maps source parameters to expressions in t and the target parameters.
struct DegenerationCertificate {
  std::string name;
  std::string source;
  std::string target;
  ScalarMatrix basis;
  Bindings index;
  std::vector<std::string> notes;  // free-form `note:` lines kept for reports
  std::string t = "t";
};

DegenerationCertificate parse_degeneration(std::string_view text, std::string name = {});
std::string serialize_degeneration(const DegenerationCertificate& c);

// Substitutes source parameters (simultaneously); remaining ones stay symbolic.
AlgebraStructure specialize_family(const AlgebraStructure& a, const Bindings& b);

// Structure constants of the specialized source in the E^t basis.
AlgebraStructure transport(const DegenerationCertificate& c, const AlgebraStructure& source);

struct Recheck {
  std::string constraint;
  Bindings binding;
  bool verified;
  std::string detail;
};

struct DegenerationReport {
  bool verified = false;
  AlgebraStructure transported;
  std::vector<std::string> exceptional_t;       // polynomial constraints in t and parameters
  std::vector<std::string> exceptional_params;  // constraints in the target parameters alone
  std::vector<Recheck> rechecks;                // each exceptional value substituted and retried
  std::vector<std::string> diagnostics;
};

DegenerationReport verify_degeneration(const DegenerationCertificate& c, const std::vector<CatalogEntry>& catalog);
DegenerationReport verify_degeneration(const DegenerationCertificate& c);

// Same certificate with the target parameters fixed.
DegenerationCertificate restrict_certificate(const DegenerationCertificate& c, const Bindings& target_values);

// Transitive closure of "the closure of `from` contains `to`".
struct ClosureEdge {
  std::string from;
  std::string to;
  std::string via;  // certificate name or axiom text
};

class ClosureRelation {
 public:
  explicit ClosureRelation(std::vector<ClosureEdge> edges);
  bool contains(const std::string& from, const std::string& to) const;
  // Shortest chain of edges, empty when unrelated (or from == to).
  std::vector<ClosureEdge> chain(const std::string& from, const std::string& to) const;
  std::vector<std::string> reachable(const std::string& from) const;
  const std::vector<ClosureEdge>& edges() const { return edges_; }
  std::size_t derived_size() const;

 private:
  std::vector<ClosureEdge> edges_;
  std::map<std::string, std::map<std::string, std::vector<ClosureEdge>>> paths_;
};

// Errors: a broken chain (an edge endpoint with no matching node) throws.
ClosureRelation closure_chain(const std::vector<ClosureEdge>& edges);

std::vector<DegenerationCertificate> load_degenerations(const std::string& dir);

}  // namespace leib
