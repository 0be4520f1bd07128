#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "leib/algebra.hpp"

namespace leib {

// The parameter family excludes the zero set of `poly`.
struct Restriction {
  MultiPoly poly;
  std::string text;
};

enum class CatalogGroup { non_lie, lie, nilpotent };
std::string to_string(CatalogGroup g);

struct CatalogEntry {
  AlgebraStructure algebra;
  std::vector<Restriction> restrictions;
  std::set<std::string> tags;  // lie, nilpotent, solvable, standard
  CatalogGroup group = CatalogGroup::non_lie;

  const std::string& label() const { return algebra.label(); }
  bool has_tag(const std::string& t) const { return tags.count(t) > 0; }
};

// Grammar: `name:`, `dim:`, `params:`, `restrict:` headers, then lines
// `e<i> e<j> = <linear combination>`; '#' starts a comment.
CatalogEntry parse_algebra(std::string_view text);
std::string serialize_algebra(const CatalogEntry& e);

// Tags recomputed from the structure.
std::set<std::string> derive_tags(const AlgebraStructure& a);

// "L_21^{a,b}" -> "L_21", "g_5(a)" -> "g_5", "L_5^n" stays.
std::string base_label(std::string_view label);

const std::vector<CatalogEntry>& builtin_catalog();
const CatalogEntry& builtin(std::string_view label);
std::vector<CatalogEntry> load_catalog(const std::string& dir);
const CatalogEntry* find_entry(const std::vector<CatalogEntry>& catalog, std::string_view label);

// Vanishing pattern of a standard 4-dimensional structure, with <e2,e3,e4>
// a nilpotent ideal and the whole algebra not nilpotent.
bool check_standard(const AlgebraStructure& a);

}  // namespace leib
