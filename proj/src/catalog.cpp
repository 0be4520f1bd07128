#include "leib/catalog.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <regex>
#include <sstream>
#include <stdexcept>

#include "leib/literal.hpp"

namespace leib {

namespace embedded {
// Generated at configure time from data/bundle/algebras.
extern const std::vector<std::pair<const char*, const char*>> algebra_files;
}  // namespace embedded

std::string to_string(CatalogGroup g) {
  switch (g) {
    case CatalogGroup::non_lie: return "non_lie";
    case CatalogGroup::lie: return "lie";
    case CatalogGroup::nilpotent: return "nilpotent";
  }
  return "non_lie";
}

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split_list(const std::string& s) {
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
  if (!trim(cur).empty()) out.push_back(trim(cur));
  return out;
}

// Splits at top-level + and -, keeping the sign with each piece.
std::vector<std::pair<std::size_t, std::string>> split_terms(const std::string& s) {
  std::vector<std::pair<std::size_t, std::string>> out;
  std::string cur;
  std::size_t start = 0;
  int depth = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char ch = s[i];
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    bool prev_is_operator = false;
    for (std::size_t k = i; k-- > 0;) {
      if (std::isspace(static_cast<unsigned char>(s[k]))) continue;
      prev_is_operator = s[k] == '*' || s[k] == '/' || s[k] == '^' || s[k] == '(' || s[k] == '+' || s[k] == '-';
      break;
    }
    if ((ch == '+' || ch == '-') && depth == 0 && !trim(cur).empty() && !prev_is_operator) {
      out.emplace_back(start, cur);
      cur.clear();
      start = i;
    }
    cur += ch;
  }
  if (!trim(cur).empty()) out.emplace_back(start, cur);
  return out;
}

}  // namespace

CatalogEntry parse_algebra(std::string_view text) {
  CatalogEntry entry;
  std::string name;
  std::size_t dim = 0;
  std::vector<std::string> params;
  std::vector<std::pair<std::size_t, std::string>> restrict_lines;
  struct Product {
    std::size_t line, i, j, rhs_col;
    std::string rhs;
  };
  std::vector<Product> products;

  static const std::regex header(R"(^\s*([a-z]+)\s*:\s*(.*)$)");
  static const std::regex product(R"(^(\s*e(\d+)\s+e(\d+)\s*=\s*)(.*)$)");
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw.substr(0, raw.find('#'));
    if (trim(line).empty()) continue;
    std::smatch m;
    if (std::regex_match(line, m, product)) {
      products.push_back(Product{line_no, std::stoul(m[2]), std::stoul(m[3]),
                                 static_cast<std::size_t>(m[1].length()) + 1, m[4]});
    } else if (std::regex_match(line, m, header)) {
      std::string key = m[1];
      std::string value = trim(std::string(m[2]));
      if (key == "name") {
        name = value;
      } else if (key == "dim") {
        try {
          dim = std::stoul(value);
        } catch (const std::exception&) {
          throw ParseError("bad dimension '" + value + "'", line_no, 1);
        }
      } else if (key == "params") {
        for (auto& p : split_list(value)) params.push_back(p);
      } else if (key == "restrict") {
        restrict_lines.emplace_back(line_no, value);
      } else {
        throw ParseError("unknown header '" + key + "'", line_no, 1);
      }
    } else {
      throw ParseError("unrecognized line", line_no, 1);
    }
  }
  if (name.empty()) throw ParseError("missing name", 1, 1);
  if (dim == 0) throw ParseError("missing dim", 1, 1);

  std::set<std::string> allowed(params.begin(), params.end());
  AlgebraStructure a(name, dim, params);
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& p : products) {
    if (p.i < 1 || p.i > dim || p.j < 1 || p.j > dim) throw ParseError("basis index out of range", p.line, 1);
    if (!seen.insert({p.i, p.j}).second) throw ParseError("product given twice", p.line, 1);
    for (const auto& [offset, piece] : split_terms(p.rhs)) {
      std::string t = trim(piece);
      std::size_t col = p.rhs_col + offset;
      if (t == "0") continue;
      static const std::regex basis_tail(R"(^(.*?)\s*\*?\s*e(\d+)$)");
      std::smatch m;
      if (!std::regex_match(t, m, basis_tail)) throw ParseError("expected a multiple of a basis vector", p.line, col);
      std::size_t k = std::stoul(m[2]);
      if (k < 1 || k > dim) throw ParseError("basis index out of range", p.line, col);
      std::string coef = trim(std::string(m[1]));
      Scalar c;
      if (coef.empty() || coef == "+") c = Scalar(1);
      else if (coef == "-") c = Scalar(-1);
      else c = parse_scalar(coef, &allowed, p.line, col);
      a.at(p.i - 1, p.j - 1, k - 1) += c;
    }
  }
  entry.algebra = a;
  for (const auto& [ln, value] : restrict_lines) {
    for (const auto& item : split_list(value)) {
      auto pos = item.find("!=");
      if (pos == std::string::npos) throw ParseError("restriction must read 'expr != value'", ln, 1);
      MultiPoly lhs = parse_poly(trim(item.substr(0, pos)), &allowed);
      MultiPoly rhs = parse_poly(trim(item.substr(pos + 2)), &allowed);
      entry.restrictions.push_back(Restriction{lhs - rhs, trim(item)});
    }
  }
  entry.tags = derive_tags(a);
  if (entry.tags.count("lie")) entry.group = CatalogGroup::lie;
  else if (entry.tags.count("nilpotent")) entry.group = CatalogGroup::nilpotent;
  return entry;
}

std::string serialize_algebra(const CatalogEntry& e) {
  const AlgebraStructure& a = e.algebra;
  std::string out = "name: " + a.label() + "\ndim: " + std::to_string(a.dim()) + "\n";
  if (!a.params().empty()) {
    out += "params: ";
    for (std::size_t i = 0; i < a.params().size(); ++i) out += (i ? ", " : "") + a.params()[i];
    out += "\n";
  }
  if (!e.restrictions.empty()) {
    out += "restrict: ";
    for (std::size_t i = 0; i < e.restrictions.size(); ++i) out += (i ? ", " : "") + e.restrictions[i].poly.to_string() + " != 0";
    out += "\n";
  }
  return out + a.to_string();
}

std::set<std::string> derive_tags(const AlgebraStructure& a) {
  std::set<std::string> tags;
  if (is_lie(a)) tags.insert("lie");
  if (is_nilpotent(a)) tags.insert("nilpotent");
  if (is_solvable(a)) tags.insert("solvable");
  if (a.dim() == 4 && check_standard(a)) tags.insert("standard");
  return tags;
}

std::string base_label(std::string_view label) {
  std::string s(label);
  if (s.size() >= 2 && s.substr(s.size() - 2) == "^n") return s;
  auto cut = s.find_first_of("^(");
  return cut == std::string::npos ? s : s.substr(0, cut);
}

const std::vector<CatalogEntry>& builtin_catalog() {
  static const std::vector<CatalogEntry> catalog = [] {
    std::vector<CatalogEntry> out;
    for (const auto& [file, text] : embedded::algebra_files) {
      try {
        out.push_back(parse_algebra(text));
      } catch (const ParseError& e) {
        throw std::runtime_error(std::string("embedded algebra ") + file + ": " + e.what());
      }
    }
    return out;
  }();
  return catalog;
}

const CatalogEntry* find_entry(const std::vector<CatalogEntry>& catalog, std::string_view label) {
  for (const auto& e : catalog)
    if (e.label() == label) return &e;
  std::string base = base_label(label);
  for (const auto& e : catalog)
    if (base_label(e.label()) == base) return &e;
  return nullptr;
}

const CatalogEntry& builtin(std::string_view label) {
  const CatalogEntry* e = find_entry(builtin_catalog(), label);
  if (!e) throw std::out_of_range("unknown algebra label '" + std::string(label) + "'");
  return *e;
}

std::vector<CatalogEntry> load_catalog(const std::string& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& f : std::filesystem::directory_iterator(dir))
    if (f.path().extension() == ".alg") files.push_back(f.path());
  std::sort(files.begin(), files.end());
  std::vector<CatalogEntry> out;
  for (const auto& f : files) {
    std::ifstream in(f);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
      out.push_back(parse_algebra(ss.str()));
    } catch (const ParseError& e) {
      throw std::runtime_error(f.string() + ": " + e.what());
    }
  }
  return out;
}

bool check_standard(const AlgebraStructure& a) {
  if (a.dim() != 4) return false;
  // 1-based indices as in the pattern.
  auto c = [&](std::size_t i, std::size_t j, std::size_t k) -> const Scalar& { return a.at(i - 1, j - 1, k - 1); };
  for (std::size_t i = 2; i <= 4; ++i)
    for (std::size_t j = 2; j <= 4; ++j)
      for (std::size_t k = 1; k <= std::max(i, j); ++k)
        if (!c(i, j, k).is_zero()) return false;
  for (std::size_t i = 2; i <= 4; ++i)
    for (std::size_t j = i + 1; j <= 4; ++j)
      if (!c(1, i, j).is_zero() || !c(i, 1, j).is_zero()) return false;
  // <e2,e3,e4> is an ideal.
  for (std::size_t i = 2; i <= 4; ++i)
    if (!c(1, i, 1).is_zero() || !c(i, 1, 1).is_zero()) return false;
  // The restriction to <e2,e3,e4> is nilpotent.
  AlgebraStructure r("radical", 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 3; ++k) r.at(i, j, k) = a.at(i + 1, j + 1, k + 1);
  if (!is_nilpotent(r)) return false;
  return !is_nilpotent(a);
}

}  // namespace leib
