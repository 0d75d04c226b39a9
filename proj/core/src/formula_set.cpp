#include "parad/formula_set.hpp"

namespace parad {

FormulaSet subset_by_mask(const FormulaSet& base, unsigned long long mask) {
  std::vector<Formula> out;
  for (std::size_t i = 0; i < base.size(); ++i) {
    if (mask >> i & 1ULL) out.push_back(base[i]);
  }
  return FormulaSet(std::move(out));
}

std::string render_set(const FormulaSet& s, const Signature& sig) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i > 0) out += ", ";
    out += render_formula(s[i], sig);
  }
  return out;
}

FormulaSet parse_formula_list(std::string_view text, const Signature& sig) {
  std::vector<Formula> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    std::string_view item = text.substr(start, comma - start);
    if (item.find_first_not_of(" \t\r\n") != std::string_view::npos) {
      out.push_back(parse_formula(item, sig));
    }
    start = comma + 1;
  }
  return FormulaSet(std::move(out));
}

}  // namespace parad
