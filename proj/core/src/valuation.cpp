#include "parad/valuation.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <set>
#include <sstream>

#include "parad/deduction.hpp"
#include "parad/error.hpp"

namespace parad {

bool ModelSet::is_subset_of(const ModelSet& other) const {
  if (scope != other.scope) {
    throw Error(ErrorCode::kPrecondition, "model sets over different atom scopes");
  }
  return std::includes(other.members.begin(), other.members.end(), members.begin(),
                       members.end());
}

ValuationStructure ValuationStructure::explicit_structure(FormulaSet carrier,
                                                          std::vector<std::vector<bool>> rows) {
  if (rows.empty() && !carrier.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "a valuation structure over a non-empty carrier needs at least one valuation");
  }
  std::vector<std::vector<bool>> kept;
  for (std::size_t j = 0; j < rows.size(); ++j) {
    const auto& row = rows[j];
    if (row.size() != carrier.size()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "valuation " + std::to_string(j + 1) + " has " + std::to_string(row.size()) +
                      " values for a carrier of " + std::to_string(carrier.size()));
    }
    if (std::all_of(row.begin(), row.end(), [](bool b) { return b; })) {
      throw Error(ErrorCode::kConstantOneValuation,
                  "valuation " + std::to_string(j + 1) + " is the constant-1 function");
    }
    if (std::find(kept.begin(), kept.end(), row) == kept.end()) kept.push_back(row);
  }
  ValuationStructure vs;
  vs.backend_ = Backend::kExplicit;
  vs.carrier_ = std::move(carrier);
  vs.rows_ = std::move(kept);
  return vs;
}

ValuationStructure ValuationStructure::classical(Signature sig) {
  for (const auto& c : sig.primitive_connectives()) {
    if (!is_grammar_symbol(c.name)) {
      throw Error(ErrorCode::kInvalidSignature,
                  "classical semantics has no truth table for '" + c.name + "'");
    }
  }
  if (sig.atoms().empty()) {
    throw Error(ErrorCode::kInvalidSignature, "classical semantics needs at least one atom");
  }
  ValuationStructure vs;
  vs.backend_ = Backend::kClassical;
  vs.sig_ = std::move(sig);
  return vs;
}

const FormulaSet& ValuationStructure::carrier() const {
  if (backend_ != Backend::kExplicit) {
    throw Error(ErrorCode::kPrecondition, "the classical carrier is the whole language");
  }
  return carrier_;
}

bool ValuationStructure::in_carrier(const Formula& f) const {
  if (backend_ == Backend::kExplicit) return carrier_.contains(f);
  try {
    check_formula(f, *sig_);
  } catch (const Error&) {
    return false;
  }
  return true;
}

void ValuationStructure::require_carrier(const Formula& f) const {
  if (!in_carrier(f)) {
    throw Error(ErrorCode::kOutsideCarrier,
                "formula '" + f.text() + "' is outside the valuation carrier");
  }
}

void ValuationStructure::require_carrier(const FormulaSet& a) const {
  for (const auto& f : a) require_carrier(f);
}

bool ValuationStructure::value(std::size_t row, const Formula& f) const {
  require_carrier(f);
  if (backend_ != Backend::kExplicit) {
    throw Error(ErrorCode::kPrecondition, "row access needs an explicit structure");
  }
  return rows_.at(row)[carrier_.index_of(f)];
}

bool evaluate_classical(const Formula& f, const std::vector<std::string>& scope,
                        std::uint64_t assignment) {
  if (f.is_atom()) {
    auto it = std::lower_bound(scope.begin(), scope.end(), f.symbol());
    if (it == scope.end() || *it != f.symbol()) {
      throw Error(ErrorCode::kOutsideCarrier,
                  "'" + f.symbol() + "' has no value in this assignment");
    }
    return (assignment >> (it - scope.begin())) & 1u;
  }
  const std::string& c = f.symbol();
  if (c == "~") return !evaluate_classical(f.child(0), scope, assignment);
  if (f.arity() == 2) {
    const bool l = evaluate_classical(f.child(0), scope, assignment);
    const bool r = evaluate_classical(f.child(1), scope, assignment);
    if (c == "->") return !l || r;
    if (c == "&") return l && r;
    if (c == "|") return l || r;
    if (c == "<->") return l == r;
  }
  throw Error(ErrorCode::kOutsideCarrier, "no truth table for '" + c + "'");
}

namespace {

std::vector<std::string> scope_of(const FormulaSet& a, const Formula* extra) {
  std::set<std::string> atoms;
  for (const auto& f : a) {
    auto s = atoms_of(f);
    atoms.insert(s.begin(), s.end());
  }
  if (extra) {
    auto s = atoms_of(*extra);
    atoms.insert(s.begin(), s.end());
  }
  if (atoms.size() > kMaxClassicalAtoms) {
    throw Error(ErrorCode::kSizeGuard, "truth table over " + std::to_string(atoms.size()) +
                                           " atoms exceeds the limit of " +
                                           std::to_string(kMaxClassicalAtoms));
  }
  return {atoms.begin(), atoms.end()};
}

bool satisfies_all(const FormulaSet& a, const std::vector<std::string>& scope,
                   std::uint64_t assignment) {
  return std::all_of(a.begin(), a.end(), [&](const Formula& f) {
    return evaluate_classical(f, scope, assignment);
  });
}

}  // namespace

ModelSet ValuationStructure::models_of(const FormulaSet& a) const {
  require_carrier(a);
  if (backend_ == Backend::kClassical) return models_of(a, scope_of(a, nullptr));
  ModelSet out;
  std::vector<std::size_t> idx;
  idx.reserve(a.size());
  for (const auto& f : a) idx.push_back(carrier_.index_of(f));
  for (std::size_t j = 0; j < rows_.size(); ++j) {
    if (std::all_of(idx.begin(), idx.end(), [&](std::size_t i) { return rows_[j][i]; })) {
      out.members.push_back(j);
    }
  }
  return out;
}

ModelSet ValuationStructure::models_of(const FormulaSet& a,
                                       const std::vector<std::string>& scope) const {
  if (backend_ != Backend::kClassical) {
    throw Error(ErrorCode::kPrecondition, "atom scopes apply to the classical backend only");
  }
  require_carrier(a);
  if (scope.size() > kMaxClassicalAtoms) {
    throw Error(ErrorCode::kSizeGuard, "atom scope too large for truth tables");
  }
  std::vector<std::string> sorted = scope;
  std::sort(sorted.begin(), sorted.end());
  ModelSet out;
  out.scope = sorted;
  const std::uint64_t rows = std::uint64_t{1} << sorted.size();
  for (std::uint64_t m = 0; m < rows; ++m) {
    if (satisfies_all(a, sorted, m)) out.members.push_back(m);
  }
  return out;
}

bool ValuationStructure::satisfiable(const FormulaSet& a) const {
  require_carrier(a);
  if (backend_ == Backend::kExplicit) return !models_of(a).empty();
  const auto scope = scope_of(a, nullptr);
  const std::uint64_t rows = std::uint64_t{1} << scope.size();
  for (std::uint64_t m = 0; m < rows; ++m) {
    if (satisfies_all(a, scope, m)) return true;
  }
  return false;
}

bool ValuationStructure::entails(const FormulaSet& a, const Formula& goal) const {
  require_carrier(a);
  require_carrier(goal);
  if (backend_ == Backend::kExplicit) {
    const std::size_t gi = carrier_.index_of(goal);
    for (auto j : models_of(a).members) {
      if (!rows_[j][gi]) return false;
    }
    return true;
  }
  const auto scope = scope_of(a, &goal);
  const std::uint64_t rows = std::uint64_t{1} << scope.size();
  for (std::uint64_t m = 0; m < rows; ++m) {
    if (satisfies_all(a, scope, m) && !evaluate_classical(goal, scope, m)) return false;
  }
  return true;
}

std::string ValuationStructure::describe() const {
  if (backend_ == Backend::kClassical) return "classical truth tables";
  return "explicit, " + std::to_string(rows_.size()) + " valuations over " +
         std::to_string(carrier_.size()) + " formulas";
}

FormulaSet semantic_consequences(const ValuationStructure& vs, const FormulaSet& a,
                                 const FormulaSet& universe) {
  std::vector<Formula> out;
  for (const auto& f : universe) {
    if (vs.entails(a, f)) out.push_back(f);
  }
  return FormulaSet(std::move(out));
}

std::vector<FormulaSet> maximal_satisfiable_subsets(const ValuationStructure& vs,
                                                    const FormulaSet& a, std::size_t cap) {
  check_subset_cap(a.size(), cap);
  auto masks = maximal_masks(a.size(), [&](Mask m) -> std::optional<bool> {
    return vs.satisfiable(subset_by_mask(a, m));
  });
  std::vector<FormulaSet> out;
  out.reserve(masks.size());
  for (auto m : masks) out.push_back(subset_by_mask(a, m));
  return out;
}

bool para_entails(const ValuationStructure& vs, const FormulaSet& a, const Formula& goal,
                  std::size_t cap) {
  for (const auto& b : maximal_satisfiable_subsets(vs, a, cap)) {
    if (vs.entails(b, goal)) return true;
  }
  return false;
}

FormulaSet para_semantic_consequences(const ValuationStructure& vs, const FormulaSet& a,
                                      const FormulaSet& universe, std::size_t cap) {
  FormulaSet out;
  for (const auto& b : maximal_satisfiable_subsets(vs, a, cap)) {
    out = out.united(semantic_consequences(vs, b, universe));
  }
  return out;
}

ValuationStructure build_adequate_structure(const FormalSystem& sys, const FormulaSet& universe,
                                            std::size_t max_universe) {
  if (!sys.is_finite()) {
    throw Error(ErrorCode::kPrecondition, "the adequate structure needs a finite universe");
  }
  auto th = theories(sys, universe, max_universe);
  if (th.consistent.empty()) {
    throw Error(ErrorCode::kEmptyTheories, "the system has no consistent theory");
  }
  std::vector<std::vector<bool>> rows;
  rows.reserve(th.consistent.size());
  for (const auto& t : th.consistent) {
    std::vector<bool> row(universe.size());
    for (std::size_t i = 0; i < universe.size(); ++i) row[i] = t.contains(universe[i]);
    rows.push_back(std::move(row));
  }
  return ValuationStructure::explicit_structure(universe, std::move(rows));
}

AdequacyReport check_adequacy(const FormalSystem& sys, const ValuationStructure& vs,
                              const FormulaSet& universe, std::size_t subset_cap,
                              std::size_t max_universe) {
  constexpr std::size_t kKeep = 5;
  if (!sys.is_finite()) {
    throw Error(ErrorCode::kPrecondition, "adequacy checks need a finite universe");
  }
  const std::size_t n = universe.size();
  const bool all = n <= max_universe;
  if (n > 63) {
    throw Error(ErrorCode::kSizeGuard, "universe too large for subset enumeration");
  }
  const std::size_t limit = all ? n : subset_cap;
  AdequacyReport report;
  SubsetWalk walk(n);
  while (auto m = walk.next()) {
    if (static_cast<std::size_t>(std::popcount(*m)) > limit) break;
    const FormulaSet a = subset_by_mask(universe, *m);
    const FormulaSet derived = closure(sys, a, universe);
    const FormulaSet entailed = semantic_consequences(vs, a, universe);
    for (const auto& f : universe) {
      ++report.pairs_checked;
      const bool d = derived.contains(f);
      const bool e = entailed.contains(f);
      if (d && !e) {
        report.sound = false;
        if (report.unsound.size() < kKeep) report.unsound.push_back({a, f});
      } else if (e && !d) {
        report.complete = false;
        if (report.incomplete.size() < kKeep) report.incomplete.push_back({a, f});
      }
    }
  }
  return report;
}

namespace {

std::string strip(std::string_view s) {
  auto hash = s.find('#');
  if (hash != std::string_view::npos) s = s.substr(0, hash);
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

[[noreturn]] void file_error(std::size_t line, const std::string& msg) {
  throw Error(ErrorCode::kValuationFile, "line " + std::to_string(line) + ": " + msg, line);
}

}  // namespace

ValuationStructure parse_valuation_structure(std::string_view text, const Signature& sig) {
  std::vector<std::pair<std::size_t, std::string>> lines;
  std::istringstream in{std::string(text)};
  std::string raw;
  for (std::size_t no = 1; std::getline(in, raw); ++no) {
    auto s = strip(raw);
    if (!s.empty()) lines.emplace_back(no, std::move(s));
  }
  if (lines.empty()) file_error(1, "missing 'valuations <m> over <n>' header");

  std::size_t m = 0, n = 0;
  {
    std::istringstream hs(lines[0].second);
    std::string kw1, kw2, extra;
    if (!(hs >> kw1 >> m >> kw2 >> n) || kw1 != "valuations" || kw2 != "over" || (hs >> extra)) {
      file_error(lines[0].first, "expected 'valuations <m> over <n>'");
    }
  }
  if (lines.size() != 1 + n + m) {
    file_error(lines.back().first, "expected " + std::to_string(n) + " carrier lines and " +
                                       std::to_string(m) + " rows, found " +
                                       std::to_string(lines.size() - 1) + " lines");
  }
  std::vector<Formula> order;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& [no, s] = lines[1 + i];
    try {
      order.push_back(parse_formula(s, sig));
    } catch (const Error& e) {
      file_error(no, e.what());
    }
  }
  FormulaSet carrier{std::vector<Formula>(order)};
  if (carrier.size() != n) file_error(lines[1].first, "carrier lists a formula twice");

  std::vector<std::vector<bool>> rows;
  for (std::size_t j = 0; j < m; ++j) {
    const auto& [no, s] = lines[1 + n + j];
    std::istringstream rs(s);
    std::vector<bool> row(n);
    std::string tok;
    std::size_t i = 0;
    while (rs >> tok) {
      if (tok != "0" && tok != "1") file_error(no, "expected bits 0 or 1, found '" + tok + "'");
      if (i >= n) file_error(no, "row has more than " + std::to_string(n) + " bits");
      row[carrier.index_of(order[i])] = tok == "1";
      ++i;
    }
    if (i != n) file_error(no, "row has " + std::to_string(i) + " bits, expected " +
                                   std::to_string(n));
    if (std::all_of(row.begin(), row.end(), [](bool b) { return b; })) {
      throw Error(ErrorCode::kConstantOneValuation,
                  "line " + std::to_string(no) + ": the constant-1 valuation is not allowed", no);
    }
    rows.push_back(std::move(row));
  }
  return ValuationStructure::explicit_structure(std::move(carrier), std::move(rows));
}

ValuationStructure load_valuation_file(const std::string& path, const Signature& sig) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kValuationFile, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_valuation_structure(ss.str(), sig);
}

std::string emit_valuation_structure(const ValuationStructure& vs, const Signature& sig) {
  const auto& carrier = vs.carrier();
  std::ostringstream out;
  out << "valuations " << vs.rows().size() << " over " << carrier.size() << "\n";
  for (const auto& f : carrier) out << render_formula(f, sig) << "\n";
  for (const auto& row : vs.rows()) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? " " : "") << (row[i] ? 1 : 0);
    out << "\n";
  }
  return out.str();
}

}  // namespace parad
