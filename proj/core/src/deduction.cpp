#include "parad/deduction.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

#include "parad/error.hpp"

namespace parad {

const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kEmpty: return "Empty";
    case ViolationKind::kNotAPremise: return "NotAPremise";
    case ViolationKind::kBadSupportForPremise: return "BadSupportForPremise";
    case ViolationKind::kAxiomMismatch: return "AxiomMismatch";
    case ViolationKind::kBadSupportForAxiom: return "BadSupportForAxiom";
    case ViolationKind::kBadRuleInstance: return "BadRuleInstance";
    case ViolationKind::kForwardReference: return "ForwardReference";
    case ViolationKind::kSupportUnionMismatch: return "SupportUnionMismatch";
    case ViolationKind::kInconsistentSupport: return "InconsistentSupport";
    case ViolationKind::kUndecidedSupport: return "UndecidedSupport";
  }
  return "?";
}

const char* to_string(Status s) {
  switch (s) {
    case Status::kYes: return "yes";
    case Status::kNo: return "no";
    case Status::kUnknown: return "unknown";
  }
  return "?";
}

FormulaSet Deduction::used_premises() const {
  std::vector<Formula> out;
  for (const auto& s : steps) {
    if (std::holds_alternative<PremiseJust>(s.justification)) out.push_back(s.formula);
  }
  return FormulaSet(std::move(out));
}

std::optional<Violation> check_step(const FormalSystem& sys, const FormulaSet& premises,
                                    const std::vector<Formula>& earlier, std::size_t index,
                                    const Formula& formula, const Justification& just) {
  const bool outside = sys.is_finite() && !sys.universe().contains(formula);
  if (std::holds_alternative<PremiseJust>(just)) {
    if (!premises.contains(formula)) {
      return Violation{index, ViolationKind::kNotAPremise, formula.text() + " is not a premise"};
    }
    return std::nullopt;
  }
  if (const auto* ax = std::get_if<AxiomJust>(&just)) {
    if (ax->axiom >= sys.axioms().size()) {
      return Violation{index, ViolationKind::kAxiomMismatch, "no such axiom"};
    }
    auto inst = substitute(sys.axioms()[ax->axiom].pattern(), ax->binding).as_formula();
    if (!inst || *inst != formula || outside) {
      return Violation{index, ViolationKind::kAxiomMismatch,
                       formula.text() + " is not an instance of axiom " +
                           std::to_string(ax->axiom + 1)};
    }
    return std::nullopt;
  }
  const auto& rj = std::get<RuleJust>(just);
  for (auto r : rj.refs) {
    if (r >= index) {
      return Violation{index, ViolationKind::kForwardReference,
                       "reference to step " + std::to_string(r + 1)};
    }
  }
  auto ri = sys.rule_index(rj.rule);
  if (!ri) return Violation{index, ViolationKind::kBadRuleInstance, "no rule " + rj.rule};
  const auto& rule = sys.rules()[*ri];
  if (rj.refs.size() != rule.degree()) {
    return Violation{index, ViolationKind::kBadRuleInstance,
                     "rule " + rule.name + " needs " + std::to_string(rule.degree()) +
                         " premises"};
  }
  bool ok = !outside;
  for (std::size_t j = 0; ok && j < rule.degree(); ++j) {
    auto p = substitute(rule.premises[j], rj.binding).as_formula();
    ok = p && *p == earlier[rj.refs[j]];
  }
  if (ok) {
    auto c = substitute(rule.conclusion, rj.binding).as_formula();
    ok = c && *c == formula;
  }
  if (!ok) {
    return Violation{index, ViolationKind::kBadRuleInstance,
                     formula.text() + " does not follow by " + rule.name};
  }
  return std::nullopt;
}

std::vector<Violation> verify_deduction(const FormalSystem& sys, const FormulaSet& premises,
                                        const Deduction& d) {
  std::vector<Violation> out;
  if (d.steps.empty()) {
    out.push_back({0, ViolationKind::kEmpty, "deduction has no steps"});
    return out;
  }
  std::vector<Formula> earlier;
  for (std::size_t i = 0; i < d.steps.size(); ++i) {
    const auto& s = d.steps[i];
    if (auto v = check_step(sys, premises, earlier, i, s.formula, s.justification)) {
      out.push_back(std::move(*v));
    }
    earlier.push_back(s.formula);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Fixpoint engine

namespace {

struct Record {
  enum class Kind { kPremise, kAxiom, kRule } kind;
  std::size_t index = 0;  // axiom or rule index
  Binding binding;
  std::vector<Formula> premises;
};

struct Derivation {
  FormulaSet derived;
  std::unordered_map<Formula, Record> how;
  bool exhausted = false;
};

// Saturates premises and axioms under the rules, admitting only conclusions
// accepted by `admit`. Stops early once `node_limit` formulas are known or
// `goal` has been derived.
Derivation saturate(const FormalSystem& sys, const FormulaSet& premises,
                    const std::vector<std::pair<Formula, Record>>& axioms,
                    const std::function<bool(const Formula&)>& admit, std::size_t node_limit,
                    const Formula* goal) {
  Derivation d;
  for (const auto& p : premises) {
    if (d.derived.insert(p)) d.how.emplace(p, Record{Record::Kind::kPremise, 0, {}, {}});
  }
  for (const auto& [f, rec] : axioms) {
    if (d.derived.insert(f)) d.how.emplace(f, rec);
  }
  FormulaSet fresh = d.derived;
  while (!fresh.empty()) {
    if (goal && d.derived.contains(*goal)) return d;
    std::vector<Formula> added;
    for (auto& inst : rule_instances(sys, d.derived, admit, &fresh)) {
      if (d.derived.contains(inst.conclusion) || d.how.count(inst.conclusion)) continue;
      d.how.emplace(inst.conclusion, Record{Record::Kind::kRule, inst.rule, std::move(inst.binding),
                                            std::move(inst.premises)});
      added.push_back(inst.conclusion);
      if (d.derived.size() + added.size() >= node_limit) {
        d.exhausted = true;
        break;
      }
    }
    fresh = FormulaSet(std::move(added));
    for (const auto& f : fresh) d.derived.insert(f);
    if (d.exhausted) break;
  }
  return d;
}

std::vector<std::pair<Formula, Record>> finite_axioms(const FormalSystem& sys,
                                                      const FormulaSet& universe) {
  std::vector<std::pair<Formula, Record>> out;
  for (const auto& f : universe) {
    if (auto w = axiom_witness(sys, f)) {
      out.push_back({f, Record{Record::Kind::kAxiom, w->first, std::move(w->second), {}}});
    }
  }
  return out;
}

Deduction extract(const FormalSystem& sys, const Derivation& d, const FormulaSet& premises,
                  const Formula& goal) {
  Deduction out{premises, {}};
  std::unordered_map<Formula, std::size_t> at;
  // Iterative post-order over recorded justifications.
  std::vector<std::pair<Formula, bool>> stack{{goal, false}};
  while (!stack.empty()) {
    auto [f, expanded] = stack.back();
    stack.pop_back();
    if (at.count(f)) continue;
    const Record& rec = d.how.at(f);
    if (!expanded && rec.kind == Record::Kind::kRule) {
      stack.push_back({f, true});
      for (auto it = rec.premises.rbegin(); it != rec.premises.rend(); ++it) {
        if (!at.count(*it)) stack.push_back({*it, false});
      }
      continue;
    }
    Justification j = PremiseJust{};
    if (rec.kind == Record::Kind::kAxiom) {
      j = AxiomJust{rec.index, rec.binding};
    } else if (rec.kind == Record::Kind::kRule) {
      std::vector<std::size_t> refs;
      for (const auto& p : rec.premises) refs.push_back(at.at(p));
      j = RuleJust{sys.rules()[rec.index].name, rec.binding, std::move(refs)};
    }
    at.emplace(f, out.steps.size());
    out.steps.push_back({f, std::move(j)});
  }
  return out;
}

void require_subset(const FormulaSet& premises, const FormulaSet& universe) {
  for (const auto& p : premises) {
    if (!universe.contains(p)) {
      throw Error(ErrorCode::kPrecondition, "premise " + p.text() + " lies outside the universe");
    }
  }
}

SearchVerdict bounded_search(const FormalSystem& sys, const FormulaSet& premises,
                             const Formula& goal, const Budget& budget, bool with_witness) {
  std::set<Formula, FormulaLess> pool_set;
  std::size_t base = goal.depth();
  collect_subformulas(goal, pool_set);
  for (const auto& p : premises) {
    collect_subformulas(p, pool_set);
    base = std::max(base, p.depth());
  }
  const std::vector<Formula> pool(pool_set.begin(), pool_set.end());
  std::size_t spent = 0;
  for (std::size_t extra = 0; extra <= sys.universe_spec().depth; ++extra) {
    const std::size_t limit = base + extra;
    auto admit = [limit](const Formula& f) { return f.depth() <= limit; };
    std::vector<std::pair<Formula, Record>> axioms;
    bool out_of_budget = false;
    for (std::size_t ai = 0; ai < sys.axioms().size() && !out_of_budget; ++ai) {
      const Pattern& pat = sys.axioms()[ai].pattern();
      const std::set<std::string> var_set = pat.vars();
      const std::vector<std::string> vars(var_set.begin(), var_set.end());
      std::vector<std::size_t> idx(vars.size(), 0);
      if (!vars.empty() && pool.empty()) continue;
      while (true) {
        Binding b;
        for (std::size_t k = 0; k < vars.size(); ++k) b.emplace(vars[k], pool[idx[k]]);
        Formula f = instantiate(pat, b);
        if (admit(f)) axioms.push_back({f, Record{Record::Kind::kAxiom, ai, std::move(b), {}}});
        if (++spent + axioms.size() > budget.max_nodes) {
          out_of_budget = true;
          break;
        }
        std::size_t k = 0;
        while (k < vars.size() && ++idx[k] == pool.size()) idx[k++] = 0;
        if (k == vars.size()) break;
      }
    }
    if (out_of_budget) break;
    const std::size_t remaining = budget.max_nodes - std::min(budget.max_nodes, spent);
    Derivation d = saturate(sys, premises, axioms, admit, remaining, &goal);
    spent += d.derived.size();
    if (d.derived.contains(goal)) {
      SearchVerdict v{Status::kYes, std::nullopt, "bounded forward search"};
      if (with_witness) v.witness = extract(sys, d, premises, goal);
      return v;
    }
    if (d.exhausted || spent >= budget.max_nodes) break;
  }
  return {Status::kUnknown, std::nullopt, "bounded forward search (budget exhausted)"};
}

}  // namespace

FormulaSet closure(const FormalSystem& sys, const FormulaSet& premises,
                   const FormulaSet& universe) {
  if (sys.is_finite()) {
    require_subset(premises, universe);
    auto admit = [&universe](const Formula& f) { return universe.contains(f); };
    return saturate(sys, premises, finite_axioms(sys, universe), admit, SIZE_MAX, nullptr).derived;
  }
  if (!sys.delegate()) {
    throw Error(ErrorCode::kNotComputable,
                "closure of a schematic system needs a decision procedure");
  }
  std::vector<Formula> out;
  for (const auto& f : universe) {
    if (premises.contains(f)) {
      out.push_back(f);
      continue;
    }
    if (sys.delegate()->deducible(sys, premises, f, false).status == Status::kYes) {
      out.push_back(f);
    }
  }
  return FormulaSet(std::move(out));
}

FormulaSet closure(const FormalSystem& sys, const FormulaSet& premises) {
  return closure(sys, premises, sys.universe());
}

SearchVerdict deducible(const FormalSystem& sys, const FormulaSet& premises, const Formula& goal,
                        const Budget& budget, bool with_witness) {
  if (budget.max_nodes == 0) throw Error(ErrorCode::kInvalidArgument, "budget must be positive");
  if (premises.contains(goal)) {
    SearchVerdict v{Status::kYes, std::nullopt, "premise"};
    if (with_witness) v.witness = Deduction{premises, {{goal, PremiseJust{}}}};
    return v;
  }
  if (sys.is_finite()) {
    const FormulaSet& u = sys.universe();
    require_subset(premises, u);
    if (!u.contains(goal)) return {Status::kNo, std::nullopt, "goal outside the universe"};
    auto admit = [&u](const Formula& f) { return u.contains(f); };
    Derivation d = saturate(sys, premises, finite_axioms(sys, u), admit, SIZE_MAX, &goal);
    if (!d.derived.contains(goal)) return {Status::kNo, std::nullopt, "fixpoint"};
    SearchVerdict v{Status::kYes, std::nullopt, "fixpoint"};
    if (with_witness) v.witness = extract(sys, d, premises, goal);
    return v;
  }
  if (sys.delegate()) return sys.delegate()->deducible(sys, premises, goal, with_witness);
  return bounded_search(sys, premises, goal, budget, with_witness);
}

Theories theories(const FormalSystem& sys, const FormulaSet& universe, std::size_t max_universe) {
  if (universe.size() > max_universe || universe.size() >= 63) {
    std::ostringstream msg;
    msg << "theory enumeration over " << universe.size() << " formulas needs 2^"
        << universe.size() << " subsets, above the guard of 2^" << max_universe;
    throw Error(ErrorCode::kSizeGuard, msg.str());
  }
  Theories out;
  const unsigned long long n = 1ULL << universe.size();
  for (unsigned long long mask = 0; mask < n; ++mask) {
    FormulaSet a = subset_by_mask(universe, mask);
    if (closure(sys, a, universe) != a) continue;
    if (a != universe) out.consistent.push_back(a);
    out.all.push_back(std::move(a));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Serialization

std::string serialize_justification(const Justification& j) {
  if (std::holds_alternative<PremiseJust>(j)) return "[premise]";
  if (const auto* ax = std::get_if<AxiomJust>(&j)) {
    return "[axiom " + std::to_string(ax->axiom + 1) + "]";
  }
  const auto& rj = std::get<RuleJust>(j);
  std::string out = "[rule " + rj.rule + " ";
  for (std::size_t i = 0; i < rj.refs.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(rj.refs[i] + 1);
  }
  return out + "]";
}

std::string serialize_deduction(const Deduction& d, const Signature& sig) {
  std::ostringstream out;
  for (std::size_t i = 0; i < d.steps.size(); ++i) {
    out << i + 1 << ". " << render_formula(d.steps[i].formula, sig) << " "
        << serialize_justification(d.steps[i].justification) << "\n";
  }
  return out.str();
}

namespace {

std::string trim_copy(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

[[noreturn]] void witness_error(std::size_t line, const std::string& msg) {
  throw Error(ErrorCode::kWitnessFormat, "witness line " + std::to_string(line) + ": " + msg,
              line);
}

std::size_t parse_index(std::string_view s, std::size_t line) {
  std::string t = trim_copy(s);
  if (t.empty() || !std::all_of(t.begin(), t.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    witness_error(line, "expected a positive index, got '" + t + "'");
  }
  std::size_t v = std::stoul(t);
  if (v == 0) witness_error(line, "indices are 1-based");
  return v;
}

}  // namespace

ParsedJustification parse_justification(std::string_view text, std::size_t line) {
  std::istringstream in{std::string(text)};
  std::string word;
  in >> word;
  ParsedJustification pj{ParsedJustification::Kind::kPremise, 0, {}, {}};
  if (word == "premise") {
    std::string rest;
    if (in >> rest) witness_error(line, "trailing text after 'premise'");
    return pj;
  }
  if (word == "axiom") {
    std::string idx, rest;
    if (!(in >> idx) || (in >> rest)) witness_error(line, "expected 'axiom <i>'");
    pj.kind = ParsedJustification::Kind::kAxiom;
    pj.axiom = parse_index(idx, line) - 1;
    return pj;
  }
  if (word == "rule") {
    std::string name, refs, rest;
    if (!(in >> name)) witness_error(line, "expected 'rule <name> <j,k,...>'");
    std::getline(in, refs);
    pj.kind = ParsedJustification::Kind::kRule;
    pj.rule = name;
    std::string compact;
    for (char c : refs) {
      if (c != ' ' && c != '\t') compact += c;
    }
    std::size_t start = 0;
    while (start <= compact.size() && !compact.empty()) {
      auto comma = compact.find(',', start);
      if (comma == std::string::npos) comma = compact.size();
      pj.refs.push_back(parse_index(compact.substr(start, comma - start), line) - 1);
      start = comma + 1;
    }
    return pj;
  }
  witness_error(line, "unknown justification '" + word + "'");
}

Justification resolve_justification(const ParsedJustification& pj, const FormalSystem& sys,
                                    const Formula& formula, const std::vector<Formula>& earlier) {
  switch (pj.kind) {
    case ParsedJustification::Kind::kPremise:
      return PremiseJust{};
    case ParsedJustification::Kind::kAxiom: {
      Binding b;
      if (pj.axiom < sys.axioms().size()) {
        if (auto m = match_pattern(sys.axioms()[pj.axiom].pattern(), formula)) b = *m;
      }
      return AxiomJust{pj.axiom, std::move(b)};
    }
    case ParsedJustification::Kind::kRule: {
      Binding b;
      auto ri = sys.rule_index(pj.rule);
      bool refs_ok = std::all_of(pj.refs.begin(), pj.refs.end(),
                                 [&](std::size_t r) { return r < earlier.size(); });
      if (ri && refs_ok) {
        std::vector<Formula> prem;
        for (auto r : pj.refs) prem.push_back(earlier[r]);
        is_rule_instance(sys.rules()[*ri], prem, formula, b);
      }
      return RuleJust{pj.rule, std::move(b), pj.refs};
    }
  }
  return PremiseJust{};
}

Deduction parse_deduction(std::string_view text, const FormalSystem& sys,
                          const std::optional<FormulaSet>& premises) {
  Deduction d;
  std::vector<Formula> earlier;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = trim_copy(raw);
    if (line.empty() || line[0] == '#') continue;
    auto dot = line.find('.');
    if (dot == std::string::npos) witness_error(line_no, "expected '<index>.'");
    if (parse_index(line.substr(0, dot), line_no) != d.steps.size() + 1) {
      witness_error(line_no, "steps must be numbered consecutively from 1");
    }
    auto open = line.rfind('[');
    auto close = line.rfind(']');
    if (open == std::string::npos || close == std::string::npos || close < open ||
        open < dot) {
      witness_error(line_no, "missing [justification]");
    }
    Formula f = [&] {
      try {
        return parse_formula(line.substr(dot + 1, open - dot - 1), sys.signature());
      } catch (const Error& e) {
        witness_error(line_no, e.what());
      }
    }();
    auto pj = parse_justification(line.substr(open + 1, close - open - 1), line_no);
    d.steps.push_back({f, resolve_justification(pj, sys, f, earlier)});
    earlier.push_back(f);
  }
  if (d.steps.empty()) witness_error(line_no, "no steps");
  d.premises = premises ? *premises : d.used_premises();
  return d;
}

}  // namespace parad
