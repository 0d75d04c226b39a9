#include "parad/paradeduction.hpp"

#include <algorithm>
#include <sstream>

#include "parad/error.hpp"

namespace parad {

std::vector<Violation> verify_paradeduction(const FormalSystem& sys,
                                            const ConsistencyOracle& oracle,
                                            const FormulaSet& premises, const Paradeduction& p) {
  std::vector<Violation> out;
  if (p.steps.empty()) {
    out.push_back({0, ViolationKind::kEmpty, "paradeduction has no steps"});
    return out;
  }
  std::vector<Formula> earlier;
  for (std::size_t i = 0; i < p.steps.size(); ++i) {
    const auto& s = p.steps[i];
    auto v = check_step(sys, premises, earlier, i, s.formula, s.justification);
    if (v && v->kind == ViolationKind::kForwardReference) v->kind = ViolationKind::kBadRuleInstance;
    if (!v) {
      if (std::holds_alternative<PremiseJust>(s.justification)) {
        if (s.support != FormulaSet{s.formula}) {
          v = Violation{i, ViolationKind::kBadSupportForPremise,
                        "a premise step must have its own singleton as support"};
        }
      } else if (std::holds_alternative<AxiomJust>(s.justification)) {
        if (!s.support.empty()) {
          v = Violation{i, ViolationKind::kBadSupportForAxiom,
                        "an axiom step must have the empty support"};
        }
      } else {
        FormulaSet u;
        for (auto r : std::get<RuleJust>(s.justification).refs) u = u.united(p.steps[r].support);
        if (u != s.support) {
          v = Violation{i, ViolationKind::kSupportUnionMismatch,
                        "support differs from the union of the cited supports"};
        }
      }
    }
    if (!v) {
      const Verdict c = oracle.check(s.support);
      if (c == Verdict::kInconsistent) {
        v = Violation{i, ViolationKind::kInconsistentSupport,
                      "support is inconsistent under " + oracle.provenance()};
      } else if (c == Verdict::kUnknown) {
        v = Violation{i, ViolationKind::kUndecidedSupport,
                      "support consistency is unknown under " + oracle.provenance()};
      }
    }
    if (v) out.push_back(std::move(*v));
    earlier.push_back(s.formula);
  }
  return out;
}

std::vector<FormulaSet> project_supports(const Paradeduction& p) {
  std::vector<FormulaSet> out;
  out.reserve(p.steps.size());
  for (const auto& s : p.steps) out.push_back(s.support);
  return out;
}

std::vector<Formula> project_formulas(const Paradeduction& p) {
  std::vector<Formula> out;
  out.reserve(p.steps.size());
  for (const auto& s : p.steps) out.push_back(s.formula);
  return out;
}

std::vector<SupportFailure> check_supports(const FormalSystem& sys, const ConsistencyOracle& oracle,
                                        const FormulaSet& premises, const Paradeduction& p,
                                        const Budget& budget) {
  std::vector<SupportFailure> out;
  for (std::size_t i = 0; i < p.steps.size(); ++i) {
    const auto& s = p.steps[i];
    if (oracle.check(s.support) != Verdict::kConsistent) {
      out.push_back({i, "support is not consistent"});
    }
    if (!s.support.is_subset_of(premises)) out.push_back({i, "support is not inside the premises"});
    if (deducible(sys, s.support, s.formula, budget, false).status != Status::kYes) {
      out.push_back({i, "support does not derive the formula"});
    }
  }
  return out;
}

Paradeduction deduction_to_paradeduction(const FormalSystem& sys,
                                         const ConsistencyOracle& oracle, const FormulaSet& sub,
                                         const Deduction& d,
                                         const std::optional<FormulaSet>& premises) {
  if (oracle.check(sub) != Verdict::kConsistent) {
    throw Error(ErrorCode::kPrecondition, "the premise subset is not consistent");
  }
  if (auto v = verify_deduction(sys, sub, d); !v.empty()) {
    throw Error(ErrorCode::kPrecondition,
                "the deduction does not verify at step " + std::to_string(v.front().step + 1) +
                    ": " + v.front().detail);
  }
  Paradeduction p{premises ? *premises : sub, {}, oracle.provenance()};
  if (!sub.is_subset_of(p.premises)) {
    throw Error(ErrorCode::kPrecondition, "the premise subset is not inside the premises");
  }
  for (const auto& s : d.steps) {
    FormulaSet support;
    if (std::holds_alternative<PremiseJust>(s.justification)) {
      support = FormulaSet{s.formula};
    } else if (const auto* rj = std::get_if<RuleJust>(&s.justification)) {
      for (auto r : rj->refs) support = support.united(p.steps[r].support);
    }
    p.steps.push_back({std::move(support), s.formula, s.justification});
  }
  return p;
}

ParaVerdict paradeducible(const FormalSystem& sys, const ConsistencyOracle& oracle,
                          const FormulaSet& premises, const Formula& goal, const Budget& budget,
                          std::size_t cap, bool with_witness) {
  check_subset_cap(premises.size(), cap);
  ParaVerdict out;
  auto attempt = [&](const FormulaSet& sub) {
    ++out.subsets_scanned;
    SearchVerdict v = deducible(sys, sub, goal, budget, with_witness);
    if (v.status == Status::kUnknown) ++out.unknown_subsets;
    if (v.status != Status::kYes) return false;
    out.status = Status::kYes;
    out.provenance = oracle.provenance() + "; deduction by " + v.provenance;
    if (with_witness) {
      const FormulaSet used = v.witness->used_premises();
      out.witness = deduction_to_paradeduction(sys, oracle, used, *v.witness, premises);
    }
    return true;
  };

  if (oracle.decisive()) {
    for (const auto& m : maximal_consistent_subsets(oracle, premises, cap)) {
      if (attempt(m)) return out;
    }
  } else {
    ConsistentSubsets stream(oracle, premises, cap);
    while (auto s = stream.next()) {
      if (attempt(*s)) {
        out.unknown_subsets += stream.unknown_count();
        return out;
      }
    }
    out.unknown_subsets += stream.unknown_count();
  }
  out.status = out.unknown_subsets ? Status::kUnknown : Status::kNo;
  out.provenance = oracle.provenance();
  return out;
}

FormulaSet cn_para(const FormalSystem& sys, const ConsistencyOracle& oracle,
                   const FormulaSet& premises, const FormulaSet& universe, std::size_t cap) {
  FormulaSet out;
  for (const auto& m : maximal_consistent_subsets(oracle, premises, cap)) {
    out = out.united(closure(sys, m, universe));
  }
  return out;
}

Entailment syntactic_entailment(const FormalSystem& sys, const Budget& budget) {
  return [&sys, budget](const FormulaSet& a, const Formula& goal) {
    return deducible(sys, a, goal, budget, false).status;
  };
}

Entailment semantic_entailment(const ValuationStructure& vs) {
  return [&vs](const FormulaSet& a, const Formula& goal) {
    return vs.entails(a, goal) ? Status::kYes : Status::kNo;
  };
}

namespace {

bool entailed(const Entailment& entails, const FormulaSet& a, const Formula& goal) {
  const Status s = entails(a, goal);
  if (s == Status::kUnknown) {
    throw Error(ErrorCode::kUndecided, "entailment of " + goal.text() + " is unknown");
  }
  return s == Status::kYes;
}

}  // namespace

bool weak_consequence(const ConsistencyOracle& oracle, const Entailment& entails,
                      const FormulaSet& premises, const Formula& goal, std::size_t cap) {
  const auto mcs = maximal_consistent_subsets(oracle, premises, cap);
  return std::any_of(mcs.begin(), mcs.end(),
                     [&](const FormulaSet& m) { return entailed(entails, m, goal); });
}

bool strong_consequence(const ConsistencyOracle& oracle, const Entailment& entails,
                        const FormulaSet& premises, const Formula& goal, std::size_t cap) {
  const auto mcs = maximal_consistent_subsets(oracle, premises, cap);
  return std::all_of(mcs.begin(), mcs.end(),
                     [&](const FormulaSet& m) { return entailed(entails, m, goal); });
}

std::string serialize_paradeduction(const Paradeduction& p, const Signature& sig) {
  std::ostringstream out;
  for (std::size_t i = 0; i < p.steps.size(); ++i) {
    const auto& s = p.steps[i];
    out << i + 1 << ". [" << render_set(s.support, sig) << "] " << render_formula(s.formula, sig)
        << " " << serialize_justification(s.justification) << "\n";
  }
  return out.str();
}

namespace {

std::string trimmed(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

[[noreturn]] void fail(std::size_t line, const std::string& msg) {
  throw Error(ErrorCode::kWitnessFormat, "witness line " + std::to_string(line) + ": " + msg,
              line);
}

}  // namespace

Paradeduction parse_paradeduction(std::string_view text, const FormalSystem& sys,
                                  const FormulaSet& premises) {
  Paradeduction p{premises, {}, {}};
  std::vector<Formula> earlier;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t no = 0;
  while (std::getline(in, raw)) {
    ++no;
    const std::string line = trimmed(raw);
    if (line.empty() || line[0] == '#') continue;
    const auto dot = line.find('.');
    const auto s_open = line.find('[');
    const auto s_close = line.find(']');
    const auto j_open = line.rfind('[');
    const auto j_close = line.rfind(']');
    if (dot == std::string::npos || s_open == std::string::npos || s_close == std::string::npos ||
        j_open == s_open || s_open < dot || j_close < j_open || s_close > j_open) {
      fail(no, "expected '<i>. [<support>] <formula> [<justification>]'");
    }
    const std::string index = trimmed(line.substr(0, dot));
    if (index != std::to_string(p.steps.size() + 1)) {
      fail(no, "steps must be numbered consecutively from 1");
    }
    FormulaSet support;
    Formula f = Formula::atom("_");
    try {
      support = parse_formula_list(line.substr(s_open + 1, s_close - s_open - 1), sys.signature());
      f = parse_formula(line.substr(s_close + 1, j_open - s_close - 1), sys.signature());
    } catch (const Error& e) {
      fail(no, e.what());
    }
    auto pj = parse_justification(line.substr(j_open + 1, j_close - j_open - 1), no);
    p.steps.push_back({std::move(support), f, resolve_justification(pj, sys, f, earlier)});
    earlier.push_back(f);
  }
  if (p.steps.empty()) fail(no, "no steps");
  return p;
}

std::optional<Paradeduction> random_paradeduction(const FormalSystem& sys,
                                                  const ConsistencyOracle& oracle,
                                                  const FormulaSet& premises,
                                                  std::mt19937_64& rng) {
  std::vector<Formula> pick;
  std::bernoulli_distribution coin(0.5);
  for (const auto& f : premises) {
    if (coin(rng)) pick.push_back(f);
  }
  FormulaSet sub(std::move(pick));
  while (oracle.check(sub) != Verdict::kConsistent) {
    if (sub.empty()) throw Error(ErrorCode::kEmptySetInconsistent, "the empty set is not consistent");
    std::uniform_int_distribution<std::size_t> at(0, sub.size() - 1);
    sub.erase(sub[at(rng)]);
  }
  const FormulaSet cn = closure(sys, sub);
  if (cn.empty()) return std::nullopt;
  std::uniform_int_distribution<std::size_t> at(0, cn.size() - 1);
  const Formula goal = cn[at(rng)];
  auto v = deducible(sys, sub, goal);
  if (v.status != Status::kYes) return std::nullopt;
  return deduction_to_paradeduction(sys, oracle, v.witness->used_premises(), *v.witness,
                                    premises);
}

}  // namespace parad
