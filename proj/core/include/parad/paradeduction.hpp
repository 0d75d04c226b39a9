#ifndef PARAD_PARADEDUCTION_HPP
#define PARAD_PARADEDUCTION_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "parad/consistency.hpp"
#include "parad/deduction.hpp"
#include "parad/formula_set.hpp"
#include "parad/system.hpp"
#include "parad/valuation.hpp"

namespace parad {

struct ParaStep {
  FormulaSet support;
  Formula formula;
  Justification justification;
};

struct Paradeduction {
  FormulaSet premises;
  std::vector<ParaStep> steps;
  // Provenance of the oracle the supports were checked against.
  std::string oracle;

  const Formula& conclusion() const { return steps.back().formula; }
};

// Each step must satisfy its justification, the support equation for that
// justification, and have a Consistent support. Unknown supports are reported
// as kUndecidedSupport. Empty result means valid.
std::vector<Violation> verify_paradeduction(const FormalSystem& sys,
                                            const ConsistencyOracle& oracle,
                                            const FormulaSet& premises, const Paradeduction& p);

std::vector<FormulaSet> project_supports(const Paradeduction& p);
std::vector<Formula> project_formulas(const Paradeduction& p);

struct SupportFailure {
  std::size_t step;
  std::string reason;
};

// For a verified paradeduction, checks per step that the support is
// Consistent, lies inside the premises and derives the step's formula.
std::vector<SupportFailure> check_supports(const FormalSystem& sys, const ConsistencyOracle& oracle,
                                        const FormulaSet& premises, const Paradeduction& p,
                                        const Budget& budget = {});

// Lifts a deduction from a consistent premise set: premise steps get their
// singleton, axiom steps the empty set, rule steps the union of the cited
// supports. Throws kPrecondition when `sub` is not Consistent or `d` does not
// verify from it. `premises` (a superset of `sub`) becomes the result's
// premise set; it defaults to `sub`.
Paradeduction deduction_to_paradeduction(const FormalSystem& sys,
                                         const ConsistencyOracle& oracle, const FormulaSet& sub,
                                         const Deduction& d,
                                         const std::optional<FormulaSet>& premises = std::nullopt);

struct ParaVerdict {
  Status status = Status::kUnknown;
  std::optional<Paradeduction> witness;
  std::string provenance;
  std::size_t subsets_scanned = 0;
  // Subsets whose consistency verdict or deduction search was Unknown.
  std::size_t unknown_subsets = 0;
};

// A |-P a by subset scan. Decisive oracles: maximal consistent subsets in
// canonical order. Otherwise every consistent subset, ascending. The witness
// support is the premise set actually used by the first successful deduction.
ParaVerdict paradeducible(const FormalSystem& sys, const ConsistencyOracle& oracle,
                          const FormulaSet& premises, const Formula& goal,
                          const Budget& budget = {}, std::size_t cap = kDefaultSubsetCap,
                          bool with_witness = true);

// Union of closure(A') over maximal consistent A' of A, within `universe`.
// Non-decisive oracles throw kUndecided on an Unknown subset.
FormulaSet cn_para(const FormalSystem& sys, const ConsistencyOracle& oracle,
                   const FormulaSet& premises, const FormulaSet& universe,
                   std::size_t cap = kDefaultSubsetCap);

// One entailment relation for the Rescher-Manor consequences.
using Entailment = std::function<Status(const FormulaSet&, const Formula&)>;

Entailment syntactic_entailment(const FormalSystem& sys, const Budget& budget = {});
Entailment semantic_entailment(const ValuationStructure& vs);

// Some / every maximal consistent subset entails the goal. Unknown verdicts
// throw kUndecided.
bool weak_consequence(const ConsistencyOracle& oracle, const Entailment& entails,
                      const FormulaSet& premises, const Formula& goal,
                      std::size_t cap = kDefaultSubsetCap);
bool strong_consequence(const ConsistencyOracle& oracle, const Entailment& entails,
                        const FormulaSet& premises, const Formula& goal,
                        std::size_t cap = kDefaultSubsetCap);

// Line format: "<i>. [<support>] <formula> [premise | axiom <k> | rule <name> <j,k>]".
std::string serialize_paradeduction(const Paradeduction& p, const Signature& sig);
Paradeduction parse_paradeduction(std::string_view text, const FormalSystem& sys,
                                  const FormulaSet& premises);

// Random verified paradeduction over a finite system: grows a consistent
// premise subset, derives a random closure member from it and lifts the
// deduction. Returns nullopt when the draw produced nothing derivable.
std::optional<Paradeduction> random_paradeduction(const FormalSystem& sys,
                                                  const ConsistencyOracle& oracle,
                                                  const FormulaSet& premises, std::mt19937_64& rng);

}  // namespace parad

#endif  // PARAD_PARADEDUCTION_HPP
