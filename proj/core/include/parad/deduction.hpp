#ifndef PARAD_DEDUCTION_HPP
#define PARAD_DEDUCTION_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "parad/formula.hpp"
#include "parad/formula_set.hpp"
#include "parad/system.hpp"

namespace parad {

struct PremiseJust {};

struct AxiomJust {
  std::size_t axiom;  // index into FormalSystem::axioms()
  Binding binding;
};

struct RuleJust {
  std::string rule;
  Binding binding;
  std::vector<std::size_t> refs;  // earlier step indices, in rule premise order
};

using Justification = std::variant<PremiseJust, AxiomJust, RuleJust>;

struct DeductionStep {
  Formula formula;
  Justification justification;
};

struct Deduction {
  FormulaSet premises;
  std::vector<DeductionStep> steps;

  const Formula& conclusion() const { return steps.back().formula; }
  // Formulas of the premise steps; a finite subset of `premises`.
  FormulaSet used_premises() const;
};

enum class ViolationKind {
  kEmpty,
  kNotAPremise,
  kBadSupportForPremise,
  kAxiomMismatch,
  kBadSupportForAxiom,
  kBadRuleInstance,
  kForwardReference,
  kSupportUnionMismatch,
  kInconsistentSupport,
  kUndecidedSupport,
};

const char* to_string(ViolationKind kind);

struct Violation {
  std::size_t step;  // 0-based
  ViolationKind kind;
  std::string detail;
};

// Checks every step against exactly its claimed justification. Empty result
// means the deduction is valid. Steps whose formula lies outside a finite
// universe are reported as axiom or rule mismatches.
std::vector<Violation> verify_deduction(const FormalSystem& sys, const FormulaSet& premises,
                                        const Deduction& d);

// Per-step check shared with paradeduction verification.
std::optional<Violation> check_step(const FormalSystem& sys, const FormulaSet& premises,
                                    const std::vector<Formula>& earlier, std::size_t index,
                                    const Formula& formula, const Justification& just);

enum class Status { kYes, kNo, kUnknown };

const char* to_string(Status s);

struct Budget {
  std::size_t max_nodes = 20000;
};

struct SearchVerdict {
  Status status = Status::kUnknown;
  std::optional<Deduction> witness;
  // How the verdict was reached, e.g. "fixpoint" or a delegate label.
  std::string provenance;
};

// Decision procedure attached to a schematic system, licensed by a declared
// adequacy result. It must return a witness on Yes when asked for one.
class DeductionDelegate {
 public:
  virtual ~DeductionDelegate() = default;
  virtual std::string label() const = 0;
  virtual SearchVerdict deducible(const FormalSystem& sys, const FormulaSet& premises,
                                  const Formula& goal, bool with_witness) const = 0;
};

// Cn_S(A) within `universe`. Finite systems: least fixpoint of premises, axiom
// instances and rule applications. Schematic systems with a delegate: the
// universe filtered by the delegate. Otherwise throws kNotComputable.
FormulaSet closure(const FormalSystem& sys, const FormulaSet& premises,
                   const FormulaSet& universe);
FormulaSet closure(const FormalSystem& sys, const FormulaSet& premises);

// A |-_S a. Finite: decided by the fixpoint, witness extracted backwards from
// the recorded justifications. Schematic: delegate when attached, otherwise
// iterative-deepening forward chaining, Unknown when the budget runs out.
SearchVerdict deducible(const FormalSystem& sys, const FormulaSet& premises, const Formula& goal,
                        const Budget& budget = {}, bool with_witness = true);

struct Theories {
  std::vector<FormulaSet> all;         // THE_S
  std::vector<FormulaSet> consistent;  // THE*_S
};

inline constexpr std::size_t kDefaultSubsetGuard = 20;

// Enumerates all 2^|U| subsets; throws kSizeGuard when |U| > max_universe.
Theories theories(const FormalSystem& sys, const FormulaSet& universe,
                  std::size_t max_universe = kDefaultSubsetGuard);

// Line format: "<i>. <formula> [premise | axiom <k> | rule <name> <j,k,...>]"
// with 1-based indices.
std::string serialize_justification(const Justification& j);
std::string serialize_deduction(const Deduction& d, const Signature& sig);

// Parses the line format back. Bindings are recovered by matching; when
// `premises` is absent the premise-step formulas are used.
Deduction parse_deduction(std::string_view text, const FormalSystem& sys,
                          const std::optional<FormulaSet>& premises = std::nullopt);

// Shared by the paradeduction witness parser.
struct ParsedJustification {
  enum class Kind { kPremise, kAxiom, kRule } kind;
  std::size_t axiom = 0;
  std::string rule;
  std::vector<std::size_t> refs;
};
ParsedJustification parse_justification(std::string_view text, std::size_t line);
Justification resolve_justification(const ParsedJustification& pj, const FormalSystem& sys,
                                    const Formula& formula,
                                    const std::vector<Formula>& earlier);

}  // namespace parad

#endif  // PARAD_DEDUCTION_HPP
