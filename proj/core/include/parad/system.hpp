#ifndef PARAD_SYSTEM_HPP
#define PARAD_SYSTEM_HPP

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "parad/formula.hpp"
#include "parad/formula_set.hpp"

namespace parad {

class DeductionDelegate;

// Schematic rule of degree n: n premise patterns and a conclusion pattern.
// Its ground instances form the rule's relation on the universe.
struct InferenceRule {
  std::string name;
  std::vector<Pattern> premises;
  Pattern conclusion;

  std::size_t degree() const { return premises.size(); }
};

class AxiomSpec {
 public:
  static AxiomSpec concrete(const Formula& f) { return AxiomSpec(false, Pattern(f)); }
  static AxiomSpec schema(Pattern p) { return AxiomSpec(true, std::move(p)); }

  bool is_schema() const { return schema_; }
  const Pattern& pattern() const { return pattern_; }

  friend bool operator==(const AxiomSpec& a, const AxiomSpec& b) {
    return a.schema_ == b.schema_ && a.pattern_ == b.pattern_;
  }

 private:
  AxiomSpec(bool schema, Pattern p) : schema_(schema), pattern_(std::move(p)) {}

  bool schema_;
  Pattern pattern_;
};

enum class UniverseMode { kFinite, kSchematic };

struct UniverseSpec {
  UniverseMode mode = UniverseMode::kFinite;
  // Finite: enumeration depth. Schematic: depth bound for bounded search.
  std::size_t depth = 2;
  std::size_t cap = kDefaultUniverseCap;
  // Finite mode only; when non-empty it replaces the enumerated universe.
  std::vector<Formula> formulas;
  // Formulas whose joint derivation certifies inconsistency for the bounded
  // syntactic oracle. Defaults to the whole universe in finite mode.
  std::vector<Formula> probe;
};

// S = (X, axioms, rules). Immutable; validated on construction.
class FormalSystem {
 public:
  FormalSystem(Signature sig, UniverseSpec universe, std::vector<AxiomSpec> axioms,
               std::vector<InferenceRule> rules,
               std::shared_ptr<const DeductionDelegate> delegate = nullptr);

  const Signature& signature() const { return sig_; }
  const UniverseSpec& universe_spec() const { return spec_; }
  bool is_finite() const { return spec_.mode == UniverseMode::kFinite; }
  // Materialized carrier; throws kPrecondition in schematic mode.
  const FormulaSet& universe() const;
  const std::vector<AxiomSpec>& axioms() const { return axioms_; }
  const std::vector<InferenceRule>& rules() const { return rules_; }
  std::optional<std::size_t> rule_index(std::string_view name) const;
  const FormulaSet& probe() const { return probe_; }

  const DeductionDelegate* delegate() const { return delegate_.get(); }
  FormalSystem with_delegate(std::shared_ptr<const DeductionDelegate> delegate) const;

  // Structural equality; delegates compare by label.
  friend bool operator==(const FormalSystem& a, const FormalSystem& b);

 private:
  Signature sig_;
  UniverseSpec spec_;
  std::vector<AxiomSpec> axioms_;
  std::vector<InferenceRule> rules_;
  std::shared_ptr<const DeductionDelegate> delegate_;
  FormulaSet universe_;
  FormulaSet probe_;
};

// Re-runs the construction checks: signature-conformant patterns, rule
// degree >= 1, no conclusion-only variables, unique rule names, concrete
// axioms inside a finite universe. Throws kInvalidSystem.
void validate_system(const FormalSystem& sys);

// All axiom instances lying in `universe`, in universe order.
FormulaSet axiom_instances(const FormalSystem& sys, const FormulaSet& universe);

// First axiom spec (by index) that `f` instantiates.
std::optional<std::pair<std::size_t, Binding>> axiom_witness(const FormalSystem& sys,
                                                             const Formula& f);

struct RuleInstance {
  std::size_t rule;
  Binding binding;
  std::vector<Formula> premises;  // in rule premise order
  Formula conclusion;
};

// Ground rule instances with every premise drawn from `from` and an admitted
// conclusion. Distinct premise patterns may match the same formula. When
// `fresh` is given, only instances using at least one formula of `fresh` are
// produced (each exactly once); `fresh` must be a subset of `from`.
std::vector<RuleInstance> rule_instances(const FormalSystem& sys, const FormulaSet& from,
                                         const std::function<bool(const Formula&)>& admit,
                                         const FormulaSet* fresh = nullptr);

// Conclusions in `universe` of rule instances with premises in `from`.
FormulaSet immediate_consequences(const FormalSystem& sys, const FormulaSet& from,
                                  const FormulaSet& universe);

// True when `premises` (in rule order) and `conclusion` form an instance of
// the rule; fills the binding on success.
bool is_rule_instance(const InferenceRule& rule, const std::vector<Formula>& premises,
                      const Formula& conclusion, Binding& binding);

// System-definition text format.
FormalSystem parse_system(std::string_view text);
FormalSystem load_system_file(const std::string& path);
std::string emit_system(const FormalSystem& sys);

}  // namespace parad

#endif  // PARAD_SYSTEM_HPP
