#ifndef PARAD_VALUATION_HPP
#define PARAD_VALUATION_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "parad/formula.hpp"
#include "parad/formula_set.hpp"
#include "parad/lattice.hpp"
#include "parad/system.hpp"

namespace parad {

// Model sets are comparable only when they share a scope. Explicit backend:
// members are row indices and the scope is empty. Classical backend: members
// are atom assignments encoded as bitmasks over `scope` (bit i = scope[i]).
struct ModelSet {
  std::vector<std::string> scope;
  std::vector<std::uint64_t> members;

  bool empty() const { return members.empty(); }
  std::size_t size() const { return members.size(); }
  bool is_subset_of(const ModelSet& other) const;
};

// A pair (X, V): a family of two-valued valuations on X that never contains
// the constant-1 function.
class ValuationStructure {
 public:
  enum class Backend { kExplicit, kClassical };

  // rows[j][i] is the value of valuation j on carrier[i]. Throws
  // kConstantOneValuation for an all-ones row.
  static ValuationStructure explicit_structure(FormulaSet carrier,
                                               std::vector<std::vector<bool>> rows);
  // All atom assignments over `sig`, extended by the classical truth tables
  // of ~ & | -> <->. The carrier is the whole language of `sig`.
  static ValuationStructure classical(Signature sig);

  Backend backend() const { return backend_; }
  // Explicit backend only.
  const FormulaSet& carrier() const;
  const std::vector<std::vector<bool>>& rows() const { return rows_; }
  const Signature* signature() const { return sig_ ? &*sig_ : nullptr; }

  bool in_carrier(const Formula& f) const;
  // Explicit: value of valuation `row` on f.
  bool value(std::size_t row, const Formula& f) const;

  ModelSet models_of(const FormulaSet& a) const;
  // Classical only: model set over an explicit atom scope.
  ModelSet models_of(const FormulaSet& a, const std::vector<std::string>& scope) const;
  bool satisfiable(const FormulaSet& a) const;
  bool entails(const FormulaSet& a, const Formula& goal) const;

  std::string describe() const;

 private:
  ValuationStructure() = default;
  void require_carrier(const FormulaSet& a) const;
  void require_carrier(const Formula& f) const;

  Backend backend_ = Backend::kExplicit;
  FormulaSet carrier_;
  std::vector<std::vector<bool>> rows_;
  std::optional<Signature> sig_;
};

inline constexpr std::size_t kMaxClassicalAtoms = 24;

// Classical truth-table evaluation; throws kOutsideCarrier on connectives
// outside ~ & | -> <->.
bool evaluate_classical(const Formula& f, const std::vector<std::string>& scope,
                        std::uint64_t assignment);

// Cn_V(A) restricted to a finite universe.
FormulaSet semantic_consequences(const ValuationStructure& vs, const FormulaSet& a,
                                 const FormulaSet& universe);

// Maximal satisfiable subsets of A, canonical order.
std::vector<FormulaSet> maximal_satisfiable_subsets(const ValuationStructure& vs,
                                                    const FormulaSet& a,
                                                    std::size_t cap = kDefaultSubsetCap);

// A |=^P a: some satisfiable A' of A entails a. Scans maximal satisfiable
// subsets only, which suffices since entailment is monotone.
bool para_entails(const ValuationStructure& vs, const FormulaSet& a, const Formula& goal,
                  std::size_t cap = kDefaultSubsetCap);

// Semantic Cn^P on a finite universe: union of Cn_V over maximal satisfiable
// subsets.
FormulaSet para_semantic_consequences(const ValuationStructure& vs, const FormulaSet& a,
                                      const FormulaSet& universe,
                                      std::size_t cap = kDefaultSubsetCap);

// Characteristic functions of the consistent theories of a finite system.
// Throws kEmptyTheories when there are none.
ValuationStructure build_adequate_structure(const FormalSystem& sys, const FormulaSet& universe,
                                            std::size_t max_universe = 20);

struct AdequacyCounterexample {
  FormulaSet premises;
  Formula goal;
};

struct AdequacyReport {
  bool sound = true;
  bool complete = true;
  std::size_t pairs_checked = 0;
  // Derivable but not entailed.
  std::vector<AdequacyCounterexample> unsound;
  // Entailed but not derivable.
  std::vector<AdequacyCounterexample> incomplete;
};

// Compares closure membership with entailment for every (A, a) with A of size
// at most `subset_cap` (every subset when 2^|U| is within the guard). Keeps the
// first few counterexamples of each kind.
AdequacyReport check_adequacy(const FormalSystem& sys, const ValuationStructure& vs,
                              const FormulaSet& universe, std::size_t subset_cap,
                              std::size_t max_universe = 20);

// "valuations <m> over <n>", n carrier formulas, m rows of n bits.
ValuationStructure parse_valuation_structure(std::string_view text, const Signature& sig);
ValuationStructure load_valuation_file(const std::string& path, const Signature& sig);
std::string emit_valuation_structure(const ValuationStructure& vs, const Signature& sig);

}  // namespace parad

#endif  // PARAD_VALUATION_HPP
