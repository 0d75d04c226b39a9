#ifndef PARAD_CONSISTENCY_HPP
#define PARAD_CONSISTENCY_HPP

#include <atomic>
#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "parad/deduction.hpp"
#include "parad/formula_set.hpp"
#include "parad/lattice.hpp"
#include "parad/system.hpp"
#include "parad/valuation.hpp"

namespace parad {

enum class Verdict { kConsistent, kInconsistent, kUnknown };

const char* to_string(Verdict v);

class ConsistencyOracle {
 public:
  virtual ~ConsistencyOracle() = default;
  virtual Verdict check(const FormulaSet& a) const = 0;
  // Names the oracle and, for semantic oracles, the adequacy pairing.
  virtual std::string provenance() const = 0;
  // True when check never answers Unknown.
  virtual bool decisive() const = 0;
};

// Consistent iff closure(A) differs from the finite universe.
class EnumerativeOracle final : public ConsistencyOracle {
 public:
  explicit EnumerativeOracle(FormalSystem sys);
  Verdict check(const FormulaSet& a) const override;
  std::string provenance() const override { return "enumerative"; }
  bool decisive() const override { return true; }

 private:
  FormalSystem sys_;
};

// Consistent iff satisfiable. `adequacy` names the system the structure is
// claimed adequate for; it is reported with every verdict.
class SemanticOracle final : public ConsistencyOracle {
 public:
  SemanticOracle(std::shared_ptr<const ValuationStructure> vs, std::string adequacy);
  Verdict check(const FormulaSet& a) const override;
  std::string provenance() const override;
  bool decisive() const override { return true; }
  const ValuationStructure& structure() const { return *vs_; }

 private:
  std::shared_ptr<const ValuationStructure> vs_;
  std::string adequacy_;
};

// Inconsistent when every probe formula is derived within the budget.
// Consistent when some probe formula is decidably not derivable. Unknown
// otherwise.
class BoundedSyntacticOracle final : public ConsistencyOracle {
 public:
  BoundedSyntacticOracle(FormalSystem sys, Budget budget);
  Verdict check(const FormulaSet& a) const override;
  std::string provenance() const override;
  bool decisive() const override { return false; }

 private:
  FormalSystem sys_;
  Budget budget_;
};

// Caches verdicts by set value. Safe for concurrent use; a verdict may be
// computed twice under a race but only the first is stored.
class MemoOracle final : public ConsistencyOracle {
 public:
  explicit MemoOracle(std::shared_ptr<const ConsistencyOracle> inner);
  Verdict check(const FormulaSet& a) const override;
  std::string provenance() const override { return inner_->provenance(); }
  bool decisive() const override { return inner_->decisive(); }

  std::size_t hits() const { return hits_; }
  std::size_t misses() const { return misses_; }
  const ConsistencyOracle& inner() const { return *inner_; }

 private:
  std::shared_ptr<const ConsistencyOracle> inner_;
  mutable std::mutex mu_;
  mutable std::unordered_map<FormulaSet, Verdict, FormulaSetHash> memo_;
  mutable std::atomic<std::size_t> hits_{0};
  mutable std::atomic<std::size_t> misses_{0};
};

std::shared_ptr<const ConsistencyOracle> memoize(std::shared_ptr<const ConsistencyOracle> o);

// Throws kEmptySetInconsistent when the oracle decides the empty set is
// Inconsistent. An Unknown verdict is accepted.
void require_empty_consistent(const ConsistencyOracle& o);

// Consistent subsets of A in canonical order. Unknown subsets are skipped and
// counted.
class ConsistentSubsets {
 public:
  ConsistentSubsets(const ConsistencyOracle& o, FormulaSet a,
                    std::size_t cap = kDefaultSubsetCap);
  std::optional<FormulaSet> next();
  // Mask of the set last returned by next(), relative to base().
  Mask last_mask() const { return last_; }
  const FormulaSet& base() const { return a_; }
  std::size_t unknown_count() const { return unknown_; }

 private:
  const ConsistencyOracle& o_;
  FormulaSet a_;
  SubsetWalk walk_;
  Mask last_ = 0;
  std::size_t unknown_ = 0;
};

std::vector<FormulaSet> consistent_subsets(const ConsistencyOracle& o, const FormulaSet& a,
                                           std::size_t cap = kDefaultSubsetCap,
                                           std::size_t* unknown = nullptr);

// Top-down over the subset lattice. Throws kUndecided on an Unknown verdict.
std::vector<FormulaSet> maximal_consistent_subsets(const ConsistencyOracle& o,
                                                   const FormulaSet& a,
                                                   std::size_t cap = kDefaultSubsetCap);

}  // namespace parad

#endif  // PARAD_CONSISTENCY_HPP
