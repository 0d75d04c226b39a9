#ifndef PARAD_CLASSICAL_HPP
#define PARAD_CLASSICAL_HPP

#include <cstddef>
#include <optional>
#include <unordered_map>
#include <vector>

#include "parad/deduction.hpp"
#include "parad/formula.hpp"
#include "parad/formula_set.hpp"

namespace parad {

// Proof lines for the three-axiom implicational-negation calculus:
//   1: A -> (B -> A)
//   2: (A -> (B -> C)) -> ((A -> B) -> (A -> C))
//   3: (~A -> ~B) -> (B -> A)
// with modus ponens. Formulas are unique per proof, so a line can be cited
// by formula.
class HilbertProof {
 public:
  struct Line {
    enum class Kind { kAxiom, kHypothesis, kModusPonens } kind;
    Formula formula;
    std::size_t axiom = 0;  // 0-based axiom index
    Binding binding;
    std::size_t minor = 0;  // minor premise line
    std::size_t major = 0;  // the implication
  };

  explicit HilbertProof(FormulaSet hypotheses = {});

  std::size_t hypothesis(const Formula& f);
  std::size_t axiom1(const Formula& a, const Formula& b);
  std::size_t axiom2(const Formula& a, const Formula& b, const Formula& c);
  std::size_t axiom3(const Formula& a, const Formula& b);
  std::size_t modus_ponens(std::size_t minor, std::size_t major);
  // Copies the derivation of src's line into this proof.
  std::size_t include(const HilbertProof& src, std::size_t line);
  std::optional<std::size_t> find(const Formula& f) const;

  const Line& line(std::size_t i) const { return lines_[i]; }
  std::size_t size() const { return lines_.size(); }
  const FormulaSet& hypotheses() const { return hyps_; }

  // Lines needed for `target`, renumbered in order.
  HilbertProof pruned(std::size_t target, std::size_t* new_target) const;

 private:
  std::size_t push(Line l);

  FormulaSet hyps_;
  std::vector<Line> lines_;
  std::unordered_map<Formula, std::size_t> at_;
};

Formula implies(const Formula& a, const Formula& b);
Formula negation(const Formula& a);

// Deduction theorem: from a proof of `target` under hypotheses H + {h},
// a proof of h -> target under H. Returns the new proof and its target line.
std::pair<HilbertProof, std::size_t> discharge(const HilbertProof& src, std::size_t target,
                                               const Formula& h);

// Proof of a ~/->-tautology by truth-table case analysis over its atoms.
// Throws kPrecondition when `tautology` is not one.
std::pair<HilbertProof, std::size_t> prove_tautology(const Formula& tautology);

// When `premises` classically entail `goal`: a deduction in the three-axiom
// system that uses a minimal entailing subset of the premises. Axiom indices
// are 0, 1, 2 and the rule is named "mp" with premises (V1, V1 -> V2).
std::optional<Deduction> classical_deduction(const FormulaSet& premises, const Formula& goal);

// Decides A |- a for the classical preset by truth tables; sound and complete
// for the calculus above.
class TruthTableDelegate final : public DeductionDelegate {
 public:
  std::string label() const override { return "truth-table decision (classical adequacy)"; }
  SearchVerdict deducible(const FormalSystem& sys, const FormulaSet& premises,
                          const Formula& goal, bool with_witness) const override;
};

}  // namespace parad

#endif  // PARAD_CLASSICAL_HPP
