#include "parad/classical.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "parad/error.hpp"
#include "parad/valuation.hpp"

namespace parad {

Formula implies(const Formula& a, const Formula& b) { return Formula::compound("->", {a, b}); }
Formula negation(const Formula& a) { return Formula::compound("~", {a}); }

HilbertProof::HilbertProof(FormulaSet hypotheses) : hyps_(std::move(hypotheses)) {}

std::size_t HilbertProof::push(Line l) {
  if (auto it = at_.find(l.formula); it != at_.end()) return it->second;
  at_.emplace(l.formula, lines_.size());
  lines_.push_back(std::move(l));
  return lines_.size() - 1;
}

std::optional<std::size_t> HilbertProof::find(const Formula& f) const {
  auto it = at_.find(f);
  if (it == at_.end()) return std::nullopt;
  return it->second;
}

std::size_t HilbertProof::hypothesis(const Formula& f) {
  if (!hyps_.contains(f)) {
    throw Error(ErrorCode::kPrecondition, f.text() + " is not a hypothesis of this proof");
  }
  return push({Line::Kind::kHypothesis, f, 0, {}, 0, 0});
}

std::size_t HilbertProof::axiom1(const Formula& a, const Formula& b) {
  return push({Line::Kind::kAxiom, implies(a, implies(b, a)), 0, {{"V1", a}, {"V2", b}}, 0, 0});
}

std::size_t HilbertProof::axiom2(const Formula& a, const Formula& b, const Formula& c) {
  return push({Line::Kind::kAxiom,
               implies(implies(a, implies(b, c)), implies(implies(a, b), implies(a, c))), 1,
               {{"V1", a}, {"V2", b}, {"V3", c}}, 0, 0});
}

std::size_t HilbertProof::axiom3(const Formula& a, const Formula& b) {
  return push({Line::Kind::kAxiom, implies(implies(negation(a), negation(b)), implies(b, a)), 2,
               {{"V1", a}, {"V2", b}}, 0, 0});
}

std::size_t HilbertProof::modus_ponens(std::size_t minor, std::size_t major) {
  const Formula& imp = lines_.at(major).formula;
  if (imp.is_atom() || imp.symbol() != "->" || imp.child(0) != lines_.at(minor).formula) {
    throw Error(ErrorCode::kPrecondition,
                "modus ponens on " + lines_[minor].formula.text() + " and " + imp.text());
  }
  return push({Line::Kind::kModusPonens, imp.child(1), 0, {}, minor, major});
}

std::size_t HilbertProof::include(const HilbertProof& src, std::size_t line) {
  std::vector<std::size_t> map(src.size(), SIZE_MAX);
  std::vector<std::pair<std::size_t, bool>> stack{{line, false}};
  while (!stack.empty()) {
    auto [i, expanded] = stack.back();
    stack.pop_back();
    if (map[i] != SIZE_MAX) continue;
    const Line& l = src.lines_[i];
    if (auto here = find(l.formula)) {
      map[i] = *here;
      continue;
    }
    if (l.kind == Line::Kind::kModusPonens && !expanded) {
      stack.push_back({i, true});
      stack.push_back({l.major, false});
      stack.push_back({l.minor, false});
      continue;
    }
    switch (l.kind) {
      case Line::Kind::kHypothesis:
        map[i] = hypothesis(l.formula);
        break;
      case Line::Kind::kAxiom:
        map[i] = push(l);
        break;
      case Line::Kind::kModusPonens:
        map[i] = modus_ponens(map[l.minor], map[l.major]);
        break;
    }
  }
  return map[line];
}

HilbertProof HilbertProof::pruned(std::size_t target, std::size_t* new_target) const {
  HilbertProof out(hyps_);
  const std::size_t t = out.include(*this, target);
  if (new_target) *new_target = t;
  return out;
}

namespace {

// A -> A
std::size_t lemma_identity(HilbertProof& p, const Formula& a) {
  const Formula aa = implies(a, a);
  const auto s1 = p.axiom1(a, aa);
  const auto s2 = p.axiom2(a, aa, a);
  const auto s3 = p.modus_ponens(s1, s2);
  const auto s4 = p.axiom1(a, a);
  return p.modus_ponens(s4, s3);
}

}  // namespace

std::pair<HilbertProof, std::size_t> discharge(const HilbertProof& src, std::size_t target,
                                               const Formula& h) {
  std::vector<Formula> rest;
  for (const auto& f : src.hypotheses()) {
    if (f != h) rest.push_back(f);
  }
  HilbertProof dst{FormulaSet(std::move(rest))};
  std::size_t t = 0;
  const HilbertProof p = src.pruned(target, &t);

  using Kind = HilbertProof::Line::Kind;
  std::vector<bool> dep(p.size(), false);
  std::vector<std::size_t> plain(p.size(), SIZE_MAX), lifted(p.size(), SIZE_MAX);
  auto lift = [&](std::size_t i) {
    if (lifted[i] == SIZE_MAX) {
      const Formula& f = p.line(i).formula;
      lifted[i] = dst.modus_ponens(plain[i], dst.axiom1(f, h));
    }
    return lifted[i];
  };
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto& l = p.line(i);
    if (l.formula == h && l.kind == Kind::kHypothesis) {
      dep[i] = true;
      lifted[i] = lemma_identity(dst, h);
      continue;
    }
    if (l.kind == Kind::kModusPonens) dep[i] = dep[l.minor] || dep[l.major];
    if (!dep[i]) {
      switch (l.kind) {
        case Kind::kHypothesis: plain[i] = dst.hypothesis(l.formula); break;
        case Kind::kAxiom: plain[i] = dst.include(p, i); break;
        case Kind::kModusPonens: plain[i] = dst.modus_ponens(plain[l.minor], plain[l.major]); break;
      }
      continue;
    }
    // h -> (psi -> phi), h -> psi  give  h -> phi via axiom 2.
    const Formula& psi = p.line(l.minor).formula;
    const auto major = lift(l.major);
    const auto minor = lift(l.minor);
    const auto a2 = dst.axiom2(h, psi, l.formula);
    lifted[i] = dst.modus_ponens(minor, dst.modus_ponens(major, a2));
  }
  const std::size_t out = lift(t);
  return {std::move(dst), out};
}

namespace {

// Lemma proofs are built once per argument tuple and copied in.
class Lemmas {
 public:
  // ~A -> (A -> B)
  std::size_t absurd(HilbertProof& p, const Formula& a, const Formula& b) {
    return cached(p, key("L2", {a, b}), [&] {
      const Formula na = negation(a);
      HilbertProof h{FormulaSet{na}};
      const auto s1 = h.hypothesis(na);
      const auto s2 = h.modus_ponens(s1, h.axiom1(na, negation(b)));
      const auto s3 = h.modus_ponens(s2, h.axiom3(b, a));
      return discharge(h, s3, na);
    });
  }

  // ~~A -> A
  std::size_t double_negation_out(HilbertProof& p, const Formula& a) {
    return cached(p, key("L3", {a}), [&] {
      const Formula na = negation(a), nna = negation(na);
      const Formula nnna = negation(nna), nnnna = negation(nnna);
      HilbertProof h{FormulaSet{nna}};
      const auto s1 = h.hypothesis(nna);
      const auto s2 = h.modus_ponens(s1, h.axiom1(nna, nnnna));
      const auto s3 = h.modus_ponens(s2, h.axiom3(nnna, na));
      const auto s4 = h.modus_ponens(s3, h.axiom3(a, nna));
      const auto s5 = h.modus_ponens(s1, s4);
      return discharge(h, s5, nna);
    });
  }

  // A -> ~~A
  std::size_t double_negation_in(HilbertProof& p, const Formula& a) {
    return cached(p, key("L4", {a}), [&] {
      HilbertProof h;
      const Formula nna = negation(negation(a));
      const auto s1 = double_negation_out(h, negation(a));
      const auto s2 = h.modus_ponens(s1, h.axiom3(nna, a));
      return std::pair<HilbertProof, std::size_t>{std::move(h), s2};
    });
  }

  // (A -> B) -> (~B -> ~A)
  std::size_t contraposition(HilbertProof& p, const Formula& a, const Formula& b) {
    return cached(p, key("L5", {a, b}), [&] {
      const Formula ab = implies(a, b), nna = negation(negation(a));
      HilbertProof inner{FormulaSet{ab, nna}};
      const auto s1 = inner.hypothesis(nna);
      const auto s2 = inner.modus_ponens(s1, double_negation_out(inner, a));
      const auto s3 = inner.modus_ponens(s2, inner.hypothesis(ab));
      const auto s4 = inner.modus_ponens(s3, double_negation_in(inner, b));
      auto [outer, t] = discharge(inner, s4, nna);
      const auto s5 = outer.modus_ponens(t, outer.axiom3(negation(a), negation(b)));
      return discharge(outer, s5, ab);
    });
  }

  // A -> (~B -> ~(A -> B))
  std::size_t false_implication(HilbertProof& p, const Formula& a, const Formula& b) {
    return cached(p, key("L6", {a, b}), [&] {
      const Formula ab = implies(a, b);
      HilbertProof inner{FormulaSet{a, ab}};
      const auto s1 = inner.modus_ponens(inner.hypothesis(a), inner.hypothesis(ab));
      auto [outer, t] = discharge(inner, s1, ab);
      const auto s2 = outer.modus_ponens(t, contraposition(outer, ab, b));
      return discharge(outer, s2, a);
    });
  }

  // (A -> B) -> ((~A -> B) -> B)
  std::size_t cases(HilbertProof& p, const Formula& a, const Formula& b) {
    return cached(p, key("L7", {a, b}), [&] {
      const Formula ab = implies(a, b), na = negation(a), nab = implies(na, b);
      const Formula nb = negation(b), t = implies(b, b), nt = negation(t);
      HilbertProof inner{FormulaSet{ab, nab, nb}};
      const auto sab = inner.hypothesis(ab);
      const auto snb = inner.hypothesis(nb);
      const auto s1 = inner.modus_ponens(sab, contraposition(inner, a, b));
      const auto s2 = inner.modus_ponens(snb, s1);
      const auto s3 = inner.modus_ponens(s2, inner.hypothesis(nab));
      const auto s4 = inner.modus_ponens(snb, absurd(inner, b, nt));
      const auto s5 = inner.modus_ponens(s3, s4);
      auto [mid, m] = discharge(inner, s5, nb);
      const auto s6 = mid.modus_ponens(m, mid.axiom3(b, t));
      const auto s7 = mid.modus_ponens(lemma_identity(mid, b), s6);
      auto [outer, o] = discharge(mid, s7, nab);
      return discharge(outer, o, ab);
    });
  }

 private:
  static std::string key(const char* tag, std::initializer_list<Formula> args) {
    std::string k = tag;
    for (const auto& f : args) k += "|" + f.text();
    return k;
  }

  template <typename Build>
  std::size_t cached(HilbertProof& p, const std::string& k, Build build) {
    auto it = cache_.find(k);
    if (it == cache_.end()) {
      auto [proof, t] = build();
      it = cache_.emplace(k, Entry{std::move(proof), t}).first;
    }
    return p.include(it->second.proof, it->second.target);
  }

  struct Entry {
    HilbertProof proof;
    std::size_t target;
  };
  std::unordered_map<std::string, Entry> cache_;
};

using Assignment = std::map<std::string, bool>;

bool eval(const Formula& f, const Assignment& v) {
  if (f.is_atom()) return v.at(f.symbol());
  if (f.symbol() == "~") return !eval(f.child(0), v);
  if (f.symbol() == "->") return !eval(f.child(0), v) || eval(f.child(1), v);
  throw Error(ErrorCode::kPrecondition, "only ~ and -> are supported, found " + f.symbol());
}

// Derives f (when true under v) or ~f (when false) from the literals of v.
std::size_t kalmar(HilbertProof& p, Lemmas& lem, const Formula& f, const Assignment& v) {
  if (f.is_atom()) {
    return p.hypothesis(v.at(f.symbol()) ? f : negation(f));
  }
  if (f.symbol() == "~") {
    const Formula& g = f.child(0);
    const auto sg = kalmar(p, lem, g, v);
    if (!eval(g, v)) return sg;
    return p.modus_ponens(sg, lem.double_negation_in(p, g));
  }
  const Formula& a = f.child(0);
  const Formula& b = f.child(1);
  const bool va = eval(a, v);
  if (!va) {
    const auto sa = kalmar(p, lem, a, v);
    return p.modus_ponens(sa, lem.absurd(p, a, b));
  }
  const auto sb = kalmar(p, lem, b, v);
  if (eval(b, v)) return p.modus_ponens(sb, p.axiom1(b, a));
  const auto sa = kalmar(p, lem, a, v);
  const auto s1 = p.modus_ponens(sa, lem.false_implication(p, a, b));
  return p.modus_ponens(sb, s1);
}

std::pair<HilbertProof, std::size_t> eliminate(const Formula& tau,
                                               const std::vector<std::string>& atoms,
                                               std::size_t next, Assignment& v, Lemmas& lem) {
  if (next == atoms.size()) {
    std::vector<Formula> lits;
    for (const auto& [name, val] : v) {
      const Formula at = Formula::atom(name);
      lits.push_back(val ? at : negation(at));
    }
    HilbertProof p{FormulaSet(std::move(lits))};
    const auto t = kalmar(p, lem, tau, v);
    return {std::move(p), t};
  }
  const Formula q = Formula::atom(atoms[next]);
  v[atoms[next]] = true;
  auto [pos, tp] = eliminate(tau, atoms, next + 1, v, lem);
  v[atoms[next]] = false;
  auto [neg, tn] = eliminate(tau, atoms, next + 1, v, lem);
  v.erase(atoms[next]);
  auto [dpos, ip] = discharge(pos, tp, q);
  auto [dneg, in] = discharge(neg, tn, negation(q));
  HilbertProof out = std::move(dpos);
  const auto sn = out.include(dneg, in);
  const auto s1 = out.modus_ponens(ip, lem.cases(out, q, tau));
  const auto s2 = out.modus_ponens(sn, s1);
  return {std::move(out), s2};
}

}  // namespace

std::pair<HilbertProof, std::size_t> prove_tautology(const Formula& tautology) {
  const auto atom_set = atoms_of(tautology);
  if (atom_set.size() > kMaxClassicalAtoms) {
    throw Error(ErrorCode::kSizeGuard, "too many atoms for a case-analysis proof");
  }
  const std::vector<std::string> atoms(atom_set.begin(), atom_set.end());
  if (!ValuationStructure::classical(Signature({{"~", 1}, {"->", 2}}, atoms))
           .entails(FormulaSet{}, tautology)) {
    throw Error(ErrorCode::kPrecondition, tautology.text() + " is not a tautology");
  }
  Lemmas lem;
  Assignment v;
  auto [proof, t] = eliminate(tautology, atoms, 0, v, lem);
  std::size_t nt = 0;
  HilbertProof out = proof.pruned(t, &nt);
  return {std::move(out), nt};
}

namespace {

bool classically_entails(const FormulaSet& a, const Formula& goal) {
  std::set<std::string> atoms = atoms_of(goal);
  for (const auto& f : a) {
    auto s = atoms_of(f);
    atoms.insert(s.begin(), s.end());
  }
  const Signature sig({{"~", 1}, {"->", 2}},
                      atoms.empty() ? std::vector<std::string>{"p"}
                                    : std::vector<std::string>(atoms.begin(), atoms.end()));
  return ValuationStructure::classical(sig).entails(a, goal);
}

}  // namespace

std::optional<Deduction> classical_deduction(const FormulaSet& premises, const Formula& goal) {
  if (!classically_entails(premises, goal)) return std::nullopt;
  FormulaSet used = premises;
  for (const auto& f : premises) {
    FormulaSet smaller = used;
    smaller.erase(f);
    if (classically_entails(smaller, goal)) used = std::move(smaller);
  }
  // tau = u1 -> (u2 -> ... -> goal)
  Formula tau = goal;
  for (auto it = used.items().rbegin(); it != used.items().rend(); ++it) tau = implies(*it, tau);
  auto [taut, t] = prove_tautology(tau);
  HilbertProof full(used);
  std::size_t cur = full.include(taut, t);
  for (const auto& u : used) cur = full.modus_ponens(full.hypothesis(u), cur);
  std::size_t target = 0;
  const HilbertProof p = full.pruned(cur, &target);

  Deduction d{premises, {}};
  d.steps.reserve(p.size());
  using Kind = HilbertProof::Line::Kind;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto& l = p.line(i);
    switch (l.kind) {
      case Kind::kHypothesis:
        d.steps.push_back({l.formula, PremiseJust{}});
        break;
      case Kind::kAxiom:
        d.steps.push_back({l.formula, AxiomJust{l.axiom, l.binding}});
        break;
      case Kind::kModusPonens:
        d.steps.push_back({l.formula,
                           RuleJust{"mp",
                                    {{"V1", p.line(l.minor).formula}, {"V2", l.formula}},
                                    {l.minor, l.major}}});
        break;
    }
  }
  return d;
}

SearchVerdict TruthTableDelegate::deducible(const FormalSystem&, const FormulaSet& premises,
                                            const Formula& goal, bool with_witness) const {
  if (!with_witness) {
    return {classically_entails(premises, goal) ? Status::kYes : Status::kNo, std::nullopt,
            label()};
  }
  auto d = classical_deduction(premises, goal);
  if (!d) return {Status::kNo, std::nullopt, label()};
  return {Status::kYes, std::move(d), label()};
}

}  // namespace parad
