// Brute-force reference implementations shared by the test suites. They are
// written against the public formula/system API only and avoid the engine's
// fixpoint, lattice and truth-table code paths.
#ifndef PARAD_TESTS_SUPPORT_HPP
#define PARAD_TESTS_SUPPORT_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "parad/formula.hpp"
#include "parad/formula_set.hpp"
#include "parad/system.hpp"

namespace support {

using parad::Formula;
using parad::FormulaSet;

inline std::string data_path(const std::string& name) {
  return std::string(PARAD_TEST_DATA) + "/" + name;
}

// Every subset of `base` with at most `max` elements, listed by bitmask.
inline std::vector<FormulaSet> subsets_up_to(const FormulaSet& base, std::size_t max) {
  std::vector<FormulaSet> out;
  const std::uint64_t n = std::uint64_t{1} << base.size();
  for (std::uint64_t m = 0; m < n; ++m) {
    std::vector<Formula> pick;
    for (std::size_t i = 0; i < base.size(); ++i) {
      if (m >> i & 1u) pick.push_back(base[i]);
    }
    if (pick.size() <= max) out.emplace_back(std::move(pick));
  }
  return out;
}

inline std::vector<FormulaSet> all_subsets(const FormulaSet& base) {
  return subsets_up_to(base, base.size());
}

// Tries every tuple of derived formulas against every rule until nothing new
// appears. Deliberately naive.
inline FormulaSet naive_closure(const parad::FormalSystem& sys, const FormulaSet& a,
                                const FormulaSet& universe) {
  std::vector<Formula> known(a.begin(), a.end());
  auto has = [&](const Formula& f) {
    for (const auto& k : known) {
      if (k == f) return true;
    }
    return false;
  };
  for (const auto& f : universe) {
    for (const auto& ax : sys.axioms()) {
      if (!has(f) && parad::match_pattern(ax.pattern(), f)) known.push_back(f);
    }
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& rule : sys.rules()) {
      const std::size_t k = rule.degree();
      std::vector<std::size_t> idx(k, 0);
      const std::vector<Formula> snapshot = known;
      if (snapshot.empty()) break;
      while (true) {
        parad::Binding b;
        bool ok = true;
        for (std::size_t j = 0; ok && j < k; ++j) {
          ok = parad::match_into(rule.premises[j], snapshot[idx[j]], b);
        }
        if (ok) {
          auto c = parad::substitute(rule.conclusion, b).as_formula();
          if (c && universe.contains(*c) && !has(*c)) {
            known.push_back(*c);
            changed = true;
          }
        }
        std::size_t j = 0;
        while (j < k && ++idx[j] == snapshot.size()) idx[j++] = 0;
        if (j == k) break;
      }
    }
  }
  return FormulaSet(std::move(known));
}

// Classical truth value under an atom assignment, written from scratch.
inline bool tt_value(const Formula& f, const std::map<std::string, bool>& v) {
  if (f.is_atom()) return v.at(f.symbol());
  if (f.symbol() == "~") return !tt_value(f.child(0), v);
  const bool l = tt_value(f.child(0), v), r = tt_value(f.child(1), v);
  if (f.symbol() == "->") return !l || r;
  if (f.symbol() == "&") return l && r;
  if (f.symbol() == "|") return l || r;
  return l == r;
}

inline void for_each_assignment(const std::vector<Formula>& fs,
                                const std::function<bool(const std::map<std::string, bool>&)>& fn) {
  std::set<std::string> atoms;
  for (const auto& f : fs) {
    auto s = parad::atoms_of(f);
    atoms.insert(s.begin(), s.end());
  }
  const std::vector<std::string> names(atoms.begin(), atoms.end());
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << names.size()); ++m) {
    std::map<std::string, bool> v;
    for (std::size_t i = 0; i < names.size(); ++i) v[names[i]] = m >> i & 1u;
    if (!fn(v)) return;
  }
}

inline bool tt_satisfiable(const FormulaSet& a) {
  bool found = false;
  for_each_assignment(a.items(), [&](const auto& v) {
    bool all = true;
    for (const auto& f : a) all = all && tt_value(f, v);
    if (all) found = true;
    return !found;
  });
  return found;
}

inline bool tt_entails(const FormulaSet& a, const Formula& goal) {
  std::vector<Formula> fs(a.begin(), a.end());
  fs.push_back(goal);
  bool holds = true;
  for_each_assignment(fs, [&](const auto& v) {
    bool all = true;
    for (const auto& f : a) all = all && tt_value(f, v);
    if (all && !tt_value(goal, v)) holds = false;
    return holds;
  });
  return holds;
}

// Random formula over the given atoms and connectives ~ -> & | <->.
inline Formula random_formula(std::mt19937_64& rng, const std::vector<std::string>& atoms,
                              std::size_t depth, bool primitive_only = false) {
  std::uniform_int_distribution<int> pick(0, primitive_only ? 2 : 5);
  const int k = depth == 0 ? 0 : pick(rng);
  if (k == 0) {
    std::uniform_int_distribution<std::size_t> a(0, atoms.size() - 1);
    return Formula::atom(atoms[a(rng)]);
  }
  if (k == 1) return Formula::compound("~", {random_formula(rng, atoms, depth - 1, primitive_only)});
  static const char* ops[] = {"->", "->", "&", "|", "<->"};
  return Formula::compound(ops[k - 1], {random_formula(rng, atoms, depth - 1, primitive_only),
                                        random_formula(rng, atoms, depth - 1, primitive_only)});
}

}  // namespace support

#endif  // PARAD_TESTS_SUPPORT_HPP
