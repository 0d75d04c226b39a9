#ifndef PARAD_FORMULA_SET_HPP
#define PARAD_FORMULA_SET_HPP

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "parad/formula.hpp"

namespace parad {

// Finite set of formulas kept sorted by FormulaLess. Value semantics; equal
// sets have equal element sequences.
class FormulaSet {
 public:
  using const_iterator = std::vector<Formula>::const_iterator;

  FormulaSet() = default;
  FormulaSet(std::initializer_list<Formula> items) : FormulaSet(std::vector<Formula>(items)) {}
  explicit FormulaSet(std::vector<Formula> items) : items_(std::move(items)) {
    std::sort(items_.begin(), items_.end(), FormulaLess{});
    items_.erase(std::unique(items_.begin(), items_.end()), items_.end());
  }

  bool contains(const Formula& f) const {
    return std::binary_search(items_.begin(), items_.end(), f, FormulaLess{});
  }
  // Returns the universe-order position of f, or size() when absent.
  std::size_t index_of(const Formula& f) const {
    auto it = std::lower_bound(items_.begin(), items_.end(), f, FormulaLess{});
    return (it != items_.end() && *it == f) ? static_cast<std::size_t>(it - items_.begin())
                                            : items_.size();
  }
  bool insert(const Formula& f) {
    auto it = std::lower_bound(items_.begin(), items_.end(), f, FormulaLess{});
    if (it != items_.end() && *it == f) return false;
    items_.insert(it, f);
    return true;
  }
  bool erase(const Formula& f) {
    auto it = std::lower_bound(items_.begin(), items_.end(), f, FormulaLess{});
    if (it == items_.end() || *it != f) return false;
    items_.erase(it);
    return true;
  }

  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  const Formula& operator[](std::size_t i) const { return items_[i]; }
  const_iterator begin() const { return items_.begin(); }
  const_iterator end() const { return items_.end(); }
  const std::vector<Formula>& items() const { return items_; }

  bool is_subset_of(const FormulaSet& other) const {
    return std::includes(other.items_.begin(), other.items_.end(), items_.begin(), items_.end(),
                         FormulaLess{});
  }

  FormulaSet united(const FormulaSet& other) const {
    FormulaSet out;
    std::set_union(items_.begin(), items_.end(), other.items_.begin(), other.items_.end(),
                   std::back_inserter(out.items_), FormulaLess{});
    return out;
  }

  std::size_t hash() const {
    std::size_t h = items_.size();
    for (const auto& f : items_) h = h * 1000003u ^ f.hash();
    return h;
  }

  friend bool operator==(const FormulaSet& a, const FormulaSet& b) { return a.items_ == b.items_; }
  friend bool operator!=(const FormulaSet& a, const FormulaSet& b) { return !(a == b); }

 private:
  std::vector<Formula> items_;
};

struct FormulaSetHash {
  std::size_t operator()(const FormulaSet& s) const { return s.hash(); }
};

// Subset of `base` selected by the bits of `mask` (bit i = base[i]).
FormulaSet subset_by_mask(const FormulaSet& base, unsigned long long mask);

// Comma-separated rendering in set order.
std::string render_set(const FormulaSet& s, const Signature& sig);

// Splits a comma-separated premise list and parses each entry. Empty input
// yields the empty set.
FormulaSet parse_formula_list(std::string_view text, const Signature& sig);

}  // namespace parad

#endif  // PARAD_FORMULA_SET_HPP
