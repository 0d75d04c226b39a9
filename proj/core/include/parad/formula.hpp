#ifndef PARAD_FORMULA_HPP
#define PARAD_FORMULA_HPP

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace parad {

namespace detail {
struct Node;
struct NodeAccess;
}

class Pattern;

// A ground formula: an immutable tree of atoms and connective applications.
// Structurally equal formulas compare equal regardless of how they were built.
class Formula {
 public:
  static Formula atom(std::string name);
  static Formula compound(std::string connective, std::vector<Formula> children);

  bool is_atom() const;
  // Atom name for atoms, connective symbol for compounds.
  const std::string& symbol() const;
  std::size_t arity() const;
  Formula child(std::size_t i) const;

  // Atoms and constants have depth 0.
  std::size_t depth() const;
  // Number of nodes.
  std::size_t size() const;
  // Plain rendering in the concrete grammar, without resugared definitions.
  const std::string& text() const;
  std::size_t hash() const;

  friend bool operator==(const Formula& a, const Formula& b);
  friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }
  friend std::ostream& operator<<(std::ostream& os, const Formula& f) {
    return os << f.text();
  }

 private:
  friend class Pattern;
  friend struct detail::NodeAccess;
  explicit Formula(std::shared_ptr<const detail::Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const detail::Node> node_;
};

// Total order used for every formula collection: by depth, then by rendered
// text.
struct FormulaLess {
  bool operator()(const Formula& a, const Formula& b) const;
};

// Like Formula, but leaves may also be schema variables (capitalized names).
class Pattern {
 public:
  enum class Kind { kAtom, kVar, kCompound };

  Pattern(const Formula& f);  // NOLINT: lossless embedding
  static Pattern var(std::string name);
  static Pattern atom(std::string name);
  static Pattern compound(std::string connective, std::vector<Pattern> children);

  Kind kind() const;
  const std::string& symbol() const;
  std::size_t arity() const;
  Pattern child(std::size_t i) const;
  std::size_t depth() const;
  const std::string& text() const;

  bool is_ground() const;
  std::optional<Formula> as_formula() const;
  std::set<std::string> vars() const;

  friend bool operator==(const Pattern& a, const Pattern& b);
  friend bool operator!=(const Pattern& a, const Pattern& b) { return !(a == b); }
  friend std::ostream& operator<<(std::ostream& os, const Pattern& p) {
    return os << p.text();
  }

 private:
  friend struct detail::NodeAccess;
  explicit Pattern(std::shared_ptr<const detail::Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const detail::Node> node_;
};

using Binding = std::map<std::string, Formula>;

// One-sided first-order matching. Returns the unique binding b with
// instantiate(p, b) == f, if any.
std::optional<Binding> match_pattern(const Pattern& p, const Formula& f);

// Extends `b` so that p matches f. On failure `b` is left unchanged.
bool match_into(const Pattern& p, const Formula& f, Binding& b);

// Substitutes bound variables; unbound ones stay in place.
Pattern substitute(const Pattern& p, const Binding& b);

// Like apply, but throws kPrecondition if a variable is left unbound.
Formula instantiate(const Pattern& p, const Binding& b);

struct Connective {
  std::string name;
  std::size_t arity;
};

// A defined connective is accepted by the parser and expanded in place into
// its body, a pattern over V1..Vn. Defined connectives never occur in trees.
struct Definition {
  std::string connective;
  Pattern body;
};

class Signature {
 public:
  Signature(std::vector<Connective> connectives, std::vector<std::string> atoms,
            std::vector<Definition> definitions = {});

  const std::vector<Connective>& connectives() const { return connectives_; }
  const std::vector<std::string>& atoms() const { return atoms_; }
  const std::vector<Definition>& definitions() const { return definitions_; }

  bool has_atom(std::string_view name) const;
  std::optional<std::size_t> arity_of(std::string_view connective) const;
  const Definition* definition_of(std::string_view connective) const;
  // Connectives that may appear in trees (declared and not defined).
  std::vector<Connective> primitive_connectives() const;

  friend bool operator==(const Signature& a, const Signature& b);

 private:
  std::vector<Connective> connectives_;
  std::vector<std::string> atoms_;
  std::vector<Definition> definitions_;
};

// True for ~ & | -> <->, the operators the grammar knows.
bool is_grammar_symbol(std::string_view s);

Formula parse_formula(std::string_view text, const Signature& sig);
Pattern parse_pattern(std::string_view text, const Signature& sig);

// Renders in user syntax: subtrees matching a definition body are shown with
// the defined connective. The result reparses to an equal formula.
std::string render_formula(const Formula& f, const Signature& sig);
std::string render_pattern(const Pattern& p, const Signature& sig);

// Checks every node against the signature; throws kUnknownSymbol or
// kArityMismatch.
void check_formula(const Formula& f, const Signature& sig);

inline constexpr std::size_t kDefaultUniverseCap = 100000;

// Number of formulas of depth <= max_depth (saturating double).
double projected_universe_size(const Signature& sig, std::size_t max_depth);

// All formulas over the primitive connectives with depth <= max_depth, ordered
// by FormulaLess. Throws kSizeGuard when the projected count exceeds `cap`.
std::vector<Formula> enumerate_universe(const Signature& sig, std::size_t max_depth,
                                        std::size_t cap = kDefaultUniverseCap);

// Subformulas of f including f itself.
void collect_subformulas(const Formula& f, std::set<Formula, FormulaLess>& out);
std::set<std::string> atoms_of(const Formula& f);

}  // namespace parad

template <>
struct std::hash<parad::Formula> {
  std::size_t operator()(const parad::Formula& f) const noexcept { return f.hash(); }
};

#endif  // PARAD_FORMULA_HPP
