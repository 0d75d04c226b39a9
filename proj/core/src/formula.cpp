#include "parad/formula.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>
#include <unordered_set>
#include <utility>

#include "parad/error.hpp"

namespace parad {

namespace detail {

using NodePtr = std::shared_ptr<const Node>;

struct Node {
  Pattern::Kind kind;
  std::string symbol;
  std::vector<NodePtr> children;
  std::size_t depth = 0;
  std::size_t size = 1;
  bool ground = true;
  std::string text;
  std::size_t hash = 0;
};

}  // namespace detail

namespace {

using detail::Node;
using detail::NodePtr;

constexpr int kPrecAtom = 6;

int precedence_of(const std::string& symbol, std::size_t arity) {
  if (arity == 0) return kPrecAtom;
  if (symbol == "~" && arity == 1) return 5;
  if (arity == 2) {
    if (symbol == "&") return 4;
    if (symbol == "|") return 3;
    if (symbol == "->") return 2;
    if (symbol == "<->") return 1;
  }
  return kPrecAtom;  // function-style rendering
}

bool right_assoc(const std::string& symbol) { return symbol == "->"; }

std::string wrap(const std::string& s, bool parens) { return parens ? "(" + s + ")" : s; }

// Renders a compound from already rendered children.
std::string render_compound(const std::string& symbol, const std::vector<std::string>& kids,
                            const std::vector<int>& kid_prec) {
  const std::size_t arity = kids.size();
  const int prec = precedence_of(symbol, arity);
  if (arity == 0) return symbol;
  if (symbol == "~" && arity == 1) return "~" + wrap(kids[0], kid_prec[0] < prec);
  if (arity == 2 && prec != kPrecAtom) {
    bool left_parens, right_parens;
    if (right_assoc(symbol)) {
      left_parens = kid_prec[0] <= prec;
      right_parens = kid_prec[1] < prec;
    } else {
      left_parens = kid_prec[0] < prec;
      right_parens = kid_prec[1] <= prec;
    }
    return wrap(kids[0], left_parens) + " " + symbol + " " + wrap(kids[1], right_parens);
  }
  std::string out = symbol + "(";
  for (std::size_t i = 0; i < arity; ++i) {
    if (i > 0) out += ", ";
    out += kids[i];
  }
  return out + ")";
}

int node_prec(const Node& n) {
  if (n.kind != Pattern::Kind::kCompound) return kPrecAtom;
  return precedence_of(n.symbol, n.children.size());
}

NodePtr make_node(Pattern::Kind kind, std::string symbol, std::vector<NodePtr> children) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->symbol = std::move(symbol);
  n->children = std::move(children);
  n->ground = kind != Pattern::Kind::kVar;
  std::vector<std::string> kid_text;
  std::vector<int> kid_prec;
  for (const auto& c : n->children) {
    n->depth = std::max(n->depth, c->depth + 1);
    n->size += c->size;
    n->ground = n->ground && c->ground;
    kid_text.push_back(c->text);
    kid_prec.push_back(node_prec(*c));
  }
  n->text = kind == Pattern::Kind::kCompound ? render_compound(n->symbol, kid_text, kid_prec)
                                             : n->symbol;
  n->hash = std::hash<std::string>{}(n->text);
  return n;
}

bool node_equal(const NodePtr& a, const NodePtr& b) {
  return a == b || (a->hash == b->hash && a->text == b->text);
}

// Matches a pattern node against a target node. Variables in the target are
// opaque leaves, which lets the same routine resugar patterns.
bool match_node(const NodePtr& pat, const NodePtr& target, std::map<std::string, NodePtr>& b,
                std::vector<std::string>& added) {
  switch (pat->kind) {
    case Pattern::Kind::kVar: {
      auto it = b.find(pat->symbol);
      if (it != b.end()) return node_equal(it->second, target);
      b.emplace(pat->symbol, target);
      added.push_back(pat->symbol);
      return true;
    }
    case Pattern::Kind::kAtom:
      return target->kind == Pattern::Kind::kAtom && target->symbol == pat->symbol;
    case Pattern::Kind::kCompound:
      if (target->kind != Pattern::Kind::kCompound || target->symbol != pat->symbol ||
          target->children.size() != pat->children.size()) {
        return false;
      }
      for (std::size_t i = 0; i < pat->children.size(); ++i) {
        if (!match_node(pat->children[i], target->children[i], b, added)) return false;
      }
      return true;
  }
  return false;
}

NodePtr apply_node(const NodePtr& p, const std::map<std::string, NodePtr>& b) {
  if (p->ground) return p;
  if (p->kind == Pattern::Kind::kVar) {
    auto it = b.find(p->symbol);
    return it == b.end() ? p : it->second;
  }
  std::vector<NodePtr> kids;
  kids.reserve(p->children.size());
  for (const auto& c : p->children) kids.push_back(apply_node(c, b));
  return make_node(p->kind, p->symbol, std::move(kids));
}

// Definitions tried largest body first so that nested definitions win.
std::vector<const Definition*> sugar_order(const Signature& sig) {
  std::vector<const Definition*> defs;
  for (const auto& d : sig.definitions()) defs.push_back(&d);
  std::stable_sort(defs.begin(), defs.end(), [](const Definition* a, const Definition* b) {
    return a->body.text().size() > b->body.text().size();
  });
  return defs;
}

struct Rendered {
  std::string text;
  int prec;
};

}  // namespace

namespace detail {

struct NodeAccess {
  static const NodePtr& node(const Pattern& p) { return p.node_; }
  static const NodePtr& node(const Formula& f) { return f.node_; }
  static Pattern pattern(NodePtr n) { return Pattern(std::move(n)); }
  static Formula formula(NodePtr n) { return Formula(std::move(n)); }
};

}  // namespace detail

namespace {

using detail::NodeAccess;

Rendered render_sugared(const NodePtr& n, const std::vector<const Definition*>& defs) {
  if (n->kind != Pattern::Kind::kCompound) return {n->symbol, kPrecAtom};
  for (const Definition* d : defs) {
    std::map<std::string, NodePtr> b;
    std::vector<std::string> added;
    if (!match_node(NodeAccess::node(d->body), n, b, added)) continue;
    std::vector<std::string> kids;
    std::vector<int> kid_prec;
    const auto arity = static_cast<std::size_t>(b.size());
    bool complete = true;
    for (std::size_t i = 1; i <= arity; ++i) {
      auto it = b.find("V" + std::to_string(i));
      if (it == b.end()) {
        complete = false;
        break;
      }
      Rendered r = render_sugared(it->second, defs);
      kids.push_back(std::move(r.text));
      kid_prec.push_back(r.prec);
    }
    if (!complete) continue;
    return {render_compound(d->connective, kids, kid_prec),
            precedence_of(d->connective, kids.size())};
  }
  std::vector<std::string> kids;
  std::vector<int> kid_prec;
  for (const auto& c : n->children) {
    Rendered r = render_sugared(c, defs);
    kids.push_back(std::move(r.text));
    kid_prec.push_back(r.prec);
  }
  return {render_compound(n->symbol, kids, kid_prec), precedence_of(n->symbol, kids.size())};
}

}  // namespace

// ---------------------------------------------------------------------------
// Formula

Formula Formula::atom(std::string name) {
  return Formula(make_node(Pattern::Kind::kAtom, std::move(name), {}));
}

Formula Formula::compound(std::string connective, std::vector<Formula> children) {
  std::vector<NodePtr> kids;
  kids.reserve(children.size());
  for (auto& c : children) kids.push_back(std::move(c.node_));
  return Formula(make_node(Pattern::Kind::kCompound, std::move(connective), std::move(kids)));
}

bool Formula::is_atom() const { return node_->kind == Pattern::Kind::kAtom; }
const std::string& Formula::symbol() const { return node_->symbol; }
std::size_t Formula::arity() const { return node_->children.size(); }
Formula Formula::child(std::size_t i) const { return Formula(node_->children.at(i)); }
std::size_t Formula::depth() const { return node_->depth; }
std::size_t Formula::size() const { return node_->size; }
const std::string& Formula::text() const { return node_->text; }
std::size_t Formula::hash() const { return node_->hash; }

bool operator==(const Formula& a, const Formula& b) { return node_equal(a.node_, b.node_); }

bool FormulaLess::operator()(const Formula& a, const Formula& b) const {
  if (a.depth() != b.depth()) return a.depth() < b.depth();
  return a.text() < b.text();
}

// ---------------------------------------------------------------------------
// Pattern

Pattern::Pattern(const Formula& f) : node_(f.node_) {}

Pattern Pattern::var(std::string name) {
  return Pattern(make_node(Kind::kVar, std::move(name), {}));
}

Pattern Pattern::atom(std::string name) {
  return Pattern(make_node(Kind::kAtom, std::move(name), {}));
}

Pattern Pattern::compound(std::string connective, std::vector<Pattern> children) {
  std::vector<NodePtr> kids;
  kids.reserve(children.size());
  for (auto& c : children) kids.push_back(std::move(c.node_));
  return Pattern(make_node(Kind::kCompound, std::move(connective), std::move(kids)));
}

Pattern::Kind Pattern::kind() const { return node_->kind; }
const std::string& Pattern::symbol() const { return node_->symbol; }
std::size_t Pattern::arity() const { return node_->children.size(); }
Pattern Pattern::child(std::size_t i) const { return Pattern(node_->children.at(i)); }
std::size_t Pattern::depth() const { return node_->depth; }
const std::string& Pattern::text() const { return node_->text; }
bool Pattern::is_ground() const { return node_->ground; }

std::optional<Formula> Pattern::as_formula() const {
  if (!node_->ground) return std::nullopt;
  return Formula(node_);
}

std::set<std::string> Pattern::vars() const {
  std::set<std::string> out;
  std::vector<const Node*> stack{node_.get()};
  while (!stack.empty()) {
    const Node* n = stack.back();
    stack.pop_back();
    if (n->ground) continue;
    if (n->kind == Kind::kVar) out.insert(n->symbol);
    for (const auto& c : n->children) stack.push_back(c.get());
  }
  return out;
}

bool operator==(const Pattern& a, const Pattern& b) { return node_equal(a.node_, b.node_); }

// ---------------------------------------------------------------------------
// Matching and substitution

namespace {

bool match_binding(const NodePtr& pat, const NodePtr& target, Binding& b,
                   std::vector<std::string>& added) {
  switch (pat->kind) {
    case Pattern::Kind::kVar: {
      auto it = b.find(pat->symbol);
      if (it != b.end()) return node_equal(NodeAccess::node(it->second), target);
      b.emplace(pat->symbol, NodeAccess::formula(target));
      added.push_back(pat->symbol);
      return true;
    }
    case Pattern::Kind::kAtom:
      return target->kind == Pattern::Kind::kAtom && target->symbol == pat->symbol;
    case Pattern::Kind::kCompound:
      if (pat->ground) return node_equal(pat, target);
      if (target->kind != Pattern::Kind::kCompound || target->symbol != pat->symbol ||
          target->children.size() != pat->children.size()) {
        return false;
      }
      for (std::size_t i = 0; i < pat->children.size(); ++i) {
        if (!match_binding(pat->children[i], target->children[i], b, added)) return false;
      }
      return true;
  }
  return false;
}

}  // namespace

bool match_into(const Pattern& p, const Formula& f, Binding& b) {
  std::vector<std::string> added;
  if (match_binding(NodeAccess::node(p), NodeAccess::node(f), b, added)) return true;
  for (const auto& name : added) b.erase(name);
  return false;
}

std::optional<Binding> match_pattern(const Pattern& p, const Formula& f) {
  Binding b;
  if (!match_into(p, f, b)) return std::nullopt;
  return b;
}

Pattern substitute(const Pattern& p, const Binding& b) {
  std::map<std::string, NodePtr> nb;
  for (const auto& [k, v] : b) nb.emplace(k, NodeAccess::node(v));
  return NodeAccess::pattern(apply_node(NodeAccess::node(p), nb));
}

Formula instantiate(const Pattern& p, const Binding& b) {
  auto f = substitute(p, b).as_formula();
  if (!f) {
    throw Error(ErrorCode::kPrecondition, "unbound schema variable in '" + p.text() + "'");
  }
  return *f;
}

// ---------------------------------------------------------------------------
// Signature

bool is_grammar_symbol(std::string_view s) {
  return s == "~" || s == "&" || s == "|" || s == "->" || s == "<->";
}

namespace {

bool is_lower_ident(std::string_view s) {
  if (s.empty() || !(s[0] >= 'a' && s[0] <= 'z')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
  });
}

std::size_t grammar_arity(std::string_view s) { return s == "~" ? 1 : 2; }

}  // namespace

Signature::Signature(std::vector<Connective> connectives, std::vector<std::string> atoms,
                     std::vector<Definition> definitions)
    : connectives_(std::move(connectives)),
      atoms_(std::move(atoms)),
      definitions_(std::move(definitions)) {
  std::set<std::string> names;
  for (const auto& c : connectives_) {
    if (!names.insert(c.name).second) {
      throw Error(ErrorCode::kInvalidSignature, "duplicate connective '" + c.name + "'");
    }
    if (is_grammar_symbol(c.name)) {
      if (c.arity != grammar_arity(c.name)) {
        throw Error(ErrorCode::kArityMismatch, "connective '" + c.name + "' must have arity " +
                                                   std::to_string(grammar_arity(c.name)));
      }
    } else if (!is_lower_ident(c.name) || c.arity != 0) {
      throw Error(ErrorCode::kInvalidSignature,
                  "connective '" + c.name + "' is neither a grammar operator nor a constant");
    }
  }
  for (const auto& a : atoms_) {
    if (!is_lower_ident(a)) throw Error(ErrorCode::kInvalidSignature, "bad atom name '" + a + "'");
    if (!names.insert(a).second) {
      throw Error(ErrorCode::kInvalidSignature, "atom '" + a + "' clashes with another name");
    }
  }
  std::set<std::string> defined;
  for (const auto& d : definitions_) {
    auto arity = arity_of(d.connective);
    if (!arity) {
      throw Error(ErrorCode::kInvalidSignature,
                  "definition of undeclared connective '" + d.connective + "'");
    }
    if (!defined.insert(d.connective).second) {
      throw Error(ErrorCode::kInvalidSignature, "connective '" + d.connective + "' defined twice");
    }
    std::set<std::string> expected;
    for (std::size_t i = 1; i <= *arity; ++i) expected.insert("V" + std::to_string(i));
    if (d.body.vars() != expected) {
      throw Error(ErrorCode::kInvalidSignature,
                  "definition of '" + d.connective + "' must use exactly V1..V" +
                      std::to_string(*arity));
    }
  }
  // Bodies may only mention primitive connectives.
  for (const auto& d : definitions_) {
    std::vector<Pattern> stack{d.body};
    while (!stack.empty()) {
      Pattern p = stack.back();
      stack.pop_back();
      if (p.kind() == Pattern::Kind::kCompound && defined.count(p.symbol())) {
        throw Error(ErrorCode::kInvalidSignature,
                    "definition of '" + d.connective + "' refers to defined connective '" +
                        p.symbol() + "'");
      }
      for (std::size_t i = 0; i < p.arity(); ++i) stack.push_back(p.child(i));
    }
  }
}

bool Signature::has_atom(std::string_view name) const {
  return std::find(atoms_.begin(), atoms_.end(), name) != atoms_.end();
}

std::optional<std::size_t> Signature::arity_of(std::string_view connective) const {
  for (const auto& c : connectives_) {
    if (c.name == connective) return c.arity;
  }
  return std::nullopt;
}

const Definition* Signature::definition_of(std::string_view connective) const {
  for (const auto& d : definitions_) {
    if (d.connective == connective) return &d;
  }
  return nullptr;
}

std::vector<Connective> Signature::primitive_connectives() const {
  std::vector<Connective> out;
  for (const auto& c : connectives_) {
    if (!definition_of(c.name)) out.push_back(c);
  }
  return out;
}

bool operator==(const Signature& a, const Signature& b) {
  if (a.atoms_ != b.atoms_ || a.connectives_.size() != b.connectives_.size() ||
      a.definitions_.size() != b.definitions_.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.connectives_.size(); ++i) {
    if (a.connectives_[i].name != b.connectives_[i].name ||
        a.connectives_[i].arity != b.connectives_[i].arity) {
      return false;
    }
  }
  for (std::size_t i = 0; i < a.definitions_.size(); ++i) {
    if (a.definitions_[i].connective != b.definitions_[i].connective ||
        a.definitions_[i].body != b.definitions_[i].body) {
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

enum class Tok { kIdent, kVar, kNot, kAnd, kOr, kImp, kIff, kLParen, kRParen, kEnd };

struct Token {
  Tok kind;
  std::string text;
  std::size_t column;  // 1-based
};

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    const std::size_t col = i + 1;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z')) {
      std::size_t j = i + 1;
      while (j < s.size() && ((s[j] >= 'a' && s[j] <= 'z') || (s[j] >= '0' && s[j] <= '9') ||
                              s[j] == '_')) {
        ++j;
      }
      out.push_back({c >= 'a' ? Tok::kIdent : Tok::kVar, std::string(s.substr(i, j - i)), col});
      i = j;
    } else if (c == '~') {
      out.push_back({Tok::kNot, "~", col});
      ++i;
    } else if (c == '&') {
      out.push_back({Tok::kAnd, "&", col});
      ++i;
    } else if (c == '|') {
      out.push_back({Tok::kOr, "|", col});
      ++i;
    } else if (c == '(') {
      out.push_back({Tok::kLParen, "(", col});
      ++i;
    } else if (c == ')') {
      out.push_back({Tok::kRParen, ")", col});
      ++i;
    } else if (s.substr(i, 2) == "->") {
      out.push_back({Tok::kImp, "->", col});
      i += 2;
    } else if (s.substr(i, 3) == "<->") {
      out.push_back({Tok::kIff, "<->", col});
      i += 3;
    } else {
      throw Error(ErrorCode::kSyntax,
                  "unexpected character '" + std::string(1, c) + "' at column " +
                      std::to_string(col),
                  col);
    }
  }
  out.push_back({Tok::kEnd, "", s.size() + 1});
  return out;
}

class Parser {
 public:
  Parser(std::string_view text, const Signature& sig, bool allow_vars)
      : toks_(lex(text)), sig_(sig), allow_vars_(allow_vars) {}

  Pattern parse() {
    Pattern p = parse_iff();
    if (peek().kind != Tok::kEnd) fail("unexpected '" + peek().text + "'");
    return p;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }

  [[noreturn]] void fail(const std::string& msg, ErrorCode code = ErrorCode::kSyntax) const {
    throw Error(code, msg + " at column " + std::to_string(peek().column), peek().column);
  }

  Pattern build(const Token& op, std::vector<Pattern> kids) {
    auto arity = sig_.arity_of(op.text);
    if (!arity) {
      throw Error(ErrorCode::kUnknownSymbol,
                  "unknown connective '" + op.text + "' at column " + std::to_string(op.column),
                  op.column);
    }
    if (*arity != kids.size()) {
      throw Error(ErrorCode::kArityMismatch,
                  "connective '" + op.text + "' has arity " + std::to_string(*arity) +
                      " at column " + std::to_string(op.column),
                  op.column);
    }
    if (const Definition* d = sig_.definition_of(op.text)) {
      std::map<std::string, NodePtr> b;
      for (std::size_t i = 0; i < kids.size(); ++i) {
        b.emplace("V" + std::to_string(i + 1), NodeAccess::node(kids[i]));
      }
      return NodeAccess::pattern(apply_node(NodeAccess::node(d->body), b));
    }
    return Pattern::compound(op.text, std::move(kids));
  }

  Pattern parse_iff() {
    Pattern lhs = parse_imp();
    while (peek().kind == Tok::kIff) {
      Token op = next();
      lhs = build(op, {lhs, parse_imp()});
    }
    return lhs;
  }

  Pattern parse_imp() {
    Pattern lhs = parse_or();
    if (peek().kind == Tok::kImp) {
      Token op = next();
      return build(op, {lhs, parse_imp()});
    }
    return lhs;
  }

  Pattern parse_or() {
    Pattern lhs = parse_and();
    while (peek().kind == Tok::kOr) {
      Token op = next();
      lhs = build(op, {lhs, parse_and()});
    }
    return lhs;
  }

  Pattern parse_and() {
    Pattern lhs = parse_unary();
    while (peek().kind == Tok::kAnd) {
      Token op = next();
      lhs = build(op, {lhs, parse_unary()});
    }
    return lhs;
  }

  Pattern parse_unary() {
    if (peek().kind == Tok::kNot) {
      Token op = next();
      return build(op, {parse_unary()});
    }
    return parse_primary();
  }

  Pattern parse_primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::kLParen: {
        next();
        Pattern inner = parse_iff();
        if (peek().kind != Tok::kRParen) fail("expected ')'");
        next();
        return inner;
      }
      case Tok::kVar: {
        if (!allow_vars_) fail("schema variable '" + t.text + "' not allowed in a formula");
        return Pattern::var(next().text);
      }
      case Tok::kIdent: {
        Token id = next();
        if (auto arity = sig_.arity_of(id.text)) {
          if (*arity != 0 || peek().kind == Tok::kLParen) {
            throw Error(ErrorCode::kArityMismatch,
                        "constant '" + id.text + "' takes no arguments at column " +
                            std::to_string(id.column),
                        id.column);
          }
          return build(id, {});
        }
        if (!sig_.has_atom(id.text)) {
          throw Error(ErrorCode::kUnknownSymbol,
                      "unknown atom '" + id.text + "' at column " + std::to_string(id.column),
                      id.column);
        }
        return Pattern::atom(id.text);
      }
      case Tok::kEnd:
        fail("unexpected end of input");
      default:
        fail("unexpected '" + t.text + "'");
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const Signature& sig_;
  bool allow_vars_;
};

}  // namespace

Formula parse_formula(std::string_view text, const Signature& sig) {
  return *Parser(text, sig, false).parse().as_formula();
}

Pattern parse_pattern(std::string_view text, const Signature& sig) {
  return Parser(text, sig, true).parse();
}

std::string render_formula(const Formula& f, const Signature& sig) {
  return render_pattern(Pattern(f), sig);
}

std::string render_pattern(const Pattern& p, const Signature& sig) {
  if (sig.definitions().empty()) return p.text();
  return render_sugared(NodeAccess::node(p), sugar_order(sig)).text;
}

void check_formula(const Formula& f, const Signature& sig) {
  if (f.is_atom()) {
    if (!sig.has_atom(f.symbol())) {
      throw Error(ErrorCode::kUnknownSymbol, "unknown atom '" + f.symbol() + "'");
    }
    return;
  }
  auto arity = sig.arity_of(f.symbol());
  if (!arity || sig.definition_of(f.symbol())) {
    throw Error(ErrorCode::kUnknownSymbol, "unknown connective '" + f.symbol() + "'");
  }
  if (*arity != f.arity()) {
    throw Error(ErrorCode::kArityMismatch, "connective '" + f.symbol() + "' has arity " +
                                               std::to_string(*arity));
  }
  for (std::size_t i = 0; i < f.arity(); ++i) check_formula(f.child(i), sig);
}

// ---------------------------------------------------------------------------
// Universe enumeration

double projected_universe_size(const Signature& sig, std::size_t max_depth) {
  const auto prims = sig.primitive_connectives();
  double base = static_cast<double>(sig.atoms().size());
  for (const auto& c : prims) {
    if (c.arity == 0) base += 1;
  }
  double n = base;
  for (std::size_t d = 1; d <= max_depth; ++d) {
    double next = base;
    for (const auto& c : prims) {
      if (c.arity > 0) next += std::pow(n, static_cast<double>(c.arity));
    }
    if (next == n) break;  // no positive-arity connectives
    n = std::min(next, 1e300);
  }
  return n;
}

std::vector<Formula> enumerate_universe(const Signature& sig, std::size_t max_depth,
                                        std::size_t cap) {
  const double projected = projected_universe_size(sig, max_depth);
  if (projected > static_cast<double>(cap)) {
    std::ostringstream msg;
    msg << "universe of depth " << max_depth << " would have " << std::llround(projected)
        << " formulas, above the cap of " << cap;
    throw Error(ErrorCode::kSizeGuard, msg.str());
  }
  const auto prims = sig.primitive_connectives();
  std::vector<Formula> all;
  for (const auto& a : sig.atoms()) all.push_back(Formula::atom(a));
  for (const auto& c : prims) {
    if (c.arity == 0) all.push_back(Formula::compound(c.name, {}));
  }
  for (std::size_t d = 1; d <= max_depth; ++d) {
    const std::vector<Formula> prev = all;
    for (const auto& c : prims) {
      if (c.arity == 0) continue;
      std::vector<std::size_t> idx(c.arity, 0);
      while (true) {
        std::size_t deepest = 0;
        for (auto i : idx) deepest = std::max(deepest, prev[i].depth());
        if (deepest + 1 == d) {
          std::vector<Formula> kids;
          for (auto i : idx) kids.push_back(prev[i]);
          all.push_back(Formula::compound(c.name, std::move(kids)));
        }
        std::size_t k = 0;
        while (k < c.arity && ++idx[k] == prev.size()) idx[k++] = 0;
        if (k == c.arity) break;
      }
    }
  }
  std::sort(all.begin(), all.end(), FormulaLess{});
  return all;
}

void collect_subformulas(const Formula& f, std::set<Formula, FormulaLess>& out) {
  if (!out.insert(f).second) return;
  for (std::size_t i = 0; i < f.arity(); ++i) collect_subformulas(f.child(i), out);
}

std::set<std::string> atoms_of(const Formula& f) {
  std::set<std::string> out;
  std::vector<Formula> stack{f};
  while (!stack.empty()) {
    Formula g = stack.back();
    stack.pop_back();
    if (g.is_atom()) out.insert(g.symbol());
    for (std::size_t i = 0; i < g.arity(); ++i) stack.push_back(g.child(i));
  }
  return out;
}

}  // namespace parad
