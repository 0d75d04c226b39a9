#include "parad/system.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "parad/deduction.hpp"
#include "parad/error.hpp"

namespace parad {

namespace {

void check_pattern(const Pattern& p, const Signature& sig, const std::string& where) {
  switch (p.kind()) {
    case Pattern::Kind::kVar:
      return;
    case Pattern::Kind::kAtom:
      if (!sig.has_atom(p.symbol())) {
        throw Error(ErrorCode::kInvalidSystem, where + ": unknown atom '" + p.symbol() + "'");
      }
      return;
    case Pattern::Kind::kCompound: {
      auto arity = sig.arity_of(p.symbol());
      if (!arity || sig.definition_of(p.symbol()) || *arity != p.arity()) {
        throw Error(ErrorCode::kInvalidSystem,
                    where + ": connective '" + p.symbol() + "' does not fit the signature");
      }
      for (std::size_t i = 0; i < p.arity(); ++i) check_pattern(p.child(i), sig, where);
      return;
    }
  }
}

}  // namespace

FormalSystem::FormalSystem(Signature sig, UniverseSpec universe, std::vector<AxiomSpec> axioms,
                           std::vector<InferenceRule> rules,
                           std::shared_ptr<const DeductionDelegate> delegate)
    : sig_(std::move(sig)),
      spec_(std::move(universe)),
      axioms_(std::move(axioms)),
      rules_(std::move(rules)),
      delegate_(std::move(delegate)) {
  if (is_finite()) {
    if (!spec_.formulas.empty()) {
      for (const auto& f : spec_.formulas) check_formula(f, sig_);
      universe_ = FormulaSet(spec_.formulas);
      if (universe_.size() > spec_.cap) {
        throw Error(ErrorCode::kSizeGuard, "explicit universe exceeds its cap");
      }
    } else {
      universe_ = FormulaSet(enumerate_universe(sig_, spec_.depth, spec_.cap));
    }
    if (universe_.empty()) throw Error(ErrorCode::kInvalidSystem, "universe is empty");
  }
  for (const auto& f : spec_.probe) check_formula(f, sig_);
  probe_ = spec_.probe.empty() && is_finite() ? universe_ : FormulaSet(spec_.probe);
  validate_system(*this);
}

const FormulaSet& FormalSystem::universe() const {
  if (!is_finite()) {
    throw Error(ErrorCode::kPrecondition, "schematic system has no materialized universe");
  }
  return universe_;
}

std::optional<std::size_t> FormalSystem::rule_index(std::string_view name) const {
  for (std::size_t i = 0; i < rules_.size(); ++i) {
    if (rules_[i].name == name) return i;
  }
  return std::nullopt;
}

FormalSystem FormalSystem::with_delegate(std::shared_ptr<const DeductionDelegate> delegate) const {
  FormalSystem copy = *this;
  copy.delegate_ = std::move(delegate);
  return copy;
}

bool operator==(const FormalSystem& a, const FormalSystem& b) {
  if (!(a.sig_ == b.sig_) || a.spec_.mode != b.spec_.mode || a.spec_.depth != b.spec_.depth ||
      a.universe_ != b.universe_ || a.probe_ != b.probe_ || a.axioms_ != b.axioms_ ||
      a.rules_.size() != b.rules_.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.rules_.size(); ++i) {
    const auto& x = a.rules_[i];
    const auto& y = b.rules_[i];
    if (x.name != y.name || x.premises != y.premises || x.conclusion != y.conclusion) return false;
  }
  const std::string la = a.delegate_ ? a.delegate_->label() : "";
  const std::string lb = b.delegate_ ? b.delegate_->label() : "";
  return la == lb;
}

void validate_system(const FormalSystem& sys) {
  const auto& sig = sys.signature();
  std::set<std::string> names;
  for (std::size_t i = 0; i < sys.axioms().size(); ++i) {
    const auto& ax = sys.axioms()[i];
    const std::string where = "axiom " + std::to_string(i + 1);
    check_pattern(ax.pattern(), sig, where);
    if (!ax.is_schema()) {
      if (!ax.pattern().is_ground()) {
        throw Error(ErrorCode::kInvalidSystem, where + ": concrete axiom contains variables");
      }
      if (sys.is_finite() && !sys.universe().contains(*ax.pattern().as_formula())) {
        throw Error(ErrorCode::kInvalidSystem, where + ": concrete axiom outside the universe");
      }
    }
  }
  for (const auto& r : sys.rules()) {
    const std::string where = "rule '" + r.name + "'";
    if (r.name.empty() || !names.insert(r.name).second) {
      throw Error(ErrorCode::kInvalidSystem, where + ": empty or duplicate rule name");
    }
    if (r.degree() == 0) throw Error(ErrorCode::kInvalidSystem, where + ": degree must be >= 1");
    std::set<std::string> premise_vars;
    for (const auto& p : r.premises) {
      check_pattern(p, sig, where);
      auto v = p.vars();
      premise_vars.insert(v.begin(), v.end());
    }
    check_pattern(r.conclusion, sig, where);
    for (const auto& v : r.conclusion.vars()) {
      if (!premise_vars.count(v)) {
        throw Error(ErrorCode::kInvalidSystem,
                    where + ": conclusion variable " + v + " occurs in no premise");
      }
    }
  }
}

FormulaSet axiom_instances(const FormalSystem& sys, const FormulaSet& universe) {
  std::vector<Formula> out;
  for (const auto& f : universe) {
    for (const auto& ax : sys.axioms()) {
      if (match_pattern(ax.pattern(), f)) {
        out.push_back(f);
        break;
      }
    }
  }
  return FormulaSet(std::move(out));
}

std::optional<std::pair<std::size_t, Binding>> axiom_witness(const FormalSystem& sys,
                                                             const Formula& f) {
  for (std::size_t i = 0; i < sys.axioms().size(); ++i) {
    if (auto b = match_pattern(sys.axioms()[i].pattern(), f)) return std::make_pair(i, *b);
  }
  return std::nullopt;
}

namespace {

// Premise positions matched most-specific first so that later positions are
// often fully determined and become membership tests.
std::vector<std::size_t> match_order(const InferenceRule& r) {
  std::vector<std::size_t> order(r.degree());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return r.premises[a].depth() > r.premises[b].depth();
  });
  return order;
}

struct InstanceSearch {
  const FormalSystem& sys;
  const InferenceRule& rule;
  std::size_t rule_idx;
  const FormulaSet& from;
  const FormulaSet* fresh;
  std::size_t fresh_pos;  // first premise position required to be fresh
  const std::function<bool(const Formula&)>& admit;
  std::vector<std::size_t> order;
  std::vector<std::optional<Formula>> chosen;
  std::vector<RuleInstance>& out;

  bool allowed(std::size_t pos, const Formula& f) const {
    if (!fresh) return true;
    if (pos < fresh_pos) return !fresh->contains(f);
    if (pos == fresh_pos) return fresh->contains(f);
    return true;
  }

  void run(std::size_t k, Binding& b) {
    if (k == order.size()) {
      Formula concl = instantiate(rule.conclusion, b);
      if (!admit(concl)) return;
      std::vector<Formula> prem;
      for (const auto& c : chosen) prem.push_back(*c);
      out.push_back(RuleInstance{rule_idx, b, std::move(prem), std::move(concl)});
      return;
    }
    const std::size_t pos = order[k];
    const Pattern& p = rule.premises[pos];
    Pattern partial = substitute(p, b);
    if (auto ground = partial.as_formula()) {
      if (from.contains(*ground) && allowed(pos, *ground)) {
        chosen[pos] = *ground;
        run(k + 1, b);
        chosen[pos].reset();
      }
      return;
    }
    const FormulaSet& pool = (fresh && pos == fresh_pos) ? *fresh : from;
    for (const auto& f : pool) {
      if (!allowed(pos, f)) continue;
      Binding next = b;
      if (!match_into(partial, f, next)) continue;
      chosen[pos] = f;
      run(k + 1, next);
      chosen[pos].reset();
    }
  }
};

}  // namespace

std::vector<RuleInstance> rule_instances(const FormalSystem& sys, const FormulaSet& from,
                                         const std::function<bool(const Formula&)>& admit,
                                         const FormulaSet* fresh) {
  std::vector<RuleInstance> out;
  for (std::size_t ri = 0; ri < sys.rules().size(); ++ri) {
    const auto& rule = sys.rules()[ri];
    const std::size_t passes = fresh ? rule.degree() : 1;
    for (std::size_t fp = 0; fp < passes; ++fp) {
      InstanceSearch s{sys,   rule,  ri, from, fresh, fp, admit, match_order(rule),
                       std::vector<std::optional<Formula>>(rule.degree()), out};
      Binding b;
      s.run(0, b);
    }
  }
  return out;
}

FormulaSet immediate_consequences(const FormalSystem& sys, const FormulaSet& from,
                                  const FormulaSet& universe) {
  std::vector<Formula> out;
  for (auto& inst : rule_instances(sys, from, [&](const Formula& f) {
         return universe.contains(f);
       })) {
    out.push_back(std::move(inst.conclusion));
  }
  return FormulaSet(std::move(out));
}

bool is_rule_instance(const InferenceRule& rule, const std::vector<Formula>& premises,
                      const Formula& conclusion, Binding& binding) {
  if (premises.size() != rule.degree()) return false;
  Binding b;
  for (std::size_t i = 0; i < premises.size(); ++i) {
    if (!match_into(rule.premises[i], premises[i], b)) return false;
  }
  if (!match_into(rule.conclusion, conclusion, b)) return false;
  binding = std::move(b);
  return true;
}

// ---------------------------------------------------------------------------
// System-definition files

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

[[noreturn]] void file_error(std::size_t line, const std::string& msg) {
  throw Error(ErrorCode::kSystemFile, "line " + std::to_string(line) + ": " + msg, line);
}

struct Entry {
  std::size_t line;
  std::string text;
};

std::size_t parse_count(const Entry& e, const std::string& value) {
  try {
    std::size_t used = 0;
    unsigned long long v = std::stoull(value, &used);
    if (used != value.size()) throw std::invalid_argument("trailing");
    return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    file_error(e.line, "expected a non-negative integer, got '" + value + "'");
  }
}

}  // namespace

FormalSystem parse_system(std::string_view text) {
  std::map<std::string, std::vector<Entry>> sections;
  std::string current;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  const std::set<std::string> known{"signature", "definitions", "universe", "axioms", "rules"};
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw.substr(0, raw.find('#'));
    line = trim(line);
    if (line.empty()) continue;
    if (line[0] == '[') {
      auto close = line.find(']');
      if (close == std::string::npos) file_error(line_no, "unterminated section header");
      current = trim(line.substr(1, close - 1));
      if (!known.count(current)) file_error(line_no, "unknown section [" + current + "]");
      if (sections.count(current)) file_error(line_no, "duplicate section [" + current + "]");
      sections[current];
      line = trim(line.substr(close + 1));
      if (line.empty()) continue;
    }
    if (current.empty()) file_error(line_no, "content before the first section");
    sections[current].push_back({line_no, line});
  }
  if (!sections.count("signature")) file_error(line_no, "missing [signature] section");

  auto key_values = [](const std::vector<Entry>& entries) {
    std::vector<std::pair<Entry, std::string>> kv;
    for (const auto& e : entries) {
      for (const auto& part : split(e.text, ';')) {
        if (part.empty()) continue;
        auto eq = part.find('=');
        if (eq == std::string::npos) file_error(e.line, "expected key = value in '" + part + "'");
        kv.push_back({Entry{e.line, trim(part.substr(0, eq))}, trim(part.substr(eq + 1))});
      }
    }
    return kv;
  };

  std::vector<std::string> atoms;
  std::vector<Connective> connectives;
  for (const auto& [key, value] : key_values(sections["signature"])) {
    if (key.text == "atoms") {
      for (const auto& a : split(value, ',')) {
        if (!a.empty()) atoms.push_back(a);
      }
    } else if (key.text == "connectives") {
      for (const auto& c : split(value, ',')) {
        if (c.empty()) continue;
        auto colon = c.rfind(':');
        if (colon == std::string::npos) file_error(key.line, "connective needs name:arity");
        connectives.push_back({trim(c.substr(0, colon)), parse_count(key, trim(c.substr(colon + 1)))});
      }
    } else {
      file_error(key.line, "unknown signature field '" + key.text + "'");
    }
  }

  auto wrap_errors = [](std::size_t line, auto&& fn) {
    try {
      return fn();
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kSystemFile) throw;
      file_error(line, e.what());
    }
  };

  const std::size_t sig_line = sections["signature"].empty() ? 1 : sections["signature"][0].line;
  Signature base = wrap_errors(sig_line, [&] { return Signature(connectives, atoms); });
  std::vector<Definition> defs;
  for (const auto& [key, value] : key_values(sections["definitions"])) {
    defs.push_back(wrap_errors(key.line, [&, &value = value] {
      return Definition{key.text, parse_pattern(value, base)};
    }));
  }
  Signature sig = wrap_errors(sig_line, [&] { return Signature(connectives, atoms, defs); });

  UniverseSpec uspec;
  for (const auto& [key, value] : key_values(sections["universe"])) {
    if (key.text == "mode") {
      if (value == "finite") {
        uspec.mode = UniverseMode::kFinite;
      } else if (value == "schematic") {
        uspec.mode = UniverseMode::kSchematic;
      } else {
        file_error(key.line, "mode must be finite or schematic");
      }
    } else if (key.text == "depth") {
      uspec.depth = parse_count(key, value);
    } else if (key.text == "cap") {
      uspec.cap = parse_count(key, value);
    } else if (key.text == "formulas" || key.text == "probe") {
      auto set = wrap_errors(key.line, [&, &value = value] { return parse_formula_list(value, sig); });
      (key.text == "formulas" ? uspec.formulas : uspec.probe) = set.items();
    } else {
      file_error(key.line, "unknown universe field '" + key.text + "'");
    }
  }

  std::vector<AxiomSpec> axioms;
  for (const auto& e : sections["axioms"]) {
    auto colon = e.text.find(':');
    if (colon == std::string::npos) file_error(e.line, "axiom needs 'schema:' or 'concrete:'");
    const std::string kind = trim(e.text.substr(0, colon));
    const std::string body = trim(e.text.substr(colon + 1));
    if (kind == "schema") {
      axioms.push_back(wrap_errors(e.line, [&] { return AxiomSpec::schema(parse_pattern(body, sig)); }));
    } else if (kind == "concrete") {
      axioms.push_back(wrap_errors(e.line, [&] { return AxiomSpec::concrete(parse_formula(body, sig)); }));
    } else {
      file_error(e.line, "unknown axiom kind '" + kind + "'");
    }
  }

  std::vector<InferenceRule> rules;
  for (const auto& e : sections["rules"]) {
    auto colon = e.text.find(':');
    auto slash = e.text.rfind('/');
    if (colon == std::string::npos || slash == std::string::npos || slash < colon) {
      file_error(e.line, "rule must look like 'name: P1, ..., Pn / C'");
    }
    InferenceRule r{trim(e.text.substr(0, colon)), {}, Pattern::var("V1")};
    wrap_errors(e.line, [&] {
      for (const auto& p : split(e.text.substr(colon + 1, slash - colon - 1), ',')) {
        if (p.empty()) file_error(e.line, "empty premise");
        r.premises.push_back(parse_pattern(p, sig));
      }
      r.conclusion = parse_pattern(trim(e.text.substr(slash + 1)), sig);
      return 0;
    });
    rules.push_back(std::move(r));
  }

  const std::size_t last = line_no == 0 ? 1 : line_no;
  return wrap_errors(last, [&] {
    return FormalSystem(sig, uspec, std::move(axioms), std::move(rules));
  });
}

FormalSystem load_system_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kSystemFile, "cannot open system file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_system(ss.str());
}

std::string emit_system(const FormalSystem& sys) {
  const auto& sig = sys.signature();
  std::ostringstream out;
  out << "[signature] atoms = ";
  for (std::size_t i = 0; i < sig.atoms().size(); ++i) out << (i ? ", " : "") << sig.atoms()[i];
  out << " ; connectives = ";
  for (std::size_t i = 0; i < sig.connectives().size(); ++i) {
    out << (i ? ", " : "") << sig.connectives()[i].name << ":" << sig.connectives()[i].arity;
  }
  out << "\n";
  if (!sig.definitions().empty()) {
    out << "[definitions]\n";
    for (const auto& d : sig.definitions()) out << d.connective << " = " << d.body.text() << "\n";
  }
  const auto& u = sys.universe_spec();
  out << "[universe] mode = " << (sys.is_finite() ? "finite" : "schematic")
      << " ; depth = " << u.depth << " ; cap = " << u.cap;
  auto list = [&](const char* key, const std::vector<Formula>& fs) {
    if (fs.empty()) return;
    out << " ; " << key << " = ";
    for (std::size_t i = 0; i < fs.size(); ++i) out << (i ? ", " : "") << fs[i].text();
  };
  list("formulas", u.formulas);
  list("probe", u.probe);
  out << "\n[axioms]\n";
  for (const auto& ax : sys.axioms()) {
    out << (ax.is_schema() ? "schema: " : "concrete: ") << ax.pattern().text() << "\n";
  }
  out << "[rules]\n";
  for (const auto& r : sys.rules()) {
    out << r.name << ": ";
    for (std::size_t i = 0; i < r.premises.size(); ++i) out << (i ? ", " : "") << r.premises[i].text();
    out << " / " << r.conclusion.text() << "\n";
  }
  return out.str();
}

}  // namespace parad
