#include "parad/presets.hpp"

#include "parad/classical.hpp"
#include "parad/error.hpp"

namespace parad {

namespace {

std::string toy_text() {
  std::string s =
      "# Negation-only system over two atoms.\n"
      "[signature] atoms = p, q ; connectives = ~:1\n"
      "[universe] mode = finite ; depth = 2\n"
      "[axioms]\n"
      "concrete: ~~q\n"
      "[rules]\n"
      "dne: ~~V1 / V1\n"
      "dni: V1 / ~~V1\n";
  const char* atoms[] = {"p", "q"};
  const char* targets[] = {"p", "q", "~p", "~q", "~~p", "~~q"};
  for (const char* x : atoms) {
    for (const char* y : targets) {
      std::string name = std::string("efq_") + x + "_";
      for (const char* c = y; *c; ++c) name += *c == '~' ? 'n' : *c;
      s += name + ": " + x + ", ~" + x + " / " + y + "\n";
    }
  }
  return s;
}

std::string classical_text() {
  std::string atoms;
  for (char c = 'a'; c <= 'z'; ++c) {
    if (c != 'a') atoms += ", ";
    atoms += c;
  }
  return "# Three-axiom propositional calculus with modus ponens.\n"
         "[signature] atoms = " + atoms +
         " ; connectives = ~:1, ->:2, &:2, |:2, <->:2\n"
         "[definitions]\n"
         "& = ~(V1 -> ~V2)\n"
         "| = ~V1 -> V2\n"
         "<-> = ~((V1 -> V2) -> ~(V2 -> V1))\n"
         "[universe] mode = schematic ; depth = 2 ; probe = p, ~p\n"
         "[axioms]\n"
         "schema: V1 -> (V2 -> V1)\n"
         "schema: (V1 -> (V2 -> V3)) -> ((V1 -> V2) -> (V1 -> V3))\n"
         "schema: (~V1 -> ~V2) -> (V2 -> V1)\n"
         "[rules]\n"
         "mp: V1, V1 -> V2 / V2\n";
}

std::shared_ptr<const DeductionDelegate> truth_tables() {
  static const auto d = std::make_shared<const TruthTableDelegate>();
  return d;
}

}  // namespace

std::vector<std::string> preset_names() { return {"classical-pl", "toy"}; }

std::string preset_system_text(std::string_view name) {
  if (name == "toy") return toy_text();
  if (name == "classical-pl") return classical_text();
  throw Error(ErrorCode::kUnknownPreset, "unknown preset '" + std::string(name) +
                                             "' (known: classical-pl, toy)");
}

Preset load_preset(std::string_view name) {
  const std::string text = preset_system_text(name);
  if (name == "toy") {
    FormalSystem sys = parse_system(text);
    auto vs = std::make_shared<const ValuationStructure>(
        build_adequate_structure(sys, sys.universe()));
    auto oracle = memoize(std::make_shared<EnumerativeOracle>(sys));
    require_empty_consistent(*oracle);
    return {"toy", sys, oracle, vs,
            "Finite negation-only system over p, q with universe depth 2, axiom ~~q, "
            "double-negation rules and explosion from x, ~x. The attached structure is the "
            "family of characteristic functions of its consistent theories."};
  }
  FormalSystem sys = parse_system(text).with_delegate(truth_tables());
  auto vs = std::make_shared<const ValuationStructure>(
      ValuationStructure::classical(sys.signature()));
  auto oracle = memoize(std::make_shared<SemanticOracle>(vs, "classical-pl"));
  require_empty_consistent(*oracle);
  return {"classical-pl", sys, oracle, vs,
          "Propositional calculus over atoms a..z with axioms V1 -> (V2 -> V1), "
          "(V1 -> (V2 -> V3)) -> ((V1 -> V2) -> (V1 -> V3)), (~V1 -> ~V2) -> (V2 -> V1) and "
          "modus ponens. &, | and <-> are abbreviations. Derivability is decided by truth "
          "tables, which the completeness theorem licenses; witnesses are explicit proofs."};
}

FormalSystem attach_known_delegate(const FormalSystem& sys) {
  if (sys.delegate() || sys.is_finite()) return sys;
  static const FormalSystem classical = parse_system(classical_text()).with_delegate(truth_tables());
  FormalSystem candidate = sys.with_delegate(truth_tables());
  return candidate == classical ? candidate : sys;
}

}  // namespace parad
