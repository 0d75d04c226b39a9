#include <random>

#include "doctest.h"
#include "parad/consistency.hpp"
#include "parad/error.hpp"
#include "parad/paradeduction.hpp"
#include "parad/presets.hpp"
#include "support.hpp"

using namespace parad;

namespace {

FormalSystem conjunction() { return load_system_file(support::data_path("conjunction.sys")); }

const char* kBothBranches =
    "1. [a & b] a & b [premise]\n"
    "2. [a & b] a [rule and_left 1]\n"
    "3. [a -> c] a -> c [premise]\n"
    "4. [a & b, a -> c] c [rule mp 2,3]\n"
    "5. [a & b] b [rule and_right 1]\n"
    "6. [b -> ~c] b -> ~c [premise]\n"
    "7. [a & b, b -> ~c] ~c [rule mp 5,6]\n"
    "8. [a & b, a -> c, b -> ~c] c & ~c [rule and_intro 4,7]\n";

// Right-hand side of the subset characterization, by brute force.
bool some_consistent_subset_derives(const FormalSystem& sys, const FormulaSet& a,
                                    const Formula& goal) {
  const FormulaSet& u = sys.universe();
  for (const auto& sub : support::all_subsets(a)) {
    const FormulaSet c = support::naive_closure(sys, sub, u);
    if (c != u && c.contains(goal)) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("verifying paradeductions over the conjunction system") {
  const FormalSystem sys = conjunction();
  const EnumerativeOracle oracle(sys);
  const FormulaSet a = parse_formula_list("a & b, a -> c, b -> ~c", sys.signature());
  Paradeduction p = parse_paradeduction(kBothBranches, sys, a);
  REQUIRE(p.steps.size() == 8);

  SUBCASE("the conjunction step has an inconsistent support") {
    const auto v = verify_paradeduction(sys, oracle, a, p);
    REQUIRE(v.size() == 1);
    CHECK(v[0].step == 7);
    CHECK(v[0].kind == ViolationKind::kInconsistentSupport);
  }
  SUBCASE("each branch alone verifies") {
    p.steps.erase(p.steps.begin() + 4, p.steps.end());
    CHECK(verify_paradeduction(sys, oracle, a, p).empty());
    CHECK(p.steps.back().support == parse_formula_list("a & b, a -> c", sys.signature()));
    CHECK(check_supports(sys, oracle, a, p).empty());
  }
  SUBCASE("support union mismatch") {
    p.steps.erase(p.steps.begin() + 4, p.steps.end());
    p.steps[3].support = parse_formula_list("a -> c", sys.signature());
    const auto v = verify_paradeduction(sys, oracle, a, p);
    REQUIRE(v.size() == 1);
    CHECK(v[0].kind == ViolationKind::kSupportUnionMismatch);
  }
  SUBCASE("premise support must be the singleton") {
    p.steps.erase(p.steps.begin() + 1, p.steps.end());
    p.steps[0].support = {};
    const auto v = verify_paradeduction(sys, oracle, a, p);
    REQUIRE(v.size() == 1);
    CHECK(v[0].kind == ViolationKind::kBadSupportForPremise);
  }
  SUBCASE("rule mismatch") {
    std::get<RuleJust>(p.steps[3].justification).refs = {2, 1};
    p.steps.erase(p.steps.begin() + 4, p.steps.end());
    const auto v = verify_paradeduction(sys, oracle, a, p);
    REQUIRE_FALSE(v.empty());
    CHECK(v[0].kind == ViolationKind::kBadRuleInstance);
  }
}

TEST_CASE("axiom steps carry the empty support") {
  const Preset toy = load_preset("toy");
  const auto& sys = toy.system;
  Paradeduction p = parse_paradeduction("1. [] ~~q [axiom 1]\n2. [] q [rule dne 1]\n", sys, {});
  CHECK(verify_paradeduction(sys, *toy.oracle, {}, p).empty());
  p = parse_paradeduction("1. [~~q] ~~q [axiom 1]\n", sys, {});
  const auto v = verify_paradeduction(sys, *toy.oracle, {}, p);
  REQUIRE(v.size() == 1);
  CHECK(v[0].kind == ViolationKind::kBadSupportForAxiom);
}

TEST_CASE("projections") {
  const Preset toy = load_preset("toy");
  const auto& sig = toy.system.signature();
  const FormulaSet a = parse_formula_list("p", sig);
  const Paradeduction one = parse_paradeduction("1. [p] p [premise]\n", toy.system, a);
  CHECK(project_supports(one) == std::vector<FormulaSet>{a});
  CHECK(project_formulas(one) == std::vector<Formula>{Formula::atom("p")});
  const Paradeduction ax = parse_paradeduction("1. [] ~~q [axiom 1]\n", toy.system, a);
  CHECK(project_supports(ax) == std::vector<FormulaSet>{FormulaSet{}});
  CHECK(project_formulas(ax) == std::vector<Formula>{parse_formula("~~q", sig)});
}

TEST_CASE("lifting deductions from consistent subsets") {
  const FormalSystem sys = conjunction();
  const EnumerativeOracle oracle(sys);
  const auto& sig = sys.signature();
  const FormulaSet sub = parse_formula_list("a & b, a -> c", sig);
  const auto d = deducible(sys, sub, parse_formula("c", sig));
  REQUIRE(d.witness);
  const Paradeduction p = deduction_to_paradeduction(sys, oracle, sub, *d.witness);
  CHECK(p.steps.back().support == sub);
  CHECK(verify_paradeduction(sys, oracle, sub, p).empty());
  const FormulaSet all = parse_formula_list("a & b, a -> c, b -> ~c", sig);
  CHECK(verify_paradeduction(sys, oracle, all,
                             deduction_to_paradeduction(sys, oracle, sub, *d.witness, all))
            .empty());
  CHECK_THROWS_AS(deduction_to_paradeduction(sys, oracle, all, *d.witness), Error);
  CHECK_THROWS_AS(deduction_to_paradeduction(sys, oracle, sub, *d.witness,
                                             parse_formula_list("a & b", sig)),
                  Error);

  const Deduction single{FormulaSet{Formula::atom("a")}, {{Formula::atom("a"), PremiseJust{}}}};
  const Paradeduction ps = deduction_to_paradeduction(sys, oracle, single.premises, single);
  REQUIRE(ps.steps.size() == 1);
  CHECK(ps.steps[0].support == single.premises);

  // Random consistent subsets of the toy universe, random derivable goals.
  const Preset toy = load_preset("toy");
  const auto& u = toy.system.universe();
  std::mt19937_64 rng(29);
  int lifted = 0;
  while (lifted < 1000) {
    std::vector<Formula> pick;
    for (const auto& f : u) {
      if (rng() % 3 == 0) pick.push_back(f);
    }
    const FormulaSet s(std::move(pick));
    if (toy.oracle->check(s) != Verdict::kConsistent) continue;
    const FormulaSet c = closure(toy.system, s, u);
    const Formula& g = c[rng() % c.size()];
    const auto w = deducible(toy.system, s, g);
    REQUIRE(w.witness);
    std::vector<Formula> extra(s.begin(), s.end());
    extra.push_back(u[rng() % u.size()]);
    const FormulaSet premises(std::move(extra));
    const Paradeduction pd = deduction_to_paradeduction(toy.system, *toy.oracle, s, *w.witness, premises);
    REQUIRE(verify_paradeduction(toy.system, *toy.oracle, premises, pd).empty());
    ++lifted;
  }
}

TEST_CASE("random verified paradeductions pass the per-step support check") {
  const Preset toy = load_preset("toy");
  const auto& u = toy.system.universe();
  std::mt19937_64 rng(31);
  int samples = 0;
  while (samples < 1000) {
    auto p = random_paradeduction(toy.system, *toy.oracle, u, rng);
    if (!p) continue;
    REQUIRE(verify_paradeduction(toy.system, *toy.oracle, u, *p).empty());
    REQUIRE(check_supports(toy.system, *toy.oracle, u, *p).empty());
    for (const auto& st : p->steps) {
      REQUIRE(st.support.is_subset_of(u));
      REQUIRE(toy.oracle->check(st.support) == Verdict::kConsistent);
      REQUIRE(closure(toy.system, st.support, u).contains(st.formula));
    }
    const Paradeduction back =
        parse_paradeduction(serialize_paradeduction(*p, toy.system.signature()), toy.system, u);
    REQUIRE(verify_paradeduction(toy.system, *toy.oracle, u, back).empty());
    REQUIRE(project_formulas(back) == project_formulas(*p));
    REQUIRE(project_supports(back) == project_supports(*p));
    ++samples;
  }
}

TEST_CASE("worked example on the classical preset") {
  const Preset cls = load_preset("classical-pl");
  const auto& sig = cls.system.signature();
  const FormulaSet a = parse_formula_list("a & b, a -> c, b -> ~c", sig);
  for (const char* g : {"c", "~c"}) {
    const ParaVerdict v = paradeducible(cls.system, *cls.oracle, a, parse_formula(g, sig));
    CHECK(v.status == Status::kYes);
    REQUIRE(v.witness);
    CHECK(verify_paradeduction(cls.system, *cls.oracle, a, *v.witness).empty());
    CHECK(v.witness->steps.back().support.size() == 2);
  }
  CHECK(paradeducible(cls.system, *cls.oracle, a, parse_formula("c & ~c", sig)).status ==
        Status::kNo);
  const ParaVerdict one = paradeducible(cls.system, *cls.oracle, a, parse_formula("a & b", sig));
  REQUIRE(one.witness);
  CHECK(one.witness->steps.size() == 1);

  const auto syn = syntactic_entailment(cls.system);
  const auto sem = semantic_entailment(*cls.structure);
  for (const Entailment* e : {&syn, &sem}) {
    CHECK(weak_consequence(*cls.oracle, *e, a, parse_formula("c", sig)));
    CHECK_FALSE(strong_consequence(*cls.oracle, *e, a, parse_formula("c", sig)));
    CHECK(strong_consequence(*cls.oracle, *e, a, parse_formula("(a -> c) | (b -> ~c)", sig)));
    CHECK_FALSE(weak_consequence(*cls.oracle, *e, a, parse_formula("c & ~c", sig)));
  }
  const FormulaSet cons = parse_formula_list("a & b, a -> c", sig);
  CHECK(weak_consequence(*cls.oracle, syn, cons, parse_formula("c", sig)));
  CHECK(strong_consequence(*cls.oracle, syn, cons, parse_formula("c", sig)));
}

TEST_CASE("paraconsequence does not explode") {
  const Preset cls = load_preset("classical-pl");
  const auto& sig = cls.system.signature();
  const FormulaSet u = parse_formula_list("p, ~p, q", sig);
  const FormulaSet a = parse_formula_list("p, ~p", sig);
  const FormulaSet para = cn_para(cls.system, *cls.oracle, a, u);
  CHECK(para == a);
  CHECK_FALSE(para.contains(Formula::atom("q")));
  CHECK(closure(cls.system, a, u).contains(Formula::atom("q")));
  CHECK(cn_para(cls.system, *cls.oracle, {}, u) == closure(cls.system, {}, u));
}

TEST_CASE("subset characterization and monotonicity on the toy preset") {
  const Preset toy = load_preset("toy");
  const auto& sys = toy.system;
  const auto& u = sys.universe();
  const auto subsets = support::subsets_up_to(u, 5);
  for (const auto& a : subsets) {
    const FormulaSet para = cn_para(sys, *toy.oracle, a, u);
    const FormulaSet cl = closure(sys, a, u);
    REQUIRE(para.is_subset_of(cl));
    if (toy.oracle->check(a) == Verdict::kConsistent) REQUIRE(para == cl);
    for (const auto& g : u) {
      const ParaVerdict v = paradeducible(sys, *toy.oracle, a, g);
      const bool brute = some_consistent_subset_derives(sys, a, g);
      REQUIRE(v.status == (brute ? Status::kYes : Status::kNo));
      REQUIRE(para.contains(g) == brute);
      const auto syn = syntactic_entailment(sys);
      REQUIRE(weak_consequence(*toy.oracle, syn, a, g) == brute);
      if (strong_consequence(*toy.oracle, syn, a, g)) REQUIRE(brute);
      if (v.witness) {
        REQUIRE(verify_paradeduction(sys, *toy.oracle, a, *v.witness).empty());
      }
    }
  }
  for (const auto& a : subsets) {
    for (const auto& b : subsets) {
      if (!a.is_subset_of(b)) continue;
      REQUIRE(cn_para(sys, *toy.oracle, a, u).is_subset_of(cn_para(sys, *toy.oracle, b, u)));
    }
  }
}

TEST_CASE("idempotence and cut of the paraconsequence are recorded, not asserted") {
  const Preset toy = load_preset("toy");
  const FormalSystem sys = conjunction();
  const EnumerativeOracle oracle(sys);
  std::size_t idempotence_failures = 0;
  for (const auto& a : support::all_subsets(sys.universe())) {
    const FormulaSet once = cn_para(sys, oracle, a, sys.universe());
    if (cn_para(sys, oracle, once, sys.universe()) != once) ++idempotence_failures;
  }
  MESSAGE("paraconsequence idempotence failures on the conjunction universe: "
          << idempotence_failures);
  CHECK(cn_para(toy.system, *toy.oracle, {}, toy.system.universe()) ==
        closure(toy.system, {}, toy.system.universe()));
}

TEST_CASE("paradeduction witness format") {
  const FormalSystem sys = conjunction();
  const FormulaSet a = parse_formula_list("a & b, a -> c, b -> ~c", sys.signature());
  auto code = [&](const char* text) {
    try {
      parse_paradeduction(text, sys, a);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kSyntax;
  };
  CHECK(code("1. a & b [premise]\n") == ErrorCode::kWitnessFormat);
  CHECK(code("1. [a & b a & b [premise]\n") == ErrorCode::kWitnessFormat);
  CHECK(code("1. [zz] a & b [premise]\n") == ErrorCode::kWitnessFormat);
  const Paradeduction p = parse_paradeduction(kBothBranches, sys, a);
  const Paradeduction back =
      parse_paradeduction(serialize_paradeduction(p, sys.signature()), sys, a);
  CHECK(project_supports(back) == project_supports(p));
  CHECK(project_formulas(back) == project_formulas(p));
}
