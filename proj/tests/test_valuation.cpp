#include <random>

#include "doctest.h"
#include "parad/deduction.hpp"
#include "parad/error.hpp"
#include "parad/presets.hpp"
#include "parad/valuation.hpp"
#include "support.hpp"

using namespace parad;

namespace {

FormalSystem toy() { return parse_system(preset_system_text("toy")); }

Signature classical_sig() { return load_preset("classical-pl").system.signature(); }

FormulaSet set_of(const char* text, const Signature& sig) { return parse_formula_list(text, sig); }

ErrorCode error_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kSyntax;
}

// Every valuation on the carrier except the constant-1 one.
ValuationStructure all_valuations(const FormulaSet& carrier) {
  std::vector<std::vector<bool>> rows;
  const std::uint64_t n = carrier.size();
  for (std::uint64_t m = 0; m + 1 < (std::uint64_t{1} << n); ++m) {
    std::vector<bool> row(n);
    for (std::size_t i = 0; i < n; ++i) row[i] = m >> i & 1u;
    rows.push_back(row);
  }
  return ValuationStructure::explicit_structure(carrier, rows);
}

// Direct reading of the definitions on explicit rows.
bool naive_models(const ValuationStructure& vs, std::size_t row, const FormulaSet& a) {
  for (const auto& f : a) {
    if (!vs.value(row, f)) return false;
  }
  return true;
}

bool naive_entails(const ValuationStructure& vs, const FormulaSet& a, const Formula& g) {
  for (std::size_t r = 0; r < vs.rows().size(); ++r) {
    if (naive_models(vs, r, a) && !vs.value(r, g)) return false;
  }
  return true;
}

bool naive_satisfiable(const ValuationStructure& vs, const FormulaSet& a) {
  for (std::size_t r = 0; r < vs.rows().size(); ++r) {
    if (naive_models(vs, r, a)) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("model sets on an explicit structure") {
  const FormalSystem sys = toy();
  const FormulaSet& u = sys.universe();
  const ValuationStructure vs = build_adequate_structure(sys, u);
  CHECK(vs.models_of({}).size() == vs.rows().size());
  CHECK(vs.models_of(u).empty());
  CHECK(vs.satisfiable({}));
  const auto subsets = support::all_subsets(u);
  for (const auto& a : subsets) {
    for (const auto& b : subsets) {
      if (a.is_subset_of(b)) REQUIRE(vs.models_of(b).is_subset_of(vs.models_of(a)));
    }
  }
  CHECK(error_of([&] { vs.models_of(FormulaSet{parse_formula("~~~p", sys.signature())}); }) ==
        ErrorCode::kOutsideCarrier);
}

TEST_CASE("construction guards") {
  const FormulaSet carrier = toy().universe();
  CHECK(error_of([&] {
          ValuationStructure::explicit_structure(carrier, {{true, true, true, true, true, true}});
        }) == ErrorCode::kConstantOneValuation);
  CHECK(error_of([&] { ValuationStructure::explicit_structure(carrier, {}); }) ==
        ErrorCode::kInvalidArgument);
  CHECK(error_of([&] { ValuationStructure::explicit_structure(carrier, {{true}}); }) ==
        ErrorCode::kInvalidArgument);
  // Constant 0 is allowed.
  const auto zero = ValuationStructure::explicit_structure(carrier, {std::vector<bool>(6, false)});
  CHECK(zero.satisfiable({}));
  CHECK_FALSE(zero.satisfiable(FormulaSet{Formula::atom("p")}));
  CHECK(ValuationStructure::explicit_structure(FormulaSet{}, {}).rows().empty());
}

TEST_CASE("classical backend examples") {
  const auto sig = classical_sig();
  const auto vs = ValuationStructure::classical(sig);
  CHECK_FALSE(vs.satisfiable(set_of("a & b, a -> c, b -> ~c", sig)));
  CHECK(vs.satisfiable(set_of("a & b, a -> c", sig)));
  CHECK(vs.entails(set_of("a & b, a -> c", sig), parse_formula("c", sig)));
  CHECK_FALSE(vs.entails(set_of("a & b", sig), parse_formula("c", sig)));
  CHECK(vs.entails(set_of("p, ~p", sig), parse_formula("q", sig)));
  const FormulaSet ex = set_of("a & b, a -> c, b -> ~c", sig);
  CHECK(para_entails(vs, ex, parse_formula("c", sig)));
  CHECK(para_entails(vs, ex, parse_formula("~c", sig)));
  CHECK_FALSE(para_entails(vs, ex, parse_formula("c & ~c", sig)));
  CHECK(maximal_satisfiable_subsets(vs, ex).size() == 3);
  const auto m = vs.models_of(set_of("a & b", sig), {"a", "b"});
  CHECK(m.members == std::vector<std::uint64_t>{3});
  CHECK(error_of([&] { ValuationStructure::classical(Signature({{"box", 1}}, {"p"})); }) ==
        ErrorCode::kInvalidSignature);
}

TEST_CASE("classical backend agrees with a handwritten truth table") {
  const auto sig = classical_sig();
  const auto vs = ValuationStructure::classical(sig);
  std::mt19937_64 rng(11);
  const std::vector<std::string> atoms{"a", "b", "c", "d"};
  for (int i = 0; i < 500; ++i) {
    std::vector<Formula> fs;
    for (int k = 0; k < 3; ++k) fs.push_back(support::random_formula(rng, atoms, 3, true));
    const FormulaSet a{fs[0], fs[1]};
    REQUIRE(vs.satisfiable(a) == support::tt_satisfiable(a));
    REQUIRE(vs.entails(a, fs[2]) == support::tt_entails(a, fs[2]));
  }
}

TEST_CASE("semantic consequence properties on the toy carrier") {
  const FormalSystem sys = toy();
  const FormulaSet& u = sys.universe();
  std::mt19937_64 rng(3);
  std::vector<ValuationStructure> structures{build_adequate_structure(sys, u), all_valuations(u)};
  for (int i = 0; i < 4; ++i) {
    std::vector<std::vector<bool>> rows;
    for (int r = 0; r < 5; ++r) {
      std::vector<bool> row(u.size());
      do {
        for (std::size_t k = 0; k < row.size(); ++k) row[k] = rng() & 1u;
      } while (std::all_of(row.begin(), row.end(), [](bool b) { return b; }));
      rows.push_back(row);
    }
    structures.push_back(ValuationStructure::explicit_structure(u, rows));
  }
  const auto subsets = support::subsets_up_to(u, 5);
  for (const auto& vs : structures) {
    std::vector<FormulaSet> cn;
    for (const auto& a : subsets) cn.push_back(semantic_consequences(vs, a, u));
    for (std::size_t i = 0; i < subsets.size(); ++i) {
      const FormulaSet& a = subsets[i];
      REQUIRE(vs.satisfiable(a) == naive_satisfiable(vs, a));
      for (const auto& g : u) REQUIRE(vs.entails(a, g) == naive_entails(vs, a, g));
      for (const auto& x : a) REQUIRE(vs.entails(a, x));           // reflexivity
      REQUIRE(a.is_subset_of(cn[i]));                              // inclusion
      REQUIRE(semantic_consequences(vs, cn[i], u) == cn[i]);       // idempotence
      if (!vs.satisfiable(a)) REQUIRE(cn[i] == u);
      for (std::size_t j = 0; j < subsets.size(); ++j) {
        if (subsets[i].is_subset_of(subsets[j])) {
          REQUIRE(cn[i].is_subset_of(cn[j]));                       // monotonicity
        }
        if (subsets[j].is_subset_of(cn[i])) {
          REQUIRE(cn[j].is_subset_of(cn[i]));                       // cut
        }
      }
    }
  }
}

TEST_CASE("satisfiability is inherited by subsets") {
  const FormalSystem sys = toy();
  const FormulaSet& u = sys.universe();
  const ValuationStructure vs = all_valuations(u);
  std::mt19937_64 rng(5);
  const auto subsets = support::all_subsets(u);
  std::uniform_int_distribution<std::size_t> pick(0, subsets.size() - 1);
  std::size_t pairs = 0;
  while (pairs < 1000) {
    const FormulaSet& a = subsets[pick(rng)];
    std::vector<Formula> keep;
    for (const auto& f : a) {
      if (rng() & 1u) keep.push_back(f);
    }
    const FormulaSet b(std::move(keep));
    if (vs.satisfiable(a)) REQUIRE(vs.satisfiable(b));
    ++pairs;
  }
}

TEST_CASE("adequate structure construction") {
  const FormalSystem sys = toy();
  const FormulaSet& u = sys.universe();
  const ValuationStructure vs = build_adequate_structure(sys, u);
  const Theories th = theories(sys, u);
  CHECK(vs.rows().size() == th.consistent.size());
  for (std::size_t r = 0; r < vs.rows().size(); ++r) {
    CHECK_FALSE(std::all_of(vs.rows()[r].begin(), vs.rows()[r].end(), [](bool b) { return b; }));
  }
  // Row r is the characteristic function of a consistent theory T: it models
  // A exactly when A is a subset of T.
  for (std::size_t r = 0; r < vs.rows().size(); ++r) {
    std::vector<Formula> t;
    for (std::size_t i = 0; i < u.size(); ++i) {
      if (vs.rows()[r][i]) t.push_back(vs.carrier()[i]);
    }
    const FormulaSet theory(std::move(t));
    CHECK(closure(sys, theory, u) == theory);
    for (const auto& a : support::all_subsets(u)) {
      REQUIRE(naive_models(vs, r, a) == a.is_subset_of(theory));
    }
  }

  const AdequacyReport rep = check_adequacy(sys, vs, u, 5);
  CHECK(rep.sound);
  CHECK(rep.complete);
  CHECK(rep.pairs_checked == 64 * 6);
  // Consistency and satisfiability coincide.
  for (const auto& a : support::all_subsets(u)) {
    REQUIRE((closure(sys, a, u) != u) == vs.satisfiable(a));
  }
}

TEST_CASE("adequacy checks catch broken structures") {
  const FormalSystem sys = toy();
  const FormulaSet& u = sys.universe();
  const AdequacyReport all = check_adequacy(sys, all_valuations(u), u, 5);
  CHECK_FALSE(all.sound);
  CHECK_FALSE(all.unsound.empty());
  const auto& cx = all.unsound.front();
  CHECK(closure(sys, cx.premises, u).contains(cx.goal));

  const ValuationStructure built = build_adequate_structure(sys, u);
  bool some_incomplete = false;
  for (std::size_t drop = 0; drop < built.rows().size(); ++drop) {
    auto rows = built.rows();
    rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(drop));
    if (rows.empty()) continue;
    const auto vs = ValuationStructure::explicit_structure(built.carrier(), rows);
    const AdequacyReport rep = check_adequacy(sys, vs, u, 5);
    CHECK(rep.sound);
    if (!rep.complete) {
      some_incomplete = true;
      const auto& c = rep.incomplete.front();
      CHECK(vs.entails(c.premises, c.goal));
      CHECK_FALSE(closure(sys, c.premises, u).contains(c.goal));
    }
  }
  CHECK(some_incomplete);
}

TEST_CASE("maximal-satisfiable scan matches the all-subsets scan") {
  const FormalSystem sys = toy();
  const FormulaSet& u = sys.universe();
  const ValuationStructure built = build_adequate_structure(sys, u);
  const ValuationStructure all = all_valuations(u);
  for (const ValuationStructure* vs : {&built, &all}) {
    for (const auto& a : support::subsets_up_to(u, 5)) {
      FormulaSet para;
      for (const auto& g : u) {
        bool naive = false;
        for (const auto& sub : support::all_subsets(a)) {
          if (naive_satisfiable(*vs, sub) && naive_entails(*vs, sub, g)) naive = true;
        }
        REQUIRE(para_entails(*vs, a, g) == naive);
        if (naive) para.insert(g);
      }
      REQUIRE(para_semantic_consequences(*vs, a, u) == para);
      for (const auto& m : maximal_satisfiable_subsets(*vs, a)) {
        REQUIRE(naive_satisfiable(*vs, m));
        for (const auto& x : a) {
          if (m.contains(x)) continue;
          FormulaSet bigger = m;
          bigger.insert(x);
          REQUIRE_FALSE(naive_satisfiable(*vs, bigger));
        }
      }
    }
  }
}

TEST_CASE("valuation file format") {
  const FormalSystem sys = toy();
  const auto& sig = sys.signature();
  const ValuationStructure vs = build_adequate_structure(sys, sys.universe());
  const ValuationStructure back = parse_valuation_structure(emit_valuation_structure(vs, sig), sig);
  CHECK(back.carrier() == vs.carrier());
  CHECK(back.rows() == vs.rows());

  CHECK(error_of([&] { load_valuation_file(support::data_path("toy_broken.val"), sig); }) ==
        ErrorCode::kConstantOneValuation);
  CHECK(error_of([&] { parse_valuation_structure("valuations 1 over 2\np\nq\n0 1 1\n", sig); }) ==
        ErrorCode::kValuationFile);
  CHECK(error_of([&] { parse_valuation_structure("valuations x over 2\n", sig); }) ==
        ErrorCode::kValuationFile);
  CHECK(error_of([&] { parse_valuation_structure("valuations 1 over 1\np\n2\n", sig); }) ==
        ErrorCode::kValuationFile);
  try {
    parse_valuation_structure("# c\nvaluations 1 over 1\np\n0 0\n", sig);
    FAIL("accepted a bad row");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("line 4") != std::string::npos);
  }
  const auto commented = parse_valuation_structure("# c\nvaluations 1 over 1\n\np\n0\n", sig);
  CHECK(commented.rows().size() == 1);
}
