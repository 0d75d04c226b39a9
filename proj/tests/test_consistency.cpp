#include <random>
#include <thread>

#include "doctest.h"
#include "parad/consistency.hpp"
#include "parad/error.hpp"
#include "parad/presets.hpp"
#include "support.hpp"

using namespace parad;

namespace {

FormulaSet set_of(const Preset& p, const char* text) {
  return parse_formula_list(text, p.system.signature());
}

// Subsets of `a` as index lists: ascending size, lexicographic within a size.
std::vector<FormulaSet> canonical_subsets(const FormulaSet& a) {
  std::vector<FormulaSet> out;
  const std::size_t n = a.size();
  for (std::size_t k = 0; k <= n; ++k) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      std::vector<Formula> pick;
      for (auto i : idx) pick.push_back(a[i]);
      out.emplace_back(std::move(pick));
      std::size_t i = k;
      while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return out;
}

Verdict tt_verdict(const FormulaSet& a) {
  return support::tt_satisfiable(a) ? Verdict::kConsistent : Verdict::kInconsistent;
}

}  // namespace

TEST_CASE("classical oracle verdicts") {
  const Preset p = load_preset("classical-pl");
  const auto& o = *p.oracle;
  CHECK(o.check(set_of(p, "a & b, a -> c")) == Verdict::kConsistent);
  CHECK(o.check(set_of(p, "a & b, a -> c, b -> ~c")) == Verdict::kInconsistent);
  CHECK(o.check({}) == Verdict::kConsistent);
  CHECK(o.decisive());
  CHECK(o.provenance().find("classical-pl") != std::string::npos);
  CHECK(std::string(to_string(Verdict::kUnknown)) == "unknown");
}

TEST_CASE("consistent subsets stream in canonical order") {
  const Preset p = load_preset("classical-pl");
  const FormulaSet ex = set_of(p, "a & b, a -> c, b -> ~c");
  std::vector<FormulaSet> expected;
  for (const auto& s : canonical_subsets(ex)) {
    if (tt_verdict(s) == Verdict::kConsistent) expected.push_back(s);
  }
  CHECK(expected.size() == 7);
  CHECK(consistent_subsets(*p.oracle, ex) == expected);

  ConsistentSubsets stream(*p.oracle, ex);
  std::size_t count = 0;
  while (auto s = stream.next()) {
    CHECK(subset_by_mask(stream.base(), stream.last_mask()) == *s);
    ++count;
  }
  CHECK(count == 7);

  CHECK(consistent_subsets(*p.oracle, {}) == std::vector<FormulaSet>{FormulaSet{}});
  CHECK(consistent_subsets(*p.oracle, set_of(p, "p & ~p")) == std::vector<FormulaSet>{FormulaSet{}});
  CHECK_THROWS_AS(consistent_subsets(*p.oracle, ex, 2), Error);
}

TEST_CASE("maximal consistent subsets") {
  const Preset p = load_preset("classical-pl");
  const FormulaSet ex = set_of(p, "a & b, a -> c, b -> ~c");
  const auto mcs = maximal_consistent_subsets(*p.oracle, ex);
  REQUIRE(mcs.size() == 3);
  for (const auto& m : mcs) CHECK(m.size() == 2);
  CHECK(maximal_consistent_subsets(*p.oracle, set_of(p, "a & b, a -> c")) ==
        std::vector<FormulaSet>{set_of(p, "a & b, a -> c")});
  CHECK(maximal_consistent_subsets(*p.oracle, set_of(p, "p, ~p")) ==
        std::vector<FormulaSet>{set_of(p, "p"), set_of(p, "~p")});

  // Against brute force on random classical sets.
  std::mt19937_64 rng(17);
  const std::vector<std::string> atoms{"p", "q", "r"};
  for (int i = 0; i < 200; ++i) {
    std::vector<Formula> fs;
    for (int k = 0; k < 5; ++k) fs.push_back(support::random_formula(rng, atoms, 2, true));
    const FormulaSet a(std::move(fs));
    std::vector<FormulaSet> cons;
    for (const auto& s : canonical_subsets(a)) {
      if (tt_verdict(s) == Verdict::kConsistent) cons.push_back(s);
    }
    std::vector<FormulaSet> maximal;
    for (const auto& s : cons) {
      bool is_max = true;
      for (const auto& t : cons) {
        if (t.size() > s.size() && s.is_subset_of(t)) is_max = false;
      }
      if (is_max) maximal.push_back(s);
    }
    REQUIRE(consistent_subsets(*p.oracle, a) == cons);
    REQUIRE(maximal_consistent_subsets(*p.oracle, a) == maximal);
  }
}

TEST_CASE("subsets of consistent sets are consistent") {
  const Preset toy = load_preset("toy");
  const auto& u = toy.system.universe();
  const auto semantic = std::make_shared<SemanticOracle>(toy.structure, "toy");
  const EnumerativeOracle enumerative(toy.system);
  std::mt19937_64 rng(23);
  const auto subsets = support::all_subsets(u);
  std::uniform_int_distribution<std::size_t> pick(0, subsets.size() - 1);
  for (const ConsistencyOracle* o : {static_cast<const ConsistencyOracle*>(&enumerative),
                                     static_cast<const ConsistencyOracle*>(semantic.get())}) {
    for (int i = 0; i < 1000; ++i) {
      const FormulaSet& a = subsets[pick(rng)];
      std::vector<Formula> keep;
      for (const auto& f : a) {
        if (rng() & 1u) keep.push_back(f);
      }
      if (o->check(a) == Verdict::kConsistent) {
        REQUIRE(o->check(FormulaSet(std::move(keep))) == Verdict::kConsistent);
      }
    }
  }
}

TEST_CASE("enumerative and semantic oracles agree on the toy preset") {
  const Preset toy = load_preset("toy");
  const SemanticOracle semantic(toy.structure, "toy");
  const EnumerativeOracle enumerative(toy.system);
  const auto& u = toy.system.universe();
  for (const auto& a : support::all_subsets(u)) {
    const Verdict e = enumerative.check(a);
    REQUIRE(e == semantic.check(a));
    REQUIRE((e == Verdict::kConsistent) == (support::naive_closure(toy.system, a, u) != u));
  }
  CHECK_THROWS_AS(enumerative.check(set_of(toy, "~~~p")), Error);
  CHECK_THROWS_AS(semantic.check(set_of(toy, "~~~p")), Error);

  const auto mcs = maximal_consistent_subsets(enumerative, u);
  const auto cons = consistent_subsets(enumerative, u);
  for (const auto& m : mcs) CHECK(std::find(cons.begin(), cons.end(), m) != cons.end());
  for (const auto& c : cons) {
    CHECK(std::any_of(mcs.begin(), mcs.end(), [&](const FormulaSet& m) { return c.is_subset_of(m); }));
  }
}

TEST_CASE("memo oracle under concurrent queries") {
  const Preset toy = load_preset("toy");
  const auto inner = std::make_shared<EnumerativeOracle>(toy.system);
  MemoOracle memo(inner);
  const auto subsets = support::all_subsets(toy.system.universe());
  std::vector<Verdict> expected;
  for (const auto& s : subsets) expected.push_back(inner->check(s));
  constexpr int kThreads = 8;
  constexpr int kRounds = 20;
  std::vector<int> mismatches(kThreads, 0);
  std::vector<std::thread> pool;
  for (int t = 0; t < kThreads; ++t) {
    pool.emplace_back([&, t] {
      for (int r = 0; r < kRounds; ++r) {
        for (std::size_t i = 0; i < subsets.size(); ++i) {
          const std::size_t k = (i * (t + 1) + r) % subsets.size();
          if (memo.check(subsets[k]) != expected[k]) ++mismatches[t];
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  for (int m : mismatches) CHECK(m == 0);
  CHECK(memo.hits() + memo.misses() == kThreads * kRounds * subsets.size());
  CHECK(memo.misses() >= subsets.size());
  CHECK(memo.provenance() == "enumerative");
}

TEST_CASE("bounded syntactic oracle") {
  const FormalSystem small = load_system_file(support::data_path("classical_small.sys"));
  const BoundedSyntacticOracle o(small, Budget{2000});
  CHECK_FALSE(o.decisive());
  auto set = [&](const char* t) { return parse_formula_list(t, small.signature()); };
  CHECK(o.check(set("p, ~p")) == Verdict::kInconsistent);
  CHECK(o.check(set("q")) == Verdict::kUnknown);
  CHECK(o.provenance().find("2000") != std::string::npos);
  CHECK_THROWS_AS(maximal_consistent_subsets(o, set("p, q")), Error);
  std::size_t unknown = 0;
  consistent_subsets(o, set("p, ~p"), kDefaultSubsetCap, &unknown);
  CHECK(unknown > 0);

  // On a finite system the bounded search decides, so it matches enumeration.
  const Preset toy = load_preset("toy");
  const BoundedSyntacticOracle finite(toy.system, Budget{});
  const EnumerativeOracle enumerative(toy.system);
  for (const auto& a : support::all_subsets(toy.system.universe())) {
    REQUIRE(finite.check(a) == enumerative.check(a));
  }
}

TEST_CASE("empty set must be consistent") {
  const FormalSystem sys = parse_system(
      "[signature] atoms = p ; connectives = ~:1\n"
      "[universe] mode = finite ; depth = 1\n"
      "[axioms]\nconcrete: p\nconcrete: ~p\n");
  const EnumerativeOracle o(sys);
  CHECK(o.check({}) == Verdict::kInconsistent);
  try {
    require_empty_consistent(o);
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kEmptySetInconsistent);
  }
}
