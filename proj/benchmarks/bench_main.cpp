#include <benchmark/benchmark.h>

#include <random>
#include <string>

#include "parad/classical.hpp"
#include "parad/consistency.hpp"
#include "parad/paradeduction.hpp"
#include "parad/presets.hpp"

using namespace parad;

namespace {

const Preset& classical_preset() {
  static const Preset p = load_preset("classical-pl");
  return p;
}

const Preset& toy_preset() {
  static const Preset p = load_preset("toy");
  return p;
}

std::string atom(int i) { return std::string(1, static_cast<char>('a' + i)); }

// Atom a, the chain a -> b -> ... over n atoms, and the negation of the last.
FormulaSet chain_premises(int n) {
  std::string text = atom(0);
  for (int i = 0; i + 1 < n; ++i) text += ", " + atom(i) + " -> " + atom(i + 1);
  text += ", ~" + atom(n - 1);
  return parse_formula_list(text, classical_preset().system.signature());
}

}  // namespace

static void BM_ParadeduceWorkedExample(benchmark::State& state) {
  const Preset& p = classical_preset();
  const auto& sig = p.system.signature();
  const FormulaSet a = parse_formula_list("a & b, a -> c, b -> ~c", sig);
  const Formula goal = parse_formula("c", sig);
  for (auto _ : state) {
    auto v = paradeducible(p.system, *p.oracle, a, goal, {}, kDefaultSubsetCap, true);
    benchmark::DoNotOptimize(v.status);
  }
}
BENCHMARK(BM_ParadeduceWorkedExample);

static void BM_MaximalConsistentSubsets(benchmark::State& state) {
  const Preset& p = classical_preset();
  const FormulaSet a = chain_premises(static_cast<int>(state.range(0)));
  // Unmemoized, so every iteration pays for its truth tables.
  const SemanticOracle oracle(p.structure, "classical-pl");
  std::size_t count = 0;
  for (auto _ : state) {
    count = maximal_consistent_subsets(oracle, a).size();
    benchmark::DoNotOptimize(count);
  }
  state.counters["premises"] = static_cast<double>(a.size());
  state.counters["mcs"] = static_cast<double>(count);
}
BENCHMARK(BM_MaximalConsistentSubsets)->DenseRange(2, 5, 1);

static void BM_ToyClosure(benchmark::State& state) {
  const Preset& p = toy_preset();
  const FormulaSet u = p.system.universe();
  for (auto _ : state) {
    auto c = closure(p.system, u);
    benchmark::DoNotOptimize(c.size());
  }
}
BENCHMARK(BM_ToyClosure);

static void BM_ToyCnParaAllSubsets(benchmark::State& state) {
  const Preset& p = toy_preset();
  const FormulaSet u = p.system.universe();
  const std::vector<Formula> elems(u.begin(), u.end());
  for (auto _ : state) {
    std::size_t total = 0;
    for (Mask m = 0; m < (Mask{1} << elems.size()); ++m) {
      std::vector<Formula> pick;
      for (std::size_t i = 0; i < elems.size(); ++i) {
        if (m >> i & 1u) pick.push_back(elems[i]);
      }
      total += cn_para(p.system, *p.oracle, FormulaSet(std::move(pick)), u).size();
    }
    benchmark::DoNotOptimize(total);
  }
}
BENCHMARK(BM_ToyCnParaAllSubsets);

static void BM_ProveTautology(benchmark::State& state) {
  const auto& sig = classical_preset().system.signature();
  // X -> X for a left-nested implication chain X over n atoms.
  std::string body = atom(0);
  for (int i = 1; i < state.range(0); ++i) body = "(" + body + " -> " + atom(i) + ")";
  const Formula g = parse_formula(body + " -> " + body, sig);
  std::size_t lines = 0;
  for (auto _ : state) {
    auto [proof, target] = prove_tautology(g);
    lines = proof.size();
    benchmark::DoNotOptimize(target);
  }
  state.counters["lines"] = static_cast<double>(lines);
}
BENCHMARK(BM_ProveTautology)->DenseRange(1, 4, 1)->Unit(benchmark::kMillisecond);

static void BM_ClassicalDeduction(benchmark::State& state) {
  const auto& sig = classical_preset().system.signature();
  const FormulaSet a = parse_formula_list("a & b, a -> c", sig);
  const Formula goal = parse_formula("c", sig);
  for (auto _ : state) {
    auto d = classical_deduction(a, goal);
    benchmark::DoNotOptimize(d.has_value());
  }
}
BENCHMARK(BM_ClassicalDeduction)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
