#include "parad/metatheory.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <random>

#include "parad/error.hpp"
#include "parad/paradeduction.hpp"
#include "parad/valuation.hpp"

namespace parad {

namespace {

void for_each_premise_set(const FormulaSet& u, std::size_t max,
                          const std::function<void(const FormulaSet&)>& fn) {
  check_subset_cap(u.size(), 63);
  SubsetWalk walk(u.size());
  while (auto m = walk.next()) {
    if (static_cast<std::size_t>(std::popcount(*m)) > max) break;
    fn(subset_by_mask(u, *m));
  }
}

void fail(ClaimResult& r, const std::string& why) {
  if (r.passed) r.detail = why;
  r.passed = false;
}

std::string show(const FormulaSet& a, const Signature& sig) { return "{" + render_set(a, sig) + "}"; }

}  // namespace

std::vector<ClaimResult> run_metatheory(const FormalSystem& sys, const ConsistencyOracle& oracle,
                                        const MetatheoryOptions& opt) {
  if (!sys.is_finite()) {
    throw Error(ErrorCode::kPrecondition, "the metatheory battery needs a finite universe");
  }
  const FormulaSet& u = sys.universe();
  const Signature& sig = sys.signature();
  const ValuationStructure vs = build_adequate_structure(sys, u);
  std::vector<ClaimResult> out;

  {
    ClaimResult r{"adequacy", true, 0, {}};
    const auto rep = check_adequacy(sys, vs, u, opt.max_premises);
    r.cases = rep.pairs_checked;
    if (!rep.sound) fail(r, "unsound at " + show(rep.unsound[0].premises, sig));
    if (!rep.complete) fail(r, "incomplete at " + show(rep.incomplete[0].premises, sig));
    out.push_back(r);
  }

  ClaimResult agreement{"consistency-satisfiability", true, 0, {}};
  ClaimResult scan{"subset-scan", true, 0, {}};
  ClaimResult syntax_semantics{"syntax-semantics", true, 0, {}};
  ClaimResult containment{"containment", true, 0, {}};
  for_each_premise_set(u, opt.max_premises, [&](const FormulaSet& a) {
    ++agreement.cases;
    const bool consistent = oracle.check(a) == Verdict::kConsistent;
    if (consistent != vs.satisfiable(a)) fail(agreement, "disagreement at " + show(a, sig));

    // Right-hand side: closures of all consistent subsets.
    FormulaSet reachable;
    for (const auto& s : consistent_subsets(oracle, a)) reachable = reachable.united(closure(sys, s));
    for (const auto& g : u) {
      ++scan.cases;
      ++syntax_semantics.cases;
      const auto v = paradeducible(sys, oracle, a, g, {}, kDefaultSubsetCap, false);
      const bool yes = v.status == Status::kYes;
      if (yes != reachable.contains(g)) fail(scan, "mismatch at " + show(a, sig) + ", " + g.text());
      if (yes != para_entails(vs, a, g)) {
        fail(syntax_semantics, "mismatch at " + show(a, sig) + ", " + g.text());
      }
    }
    ++containment.cases;
    const FormulaSet cp = cn_para(sys, oracle, a, u);
    const FormulaSet cn = closure(sys, a);
    if (!cp.is_subset_of(cn)) fail(containment, "not contained at " + show(a, sig));
    if (consistent && cp != cn) fail(containment, "differs for consistent " + show(a, sig));
  });
  out.push_back(agreement);

  {
    ClaimResult r{"step-supports", true, 0, {}};
    std::mt19937_64 rng(opt.seed);
    std::uniform_int_distribution<std::size_t> size_of(0, std::min(opt.max_premises, u.size()));
    std::size_t attempts = 0;
    while (r.cases < opt.random_samples && attempts < opt.random_samples * 20) {
      ++attempts;
      std::vector<Formula> pick(u.begin(), u.end());
      std::shuffle(pick.begin(), pick.end(), rng);
      pick.erase(pick.begin() + static_cast<std::ptrdiff_t>(size_of(rng)), pick.end());
      const FormulaSet a(std::move(pick));
      auto p = random_paradeduction(sys, oracle, a, rng);
      if (!p) continue;
      ++r.cases;
      if (!verify_paradeduction(sys, oracle, a, *p).empty()) {
        fail(r, "generated paradeduction does not verify from " + show(a, sig));
        continue;
      }
      if (auto bad = check_supports(sys, oracle, a, *p); !bad.empty()) {
        fail(r, "step " + std::to_string(bad[0].step + 1) + ": " + bad[0].reason);
      }
    }
    out.push_back(r);
  }
  out.push_back(scan);
  out.push_back(syntax_semantics);
  out.push_back(containment);
  return out;
}

}  // namespace parad
