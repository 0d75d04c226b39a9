#include "parad/consistency.hpp"

#include "parad/error.hpp"

namespace parad {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::kConsistent: return "consistent";
    case Verdict::kInconsistent: return "inconsistent";
    case Verdict::kUnknown: return "unknown";
  }
  return "?";
}

EnumerativeOracle::EnumerativeOracle(FormalSystem sys) : sys_(std::move(sys)) {
  if (!sys_.is_finite()) {
    throw Error(ErrorCode::kPrecondition, "the enumerative oracle needs a finite universe");
  }
}

Verdict EnumerativeOracle::check(const FormulaSet& a) const {
  const auto& u = sys_.universe();
  return closure(sys_, a, u).size() == u.size() ? Verdict::kInconsistent : Verdict::kConsistent;
}

SemanticOracle::SemanticOracle(std::shared_ptr<const ValuationStructure> vs,
                               std::string adequacy)
    : vs_(std::move(vs)), adequacy_(std::move(adequacy)) {
  if (!vs_) throw Error(ErrorCode::kInvalidArgument, "semantic oracle without a structure");
}

Verdict SemanticOracle::check(const FormulaSet& a) const {
  return vs_->satisfiable(a) ? Verdict::kConsistent : Verdict::kInconsistent;
}

std::string SemanticOracle::provenance() const {
  return "semantic (" + vs_->describe() + "; adequate for " + adequacy_ + ")";
}

BoundedSyntacticOracle::BoundedSyntacticOracle(FormalSystem sys, Budget budget)
    : sys_(std::move(sys)), budget_(budget) {
  if (sys_.probe().empty()) {
    throw Error(ErrorCode::kPrecondition, "the bounded oracle needs a non-empty probe set");
  }
}

Verdict BoundedSyntacticOracle::check(const FormulaSet& a) const {
  bool all = true;
  for (const auto& f : sys_.probe()) {
    auto v = deducible(sys_, a, f, budget_, false);
    if (v.status == Status::kNo) return Verdict::kConsistent;
    if (v.status == Status::kUnknown) all = false;
  }
  return all ? Verdict::kInconsistent : Verdict::kUnknown;
}

std::string BoundedSyntacticOracle::provenance() const {
  return "bounded (budget " + std::to_string(budget_.max_nodes) + ")";
}

MemoOracle::MemoOracle(std::shared_ptr<const ConsistencyOracle> inner)
    : inner_(std::move(inner)) {
  if (!inner_) throw Error(ErrorCode::kInvalidArgument, "memo over a null oracle");
}

Verdict MemoOracle::check(const FormulaSet& a) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = memo_.find(a);
    if (it != memo_.end()) {
      ++hits_;
      return it->second;
    }
  }
  ++misses_;
  const Verdict v = inner_->check(a);
  std::lock_guard<std::mutex> lock(mu_);
  return memo_.emplace(a, v).first->second;
}

std::shared_ptr<const ConsistencyOracle> memoize(std::shared_ptr<const ConsistencyOracle> o) {
  if (dynamic_cast<const MemoOracle*>(o.get())) return o;
  return std::make_shared<MemoOracle>(std::move(o));
}

void require_empty_consistent(const ConsistencyOracle& o) {
  const Verdict v = o.check(FormulaSet{});
  if (v == Verdict::kInconsistent) {
    throw Error(ErrorCode::kEmptySetInconsistent,
                "the empty set is inconsistent under " + o.provenance());
  }
}

ConsistentSubsets::ConsistentSubsets(const ConsistencyOracle& o, FormulaSet a, std::size_t cap)
    : o_(o), a_(std::move(a)), walk_((check_subset_cap(a_.size(), cap), a_.size())) {}

std::optional<FormulaSet> ConsistentSubsets::next() {
  while (auto m = walk_.next()) {
    FormulaSet s = subset_by_mask(a_, *m);
    const Verdict v = o_.check(s);
    if (v == Verdict::kConsistent) {
      last_ = *m;
      return s;
    }
    if (v == Verdict::kUnknown) ++unknown_;
  }
  return std::nullopt;
}

std::vector<FormulaSet> consistent_subsets(const ConsistencyOracle& o, const FormulaSet& a,
                                           std::size_t cap, std::size_t* unknown) {
  ConsistentSubsets stream(o, a, cap);
  std::vector<FormulaSet> out;
  while (auto s = stream.next()) out.push_back(std::move(*s));
  if (unknown) *unknown = stream.unknown_count();
  return out;
}

std::vector<FormulaSet> maximal_consistent_subsets(const ConsistencyOracle& o,
                                                   const FormulaSet& a, std::size_t cap) {
  check_subset_cap(a.size(), cap);
  auto masks = maximal_masks(a.size(), [&](Mask m) -> std::optional<bool> {
    const Verdict v = o.check(subset_by_mask(a, m));
    if (v == Verdict::kUnknown) return std::nullopt;
    return v == Verdict::kConsistent;
  });
  std::vector<FormulaSet> out;
  out.reserve(masks.size());
  for (auto m : masks) out.push_back(subset_by_mask(a, m));
  return out;
}

}  // namespace parad
