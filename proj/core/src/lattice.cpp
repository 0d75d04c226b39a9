#include "parad/lattice.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "parad/error.hpp"

namespace parad {

SubsetWalk::SubsetWalk(std::size_t n, bool descending)
    : n_(n), descending_(descending), k_(descending ? n : 0) {}

bool SubsetWalk::load_level() {
  comb_.resize(k_);
  for (std::size_t i = 0; i < k_; ++i) comb_[i] = i;
  level_done_ = false;
  return true;
}

std::optional<Mask> SubsetWalk::next() {
  if (finished_) return std::nullopt;
  if (level_done_) {
    load_level();
  } else {
    // Advance to the next k-combination in lexicographic order.
    std::size_t i = k_;
    while (i > 0 && comb_[i - 1] == n_ - k_ + (i - 1)) --i;
    if (i == 0) {
      if (descending_ ? k_ == 0 : k_ == n_) {
        finished_ = true;
        return std::nullopt;
      }
      k_ = descending_ ? k_ - 1 : k_ + 1;
      load_level();
    } else {
      ++comb_[i - 1];
      for (std::size_t j = i; j < k_; ++j) comb_[j] = comb_[j - 1] + 1;
    }
  }
  Mask m = 0;
  for (auto c : comb_) m |= Mask{1} << c;
  return m;
}

std::vector<Mask> maximal_masks(std::size_t n,
                                const std::function<std::optional<bool>(Mask)>& holds) {
  std::vector<Mask> found;
  SubsetWalk walk(n, true);
  while (auto m = walk.next()) {
    bool covered = std::any_of(found.begin(), found.end(),
                               [&](Mask f) { return mask_subset(*m, f); });
    if (covered) continue;
    auto v = holds(*m);
    if (!v) {
      throw Error(ErrorCode::kUndecided,
                  "a subset verdict is unknown, so maximality cannot be decided");
    }
    if (*v) found.push_back(*m);
  }
  std::sort(found.begin(), found.end(), [](Mask a, Mask b) {
    const int ca = std::popcount(a), cb = std::popcount(b);
    if (ca != cb) return ca < cb;
    // Lexicographic on positions: the lower set bit that differs wins.
    const Mask diff = a ^ b;
    const Mask low = diff & (~diff + 1);
    return (a & low) != 0;
  });
  return found;
}

void check_subset_cap(std::size_t n, std::size_t cap) {
  if (n > cap || n > 63) {
    throw Error(ErrorCode::kCapExceeded, "premise set of size " + std::to_string(n) +
                                             " exceeds the subset cap of " +
                                             std::to_string(std::min<std::size_t>(cap, 63)));
  }
}

}  // namespace parad
