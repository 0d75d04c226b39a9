#ifndef PARAD_METATHEORY_HPP
#define PARAD_METATHEORY_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "parad/consistency.hpp"
#include "parad/system.hpp"

namespace parad {

struct ClaimResult {
  std::string claim;
  bool passed = true;
  std::size_t cases = 0;
  // First failing case, empty on success.
  std::string detail;
};

struct MetatheoryOptions {
  std::size_t max_premises = 4;
  std::size_t random_samples = 1000;
  std::uint64_t seed = 1;
};

// Checks on a finite system, each over every premise set of the universe up
// to max_premises formulas:
//   adequacy                    the structure built from consistent theories
//                               is sound and complete
//   consistency-satisfiability  consistency and satisfiability agree on it
//   step-supports               random verified paradeductions have
//                               consistent, included, deriving supports
//   subset-scan                 A |-P a iff some consistent A' of A derives a
//   syntax-semantics            A |-P a iff A |=P a on that structure
//   containment                 Cn^P(A) is inside Cn(A), equal when A is
//                               consistent
std::vector<ClaimResult> run_metatheory(const FormalSystem& sys, const ConsistencyOracle& oracle,
                                        const MetatheoryOptions& opt = {});

}  // namespace parad

#endif  // PARAD_METATHEORY_HPP
