#ifndef PARAD_LATTICE_HPP
#define PARAD_LATTICE_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace parad {

using Mask = std::uint64_t;

inline constexpr std::size_t kDefaultSubsetCap = 20;

// Walks the subsets of an n-element base in canonical order: ascending
// cardinality, lexicographic by element position within a cardinality.
class SubsetWalk {
 public:
  explicit SubsetWalk(std::size_t n, bool descending = false);

  std::optional<Mask> next();

 private:
  bool load_level();

  std::size_t n_;
  bool descending_;
  std::size_t k_;
  bool level_done_ = true;
  bool finished_ = false;
  std::vector<std::size_t> comb_;
};

// Maximal masks on which `holds` is true, assuming `holds` is downward closed.
// Visits levels from the top and skips subsets of maxima already found.
// `holds` returning nullopt aborts with kUndecided. Result is in canonical
// order.
std::vector<Mask> maximal_masks(std::size_t n,
                                const std::function<std::optional<bool>(Mask)>& holds);

// Throws kCapExceeded when n exceeds cap (or the 63-bit mask width).
void check_subset_cap(std::size_t n, std::size_t cap);

inline bool mask_subset(Mask a, Mask b) { return (a & ~b) == 0; }

}  // namespace parad

#endif  // PARAD_LATTICE_HPP
