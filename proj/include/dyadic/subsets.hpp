#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace dyadic {

// All non-empty subsets of {0, ..., k-1} with at most `max_size` elements,
// ordered by size and then lexicographically:
//   {0} {1} ... {k-1} {0,1} {0,2} ... {k-2,k-1} {0,1,2} ...
// Every sum over subsets in the library follows this order, which fixes the
// floating-point result.
class SubsetList {
 public:
  SubsetList(std::size_t k, std::size_t max_size);

  std::size_t count() const noexcept { return offsets_.size() - 1; }
  std::span<const std::size_t> operator[](std::size_t i) const {
    return {indices_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
  }

 private:
  std::vector<std::size_t> indices_;
  std::vector<std::size_t> offsets_;
};

}  // namespace dyadic
