#include "dyadic/subsets.hpp"

#include <algorithm>

namespace dyadic {

SubsetList::SubsetList(std::size_t k, std::size_t max_size) : offsets_{0} {
  max_size = std::min(max_size, k);
  std::vector<std::size_t> comb;
  for (std::size_t size = 1; size <= max_size; ++size) {
    comb.resize(size);
    for (std::size_t i = 0; i < size; ++i) comb[i] = i;
    for (;;) {
      indices_.insert(indices_.end(), comb.begin(), comb.end());
      offsets_.push_back(indices_.size());
      // Advance to the next combination in lexicographic order.
      std::size_t i = size;
      while (i > 0 && comb[i - 1] == k - size + (i - 1)) --i;
      if (i == 0) break;
      ++comb[i - 1];
      for (std::size_t j = i; j < size; ++j) comb[j] = comb[j - 1] + 1;
    }
  }
}

}  // namespace dyadic
