#pragma once

#include <vector>

namespace oracle {

// Definitional average precision, written independently of the library:
// walk the ranking, and at every rank holding a relevant item recompute the
// precision at that rank by counting relevant items from scratch.
inline double average_precision(const std::vector<bool>& flags, int total_relevant) {
  double sum = 0.0;
  for (std::size_t k = 0; k < flags.size(); ++k) {
    if (!flags[k]) continue;
    int relevant_so_far = 0;
    for (std::size_t j = 0; j <= k; ++j)
      if (flags[j]) ++relevant_so_far;
    sum += double(relevant_so_far) / double(k + 1);
  }
  return sum / double(total_relevant);
}

}  // namespace oracle
