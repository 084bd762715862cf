#pragma once

#include <cstddef>

namespace redplan {

struct HarmonicValue {
  std::size_t n = 0;
  int order = 1;
  double value = 0.0;
};

// Partial sum of 1/i^order for i = 1..n, order in {1, 2}. Computed by direct
// summation from the smallest term upward and memoized per thread.
HarmonicValue harmonic(std::size_t n, int order);

}  // namespace redplan
