#include "redplan/harmonic.hpp"

#include <cstdint>
#include <unordered_map>

#include <fmt/format.h>

#include "redplan/errors.hpp"

namespace redplan {

HarmonicValue harmonic(std::size_t n, int order) {
  if (n == 0) {
    throw InvalidArgument("harmonic number requires n >= 1");
  }
  if (order != 1 && order != 2) {
    throw InvalidArgument(fmt::format("harmonic order must be 1 or 2, got {}", order));
  }

  // Memo is per thread.
  thread_local std::unordered_map<std::uint64_t, double> cache;
  const std::uint64_t key = (static_cast<std::uint64_t>(n) << 1) | static_cast<std::uint64_t>(order - 1);
  if (auto it = cache.find(key); it != cache.end()) {
    return {n, order, it->second};
  }

  double sum = 0.0;
  for (std::size_t i = n; i >= 1; --i) {
    const auto x = static_cast<double>(i);
    sum += order == 1 ? 1.0 / x : 1.0 / (x * x);
  }
  cache.emplace(key, sum);
  return {n, order, sum};
}

}  // namespace redplan
