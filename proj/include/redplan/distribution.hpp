#pragma once

#include <cstddef>
#include <string>
#include <variant>

#include "redplan/random_stream.hpp"

namespace redplan {

class Exponential {
 public:
  explicit Exponential(double rate);

  double rate() const noexcept { return rate_; }
  double shift() const noexcept { return 0.0; }

  friend bool operator==(const Exponential&, const Exponential&) = default;

 private:
  double rate_;
};

// Exponential law translated by a deterministic minimum service time.
class ShiftedExponential {
 public:
  ShiftedExponential(double rate, double shift);

  double rate() const noexcept { return rate_; }
  double shift() const noexcept { return shift_; }

  friend bool operator==(const ShiftedExponential&, const ShiftedExponential&) = default;

 private:
  double rate_;
  double shift_;
};

// Per-sample or per-batch service-time law.
using ServiceDistribution = std::variant<Exponential, ShiftedExponential>;

double rate_of(const ServiceDistribution& dist) noexcept;
double shift_of(const ServiceDistribution& dist) noexcept;
std::string describe(const ServiceDistribution& dist);

// Pr{T > t}. Defined for every real t.
double survival(const ServiceDistribution& dist, double t) noexcept;

// Inverse transform: shift + (-ln u) / rate, for u in (0, 1].
double quantile_of_uniform(const ServiceDistribution& dist, double u) noexcept;

double sample(const ServiceDistribution& dist, RandomStream& stream) noexcept;

// Law of one batch under the size-dependent service model: a batch of s
// samples runs at rate/s with shift s * shift.
ServiceDistribution batch_service_distribution(const ServiceDistribution& per_sample,
                                               std::size_t batch_size);

// Exact law of the minimum of k i.i.d. copies.
ServiceDistribution min_closure(const ServiceDistribution& dist, std::size_t k);

struct Moments {
  double mean = 0.0;
  double variance = 0.0;
};

// Exact mean and variance of the maximum of b i.i.d. copies.
Moments max_moments(const ServiceDistribution& dist, std::size_t b);

}  // namespace redplan
