#include "redplan/distribution.hpp"

#include <cmath>

#include <fmt/format.h>

#include "redplan/errors.hpp"
#include "redplan/harmonic.hpp"

namespace redplan {

namespace {

void check_rate(double rate) {
  if (!(rate > 0.0) || !std::isfinite(rate)) {
    throw InvalidArgument(fmt::format("service rate must be positive and finite, got {}", rate));
  }
}

void check_shift(double shift) {
  if (!(shift >= 0.0) || !std::isfinite(shift)) {
    throw InvalidArgument(fmt::format("shift must be non-negative and finite, got {}", shift));
  }
}

// Rebuilds a law of the same family as `like` with new parameters.
ServiceDistribution same_family(const ServiceDistribution& like, double rate, double shift) {
  if (std::holds_alternative<Exponential>(like)) {
    return Exponential(rate);
  }
  return ShiftedExponential(rate, shift);
}

}  // namespace

Exponential::Exponential(double rate) : rate_(rate) { check_rate(rate); }

ShiftedExponential::ShiftedExponential(double rate, double shift) : rate_(rate), shift_(shift) {
  check_rate(rate);
  check_shift(shift);
}

double rate_of(const ServiceDistribution& dist) noexcept {
  return std::visit([](const auto& d) { return d.rate(); }, dist);
}

double shift_of(const ServiceDistribution& dist) noexcept {
  return std::visit([](const auto& d) { return d.shift(); }, dist);
}

std::string describe(const ServiceDistribution& dist) {
  if (const auto* e = std::get_if<Exponential>(&dist)) {
    return fmt::format("Exp(rate={})", e->rate());
  }
  const auto& s = std::get<ShiftedExponential>(dist);
  return fmt::format("SExp(rate={}, shift={})", s.rate(), s.shift());
}

// Exponential goes through the shifted path with shift 0, so SExp(rate, 0) and
// Exp(rate) agree bit for bit.
double survival(const ServiceDistribution& dist, double t) noexcept {
  const double shift = shift_of(dist);
  if (t < shift) {
    return 1.0;
  }
  return std::exp(-rate_of(dist) * (t - shift));
}

double quantile_of_uniform(const ServiceDistribution& dist, double u) noexcept {
  return shift_of(dist) + (-std::log(u)) / rate_of(dist);
}

double sample(const ServiceDistribution& dist, RandomStream& stream) noexcept {
  return quantile_of_uniform(dist, stream.next_uniform());
}

ServiceDistribution batch_service_distribution(const ServiceDistribution& per_sample,
                                               std::size_t batch_size) {
  if (batch_size == 0) {
    throw InvalidArgument("batch size must be at least 1");
  }
  const auto size = static_cast<double>(batch_size);
  return same_family(per_sample, rate_of(per_sample) / size, shift_of(per_sample) * size);
}

ServiceDistribution min_closure(const ServiceDistribution& dist, std::size_t k) {
  if (k == 0) {
    throw InvalidArgument("replica count must be at least 1");
  }
  return same_family(dist, rate_of(dist) * static_cast<double>(k), shift_of(dist));
}

Moments max_moments(const ServiceDistribution& dist, std::size_t b) {
  if (b == 0) {
    throw InvalidArgument("number of maximised copies must be at least 1");
  }
  const double rate = rate_of(dist);
  return Moments{
      .mean = shift_of(dist) + harmonic(b, 1).value / rate,
      .variance = harmonic(b, 2).value / (rate * rate),
  };
}

}  // namespace redplan
