#include "fastga/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace fastga {

namespace {

// Neumaier-compensated accumulator.
struct CompensatedSum {
  double sum = 0.0;
  double comp = 0.0;

  void add(double x) {
    const double t = sum + x;
    if (std::fabs(sum) >= std::fabs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + comp; }
};

}  // namespace

PowerLawDist::PowerLawDist(double beta, std::uint64_t u) : beta_(beta), u_(u) {
  if (u == 0) {
    throw std::invalid_argument("power law: upper limit u must be at least 1");
  }
  if (!std::isfinite(beta)) {
    throw std::invalid_argument("power law: exponent beta must be finite");
  }

  pmf_.resize(u);
  // Smallest terms first when beta > 0 keeps the compensated sum tight.
  CompensatedSum total;
  for (std::uint64_t i = u; i >= 1; --i) {
    const double w = std::pow(static_cast<double>(i), -beta);
    pmf_[i - 1] = w;
    total.add(w);
  }
  norm_const_ = 1.0 / total.value();

  cdf_.resize(u);
  CompensatedSum running;
  for (std::uint64_t i = 0; i < u; ++i) {
    pmf_[i] *= norm_const_;
    running.add(pmf_[i]);
    cdf_[i] = running.value();
  }
  // Rounding may leave the tail a hair off 1; make the search total.
  for (std::uint64_t i = 1; i < u; ++i) {
    cdf_[i] = std::max(cdf_[i], cdf_[i - 1]);
  }
  cdf_[u - 1] = 1.0;
}

std::uint64_t PowerLawDist::sample(Rng& rng) const {
  const double r = uniform01(rng);
  // First index whose cumulative mass exceeds r.
  const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), r);
  const auto idx = static_cast<std::uint64_t>(std::min<std::ptrdiff_t>(
      it - cdf_.begin(), static_cast<std::ptrdiff_t>(u_ - 1)));
  return idx + 1;
}

std::uint64_t sample_binomial_nonzero(std::uint64_t trials, double p, Rng& rng) {
  if (trials == 0 || !(p > 0.0) || p > 1.0) {
    throw std::invalid_argument("conditioned binomial: need trials >= 1 and p in (0, 1]");
  }
  if (p == 1.0) return trials;
  std::binomial_distribution<std::uint64_t> bin(trials, p);
  for (;;) {
    const std::uint64_t k = bin(rng);
    if (k != 0) return k;
  }
}

std::uint64_t sample_ell_conditioned(std::uint64_t n, double lambda, Rng& rng) {
  if (n == 0 || !(lambda > 0.0) || lambda > static_cast<double>(n)) {
    throw std::invalid_argument("mutation strength: need 0 < lambda <= n, got lambda = " +
                                std::to_string(lambda) + ", n = " + std::to_string(n));
  }
  return sample_binomial_nonzero(n, lambda / static_cast<double>(n), rng);
}

}  // namespace fastga
