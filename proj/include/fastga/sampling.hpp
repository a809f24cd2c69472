#pragma once

/// @file sampling.hpp
/// Truncated power-law distribution over the offspring population size and
/// the conditioned binomial used for the mutation strength.

#include <cstdint>
#include <span>
#include <vector>

#include "fastga/random.hpp"

namespace fastga {

/// Discrete power law on [1..u] with Pr[i] = C * i^(-beta).
///
/// Immutable after construction, so one instance can be shared by any number
/// of concurrent runs.
class PowerLawDist {
 public:
  /// Throws std::invalid_argument if u == 0 or beta is not finite.
  PowerLawDist(double beta, std::uint64_t u);

  double beta() const noexcept { return beta_; }
  std::uint64_t upper() const noexcept { return u_; }
  /// C_{beta,u}: reciprocal of sum_{i=1}^{u} i^(-beta).
  double norm_const() const noexcept { return norm_const_; }
  /// pmf()[i] is the probability of the value i + 1.
  std::span<const double> pmf() const noexcept { return pmf_; }
  std::span<const double> cdf() const noexcept { return cdf_; }

  /// Inverse-transform sample in [1..u]; O(log u).
  std::uint64_t sample(Rng& rng) const;

 private:
  double beta_;
  std::uint64_t u_;
  double norm_const_;
  std::vector<double> pmf_;
  std::vector<double> cdf_;
};

inline PowerLawDist build_power_law(double beta, std::uint64_t u) { return {beta, u}; }

inline std::uint64_t sample_lambda(const PowerLawDist& dist, Rng& rng) { return dist.sample(rng); }

/// Draws Bin(trials, p) conditioned on a non-zero outcome, by rejection.
/// Requires trials >= 1 and p in (0, 1].
std::uint64_t sample_binomial_nonzero(std::uint64_t trials, double p, Rng& rng);

/// Mutation strength: Bin(n, lambda/n) conditioned on being at least 1.
/// Throws std::invalid_argument unless 0 < lambda <= n.
std::uint64_t sample_ell_conditioned(std::uint64_t n, double lambda, Rng& rng);

}  // namespace fastga
