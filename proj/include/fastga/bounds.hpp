#pragma once

/// @file bounds.hpp
/// Executable versions of the analytical results for the fast
/// (1+(lambda,lambda)) GA on OneMax: harmonic-sum sandwich bounds, moments of
/// the power-law distribution, progress-probability lower bounds, runtime
/// upper bounds and the leading-constant estimate.
///
/// Asymptotic statements are returned as a formula with its hidden constant
/// set to 1 together with the regime that selected it.

#include <cstdint>
#include <string>
#include <utility>

namespace fastga::bounds {

/// Constants that appear in the analysis.
struct AnalysisConstants {
  /// Lower bound on the absolute progress constant: (1/e)(1 - exp(-exp(-3/2))).
  static double c_prime();
  /// Existence constants (C, gamma_1, gamma_2, gamma) are not known
  /// explicitly; numeric evaluation uses this placeholder.
  static constexpr double kPlaceholder = 1.0;
};

/// sum_{i=1}^{k} i^(-alpha), compensated. Throws std::invalid_argument if k == 0.
double harmonic_sum_exact(double alpha, std::uint64_t k);

/// Integral lower bound on sum_{i=1}^{ceil(s)} i^(-alpha):
/// (s^(1-alpha) - 1)/(1 - alpha), or ln(s) for alpha == 1.
/// Throws std::invalid_argument if s < 1.
double harmonic_lower_bound(double alpha, double s);

/// Upper bound on sum_{i=1}^{u} i^(-alpha), split by the sign and size of alpha.
/// Throws std::invalid_argument if u == 0.
double harmonic_upper_bound(double alpha, std::uint64_t u);

/// Both sides of 1 - (1-p)^lambda >= lambda p / (1 + lambda p).
/// Throws std::invalid_argument unless p is in [0,1] and lambda > 0.
std::pair<double, double> bernoulli_amplification(double p, double lambda);

/// E[lambda] = C_{beta,u} sum_{i=1}^{u} i^(1-beta), by direct summation.
double expected_lambda_exact(double beta, std::uint64_t u);

enum class LambdaMoment { kConstant, kLogU, kPowerU, kULogU, kLinearU };

/// Growth class of E[lambda] as u grows.
LambdaMoment expected_lambda_class(double beta);
std::string to_string(LambdaMoment m);

enum class BoundKind {
  kOmega,    // at least a constant times the formula
  kBigO,     // at most a constant times the formula
  kAtLeast,  // explicit lower bound with constant C
};

/// Regime-selected cell of a bound table.
struct AsymptoticBound {
  BoundKind kind = BoundKind::kOmega;
  /// Stable identifier of the table cell, e.g. "progress/beta(1,3)/u<=sqrt(n/d)".
  std::string cell;
  /// Human-readable formula in n, u, beta, d.
  std::string expression;
  /// Human-readable regime condition.
  std::string regime;
  /// Formula evaluated with natural logarithms and hidden constants set to 1.
  double value = 0.0;
};

std::string render(const AsymptoticBound& b);

/// Lower bound on the probability to improve from distance d in one iteration.
/// Throws std::invalid_argument if d is outside [1, n], u == 0, or beta is
/// not finite.
AsymptoticBound progress_bound(double beta, std::uint64_t u, std::uint64_t n, std::uint64_t d);

struct RuntimeBounds {
  AsymptoticBound iterations;
  AsymptoticBound evaluations;
};

/// Upper bounds on expected iterations and fitness evaluations until the
/// optimum of OneMax is found. Threshold ties resolve to the large-u regime.
/// Throws std::invalid_argument if n == 0, u == 0, or beta is not finite.
RuntimeBounds runtime_bound(double beta, std::uint64_t u, std::uint64_t n);

/// Upper estimate of the constant in front of n in the expected number of
/// evaluations: 328 beta (5 - beta) / ((3 - beta)(beta - 2)).
/// Throws std::invalid_argument unless 2 < beta < 3.
double leading_constant(double beta);

}  // namespace fastga::bounds
