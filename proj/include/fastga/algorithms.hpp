#pragma once

/// @file algorithms.hpp
/// RLS, the (1+1) EA and the (1+(lambda,lambda)) GA with static,
/// fitness-dependent, one-fifth-rule and heavy-tailed choices of lambda.
///
/// All algorithms use the practice-aware accounting: offspring that are
/// provably identical to an already evaluated individual are not evaluated,
/// and a run stops as soon as an evaluated offspring reaches the target.
/// The evaluation of the initial point is not counted.

#include <atomic>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>

#include "fastga/bitstring.hpp"
#include "fastga/problems.hpp"
#include "fastga/random.hpp"
#include "fastga/sampling.hpp"

namespace fastga {

// ------------------------------------------------------------ controllers

struct StaticLambda {
  double lambda = 1.0;
};

/// lambda = sqrt(n / (n - f(x))).
struct FitnessDependentLambda {};

/// Multiplies lambda by factor^(1/4) after a failure and divides it by
/// factor after a success; lambda stays within [1, cap] (cap defaults to n).
struct OneFifthLambda {
  std::optional<double> cap;
  double factor = 1.5;
  double lambda = 1.0;
};

/// Draws lambda afresh from a truncated power law every iteration.
struct HeavyTailedLambda {
  std::shared_ptr<const PowerLawDist> dist;
};

/// What a controller may look at when choosing the next lambda.
struct ControllerInput {
  std::size_t n = 0;
  Fitness fitness = 0;
  /// Outcome of the previous iteration; empty before the first one.
  std::optional<bool> last_success;
};

class LambdaController {
 public:
  using Variant = std::variant<StaticLambda, FitnessDependentLambda, OneFifthLambda, HeavyTailedLambda>;

  /// Throws std::invalid_argument unless lambda >= 1.
  static LambdaController fixed(double lambda);
  static LambdaController fitness_dependent();
  /// Throws std::invalid_argument unless factor > 1 and cap (if given) >= 1.
  static LambdaController one_fifth(std::optional<double> cap = std::nullopt, double factor = 1.5,
                                    double initial_lambda = 1.0);
  static LambdaController heavy_tailed(std::shared_ptr<const PowerLawDist> dist);
  static LambdaController heavy_tailed(double beta, std::uint64_t u);

  /// Returns the lambda for the coming iteration, updating internal state
  /// (the one-fifth rule consumes `last_success`).
  ///
  /// For the fitness-dependent rule the caller must not ask at the optimum;
  /// doing so throws std::domain_error.
  double next_lambda(const ControllerInput& input, Rng& rng);

  const Variant& variant() const noexcept { return state_; }

 private:
  explicit LambdaController(Variant v) : state_(std::move(v)) {}
  Variant state_;
};

inline double controller_next_lambda(LambdaController& controller, const ControllerInput& input, Rng& rng) {
  return controller.next_lambda(input, rng);
}

/// The fitted static choice 2 sqrt(lnp(n) lnp(lnp(n)) / lnp(lnp(lnp(n)))),
/// lnp(x) = ln(x + 1), clamped to [1, n].
double tuned_static_lambda(std::size_t n);

/// Cap of the logarithmically capped variants: 2 ln(n + 1).
double log_cap(std::size_t n);

// ------------------------------------------------------------- run control

struct RunBudget {
  /// Stop once this many evaluations were spent; empty means unlimited.
  std::optional<std::uint64_t> max_evaluations;
  /// Stop once this fitness is reached; empty means the problem optimum.
  std::optional<Fitness> target_fitness;
  /// Stop before the next evaluation once this flag is set, as if the
  /// evaluation budget were spent.
  const std::atomic<bool>* cancel = nullptr;
};

struct RunRecord {
  std::uint64_t evaluations = 0;
  std::uint64_t iterations = 0;
  Fitness best_fitness = 0;
  std::uint64_t seed = 0;
  double wall_ms = 0.0;
  bool hit_optimum = false;
  /// How often a controller proposed lambda > n and was clamped.
  std::uint64_t lambda_clamps = 0;

  friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

/// One finished iteration of any algorithm.
struct IterationReport {
  std::uint64_t iteration = 0;
  double lambda = 1.0;
  std::uint64_t offspring = 1;
  /// Number of flipped bits in each mutant (1 for RLS).
  std::uint64_t ell = 1;
  Fitness parent_fitness = 0;
  Fitness fitness = 0;
  /// Evaluations spent in this iteration.
  std::uint64_t evaluations = 0;
  bool success = false;
};

/// Optional hooks for tests and diagnostics. All default to no-ops.
class RunObserver {
 public:
  virtual ~RunObserver() = default;
  virtual void on_mutant(PatchView /*patch*/, Fitness /*fitness*/) {}
  virtual void on_mutation_winner(PatchView /*patch*/, Fitness /*fitness*/) {}
  /// `evaluated` is false for a subsample equal to the whole winner patch.
  virtual void on_crossover(PatchView /*patch*/, bool /*evaluated*/) {}
  virtual void on_iteration(const IterationReport& /*report*/) {}
};

struct RunOptions {
  RunBudget budget;
  RunObserver* observer = nullptr;
  /// Whether an accepted equal-fitness offspring counts as a success for
  /// the one-fifth rule.
  bool equal_counts_as_success = false;
};

/// Randomized local search: flip one uniformly chosen bit, keep if not worse.
template <FitnessState S>
RunRecord run_rls(S& state, Rng& rng, const RunOptions& options = {});

/// (1+1) EA with rate 1/n; zero-bit offspring are resampled.
template <FitnessState S>
RunRecord run_one_plus_one_ea(S& state, Rng& rng, const RunOptions& options = {});

/// Result of a single (1+(lambda,lambda)) GA iteration that was not applied.
struct OllgaStep {
  double lambda = 1.0;
  std::uint64_t offspring = 1;
  std::uint64_t ell = 1;
  std::uint64_t evaluations = 0;
  Fitness fitness = 0;
  Patch winner;
  bool lambda_clamped = false;
};

/// Runs one mutation and crossover phase from `state` without modifying it.
/// Used for progress-probability measurements.
template <FitnessState S>
OllgaStep ollga_step(const S& state, LambdaController& controller, Rng& rng,
                     std::optional<bool> last_success = std::nullopt, RunObserver* observer = nullptr);

/// The (1+(lambda,lambda)) GA. Mutation rate lambda/n, crossover bias
/// 1/lambda, round(lambda) offspring per phase.
template <FitnessState S>
RunRecord run_ollga(S& state, LambdaController& controller, Rng& rng, const RunOptions& options = {});

}  // namespace fastga
