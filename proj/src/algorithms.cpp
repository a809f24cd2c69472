#include "fastga/algorithms.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace fastga {

// ------------------------------------------------------------ controllers

LambdaController LambdaController::fixed(double lambda) {
  if (!(lambda >= 1.0) || !std::isfinite(lambda)) {
    throw std::invalid_argument("static lambda must be a finite value >= 1");
  }
  return LambdaController(StaticLambda{lambda});
}

LambdaController LambdaController::fitness_dependent() {
  return LambdaController(FitnessDependentLambda{});
}

LambdaController LambdaController::one_fifth(std::optional<double> cap, double factor,
                                             double initial_lambda) {
  if (!(factor > 1.0) || !std::isfinite(factor)) {
    throw std::invalid_argument("one-fifth update factor must be finite and > 1");
  }
  if (cap && !(*cap >= 1.0)) throw std::invalid_argument("one-fifth cap must be >= 1");
  if (!(initial_lambda >= 1.0)) throw std::invalid_argument("initial lambda must be >= 1");
  return LambdaController(OneFifthLambda{cap, factor, initial_lambda});
}

LambdaController LambdaController::heavy_tailed(std::shared_ptr<const PowerLawDist> dist) {
  if (!dist) throw std::invalid_argument("heavy-tailed controller needs a distribution");
  return LambdaController(HeavyTailedLambda{std::move(dist)});
}

LambdaController LambdaController::heavy_tailed(double beta, std::uint64_t u) {
  return heavy_tailed(std::make_shared<const PowerLawDist>(beta, u));
}

double LambdaController::next_lambda(const ControllerInput& input, Rng& rng) {
  const double n = static_cast<double>(input.n);
  return std::visit(
      [&](auto& c) -> double {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, StaticLambda>) {
          return c.lambda;
        } else if constexpr (std::is_same_v<T, FitnessDependentLambda>) {
          const double gap = n - static_cast<double>(input.fitness);
          if (!(gap > 0.0)) {
            throw std::domain_error("fitness-dependent lambda is undefined at the optimum");
          }
          return std::sqrt(n / gap);
        } else if constexpr (std::is_same_v<T, OneFifthLambda>) {
          if (input.last_success) {
            c.lambda = *input.last_success ? c.lambda / c.factor : c.lambda * std::pow(c.factor, 0.25);
          }
          const double upper = std::max(1.0, c.cap ? std::min(*c.cap, n) : n);
          c.lambda = std::clamp(c.lambda, 1.0, upper);
          return c.lambda;
        } else {
          return static_cast<double>(c.dist->sample(rng));
        }
      },
      state_);
}

double log_cap(std::size_t n) { return 2.0 * std::log(static_cast<double>(n) + 1.0); }

double tuned_static_lambda(std::size_t n) {
  const auto lnp = [](double x) { return std::log(x + 1.0); };
  const double a = lnp(static_cast<double>(n));
  const double b = lnp(a);
  const double c = lnp(b);
  const double lambda = 2.0 * std::sqrt(a * b / c);
  return std::clamp(lambda, 1.0, std::max(1.0, static_cast<double>(n)));
}

// --------------------------------------------------------------- helpers

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// Evaluation bookkeeping shared by all algorithms.
struct Counter {
  std::uint64_t evaluations = 0;
  std::optional<std::uint64_t> limit;
  const std::atomic<bool>* cancel = nullptr;
  bool exhausted() const {
    return (limit && evaluations >= *limit) || (cancel && cancel->load(std::memory_order_relaxed));
  }
};

// Reservoir-style uniform tie breaking among equally good candidates.
struct BestTracker {
  Fitness fitness = std::numeric_limits<Fitness>::min();
  std::uint64_t ties = 0;

  // Returns true if the candidate should replace the current best.
  bool offer(Fitness f, Rng& rng) {
    if (ties == 0 || f > fitness) {
      fitness = f;
      ties = 1;
      return true;
    }
    if (f == fitness) {
      ++ties;
      return uniform_below(rng, ties) == 0;
    }
    return false;
  }
  bool empty() const { return ties == 0; }
};

// Reusable buffers of one (1+(lambda,lambda)) GA run.
struct OllgaScratch {
  explicit OllgaScratch(std::size_t n) : marks(n, 0) {}
  std::vector<std::uint8_t> marks;
  std::vector<BitIndex> candidate;
  std::vector<BitIndex> mutation_best;
  std::vector<BitIndex> positions;
  std::vector<BitIndex> child;
  std::vector<BitIndex> crossover_best;
};

enum class StepStatus { kCompleted, kReachedTarget, kExhausted };

struct StepResult {
  StepStatus status = StepStatus::kCompleted;
  double lambda = 1.0;
  std::uint64_t offspring = 1;
  std::uint64_t ell = 1;
  std::uint64_t evaluations = 0;
  Fitness fitness = 0;
  // Points into the scratch buffer holding the selected patch.
  const std::vector<BitIndex>* winner = nullptr;
  bool lambda_clamped = false;
};

template <FitnessState S>
StepResult ollga_iteration(const S& state, LambdaController& controller, Rng& rng,
                           std::optional<bool> last_success, Fitness target, Counter& counter,
                           OllgaScratch& scratch, RunObserver* observer) {
  const std::size_t n = state.size();
  StepResult r;

  double lambda = controller.next_lambda({n, state.fitness(), last_success}, rng);
  if (lambda > static_cast<double>(n)) {
    lambda = static_cast<double>(n);
    r.lambda_clamped = true;
  }
  lambda = std::max(lambda, 1.0);
  const auto offspring = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::llround(lambda)));
  const std::uint64_t ell = sample_ell_conditioned(n, lambda, rng);
  r.lambda = lambda;
  r.offspring = offspring;
  r.ell = ell;

  const std::uint64_t spent_before = counter.evaluations;
  auto finish = [&](StepStatus status, Fitness f, const std::vector<BitIndex>* winner) {
    r.status = status;
    r.fitness = f;
    r.winner = winner;
    r.evaluations = counter.evaluations - spent_before;
    return r;
  };

  // Mutation phase: offspring mutants at Hamming distance ell.
  BestTracker mutation;
  for (std::uint64_t i = 0; i < offspring; ++i) {
    if (counter.exhausted()) return finish(StepStatus::kExhausted, state.fitness(), nullptr);
    sample_sorted_subset(n, ell, rng, scratch.marks, scratch.candidate);
    const Fitness f = state.evaluate(scratch.candidate);
    ++counter.evaluations;
    if (observer) observer->on_mutant(scratch.candidate, f);
    if (mutation.offer(f, rng)) std::swap(scratch.candidate, scratch.mutation_best);
    if (f >= target) {
      if (observer) observer->on_mutation_winner(scratch.mutation_best, mutation.fitness);
      return finish(StepStatus::kReachedTarget, mutation.fitness, &scratch.mutation_best);
    }
  }
  const std::vector<BitIndex>& winner = scratch.mutation_best;
  if (observer) observer->on_mutation_winner(winner, mutation.fitness);

  // Crossover phase with bias 1/lambda. Offspring equal to the parent are
  // redrawn for free; offspring equal to the mutation winner are not evaluated.
  const double bias = 1.0 / lambda;
  BestTracker crossover;
  for (std::uint64_t i = 0; i < offspring; ++i) {
    const std::uint64_t k = sample_binomial_nonzero(ell, bias, rng);
    if (k == ell) {
      if (observer) observer->on_crossover(winner, false);
      continue;
    }
    if (counter.exhausted()) return finish(StepStatus::kExhausted, state.fitness(), nullptr);
    sample_sorted_subset(ell, k, rng, scratch.marks, scratch.positions);
    scratch.child.clear();
    for (BitIndex p : scratch.positions) scratch.child.push_back(winner[p]);
    const Fitness f = state.evaluate(scratch.child);
    ++counter.evaluations;
    if (observer) observer->on_crossover(scratch.child, true);
    if (crossover.offer(f, rng)) std::swap(scratch.child, scratch.crossover_best);
    if (f >= target) return finish(StepStatus::kReachedTarget, f, &scratch.crossover_best);
  }

  // The mutation winner takes part in selection but loses ties.
  if (!crossover.empty() && crossover.fitness >= mutation.fitness) {
    return finish(StepStatus::kCompleted, crossover.fitness, &scratch.crossover_best);
  }
  return finish(StepStatus::kCompleted, mutation.fitness, &scratch.mutation_best);
}

}  // namespace

// ------------------------------------------------------------------ RLS

template <FitnessState S>
RunRecord run_rls(S& state, Rng& rng, const RunOptions& options) {
  const auto start = Clock::now();
  const std::size_t n = state.size();
  const Fitness target = options.budget.target_fitness.value_or(state.optimum());
  Counter counter{0, options.budget.max_evaluations, options.budget.cancel};
  RunRecord rec;
  std::vector<BitIndex> patch(1);

  while (state.fitness() < target && !counter.exhausted()) {
    ++rec.iterations;
    patch[0] = static_cast<BitIndex>(uniform_below(rng, n));
    const Fitness parent = state.fitness();
    const Fitness f = state.evaluate(patch);
    ++counter.evaluations;
    if (f >= parent) state.commit(patch, f);
    if (options.observer) {
      options.observer->on_iteration({rec.iterations, 1.0, 1, 1, parent, state.fitness(), 1, f > parent});
    }
  }
  rec.evaluations = counter.evaluations;
  rec.best_fitness = state.fitness();
  rec.hit_optimum = state.fitness() >= target;
  rec.wall_ms = elapsed_ms(start);
  return rec;
}

// -------------------------------------------------------------- (1+1) EA

template <FitnessState S>
RunRecord run_one_plus_one_ea(S& state, Rng& rng, const RunOptions& options) {
  const auto start = Clock::now();
  const std::size_t n = state.size();
  const Fitness target = options.budget.target_fitness.value_or(state.optimum());
  Counter counter{0, options.budget.max_evaluations, options.budget.cancel};
  RunRecord rec;
  std::vector<std::uint8_t> marks(n, 0);
  std::vector<BitIndex> patch;

  while (state.fitness() < target && !counter.exhausted()) {
    ++rec.iterations;
    // Bin(n, 1/n) conditioned on >= 1 is standard bit mutation with
    // resampling of offspring identical to the parent.
    const std::uint64_t flips = sample_ell_conditioned(n, 1.0, rng);
    sample_sorted_subset(n, flips, rng, marks, patch);
    const Fitness parent = state.fitness();
    const Fitness f = state.evaluate(patch);
    ++counter.evaluations;
    if (f >= parent) state.commit(patch, f);
    if (options.observer) {
      options.observer->on_iteration({rec.iterations, 1.0, 1, flips, parent, state.fitness(), 1, f > parent});
    }
  }
  rec.evaluations = counter.evaluations;
  rec.best_fitness = state.fitness();
  rec.hit_optimum = state.fitness() >= target;
  rec.wall_ms = elapsed_ms(start);
  return rec;
}

// ------------------------------------------------- (1+(lambda,lambda)) GA

template <FitnessState S>
OllgaStep ollga_step(const S& state, LambdaController& controller, Rng& rng,
                     std::optional<bool> last_success, RunObserver* observer) {
  OllgaScratch scratch(state.size());
  Counter counter;
  const StepResult r =
      ollga_iteration(state, controller, rng, last_success, state.optimum(), counter, scratch, observer);
  OllgaStep step;
  step.lambda = r.lambda;
  step.offspring = r.offspring;
  step.ell = r.ell;
  step.evaluations = r.evaluations;
  step.fitness = r.fitness;
  step.winner = Patch(*r.winner, state.size());
  step.lambda_clamped = r.lambda_clamped;
  return step;
}

template <FitnessState S>
RunRecord run_ollga(S& state, LambdaController& controller, Rng& rng, const RunOptions& options) {
  const auto start = Clock::now();
  const Fitness target = options.budget.target_fitness.value_or(state.optimum());
  Counter counter{0, options.budget.max_evaluations, options.budget.cancel};
  OllgaScratch scratch(state.size());
  RunRecord rec;
  std::optional<bool> last_success;

  while (state.fitness() < target && !counter.exhausted()) {
    ++rec.iterations;
    const Fitness parent = state.fitness();
    const StepResult r =
        ollga_iteration(state, controller, rng, last_success, target, counter, scratch, options.observer);
    if (r.lambda_clamped) ++rec.lambda_clamps;
    if (r.status == StepStatus::kExhausted) break;
    if (r.fitness >= parent) state.commit(*r.winner, r.fitness);
    last_success = r.fitness > parent || (options.equal_counts_as_success && r.fitness == parent);
    if (options.observer) {
      options.observer->on_iteration(
          {rec.iterations, r.lambda, r.offspring, r.ell, parent, state.fitness(), r.evaluations, *last_success});
    }
  }
  rec.evaluations = counter.evaluations;
  rec.best_fitness = state.fitness();
  rec.hit_optimum = state.fitness() >= target;
  rec.wall_ms = elapsed_ms(start);
  return rec;
}

#define FASTGA_INSTANTIATE(S)                                                                   \
  template RunRecord run_rls<S>(S&, Rng&, const RunOptions&);                                   \
  template RunRecord run_one_plus_one_ea<S>(S&, Rng&, const RunOptions&);                       \
  template OllgaStep ollga_step<S>(const S&, LambdaController&, Rng&, std::optional<bool>,      \
                                   RunObserver*);                                               \
  template RunRecord run_ollga<S>(S&, LambdaController&, Rng&, const RunOptions&);

FASTGA_INSTANTIATE(OneMaxState)
FASTGA_INSTANTIATE(MaxSatState)

#undef FASTGA_INSTANTIATE

}  // namespace fastga
