#pragma once

/// @file harness.hpp
/// Seeded batches of independent runs, summary statistics, CSV output and
/// one-iteration progress measurements.

#include <atomic>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "fastga/algorithms.hpp"

namespace fastga {

enum class AlgorithmKind { kRls, kOnePlusOneEa, kOllgaStatic, kOllgaFitdep, kOllgaOneFifth, kOllgaFast };
enum class ProblemKind { kOneMax, kMaxSat };

/// Parses the CLI names (rls, opo-ea, ollga-static, ollga-fitdep,
/// ollga-onefifth, ollga-fast). Throws std::invalid_argument otherwise.
AlgorithmKind parse_algorithm(const std::string& name);
std::string to_string(AlgorithmKind kind);
/// onemax | maxsat.
ProblemKind parse_problem(const std::string& name);
std::string to_string(ProblemKind kind);

/// Upper limit of the heavy-tailed distribution as a function of n.
struct UPolicy {
  enum class Kind { kN, kLog, kFixed };
  Kind kind = Kind::kN;
  std::uint64_t value = 0;

  /// n | 2ln | <positive integer>.
  static UPolicy parse(const std::string& text);
  /// kN: n. kLog: max(1, floor(2 ln(n + 1))) but at most n. kFixed: value.
  std::uint64_t resolve(std::size_t n) const;
  std::string to_string() const;
};

struct AlgorithmSpec {
  AlgorithmKind kind = AlgorithmKind::kOllgaFast;
  /// Heavy-tailed exponent.
  double beta = 2.5;
  UPolicy u;
  /// Cap the one-fifth rule at 2 ln(n + 1).
  bool log_cap = false;
  /// One-fifth update factor.
  double factor = 1.5;
  /// Static lambda; empty selects the tuned value for each n.
  std::optional<double> lambda;

  /// Comma-free label naming the algorithm and its parameters. Also the
  /// stream tag of the per-run seeds.
  std::string label() const;
  /// Fresh controller for one run at size n (ollga kinds only).
  LambdaController make_controller(std::size_t n) const;
};

struct ExperimentConfig {
  AlgorithmSpec algorithm;
  ProblemKind problem = ProblemKind::kOneMax;
  std::vector<std::size_t> sizes;
  std::uint64_t runs = 100;
  std::uint64_t base_seed = 0;
  /// Evaluation budget per run; empty means 10^4 * n.
  std::optional<std::uint64_t> max_evaluations;
  /// Parallel runs; 0 uses the hardware concurrency.
  unsigned workers = 1;
  /// When false, wall_ms is written as 0 so output is byte-reproducible.
  bool record_wall_time = true;
  bool equal_counts_as_success = false;
  /// Optional stop flag: once set, runs in progress end before their next
  /// evaluation and report hit_optimum = false.
  const std::atomic<bool>* cancel = nullptr;

  /// Throws std::invalid_argument on empty sizes, runs == 0, sizes that the
  /// problem cannot use, or a u that leaves [1, n].
  void validate() const;
};

/// One run together with its coordinates.
struct RunRow {
  std::string algorithm;
  std::string problem;
  std::uint64_t n = 0;
  std::uint64_t run = 0;
  RunRecord record;

  friend bool operator==(const RunRow&, const RunRow&) = default;
};

struct SummaryRow {
  std::string algorithm;
  std::string problem;
  std::uint64_t n = 0;
  std::uint64_t runs = 0;
  double mean_evals_per_n = 0.0;
  double std_evals_per_n = 0.0;
  double mean_iterations = 0.0;

  friend bool operator==(const SummaryRow&, const SummaryRow&) = default;
};

struct ExperimentResult {
  std::vector<RunRow> runs;
  std::vector<SummaryRow> summary;
};

/// Seed of one run: derive_seed(base_seed, label, n, run).
std::uint64_t run_seed(const ExperimentConfig& config, std::size_t n, std::uint64_t run);

/// Performs run `run` at size `n`. MAX-3SAT instances and the start point
/// are drawn from the run's own stream, in that order.
RunRow execute_run(const ExperimentConfig& config, std::size_t n, std::uint64_t run);

/// All runs of all sizes, ordered by (n in config order, run index). The
/// output does not depend on the worker count.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// Groups by (algorithm, problem, n) in sorted order. Means are integer sums
/// divided once; the standard deviation uses divisor runs - 1 and is 0 for a
/// single run.
std::vector<SummaryRow> summarize(const std::vector<RunRow>& rows);

inline constexpr const char* kRunsHeader =
    "algorithm,problem,n,run,seed,evaluations,iterations,best_fitness,hit_optimum,wall_ms";
inline constexpr const char* kSummaryHeader =
    "algorithm,problem,n,runs,mean_evals_per_n,std_evals_per_n,mean_iterations";

void write_runs_csv(std::ostream& out, const std::vector<RunRow>& rows);
void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows);
/// Throws std::runtime_error on a wrong header or malformed row.
std::vector<RunRow> read_runs_csv(std::istream& in);
std::vector<SummaryRow> read_summary_csv(std::istream& in);

struct ProgressEstimate {
  double probability = 0.0;
  double standard_error = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
};

/// Fraction of single iterations that strictly improve a OneMax state at
/// distance d from the optimum, each trial starting from the same state with
/// a fresh copy of `controller`. The standard error is binomial.
/// Throws std::invalid_argument unless 1 <= d <= n and trials >= 1.
ProgressEstimate estimate_progress_probability(std::size_t n, std::size_t d, const LambdaController& controller,
                                               std::uint64_t trials, std::uint64_t seed);

}  // namespace fastga
