#include "fastga/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "fastga/csv.hpp"
#include "fastga/problems.hpp"

namespace fastga {

__extension__ using Wide = unsigned __int128;

// ---------------------------------------------------------------- names

AlgorithmKind parse_algorithm(const std::string& name) {
  if (name == "rls") return AlgorithmKind::kRls;
  if (name == "opo-ea") return AlgorithmKind::kOnePlusOneEa;
  if (name == "ollga-static") return AlgorithmKind::kOllgaStatic;
  if (name == "ollga-fitdep") return AlgorithmKind::kOllgaFitdep;
  if (name == "ollga-onefifth") return AlgorithmKind::kOllgaOneFifth;
  if (name == "ollga-fast") return AlgorithmKind::kOllgaFast;
  throw std::invalid_argument("unknown algorithm '" + name + "'");
}

std::string to_string(AlgorithmKind kind) {
  switch (kind) {
    case AlgorithmKind::kRls: return "rls";
    case AlgorithmKind::kOnePlusOneEa: return "opo-ea";
    case AlgorithmKind::kOllgaStatic: return "ollga-static";
    case AlgorithmKind::kOllgaFitdep: return "ollga-fitdep";
    case AlgorithmKind::kOllgaOneFifth: return "ollga-onefifth";
    case AlgorithmKind::kOllgaFast: return "ollga-fast";
  }
  return "?";
}

ProblemKind parse_problem(const std::string& name) {
  if (name == "onemax") return ProblemKind::kOneMax;
  if (name == "maxsat") return ProblemKind::kMaxSat;
  throw std::invalid_argument("unknown problem '" + name + "'");
}

std::string to_string(ProblemKind kind) {
  return kind == ProblemKind::kOneMax ? "onemax" : "maxsat";
}

UPolicy UPolicy::parse(const std::string& text) {
  if (text == "n") return {Kind::kN, 0};
  if (text == "2ln") return {Kind::kLog, 0};
  std::uint64_t v = 0;
  try {
    v = csv::parse_u64(text, "u");
  } catch (const std::exception&) {
    throw std::invalid_argument("u must be 'n', '2ln' or a positive integer, got '" + text + "'");
  }
  if (v == 0) throw std::invalid_argument("u must be at least 1");
  return {Kind::kFixed, v};
}

std::uint64_t UPolicy::resolve(std::size_t n) const {
  switch (kind) {
    case Kind::kN: return n;
    case Kind::kLog: {
      const auto u = static_cast<std::uint64_t>(std::floor(log_cap(n)));
      return std::clamp<std::uint64_t>(u, 1, std::max<std::uint64_t>(1, n));
    }
    case Kind::kFixed: return value;
  }
  return n;
}

std::string UPolicy::to_string() const {
  switch (kind) {
    case Kind::kN: return "n";
    case Kind::kLog: return "2ln";
    case Kind::kFixed: return std::to_string(value);
  }
  return "?";
}

// --------------------------------------------------------- algorithm settings

std::string AlgorithmSpec::label() const {
  const std::string name = fastga::to_string(kind);
  switch (kind) {
    case AlgorithmKind::kOllgaStatic:
      return name + "[lambda=" + (lambda ? csv::format_double(*lambda) : std::string("tuned")) + "]";
    case AlgorithmKind::kOllgaOneFifth:
      return name + "[F=" + csv::format_double(factor) + " cap=" + (log_cap ? "2ln" : "none") + "]";
    case AlgorithmKind::kOllgaFast:
      return name + "[beta=" + csv::format_double(beta) + " u=" + u.to_string() + "]";
    default:
      return name;
  }
}

LambdaController AlgorithmSpec::make_controller(std::size_t n) const {
  switch (kind) {
    case AlgorithmKind::kOllgaStatic:
      return LambdaController::fixed(lambda ? *lambda : tuned_static_lambda(n));
    case AlgorithmKind::kOllgaFitdep:
      return LambdaController::fitness_dependent();
    case AlgorithmKind::kOllgaOneFifth:
      return LambdaController::one_fifth(log_cap ? std::optional<double>(fastga::log_cap(n)) : std::nullopt, factor);
    case AlgorithmKind::kOllgaFast:
      return LambdaController::heavy_tailed(beta, u.resolve(n));
    default:
      throw std::invalid_argument(fastga::to_string(kind) + " does not use a lambda controller");
  }
}

void ExperimentConfig::validate() const {
  if (sizes.empty()) throw std::invalid_argument("at least one problem size is required");
  if (runs == 0) throw std::invalid_argument("runs must be at least 1");
  if (max_evaluations && *max_evaluations == 0) throw std::invalid_argument("max evaluations must be positive");
  const AlgorithmSpec& a = algorithm;
  if (!std::isfinite(a.beta)) throw std::invalid_argument("beta must be finite");
  if (!(a.factor > 1.0) || !std::isfinite(a.factor)) throw std::invalid_argument("F must be finite and > 1");
  if (a.kind == AlgorithmKind::kOllgaFitdep && problem != ProblemKind::kOneMax) {
    throw std::invalid_argument("the fitness-dependent lambda is only defined on onemax");
  }
  for (std::size_t n : sizes) {
    if (n == 0) throw std::invalid_argument("problem size must be at least 1");
    if (problem == ProblemKind::kMaxSat && n < 3) throw std::invalid_argument("MAX-3SAT needs n >= 3");
    if (a.kind == AlgorithmKind::kOllgaFast) {
      const std::uint64_t u = a.u.resolve(n);
      if (u < 1 || u > n) {
        throw std::invalid_argument("u = " + std::to_string(u) + " is outside [1, n] for n = " + std::to_string(n));
      }
    }
    if (a.kind == AlgorithmKind::kOllgaStatic && a.lambda &&
        !(*a.lambda >= 1.0 && *a.lambda <= static_cast<double>(n))) {
      throw std::invalid_argument("static lambda must lie in [1, n]");
    }
  }
}

// ------------------------------------------------------------------ runs

std::uint64_t run_seed(const ExperimentConfig& config, std::size_t n, std::uint64_t run) {
  return derive_seed(config.base_seed, config.algorithm.label(), n, run);
}

namespace {

// `prototype` carries the heavy-tailed distribution shared by all runs of one size.
RunRow execute_with(const ExperimentConfig& config, const std::string& label, std::size_t n, std::uint64_t run,
                    const std::optional<LambdaController>& prototype) {
  const std::uint64_t seed = derive_seed(config.base_seed, label, n, run);
  Rng rng(seed);

  RunOptions options;
  options.budget.max_evaluations = config.max_evaluations.value_or(10000ULL * n);
  options.budget.cancel = config.cancel;
  options.equal_counts_as_success = config.equal_counts_as_success;

  auto solve = [&](auto& state) {
    switch (config.algorithm.kind) {
      case AlgorithmKind::kRls: return run_rls(state, rng, options);
      case AlgorithmKind::kOnePlusOneEa: return run_one_plus_one_ea(state, rng, options);
      default: {
        LambdaController controller = *prototype;
        return run_ollga(state, controller, rng, options);
      }
    }
  };

  RunRecord rec;
  if (config.problem == ProblemKind::kMaxSat) {
    auto inst = std::make_shared<const SatInstance>(generate_sat_instance(n, rng));
    MaxSatState state(std::move(inst), BitString::random(n, rng));
    rec = solve(state);
  } else {
    OneMaxState state(BitString::random(n, rng));
    rec = solve(state);
  }
  rec.seed = seed;
  if (!config.record_wall_time) rec.wall_ms = 0.0;
  return {label, to_string(config.problem), n, run, rec};
}

bool uses_controller(AlgorithmKind kind) {
  return kind != AlgorithmKind::kRls && kind != AlgorithmKind::kOnePlusOneEa;
}

}  // namespace

RunRow execute_run(const ExperimentConfig& config, std::size_t n, std::uint64_t run) {
  config.validate();
  std::optional<LambdaController> prototype;
  if (uses_controller(config.algorithm.kind)) prototype = config.algorithm.make_controller(n);
  return execute_with(config, config.algorithm.label(), n, run, prototype);
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  config.validate();
  const std::string label = config.algorithm.label();

  std::vector<std::optional<LambdaController>> prototypes(config.sizes.size());
  if (uses_controller(config.algorithm.kind)) {
    for (std::size_t i = 0; i < config.sizes.size(); ++i) {
      prototypes[i] = config.algorithm.make_controller(config.sizes[i]);
    }
  }

  const std::size_t total = config.sizes.size() * config.runs;
  std::vector<RunRow> rows(total);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (std::size_t task = next++; task < total; task = next++) {
      const std::size_t size_index = task / config.runs;
      const std::uint64_t run = task % config.runs;
      try {
        rows[task] = execute_with(config, label, config.sizes[size_index], run, prototypes[size_index]);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = total;
      }
    }
  };

  unsigned workers = config.workers ? config.workers : std::max(1U, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, total));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned i = 0; i < workers; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  ExperimentResult result;
  result.summary = summarize(rows);
  result.runs = std::move(rows);
  return result;
}

// ------------------------------------------------------------ statistics

std::vector<SummaryRow> summarize(const std::vector<RunRow>& rows) {
  struct Acc {
    std::uint64_t runs = 0;
    Wide sum = 0;
    Wide sum_sq = 0;
    Wide iterations = 0;
  };
  using Key = std::tuple<std::string, std::string, std::uint64_t>;
  std::map<Key, Acc> groups;
  for (const RunRow& r : rows) {
    Acc& a = groups[{r.algorithm, r.problem, r.n}];
    const Wide e = r.record.evaluations;
    ++a.runs;
    a.sum += e;
    a.sum_sq += e * e;
    a.iterations += r.record.iterations;
  }

  std::vector<SummaryRow> out;
  out.reserve(groups.size());
  for (const auto& [key, a] : groups) {
    SummaryRow s;
    std::tie(s.algorithm, s.problem, s.n) = key;
    s.runs = a.runs;
    const auto runs = static_cast<long double>(a.runs);
    const auto n = static_cast<long double>(s.n);
    s.mean_evals_per_n = static_cast<double>(static_cast<long double>(a.sum) / (runs * n));
    s.mean_iterations = static_cast<double>(static_cast<long double>(a.iterations) / runs);
    if (a.runs > 1) {
      // runs * sum(e^2) - sum(e)^2 is exact in 128-bit integers.
      const Wide num = a.sum_sq * a.runs - a.sum * a.sum;
      const long double var = static_cast<long double>(num) / (runs * (runs - 1.0L)) / (n * n);
      s.std_evals_per_n = static_cast<double>(std::sqrt(var));
    }
    out.push_back(std::move(s));
  }
  return out;
}

// ------------------------------------------------------------------- CSV

void write_runs_csv(std::ostream& out, const std::vector<RunRow>& rows) {
  out << kRunsHeader << '\n';
  for (const RunRow& r : rows) {
    csv::write_record(out, {r.algorithm, r.problem, std::to_string(r.n), std::to_string(r.run),
                            std::to_string(r.record.seed), std::to_string(r.record.evaluations),
                            std::to_string(r.record.iterations), std::to_string(r.record.best_fitness),
                            r.record.hit_optimum ? "1" : "0", csv::format_double(r.record.wall_ms)});
  }
}

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows) {
  out << kSummaryHeader << '\n';
  for (const SummaryRow& s : rows) {
    csv::write_record(out, {s.algorithm, s.problem, std::to_string(s.n), std::to_string(s.runs),
                            csv::format_double(s.mean_evals_per_n), csv::format_double(s.std_evals_per_n),
                            csv::format_double(s.mean_iterations)});
  }
}

namespace {

std::vector<std::vector<std::string>> read_table(std::istream& in, const char* header, std::size_t width) {
  auto records = csv::read_records(in);
  if (records.empty()) throw std::runtime_error("CSV: missing header");
  std::string got;
  for (std::size_t i = 0; i < records[0].size(); ++i) got += (i ? "," : "") + records[0][i];
  if (got != header) throw std::runtime_error("CSV: unexpected header '" + got + "'");
  records.erase(records.begin());
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (records[i].size() != width) {
      throw std::runtime_error("CSV: row " + std::to_string(i + 1) + " has " + std::to_string(records[i].size()) +
                               " fields, expected " + std::to_string(width));
    }
  }
  return records;
}

}  // namespace

std::vector<RunRow> read_runs_csv(std::istream& in) {
  std::vector<RunRow> rows;
  for (const auto& f : read_table(in, kRunsHeader, 10)) {
    RunRow r;
    r.algorithm = f[0];
    r.problem = f[1];
    r.n = csv::parse_u64(f[2], "n");
    r.run = csv::parse_u64(f[3], "run");
    r.record.seed = csv::parse_u64(f[4], "seed");
    r.record.evaluations = csv::parse_u64(f[5], "evaluations");
    r.record.iterations = csv::parse_u64(f[6], "iterations");
    r.record.best_fitness = csv::parse_i64(f[7], "best_fitness");
    r.record.hit_optimum = csv::parse_bool(f[8], "hit_optimum");
    r.record.wall_ms = csv::parse_double(f[9], "wall_ms");
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<SummaryRow> read_summary_csv(std::istream& in) {
  std::vector<SummaryRow> rows;
  for (const auto& f : read_table(in, kSummaryHeader, 7)) {
    SummaryRow s;
    s.algorithm = f[0];
    s.problem = f[1];
    s.n = csv::parse_u64(f[2], "n");
    s.runs = csv::parse_u64(f[3], "runs");
    s.mean_evals_per_n = csv::parse_double(f[4], "mean_evals_per_n");
    s.std_evals_per_n = csv::parse_double(f[5], "std_evals_per_n");
    s.mean_iterations = csv::parse_double(f[6], "mean_iterations");
    rows.push_back(std::move(s));
  }
  return rows;
}

// -------------------------------------------------------------- progress

ProgressEstimate estimate_progress_probability(std::size_t n, std::size_t d, const LambdaController& controller,
                                               std::uint64_t trials, std::uint64_t seed) {
  if (d < 1 || d > n) throw std::invalid_argument("distance d must lie in [1, n]");
  if (trials == 0) throw std::invalid_argument("trials must be at least 1");

  Rng rng(seed);
  BitString start = BitString::ones(n);
  std::vector<std::uint8_t> marks(n, 0);
  std::vector<BitIndex> zeros;
  sample_sorted_subset(n, d, rng, marks, zeros);
  start.apply(zeros);
  const OneMaxState state(std::move(start));

  ProgressEstimate est;
  est.trials = trials;
  for (std::uint64_t t = 0; t < trials; ++t) {
    LambdaController c = controller;
    if (ollga_step(state, c, rng).fitness > state.fitness()) ++est.successes;
  }
  const double p = static_cast<double>(est.successes) / static_cast<double>(trials);
  est.probability = p;
  est.standard_error = std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
  return est;
}

}  // namespace fastga
