// Command line front end: run, sweep, bounds, probe, instance.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fastga/bounds.hpp"
#include "fastga/csv.hpp"
#include "fastga/dimacs.hpp"
#include "fastga/harness.hpp"
#include "fastga/problems.hpp"

namespace {

using namespace fastga;
using json = nlohmann::json;

constexpr int kConfigError = 2;
constexpr int kIoError = 3;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Options shared by `run` and `probe`.
struct SpecOptions {
  std::string algorithm = "ollga-fast";
  double beta = 2.5;
  std::string u = "n";
  std::string cap = "none";
  double factor = 1.5;
  std::optional<double> lambda;

  void add_to(CLI::App* app) {
    app->add_option("--algorithm", algorithm, "rls|opo-ea|ollga-static|ollga-fitdep|ollga-onefifth|ollga-fast")
        ->capture_default_str();
    app->add_option("--beta", beta, "power-law exponent")->capture_default_str();
    app->add_option("--u", u, "upper limit: n|2ln|<int>")->capture_default_str();
    app->add_option("--cap", cap, "one-fifth cap: none|2ln")->capture_default_str();
    app->add_option("--F", factor, "one-fifth update factor")->capture_default_str();
    app->add_option("--lambda", lambda, "static lambda (default: tuned)");
  }

  AlgorithmSpec build() const {
    AlgorithmSpec spec;
    spec.kind = parse_algorithm(algorithm);
    spec.beta = beta;
    spec.u = UPolicy::parse(u);
    if (cap == "2ln") {
      spec.log_cap = true;
    } else if (cap != "none") {
      throw std::invalid_argument("cap must be 'none' or '2ln'");
    }
    spec.factor = factor;
    spec.lambda = lambda;
    return spec;
  }
};

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  return out;
}

void finish(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw IoError("failed writing '" + path + "'");
}

void emit(const std::vector<RunRow>& runs, const std::vector<SummaryRow>& summary, const std::string& out_path,
          const std::string& summary_path) {
  if (out_path.empty() || out_path == "-") {
    write_runs_csv(std::cout, runs);
  } else {
    auto out = open_out(out_path);
    write_runs_csv(out, runs);
    finish(out, out_path);
  }
  if (!summary_path.empty()) {
    auto out = open_out(summary_path);
    write_summary_csv(out, summary);
    finish(out, summary_path);
  }
  for (const SummaryRow& s : summary) {
    std::fprintf(stderr, "%-36s %-7s n=%-9llu runs=%-4llu evals/n = %.4f +- %.4f\n", s.algorithm.c_str(),
                 s.problem.c_str(), static_cast<unsigned long long>(s.n), static_cast<unsigned long long>(s.runs),
                 s.mean_evals_per_n, s.std_evals_per_n);
  }
}

// ------------------------------------------------------------------ sweep

template <class T>
T get_or(const json& j, const char* key, T fallback) {
  return j.contains(key) ? j.at(key).get<T>() : fallback;
}

ExperimentConfig config_from_json(const json& j, const json& defaults) {
  auto pick = [&](const char* key) -> const json* {
    if (j.contains(key)) return &j.at(key);
    if (defaults.contains(key)) return &defaults.at(key);
    return nullptr;
  };
  ExperimentConfig c;
  const json* v = nullptr;
  if (!(v = pick("algorithm"))) throw std::invalid_argument("sweep entry without 'algorithm'");
  c.algorithm.kind = parse_algorithm(v->get<std::string>());
  if ((v = pick("beta"))) c.algorithm.beta = v->get<double>();
  if ((v = pick("u"))) c.algorithm.u = UPolicy::parse(v->is_number() ? std::to_string(v->get<std::uint64_t>())
                                                                      : v->get<std::string>());
  if ((v = pick("cap"))) {
    const auto cap = v->get<std::string>();
    if (cap != "none" && cap != "2ln") throw std::invalid_argument("cap must be 'none' or '2ln'");
    c.algorithm.log_cap = cap == "2ln";
  }
  if ((v = pick("F"))) c.algorithm.factor = v->get<double>();
  if ((v = pick("lambda"))) c.algorithm.lambda = v->get<double>();
  if ((v = pick("problem"))) c.problem = parse_problem(v->get<std::string>());
  if ((v = pick("n"))) {
    c.sizes = v->is_array() ? v->get<std::vector<std::size_t>>() : std::vector<std::size_t>{v->get<std::size_t>()};
  }
  if ((v = pick("runs"))) c.runs = v->get<std::uint64_t>();
  if ((v = pick("seed"))) c.base_seed = v->get<std::uint64_t>();
  if ((v = pick("max_evals"))) c.max_evaluations = v->get<std::uint64_t>();
  if ((v = pick("workers"))) c.workers = v->get<unsigned>();
  if ((v = pick("timing"))) c.record_wall_time = v->get<bool>();
  c.validate();
  return c;
}

// ----------------------------------------------------------------- bounds

void print_bounds(double beta, std::uint64_t u, std::uint64_t n, std::optional<std::uint64_t> d, bool as_csv) {
  struct Line {
    std::string quantity;
    std::string cell;
    std::string text;
    std::string regime;
    double value;
  };
  std::vector<Line> lines;
  auto add = [&](const std::string& q, const bounds::AsymptoticBound& b) {
    lines.push_back({q, b.cell, bounds::render(b), b.regime, b.value});
  };
  if (d) add("progress", bounds::progress_bound(beta, u, n, *d));
  const auto rt = bounds::runtime_bound(beta, u, n);
  add("iterations", rt.iterations);
  add("evaluations", rt.evaluations);
  lines.push_back({"expected_lambda", "moment/" + bounds::to_string(bounds::expected_lambda_class(beta)),
                   bounds::to_string(bounds::expected_lambda_class(beta)), "exact sum over [1..u]",
                   bounds::expected_lambda_exact(beta, u)});
  if (beta > 2.0 && beta < 3.0) {
    lines.push_back({"leading_constant", "leading-constant", "328 beta (5 - beta)/((3 - beta)(beta - 2))",
                     "2 < beta < 3", bounds::leading_constant(beta)});
  }

  if (as_csv) {
    std::cout << "quantity,cell,bound,regime,value\n";
    for (const Line& l : lines) csv::write_record(std::cout, {l.quantity, l.cell, l.text, l.regime,
                                                              csv::format_double(l.value)});
    return;
  }
  for (const Line& l : lines) {
    std::printf("%-17s %-44s %-14.6g %s  [%s]\n", l.quantity.c_str(), l.text.c_str(), l.value, l.regime.c_str(),
                l.cell.c_str());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fast (1+(lambda,lambda)) GA benchmark harness"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "run a batch of independent runs");
  SpecOptions run_spec;
  run_spec.add_to(run);
  std::string problem = "onemax";
  std::vector<std::size_t> sizes;
  std::uint64_t runs = 100;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  std::string out_path;
  std::string summary_path;
  std::optional<std::uint64_t> max_evals;
  bool no_timing = false;
  run->add_option("--problem", problem, "onemax|maxsat")->capture_default_str();
  run->add_option("--n", sizes, "problem sizes")->required()->delimiter(',');
  run->add_option("--runs", runs, "runs per size")->capture_default_str();
  run->add_option("--seed", seed, "base seed")->capture_default_str();
  run->add_option("--workers", workers, "parallel runs (0: all cores)")->capture_default_str();
  run->add_option("--out", out_path, "per-run CSV path (default: stdout)");
  run->add_option("--summary", summary_path, "summary CSV path");
  run->add_option("--max-evals", max_evals, "evaluation budget per run (default: 10^4 n)");
  run->add_flag("--no-timing", no_timing, "write wall_ms as 0 for reproducible output");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "run every experiment listed in a JSON file");
  std::string config_path;
  std::string sweep_out;
  std::string sweep_summary;
  sweep->add_option("--config", config_path, "JSON config")->required();
  sweep->add_option("--out", sweep_out, "per-run CSV path (overrides the config)");
  sweep->add_option("--summary", sweep_summary, "summary CSV path (overrides the config)");

  // bounds
  auto* bnd = app.add_subcommand("bounds", "print the matching analytical bounds");
  double b_beta = 2.5;
  std::uint64_t b_u = 0;
  std::uint64_t b_n = 0;
  std::optional<std::uint64_t> b_d;
  bool b_csv = false;
  bnd->add_option("--beta", b_beta, "power-law exponent")->required();
  bnd->add_option("--u", b_u, "upper limit")->required();
  bnd->add_option("--n", b_n, "problem size")->required();
  bnd->add_option("--d", b_d, "distance to the optimum");
  bnd->add_flag("--csv", b_csv, "CSV output");

  // probe
  auto* probe = app.add_subcommand("probe", "estimate the one-iteration improvement probability on OneMax");
  SpecOptions probe_spec;
  probe_spec.add_to(probe);
  std::size_t p_n = 0;
  std::size_t p_d = 0;
  std::uint64_t p_trials = 100000;
  std::uint64_t p_seed = 0;
  probe->add_option("--n", p_n, "problem size")->required();
  probe->add_option("--d", p_d, "distance to the optimum")->required();
  probe->add_option("--trials", p_trials, "iterations to sample")->capture_default_str();
  probe->add_option("--seed", p_seed, "seed")->capture_default_str();

  // instance
  auto* inst = app.add_subcommand("instance", "write a planted MAX-3SAT instance as DIMACS CNF, or read one back");
  std::size_t i_n = 0;
  std::uint64_t i_seed = 0;
  std::string i_out;
  std::string i_read;
  auto* i_n_opt = inst->add_option("--n", i_n, "number of variables");
  inst->add_option("--seed", i_seed, "generator seed")->capture_default_str();
  inst->add_option("--out", i_out, "DIMACS output path (default: stdout)");
  auto* i_read_opt = inst->add_option("--read", i_read, "DIMACS file to load and summarize");
  i_n_opt->excludes(i_read_opt);
  inst->callback([&] {
    if (i_n_opt->count() == 0 && i_read_opt->count() == 0) throw CLI::RequiredError("--n or --read");
  });

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      ExperimentConfig c;
      c.algorithm = run_spec.build();
      c.problem = parse_problem(problem);
      c.sizes = sizes;
      c.runs = runs;
      c.base_seed = seed;
      c.workers = workers;
      c.max_evaluations = max_evals;
      c.record_wall_time = !no_timing;
      const ExperimentResult r = run_experiment(c);
      emit(r.runs, r.summary, out_path, summary_path);
    } else if (sweep->parsed()) {
      std::ifstream in(config_path);
      if (!in) throw IoError("cannot read '" + config_path + "'");
      json doc;
      try {
        doc = json::parse(in);
      } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("bad JSON config: ") + e.what());
      }
      const json defaults = doc.value("defaults", json::object());
      if (!doc.contains("experiments") || !doc.at("experiments").is_array()) {
        throw std::invalid_argument("config needs an 'experiments' array");
      }
      std::vector<ExperimentConfig> configs;
      try {
        for (const json& e : doc.at("experiments")) configs.push_back(config_from_json(e, defaults));
      } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("bad experiment entry: ") + e.what());
      }
      std::vector<RunRow> all;
      for (const ExperimentConfig& c : configs) {
        auto r = run_experiment(c);
        all.insert(all.end(), r.runs.begin(), r.runs.end());
      }
      const std::string out = !sweep_out.empty() ? sweep_out : doc.value("out", std::string());
      const std::string summary = !sweep_summary.empty() ? sweep_summary : doc.value("summary", std::string());
      emit(all, summarize(all), out, summary);
    } else if (bnd->parsed()) {
      print_bounds(b_beta, b_u, b_n, b_d, b_csv);
    } else if (probe->parsed()) {
      const AlgorithmSpec spec = probe_spec.build();
      const auto est = estimate_progress_probability(p_n, p_d, spec.make_controller(p_n), p_trials, p_seed);
      std::cout << "algorithm,n,d,trials,successes,probability,stderr\n";
      csv::write_record(std::cout, {spec.label(), std::to_string(p_n), std::to_string(p_d), std::to_string(est.trials),
                                    std::to_string(est.successes), csv::format_double(est.probability),
                                    csv::format_double(est.standard_error)});
    } else if (inst->parsed()) {
      if (!i_read.empty()) {
        std::ifstream in(i_read);
        if (!in) throw IoError("cannot read '" + i_read + "'");
        const SatInstance loaded = read_dimacs(in);
        std::cout << "vars,clauses,satisfied_by_all_ones\n";
        csv::write_record(std::cout, {std::to_string(loaded.num_vars()), std::to_string(loaded.num_clauses()),
                                      std::to_string(maxsat_eval(loaded, BitString::ones(loaded.num_vars())))});
      } else {
        Rng rng(i_seed);
        const SatInstance generated = generate_sat_instance(i_n, rng);
        if (i_out.empty()) {
          write_dimacs(std::cout, generated);
        } else {
          std::ofstream out(i_out);
          if (!out) throw IoError("cannot write '" + i_out + "'");
          write_dimacs(out, generated);
          if (!out) throw IoError("write to '" + i_out + "' failed");
        }
      }
    }
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  }
  return 0;
}
