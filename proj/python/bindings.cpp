#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fastga/bounds.hpp"
#include "fastga/dimacs.hpp"
#include "fastga/harness.hpp"
#include "fastga/problems.hpp"
#include "fastga/sampling.hpp"

namespace py = pybind11;
using namespace fastga;

namespace {

AlgorithmSpec make_spec(const std::string& algorithm, double beta, const std::string& u, bool log_cap,
                        double factor, std::optional<double> lambda) {
  AlgorithmSpec spec;
  spec.kind = parse_algorithm(algorithm);
  spec.beta = beta;
  spec.u = UPolicy::parse(u);
  spec.log_cap = log_cap;
  spec.factor = factor;
  spec.lambda = lambda;
  return spec;
}

py::dict bound_dict(const bounds::AsymptoticBound& b) {
  py::dict d;
  d["cell"] = b.cell;
  d["expression"] = b.expression;
  d["regime"] = b.regime;
  d["rendered"] = bounds::render(b);
  d["value"] = b.value;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Heavy-tailed (1+(lambda,lambda)) GA experiments";

  py::class_<PowerLawDist>(m, "PowerLaw")
      .def(py::init<double, std::uint64_t>(), py::arg("beta"), py::arg("u"))
      .def_property_readonly("beta", &PowerLawDist::beta)
      .def_property_readonly("u", &PowerLawDist::upper)
      .def_property_readonly("norm_const", &PowerLawDist::norm_const)
      .def("pmf", [](const PowerLawDist& d) { return std::vector<double>(d.pmf().begin(), d.pmf().end()); })
      .def(
          "sample",
          [](const PowerLawDist& d, std::size_t count, std::uint64_t seed) {
            Rng rng(seed);
            std::vector<std::uint64_t> out(count);
            for (auto& x : out) x = d.sample(rng);
            return out;
          },
          py::arg("count"), py::arg("seed"));

  py::class_<SatInstance>(m, "SatInstance")
      .def_property_readonly("num_vars", &SatInstance::num_vars)
      .def_property_readonly("num_clauses", &SatInstance::num_clauses)
      .def("to_dimacs", [](const SatInstance& s) { return to_dimacs(s); })
      .def_static("from_dimacs", &parse_dimacs, py::arg("text"))
      .def_static(
          "planted",
          [](std::size_t n, std::uint64_t seed) {
            Rng rng(seed);
            return generate_sat_instance(n, rng);
          },
          py::arg("n"), py::arg("seed"))
      .def(
          "satisfied",
          [](const SatInstance& s, const std::string& bits) { return maxsat_eval(s, BitString::from_string(bits)); },
          py::arg("bits"), "Number of clauses satisfied by a 0/1 string.");

  m.def(
      "run",
      [](const std::string& algorithm, const std::string& problem, std::vector<std::size_t> sizes,
         std::uint64_t runs, std::uint64_t seed, double beta, const std::string& u, bool log_cap, double factor,
         std::optional<double> lambda, unsigned workers, std::optional<std::uint64_t> max_evaluations) {
        ExperimentConfig c;
        c.algorithm = make_spec(algorithm, beta, u, log_cap, factor, lambda);
        c.problem = parse_problem(problem);
        c.sizes = std::move(sizes);
        c.runs = runs;
        c.base_seed = seed;
        c.workers = workers;
        c.max_evaluations = max_evaluations;
        c.record_wall_time = false;
        ExperimentResult r;
        {
          py::gil_scoped_release release;
          r = run_experiment(c);
        }
        py::list rows;
        for (const auto& row : r.runs) {
          py::dict d;
          d["algorithm"] = row.algorithm;
          d["problem"] = row.problem;
          d["n"] = row.n;
          d["run"] = row.run;
          d["seed"] = row.record.seed;
          d["evaluations"] = row.record.evaluations;
          d["iterations"] = row.record.iterations;
          d["best_fitness"] = row.record.best_fitness;
          d["hit_optimum"] = row.record.hit_optimum;
          rows.append(d);
        }
        py::list summary;
        for (const auto& s : r.summary) {
          py::dict d;
          d["algorithm"] = s.algorithm;
          d["problem"] = s.problem;
          d["n"] = s.n;
          d["runs"] = s.runs;
          d["mean_evals_per_n"] = s.mean_evals_per_n;
          d["std_evals_per_n"] = s.std_evals_per_n;
          d["mean_iterations"] = s.mean_iterations;
          summary.append(d);
        }
        return py::make_tuple(rows, summary);
      },
      py::arg("algorithm"), py::arg("problem"), py::arg("sizes"), py::arg("runs") = 10, py::arg("seed") = 0,
      py::arg("beta") = 2.5, py::arg("u") = "n", py::arg("log_cap") = false, py::arg("factor") = 1.5,
      py::arg("lambda_") = py::none(), py::arg("workers") = 1, py::arg("max_evaluations") = py::none(),
      "Runs an experiment; returns (runs, summary) as lists of dicts. Wall time is not recorded.");

  m.def(
      "progress_probability",
      [](std::size_t n, std::size_t d, const std::string& algorithm, double beta, const std::string& u,
         std::optional<double> lambda, std::uint64_t trials, std::uint64_t seed) {
        const auto spec = make_spec(algorithm, beta, u, false, 1.5, lambda);
        const auto est = estimate_progress_probability(n, d, spec.make_controller(n), trials, seed);
        return py::make_tuple(est.probability, est.standard_error);
      },
      py::arg("n"), py::arg("d"), py::arg("algorithm") = "ollga-fast", py::arg("beta") = 2.5, py::arg("u") = "n",
      py::arg("lambda_") = py::none(), py::arg("trials") = 10000, py::arg("seed") = 0,
      "Fraction of single OneMax iterations at distance d that improve; returns (p, standard error).");

  auto b = m.def_submodule("bounds", "Asymptotic bound classifiers and helper sums");
  b.def("progress_bound", [](double beta, std::uint64_t u, std::uint64_t n,
                             std::uint64_t d) { return bound_dict(bounds::progress_bound(beta, u, n, d)); },
        py::arg("beta"), py::arg("u"), py::arg("n"), py::arg("d"));
  b.def(
      "runtime_bound",
      [](double beta, std::uint64_t u, std::uint64_t n) {
        const auto r = bounds::runtime_bound(beta, u, n);
        py::dict d;
        d["iterations"] = bound_dict(r.iterations);
        d["evaluations"] = bound_dict(r.evaluations);
        return d;
      },
      py::arg("beta"), py::arg("u"), py::arg("n"));
  b.def("leading_constant", &bounds::leading_constant, py::arg("beta"));
  b.def("expected_lambda", &bounds::expected_lambda_exact, py::arg("beta"), py::arg("u"));
  b.def("harmonic_sum", &bounds::harmonic_sum_exact, py::arg("alpha"), py::arg("k"));
  b.def("harmonic_lower_bound", &bounds::harmonic_lower_bound, py::arg("alpha"), py::arg("s"));
  b.def("harmonic_upper_bound", &bounds::harmonic_upper_bound, py::arg("alpha"), py::arg("u"));
}
