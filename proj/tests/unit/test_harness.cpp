#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "fastga/csv.hpp"
#include "fastga/dimacs.hpp"
#include "fastga/harness.hpp"

using namespace fastga;

namespace {

RunRow make_row(std::string algorithm, std::uint64_t n, std::uint64_t run, std::uint64_t evaluations) {
  RunRow row;
  row.algorithm = std::move(algorithm);
  row.problem = "onemax";
  row.n = n;
  row.run = run;
  row.record.evaluations = evaluations;
  row.record.iterations = evaluations;
  row.record.best_fitness = static_cast<Fitness>(n);
  row.record.hit_optimum = true;
  row.record.seed = run * 31 + n;
  return row;
}

ExperimentConfig small_config(AlgorithmKind kind, ProblemKind problem, std::vector<std::size_t> sizes,
                              std::uint64_t runs) {
  ExperimentConfig c;
  c.algorithm.kind = kind;
  c.problem = problem;
  c.sizes = std::move(sizes);
  c.runs = runs;
  c.base_seed = 17;
  c.record_wall_time = false;
  return c;
}

std::string runs_csv(const ExperimentResult& r) {
  std::ostringstream out;
  write_runs_csv(out, r.runs);
  return out.str();
}

std::string summary_csv(const ExperimentResult& r) {
  std::ostringstream out;
  write_summary_csv(out, r.summary);
  return out.str();
}

}  // namespace

TEST_CASE("names and u policies") {
  for (auto k : {AlgorithmKind::kRls, AlgorithmKind::kOnePlusOneEa, AlgorithmKind::kOllgaStatic,
                 AlgorithmKind::kOllgaFitdep, AlgorithmKind::kOllgaOneFifth, AlgorithmKind::kOllgaFast}) {
    CHECK(parse_algorithm(to_string(k)) == k);
  }
  CHECK(parse_algorithm("opo-ea") == AlgorithmKind::kOnePlusOneEa);
  CHECK_THROWS_AS(parse_algorithm("ga"), std::invalid_argument);
  CHECK(parse_problem("maxsat") == ProblemKind::kMaxSat);
  CHECK(to_string(ProblemKind::kOneMax) == "onemax");
  CHECK_THROWS_AS(parse_problem("sat"), std::invalid_argument);

  CHECK(UPolicy::parse("n").resolve(1000) == 1000);
  CHECK(UPolicy::parse("2ln").resolve(65536) == 22);
  CHECK(UPolicy::parse("2ln").resolve(1) == 1);
  CHECK(UPolicy::parse("32").resolve(65536) == 32);
  CHECK(UPolicy::parse("2ln").to_string() == "2ln");
  CHECK(UPolicy::parse("8192").to_string() == "8192");
  for (const char* bad : {"", "0", "-3", "1.5", "ln", "n2"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(UPolicy::parse(bad), std::invalid_argument);
  }
}

TEST_CASE("algorithm labels") {
  AlgorithmSpec s;
  CHECK(s.label() == "ollga-fast[beta=2.5 u=n]");
  s.kind = AlgorithmKind::kOllgaOneFifth;
  CHECK(s.label() == "ollga-onefifth[F=1.5 cap=none]");
  s.log_cap = true;
  CHECK(s.label() == "ollga-onefifth[F=1.5 cap=2ln]");
  s.kind = AlgorithmKind::kOllgaStatic;
  CHECK(s.label() == "ollga-static[lambda=tuned]");
  s.kind = AlgorithmKind::kRls;
  CHECK(s.label() == "rls");
  s.kind = AlgorithmKind::kOnePlusOneEa;
  CHECK(s.label() == "opo-ea");
  for (auto k : {AlgorithmKind::kRls, AlgorithmKind::kOnePlusOneEa, AlgorithmKind::kOllgaStatic,
                 AlgorithmKind::kOllgaFitdep, AlgorithmKind::kOllgaOneFifth, AlgorithmKind::kOllgaFast}) {
    AlgorithmSpec t;
    t.kind = k;
    CHECK(t.label().find(',') == std::string::npos);
  }
}

TEST_CASE("config validation") {
  auto ok = small_config(AlgorithmKind::kOllgaFast, ProblemKind::kOneMax, {16}, 2);
  CHECK_NOTHROW(ok.validate());

  auto c = ok;
  c.sizes.clear();
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = ok;
  c.runs = 0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = ok;
  c.sizes = {0};
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = ok;
  c.problem = ProblemKind::kMaxSat;
  c.sizes = {2};
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = ok;
  c.algorithm.u = UPolicy::parse("32");
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = ok;
  c.algorithm.beta = std::nan("");
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = ok;
  c.algorithm.kind = AlgorithmKind::kOllgaOneFifth;
  c.algorithm.factor = 1.0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = ok;
  c.algorithm.kind = AlgorithmKind::kOllgaStatic;
  c.algorithm.lambda = 17.0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = ok;
  c.algorithm.kind = AlgorithmKind::kOllgaFitdep;
  c.problem = ProblemKind::kMaxSat;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = ok;
  c.max_evaluations = 0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  CHECK_THROWS_AS(run_experiment(c), std::invalid_argument);
}

TEST_CASE("summaries") {
  SUBCASE("hand example") {
    const auto s = summarize({make_row("rls", 10, 0, 10), make_row("rls", 10, 1, 20)});
    REQUIRE(s.size() == 1);
    CHECK(s[0].algorithm == "rls");
    CHECK(s[0].problem == "onemax");
    CHECK(s[0].n == 10);
    CHECK(s[0].runs == 2);
    CHECK(s[0].mean_evals_per_n == 1.5);
    CHECK(s[0].std_evals_per_n == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
    CHECK(s[0].mean_iterations == 15.0);
  }
  SUBCASE("single record") {
    const auto s = summarize({make_row("rls", 10, 0, 37)});
    REQUIRE(s.size() == 1);
    CHECK(s[0].std_evals_per_n == 0.0);
    CHECK(s[0].mean_evals_per_n == 3.7);
  }
  SUBCASE("grouping is stable across permutations") {
    std::vector<RunRow> rows;
    for (std::uint64_t r = 0; r < 7; ++r) {
      rows.push_back(make_row("rls", 64, r, 100 + r * r));
      rows.push_back(make_row("opo-ea", 64, r, 300 + 7 * r));
      rows.push_back(make_row("rls", 32, r, 50 + r));
    }
    const auto reference = summarize(rows);
    CHECK(reference.size() == 3);
    Rng rng(5);
    for (int i = 0; i < 20; ++i) {
      std::shuffle(rows.begin(), rows.end(), rng);
      CHECK(summarize(rows) == reference);
    }
  }
  SUBCASE("mean is the exact integer mean") {
    std::vector<RunRow> rows;
    std::uint64_t total = 0;
    for (std::uint64_t r = 0; r < 100; ++r) {
      const std::uint64_t e = 1000003 + r * 7919;
      total += e;
      rows.push_back(make_row("rls", 3, r, e));
    }
    const auto s = summarize(rows);
    CHECK(s[0].mean_evals_per_n == static_cast<double>(static_cast<long double>(total) / 300.0L));
  }
}

TEST_CASE("csv round trip") {
  std::vector<RunRow> rows{make_row("ollga-fast[beta=2.5 u=n]", 16, 0, 40), make_row("rls", 16, 1, 70)};
  rows[0].record.wall_ms = 0.125;
  rows[1].algorithm = "odd,\"name\"";
  rows[1].record.hit_optimum = false;
  rows[1].record.best_fitness = 15;
  rows[1].record.seed = 0xFFFFFFFFFFFFFFFFULL;

  std::stringstream buf;
  write_runs_csv(buf, rows);
  const std::string text = buf.str();
  CHECK(text.substr(0, text.find('\n')) == kRunsHeader);
  CHECK(read_runs_csv(buf) == rows);

  const auto summary = summarize(rows);
  std::stringstream sbuf;
  write_summary_csv(sbuf, summary);
  CHECK(sbuf.str().substr(0, sbuf.str().find('\n')) == kSummaryHeader);
  CHECK(read_summary_csv(sbuf) == summary);

  std::istringstream bad_header("algorithm,problem\n");
  CHECK_THROWS_AS(read_runs_csv(bad_header), std::runtime_error);
  std::istringstream short_row(std::string(kRunsHeader) + "\nrls,onemax,4\n");
  CHECK_THROWS_AS(read_runs_csv(short_row), std::runtime_error);
  std::istringstream bad_number(std::string(kSummaryHeader) + "\nrls,onemax,4,x,1,0,1\n");
  CHECK_THROWS_AS(read_summary_csv(bad_number), std::runtime_error);
}

TEST_CASE("csv helpers") {
  CHECK(csv::escape("plain") == "plain");
  CHECK(csv::escape("a,b") == "\"a,b\"");
  CHECK(csv::escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(csv::format_double(0.1) == "0.1");
  CHECK(csv::parse_double("0.1", "field") == 0.1);
  CHECK(std::isnan(csv::parse_double("nan", "field")));
  CHECK_THROWS_AS(csv::parse_double("1.0x", "field"), std::runtime_error);
  CHECK_THROWS_AS(csv::parse_u64("-1", "field"), std::runtime_error);
  CHECK(csv::parse_bool("true", "field"));
  CHECK(!csv::parse_bool("0", "field"));
  CHECK_THROWS_AS(csv::parse_bool("yes", "field"), std::runtime_error);
  std::istringstream in("a,\"b\nc\",d\r\ne,f");
  const auto records = csv::read_records(in);
  REQUIRE(records.size() == 2);
  CHECK(records[0] == std::vector<std::string>{"a", "b\nc", "d"});
  CHECK(records[1] == std::vector<std::string>{"e", "f"});
  std::istringstream open_quote("a,\"b");
  CHECK_THROWS_AS(csv::read_records(open_quote), std::runtime_error);
}

TEST_CASE("single-bit rls finds the optimum within one evaluation") {
  const auto r = run_experiment(small_config(AlgorithmKind::kRls, ProblemKind::kOneMax, {1}, 1));
  REQUIRE(r.summary.size() == 1);
  CHECK(r.summary[0].mean_evals_per_n <= 1.0);
  CHECK(r.runs[0].record.hit_optimum);
}

TEST_CASE("runs are deterministic and independent of the worker count") {
  for (auto problem : {ProblemKind::kOneMax, ProblemKind::kMaxSat}) {
    for (auto kind : {AlgorithmKind::kOllgaFast, AlgorithmKind::kOllgaOneFifth, AlgorithmKind::kRls,
                      AlgorithmKind::kOnePlusOneEa, AlgorithmKind::kOllgaStatic}) {
      auto c = small_config(kind, problem, {32, 64}, 6);
      c.workers = 1;
      const auto a = run_experiment(c);
      const auto b = run_experiment(c);
      c.workers = 4;
      const auto d = run_experiment(c);
      CAPTURE(c.algorithm.label());
      CHECK(runs_csv(a) == runs_csv(b));
      CHECK(runs_csv(a) == runs_csv(d));
      CHECK(summary_csv(a) == summary_csv(d));
      REQUIRE(a.runs.size() == 12);
      for (std::size_t i = 0; i < a.runs.size(); ++i) {
        CHECK(a.runs[i].n == (i < 6 ? 32U : 64U));
        CHECK(a.runs[i].run == i % 6);
        CHECK(a.runs[i].record.seed == run_seed(c, a.runs[i].n, a.runs[i].run));
        CHECK(a.runs[i].record.wall_ms == 0.0);
        // Single-bit flips can stall in a local optimum of MAX-3SAT.
        if (problem == ProblemKind::kOneMax || kind != AlgorithmKind::kRls) CHECK(a.runs[i].record.hit_optimum);
      }
      CHECK(execute_run(c, 64, 3) == a.runs[9]);
    }
  }
}

TEST_CASE("seeds separate algorithms, sizes and runs") {
  auto c = small_config(AlgorithmKind::kOllgaFast, ProblemKind::kOneMax, {32}, 1);
  auto other = c;
  other.algorithm.beta = 2.3;
  CHECK(run_seed(c, 32, 0) != run_seed(other, 32, 0));
  CHECK(run_seed(c, 32, 0) != run_seed(c, 64, 0));
  CHECK(run_seed(c, 32, 0) != run_seed(c, 32, 1));
  other = c;
  other.base_seed = 18;
  CHECK(run_seed(c, 32, 0) != run_seed(other, 32, 0));
}

TEST_CASE("budget exhaustion is recorded, not fatal") {
  auto c = small_config(AlgorithmKind::kOnePlusOneEa, ProblemKind::kOneMax, {256}, 3);
  c.max_evaluations = 10;
  const auto r = run_experiment(c);
  for (const auto& row : r.runs) {
    CHECK(!row.record.hit_optimum);
    CHECK(row.record.evaluations <= 10);
  }
}

TEST_CASE("progress probability estimates") {
  const auto one = LambdaController::fixed(1.0);
  CHECK_THROWS_AS(estimate_progress_probability(64, 0, one, 10, 1), std::invalid_argument);
  CHECK_THROWS_AS(estimate_progress_probability(64, 65, one, 10, 1), std::invalid_argument);
  CHECK_THROWS_AS(estimate_progress_probability(64, 1, one, 0, 1), std::invalid_argument);

  const auto all_wrong = estimate_progress_probability(64, 64, one, 100000, 2);
  CHECK(all_wrong.trials == 100000);
  CHECK(all_wrong.probability == static_cast<double>(all_wrong.successes) / 1e5);
  CHECK(all_wrong.probability >= 0.6);

  const auto lambda = LambdaController::fixed(2.0);
  const auto pd = estimate_progress_probability(1024, 8, lambda, 100000, 3);
  const auto p2d = estimate_progress_probability(1024, 16, lambda, 100000, 4);
  CHECK(p2d.probability >= pd.probability - 3.0 * p2d.standard_error);
  CHECK(pd.standard_error ==
        doctest::Approx(std::sqrt(pd.probability * (1.0 - pd.probability) / 1e5)).epsilon(1e-12));

  const auto again = estimate_progress_probability(1024, 8, lambda, 100000, 3);
  CHECK(again.successes == pd.successes);
}

#ifdef FASTGA_CLI_PATH
namespace {

int run_cli(const std::string& args, const std::filesystem::path& out) {
  const std::string cmd = std::string(FASTGA_CLI_PATH) + " " + args + " > " + out.string() + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("command line tool") {
  const auto dir = std::filesystem::temp_directory_path() / "fastga_cli_test";
  std::filesystem::create_directories(dir);
  const auto a = dir / "a.csv";
  const auto b = dir / "b.csv";
  const auto summary = dir / "s.csv";

  const std::string run = "run --algorithm ollga-fast --beta 2.5 --u n --problem maxsat --n 32,64 --runs 3 "
                          "--seed 9 --no-timing --summary " + summary.string();
  REQUIRE(run_cli(run, a) == 0);
  REQUIRE(run_cli(run + " --workers 3", b) == 0);
  const std::string text = slurp(a);
  CHECK(text == slurp(b));
  CHECK(text.substr(0, text.find('\n')) == kRunsHeader);
  std::istringstream in(text);
  CHECK(read_runs_csv(in).size() == 6);
  const std::string sum = slurp(summary);
  CHECK(sum.substr(0, sum.find('\n')) == kSummaryHeader);

  const auto cfg = dir / "sweep.json";
  {
    std::ofstream f(cfg);
    f << R"({"defaults": {"problem": "onemax", "runs": 2, "seed": 3, "timing": false},
             "experiments": [{"algorithm": "rls", "n": [16]},
                             {"algorithm": "ollga-onefifth", "cap": "2ln", "n": [16, 32]}]})";
  }
  REQUIRE(run_cli("sweep --config " + cfg.string(), a) == 0);
  std::istringstream sweep_in(slurp(a));
  const auto sweep_rows = read_runs_csv(sweep_in);
  CHECK(sweep_rows.size() == 6);
  CHECK(sweep_rows.front().algorithm == "rls");
  CHECK(sweep_rows.back().algorithm == "ollga-onefifth[F=1.5 cap=2ln]");

  REQUIRE(run_cli("bounds --beta 2.5 --u 500000 --n 1000000 --d 10 --csv", a) == 0);
  const std::string bounds = slurp(a);
  CHECK(bounds.substr(0, bounds.find('\n')) == "quantity,cell,bound,regime,value");
  CHECK(bounds.find("evaluations/beta(2,3)/u>=ln(n)^(1/(3-beta))") != std::string::npos);
  CHECK(bounds.find(",8200") != std::string::npos);

  REQUIRE(run_cli("probe --n 64 --d 64 --trials 1000 --algorithm ollga-static --lambda 1", a) == 0);
  const std::string probe = slurp(a);
  CHECK(probe.substr(0, probe.find('\n')) == "algorithm,n,d,trials,successes,probability,stderr");

  const auto cnf = dir / "planted.cnf";
  REQUIRE(run_cli("instance --n 40 --seed 4 --out " + cnf.string(), a) == 0);
  Rng rng(4);
  const SatInstance expected = generate_sat_instance(40, rng);
  CHECK(slurp(cnf) == to_dimacs(expected));
  REQUIRE(run_cli("instance --read " + cnf.string(), a) == 0);
  const std::string clauses = std::to_string(expected.num_clauses());
  CHECK(slurp(a) == "vars,clauses,satisfied_by_all_ones\n40," + clauses + "," + clauses + "\n");
  CHECK(run_cli("instance", a) != 0);
  CHECK(run_cli("instance --read " + (dir / "absent.cnf").string(), a) != 0);

  CHECK(run_cli("run --algorithm nope --n 8", a) != 0);
  CHECK(run_cli("run --algorithm rls --n 8 --runs 0", a) != 0);
  CHECK(run_cli("run --algorithm rls --n 8 --out " + (dir / "missing" / "x.csv").string(), a) != 0);
  CHECK(run_cli("sweep --config " + (dir / "absent.json").string(), a) != 0);
  std::filesystem::remove_all(dir);
}
#endif
