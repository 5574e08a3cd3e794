//------------------------------------------------------------------------------
//
//   Copyright 2026 The bidsel Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------

#include "bidsel/bidsel.hpp"
#include "bidsel/testing/properties.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

namespace fs = std::filesystem;

/// Default output directory: $BIDSEL_OUT_DIR, else the working directory.
fs::path OutputDirectory()
{
  char const *env = std::getenv("BIDSEL_OUT_DIR");
  return env != nullptr && *env != '\0' ? fs::path(env) : fs::current_path();
}

fs::path Resolve(std::string const &path, std::string const &fallback_name)
{
  if (path.empty())
  {
    return OutputDirectory() / fallback_name;
  }
  return fs::path(path);
}

std::string SetToJson(bidsel::SelectionSet const &set)
{
  std::string out = "[";
  for (std::size_t j = 0; j < set.members.size(); ++j)
  {
    out += (j > 0 ? ", " : "") + std::to_string(set.members[j]);
  }
  return out + "]";
}

struct GenerateArgs
{
  std::size_t   n         = 50;
  std::size_t   k         = 5;
  std::uint64_t seed      = 0;
  std::size_t   grid_size = 50;
  std::string   weights   = "position";
  std::size_t   units     = 1;
  std::string   out;
};

int RunGenerate(GenerateArgs const &args)
{
  bidsel::ExperimentConfig config;
  config.grid_size = args.grid_size;
  config.units     = args.units;
  if (args.weights == "single_item")
  {
    config.weight_scheme = bidsel::WeightScheme::SingleItem;
  }
  else if (args.weights == "unit")
  {
    config.weight_scheme = bidsel::WeightScheme::Unit;
  }
  else if (args.weights != "position")
  {
    throw bidsel::InvalidArgument("unknown weight scheme '" + args.weights + "'");
  }
  auto const instance = bidsel::detail::GenerateCellInstance(config, bidsel::Cell{args.n, args.k}, args.seed);
  auto const path     = Resolve(args.out, "instance_n" + std::to_string(args.n) + "_k" + std::to_string(args.k) +
                                                "_s" + std::to_string(args.seed) + ".json");
  bidsel::write_instance(instance, path);
  std::cout << path.string() << "\n";
  return 0;
}

struct SolveArgs
{
  std::string   instance;
  std::string   algorithm = "practical";
  std::size_t   trials    = bidsel::kDefaultRoundingTrials;
  std::uint64_t seed      = 0;
  std::size_t   units     = 1;
  double        delta     = 0.05;
  double        timeout   = 600.0;
  std::string   out;
};

int RunSolve(SolveArgs const &args)
{
  auto const instance  = bidsel::read_instance(args.instance);
  auto const algorithm = bidsel::parse_algorithm(args.algorithm);
  bidsel::ExperimentConfig config;
  config.rounding_trials = args.trials;
  config.units           = args.units;
  config.delta           = args.delta;
  config.timeout_seconds = args.timeout;

  std::string body = "{\n  \"algorithm\": \"" + args.algorithm + "\"";
  if (!bidsel::detail::Supported(algorithm, instance, config))
  {
    body += ",\n  \"status\": \"unsupported\"\n}\n";
  }
  else
  {
    bidsel::SolverOptions solver;
    solver.deadline = bidsel::Deadline::After(args.timeout);
    bidsel::Stopwatch const     clock;
    bidsel::SelectionSet        selected;
    double                      welfare = 0.0;
    std::optional<double>       relaxed;
    std::optional<std::size_t>  iterations;
    switch (algorithm)
    {
    case bidsel::Algorithm::Greedy:
    {
      bidsel::GreedyOptions options;
      options.deadline = solver.deadline;
      auto const report = bidsel::greedy(instance, options);
      selected          = report.selected;
      welfare           = report.welfare;
      break;
    }
    case bidsel::Algorithm::LocalSearch:
    {
      bidsel::LocalSearchOptions options;
      options.deadline = solver.deadline;
      auto const report = bidsel::local_search(instance, options);
      selected          = report.selected;
      welfare           = report.welfare;
      break;
    }
    case bidsel::Algorithm::BruteForce:
    {
      bidsel::BruteForceOptions options;
      options.deadline = solver.deadline;
      auto const report = bidsel::brute_force(instance, options);
      selected          = report.selected;
      welfare           = report.welfare;
      break;
    }
    default:
    {
      bidsel::SolveReport report;
      if (algorithm == bidsel::Algorithm::Alg1)
      {
        report = bidsel::solve_alg1(instance, solver);
      }
      else if (algorithm == bidsel::Algorithm::Practical)
      {
        report = bidsel::solve_practical(instance, solver);
      }
      else if (algorithm == bidsel::Algorithm::SingleItem)
      {
        report = bidsel::solve_single_item(instance, solver);
      }
      else if (algorithm == bidsel::Algorithm::ChernoffLargeL)
      {
        report = bidsel::solve_chernoff_large_l(instance, args.units, solver);
      }
      else
      {
        report = bidsel::solve_poisson_small_tail(instance, args.units, args.delta, solver);
      }
      auto const rounded = bidsel::round_best_of(instance, report.solution, args.trials, args.seed);
      selected           = rounded.selected;
      welfare            = *rounded.welfare;
      relaxed            = report.objective_value;
      iterations         = report.iterations;
      break;
    }
    }
    double const seconds = clock.Seconds();
    body += ",\n  \"status\": \"ok\",\n  \"welfare\": " + bidsel::detail::FormatDouble(welfare);
    if (relaxed)
    {
      body += ",\n  \"relaxed_objective\": " + bidsel::detail::FormatDouble(*relaxed);
      body += ",\n  \"iterations\": " + std::to_string(*iterations);
    }
    body += ",\n  \"selected\": " + SetToJson(selected);
    body += ",\n  \"wall_time_s\": " + bidsel::detail::FormatDouble(seconds) + "\n}\n";
  }
  if (!args.out.empty())
  {
    bidsel::detail::WriteFile(args.out, body);
  }
  std::cout << body;
  return 0;
}

struct BenchArgs
{
  std::string config;
  std::string csv;
  std::string json;
  bool        include_large = false;
  bool        parallel      = false;
};

int RunBench(BenchArgs const &args)
{
  bidsel::ExperimentConfig config = args.config.empty() ? bidsel::ExperimentConfig{} : bidsel::read_config(args.config);
  config.include_large            = config.include_large || args.include_large;
  config.parallel                 = config.parallel || args.parallel;
  auto const report               = bidsel::run_experiment(config);
  auto const csv  = Resolve(args.csv.empty() ? config.csv_path : args.csv, "report.csv");
  auto const json = Resolve(args.json.empty() ? config.json_path : args.json, "report.json");
  bidsel::emit_report(report, bidsel::ReportFormat::Csv, csv);
  bidsel::emit_report(report, bidsel::ReportFormat::Json, json);
  for (auto const &agg : report.aggregates)
  {
    std::printf("n=%-5zu k=%-4zu %-18s ok=%zu/%zu  relative %.4f%% +- %.4f%%  median time %.4fs\n", agg.n, agg.k,
                agg.algorithm.c_str(), agg.ok, agg.runs, agg.mean_relative_pct, agg.std_relative_pct,
                agg.median_wall_time_s);
  }
  std::printf("wrote %s and %s\n", csv.string().c_str(), json.string().c_str());
  return 0;
}

int RunVerify(bool full, std::uint64_t seed)
{
  using namespace bidsel::testing;
  std::size_t const        scale = full ? 10 : 1;
  std::vector<CheckResult> results;
  results.push_back(check_welfare_oracles(20 * scale, seed));
  for (auto &r : check_objective_bounds(100 * scale, seed + 1))
  {
    results.push_back(std::move(r));
  }
  results.push_back(check_poisson_concavity(1000 * scale, seed + 2));
  for (auto &r : check_gradients(5 * scale, seed + 3))
  {
    results.push_back(std::move(r));
  }
  results.push_back(check_rounding_tail(full ? std::vector<std::size_t>{16, 64, 256, 1024}
                                             : std::vector<std::size_t>{16, 64}));
  for (auto &r : check_baselines(10 * scale, seed + 4))
  {
    results.push_back(std::move(r));
  }
  for (auto &r : check_submodularity(full ? 10 : 2, seed + 5))
  {
    results.push_back(std::move(r));
  }
  bool all = true;
  for (auto const &r : results)
  {
    all = all && r.passed();
    std::printf("%s  %-46s cases=%-8zu violations=%-4zu worst=%.3g\n", r.passed() ? "PASS" : "FAIL", r.name.c_str(),
                r.cases, r.violations, r.worst);
  }
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char **argv)
{
  CLI::App app{"Bidder selection: relaxation solvers, baselines and experiment harness"};
  app.require_subcommand(1);

  GenerateArgs generate;
  auto        *gen = app.add_subcommand("generate", "Write a synthetic log-normal instance as JSON");
  gen->add_option("-n,--bidders", generate.n, "Number of bidders")->required();
  gen->add_option("-k,--capacity", generate.k, "Number of bidders to select")->required();
  gen->add_option("--seed", generate.seed, "Generator seed");
  gen->add_option("--grid-size", generate.grid_size, "Support points above zero");
  gen->add_option("--weights", generate.weights, "position | single_item | unit");
  gen->add_option("--units", generate.units, "l for the unit weight scheme");
  gen->add_option("-o,--out", generate.out, "Output path (default: $BIDSEL_OUT_DIR/instance_*.json)");

  SolveArgs solve;
  auto     *sol = app.add_subcommand("solve", "Run one algorithm on one instance file");
  sol->add_option("instance", solve.instance, "Instance JSON")->required();
  sol->add_option("-a,--algorithm", solve.algorithm,
                  "alg1 | practical | single_item | chernoff_large_l | poisson_small_tail | greedy | "
                  "local_search | brute_force");
  sol->add_option("--trials", solve.trials, "Rounding trials for fractional solvers");
  sol->add_option("--seed", solve.seed, "Rounding seed");
  sol->add_option("--units", solve.units, "l for the l-unit solvers");
  sol->add_option("--delta", solve.delta, "Small-tail bound for poisson_small_tail");
  sol->add_option("--timeout", solve.timeout, "Time limit in seconds");
  sol->add_option("-o,--out", solve.out, "Also write the result JSON here");

  BenchArgs bench;
  auto     *ben = app.add_subcommand("bench", "Run an experiment matrix and write CSV and JSON reports");
  ben->add_option("-c,--config", bench.config, "Experiment config JSON (default matrix if omitted)");
  ben->add_option("--csv", bench.csv, "CSV report path");
  ben->add_option("--json", bench.json, "JSON report path");
  ben->add_flag("--include-large", bench.include_large, "Add the n = 1000 cells (fractional solvers only)");
  ben->add_flag("--parallel", bench.parallel, "Run cells concurrently");

  bool          full = false;
  std::uint64_t verify_seed = 1;
  auto         *ver         = app.add_subcommand("verify", "Run the randomized property suites");
  ver->add_flag("--full", full, "Use the full case counts");
  ver->add_option("--seed", verify_seed, "Base seed");

  CLI11_PARSE(app, argc, argv);
  try
  {
    if (*gen)
    {
      return RunGenerate(generate);
    }
    if (*sol)
    {
      return RunSolve(solve);
    }
    if (*ben)
    {
      return RunBench(bench);
    }
    return RunVerify(full, verify_seed);
  }
  catch (bidsel::Error const &e)
  {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  catch (std::exception const &e)
  {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
