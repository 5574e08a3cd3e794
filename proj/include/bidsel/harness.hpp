#pragma once
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

// Experiment matrix runner: generate instances per (n, k, seed), run every
// listed algorithm under a time limit, round fractional outputs, and report
// exact welfare relative to the best terminating algorithm of each run.

#include "bidsel/baselines.hpp"
#include "bidsel/distributions.hpp"
#include "bidsel/error.hpp"
#include "bidsel/instance_io.hpp"
#include "bidsel/random.hpp"
#include "bidsel/rounding.hpp"
#include "bidsel/solver.hpp"
#include "bidsel/timing.hpp"
#include "bidsel/welfare.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <future>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

namespace bidsel {

enum class Algorithm
{
  Alg1,
  Practical,
  SingleItem,
  ChernoffLargeL,
  PoissonSmallTail,
  Greedy,
  LocalSearch,
  BruteForce,
};

inline constexpr Algorithm kAllAlgorithms[] = {
    Algorithm::Alg1,           Algorithm::Practical, Algorithm::SingleItem,  Algorithm::ChernoffLargeL,
    Algorithm::PoissonSmallTail, Algorithm::Greedy,  Algorithm::LocalSearch, Algorithm::BruteForce,
};

inline std::string_view algorithm_name(Algorithm algorithm) noexcept
{
  switch (algorithm)
  {
  case Algorithm::Alg1:
    return "alg1";
  case Algorithm::Practical:
    return "practical";
  case Algorithm::SingleItem:
    return "single_item";
  case Algorithm::ChernoffLargeL:
    return "chernoff_large_l";
  case Algorithm::PoissonSmallTail:
    return "poisson_small_tail";
  case Algorithm::Greedy:
    return "greedy";
  case Algorithm::LocalSearch:
    return "local_search";
  case Algorithm::BruteForce:
    return "brute_force";
  }
  return "unknown";
}

inline Algorithm parse_algorithm(std::string_view name)
{
  for (auto algorithm : kAllAlgorithms)
  {
    if (algorithm_name(algorithm) == name)
    {
      return algorithm;
    }
  }
  throw InvalidArgument("unknown algorithm '" + std::string(name) + "'");
}

/// Whether the algorithm returns a fractional solution that needs rounding.
inline bool is_fractional(Algorithm algorithm) noexcept
{
  return algorithm != Algorithm::Greedy && algorithm != Algorithm::LocalSearch &&
         algorithm != Algorithm::BruteForce;
}

enum class WeightScheme
{
  Position,    // default position weights
  SingleItem,  // (1, 0, ..., 0)
  Unit,        // l ones
};

struct Cell
{
  std::size_t n = 0;
  std::size_t k = 0;
  auto        operator<=>(Cell const &) const = default;
};

inline std::vector<Cell> default_cells()
{
  return {{50, 5}, {50, 10}, {50, 20}, {200, 10}, {200, 20}, {200, 40}};
}

inline std::vector<Cell> large_cells()
{
  return {{1000, 50}, {1000, 100}, {1000, 200}};
}

struct ExperimentConfig
{
  std::vector<Cell>      cells = default_cells();
  std::size_t            seeds = 10;
  std::uint64_t          seed_offset = 0;
  std::vector<Algorithm> algorithms{Algorithm::Practical, Algorithm::Greedy, Algorithm::LocalSearch};
  std::size_t            rounding_trials = kDefaultRoundingTrials;
  double                 timeout_seconds = 600.0;
  std::size_t            grid_size       = 50;
  double                 tolerance       = 1e-7;
  std::size_t            max_iters       = 2000;
  WeightScheme           weight_scheme   = WeightScheme::Position;
  std::size_t            units           = 1;     // l for the Unit scheme and l-unit solvers
  double                 delta           = 0.05;  // small-tail bound for poisson_small_tail
  std::uint64_t          brute_force_cap = kDefaultBruteForceCap;
  bool                   include_large   = false;  // adds the n = 1000 cells, fractional solvers only
  bool                   parallel        = false;  // cells run concurrently
  std::string            csv_path;
  std::string            json_path;

  void Validate() const
  {
    detail::Require(!algorithms.empty(), "config lists no algorithms");
    detail::Require(seeds >= 1, "config needs at least one seed");
    detail::Require(rounding_trials >= 1, "rounding_trials must be positive");
    detail::Require(grid_size >= 2, "grid_size must be at least 2");
    for (auto const &cell : cells)
    {
      detail::Require(cell.n >= cell.k && cell.k >= 1, "every cell needs n >= k >= 1");
    }
  }
};

struct ReportRow
{
  std::size_t   n    = 0;
  std::size_t   k    = 0;
  std::uint64_t seed = 0;
  std::string   algorithm;
  double        objective    = std::numeric_limits<double>::quiet_NaN();
  double        relative_pct = std::numeric_limits<double>::quiet_NaN();
  double        wall_time_s  = 0.0;
  std::string   status;  // ok | timeout | cap-exceeded | unsupported | error
};

struct AggregateRow
{
  std::size_t n = 0;
  std::size_t k = 0;
  std::string algorithm;
  std::size_t runs = 0;
  std::size_t ok   = 0;
  double      mean_relative_pct  = std::numeric_limits<double>::quiet_NaN();
  double      std_relative_pct   = std::numeric_limits<double>::quiet_NaN();
  double      mean_wall_time_s   = std::numeric_limits<double>::quiet_NaN();
  double      median_wall_time_s = std::numeric_limits<double>::quiet_NaN();
};

struct ExperimentReport
{
  std::vector<ReportRow>    rows;
  std::vector<AggregateRow> aggregates;
};

namespace detail {

inline std::vector<double> SchemeWeights(ExperimentConfig const &config, std::size_t n, std::size_t k)
{
  switch (config.weight_scheme)
  {
  case WeightScheme::Position:
    return default_position_weights(k, n);
  case WeightScheme::SingleItem:
    return unit_demand_weights(1, n);
  case WeightScheme::Unit:
    return unit_demand_weights(config.units, n);
  }
  return {};
}

inline AuctionInstance GenerateCellInstance(ExperimentConfig const &config, Cell cell, std::uint64_t seed)
{
  auto const params = draw_lognormal_params(cell.n, seed);
  auto       base   = instance_from_lognormal_params(params, cell.k, config.grid_size);
  std::vector<DiscreteDistribution> dists(base.distributions().begin(), base.distributions().end());
  return AuctionInstance(std::move(dists), SchemeWeights(config, cell.n, cell.k), cell.k);
}

/// l for the l-unit solvers: the configured units when the weights match.
inline std::optional<std::size_t> UnitCount(AuctionInstance const &instance, std::size_t units)
{
  if (HasUnitWeights(instance, units))
  {
    return units;
  }
  return std::nullopt;
}

inline bool Supported(Algorithm algorithm, AuctionInstance const &instance, ExperimentConfig const &config)
{
  switch (algorithm)
  {
  case Algorithm::SingleItem:
    return HasUnitWeights(instance, 1);
  case Algorithm::ChernoffLargeL:
    return UnitCount(instance, config.units).has_value();
  case Algorithm::PoissonSmallTail:
    if (!UnitCount(instance, config.units))
    {
      return false;
    }
    for (auto const &dist : instance.distributions())
    {
      if (dist.Tail(0.0, true) > config.delta + kProbabilityClampTolerance)
      {
        return false;
      }
    }
    return true;
  default:
    return true;
  }
}

/// Runs one algorithm; objective is the exact welfare of the returned set.
inline ReportRow RunOne(Algorithm algorithm, AuctionInstance const &instance, ExperimentConfig const &config,
                        Cell cell, std::uint64_t seed)
{
  ReportRow row;
  row.n         = cell.n;
  row.k         = cell.k;
  row.seed      = seed;
  row.algorithm = std::string(algorithm_name(algorithm));
  if (!Supported(algorithm, instance, config))
  {
    row.status = "unsupported";
    return row;
  }

  SolverOptions solver;
  solver.tolerance = config.tolerance;
  solver.max_iters = config.max_iters;
  Stopwatch const clock;
  solver.deadline = Deadline::After(config.timeout_seconds);
  try
  {
    double objective = 0.0;
    if (is_fractional(algorithm))
    {
      SolveReport report;
      switch (algorithm)
      {
      case Algorithm::Alg1:
        report = solve_alg1(instance, solver);
        break;
      case Algorithm::Practical:
        report = solve_practical(instance, solver);
        break;
      case Algorithm::SingleItem:
        report = solve_single_item(instance, solver);
        break;
      case Algorithm::ChernoffLargeL:
        report = solve_chernoff_large_l(instance, config.units, solver);
        break;
      default:
        report = solve_poisson_small_tail(instance, config.units, config.delta, solver);
        break;
      }
      solver.deadline.Check();
      objective = *round_best_of(instance, report.solution, config.rounding_trials, seed).welfare;
    }
    else if (algorithm == Algorithm::Greedy)
    {
      GreedyOptions options;
      options.deadline = solver.deadline;
      objective        = greedy(instance, options).welfare;
    }
    else if (algorithm == Algorithm::LocalSearch)
    {
      LocalSearchOptions options;
      options.deadline = solver.deadline;
      objective        = local_search(instance, options).welfare;
    }
    else
    {
      BruteForceOptions options;
      options.deadline = solver.deadline;
      options.cap      = config.brute_force_cap;
      objective        = brute_force(instance, options).welfare;
    }
    row.objective = objective;
    row.status    = "ok";
  }
  catch (Timeout const &)
  {
    row.status = "timeout";
  }
  catch (CapExceeded const &)
  {
    row.status = "cap-exceeded";
  }
  catch (Error const &)
  {
    row.status = "error";
  }
  row.wall_time_s = clock.Seconds();
  return row;
}

inline void FillRelative(std::span<ReportRow> rows)
{
  double best = -std::numeric_limits<double>::infinity();
  for (auto const &row : rows)
  {
    if (row.status == "ok")
    {
      best = std::max(best, row.objective);
    }
  }
  for (auto &row : rows)
  {
    if (row.status != "ok")
    {
      continue;
    }
    row.relative_pct = row.objective == best ? 100.0 : (best > 0.0 ? 100.0 * row.objective / best : 100.0);
  }
}

inline std::vector<ReportRow> RunCell(ExperimentConfig const &config, Cell cell, bool large)
{
  std::vector<ReportRow> rows;
  for (std::size_t s = 0; s < config.seeds; ++s)
  {
    std::uint64_t const seed     = config.seed_offset + s;
    auto const          instance = GenerateCellInstance(config, cell, seed);
    std::size_t const   first    = rows.size();
    for (auto algorithm : config.algorithms)
    {
      if (large && !is_fractional(algorithm))
      {
        continue;
      }
      rows.push_back(RunOne(algorithm, instance, config, cell, seed));
    }
    FillRelative(std::span<ReportRow>(rows).subspan(first));
  }
  return rows;
}

inline double Median(std::vector<double> values)
{
  if (values.empty())
  {
    return std::numeric_limits<double>::quiet_NaN();
  }
  std::sort(values.begin(), values.end());
  std::size_t const mid = values.size() / 2;
  return values.size() % 2 == 1 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

}  // namespace detail

/// Mean and sample standard deviation of relative quality, plus wall-time
/// mean and median over ok rows, per (n, k, algorithm) in first-seen order.
inline std::vector<AggregateRow> aggregate_rows(std::span<ReportRow const> rows)
{
  std::vector<AggregateRow>                                        out;
  std::map<std::tuple<std::size_t, std::size_t, std::string>, std::size_t> index;
  std::vector<std::vector<double>>                                 relative, times;
  for (auto const &row : rows)
  {
    auto const key = std::make_tuple(row.n, row.k, row.algorithm);
    auto       it  = index.find(key);
    if (it == index.end())
    {
      it = index.emplace(key, out.size()).first;
      AggregateRow agg;
      agg.n         = row.n;
      agg.k         = row.k;
      agg.algorithm = row.algorithm;
      out.push_back(agg);
      relative.emplace_back();
      times.emplace_back();
    }
    auto &agg = out[it->second];
    ++agg.runs;
    if (row.status == "ok")
    {
      ++agg.ok;
      relative[it->second].push_back(row.relative_pct);
      times[it->second].push_back(row.wall_time_s);
    }
  }
  for (std::size_t a = 0; a < out.size(); ++a)
  {
    auto const &values = relative[a];
    if (values.empty())
    {
      continue;
    }
    double const count = static_cast<double>(values.size());
    double       mean  = 0.0;
    for (double v : values)
    {
      mean += v;
    }
    mean /= count;
    double spread = 0.0;
    for (double v : values)
    {
      spread += (v - mean) * (v - mean);
    }
    out[a].mean_relative_pct = mean;
    out[a].std_relative_pct  = values.size() > 1 ? std::sqrt(spread / (count - 1.0)) : 0.0;
    double time_sum          = 0.0;
    for (double t : times[a])
    {
      time_sum += t;
    }
    out[a].mean_wall_time_s   = time_sum / count;
    out[a].median_wall_time_s = detail::Median(times[a]);
  }
  return out;
}

inline ExperimentReport run_experiment(ExperimentConfig const &config)
{
  config.Validate();
  std::vector<std::pair<Cell, bool>> plan;
  for (auto const &cell : config.cells)
  {
    plan.emplace_back(cell, false);
  }
  if (config.include_large)
  {
    for (auto const &cell : large_cells())
    {
      plan.emplace_back(cell, true);
    }
  }

  ExperimentReport report;
  if (config.parallel)
  {
    std::vector<std::future<std::vector<ReportRow>>> pending;
    for (auto const &[cell, large] : plan)
    {
      pending.push_back(std::async(std::launch::async, detail::RunCell, std::cref(config), cell, large));
    }
    for (auto &future : pending)
    {
      auto rows = future.get();
      report.rows.insert(report.rows.end(), rows.begin(), rows.end());
    }
  }
  else
  {
    for (auto const &[cell, large] : plan)
    {
      auto rows = detail::RunCell(config, cell, large);
      report.rows.insert(report.rows.end(), rows.begin(), rows.end());
    }
  }
  report.aggregates = aggregate_rows(report.rows);
  return report;
}

enum class ReportFormat
{
  Csv,
  Json,
};

inline constexpr char const *kCsvHeader = "n,k,seed,algorithm,objective,relative_pct,wall_time_s,status";

inline std::string report_to_csv(ExperimentReport const &report)
{
  std::string out = std::string(kCsvHeader) + "\n";
  for (auto const &row : report.rows)
  {
    out += std::to_string(row.n) + "," + std::to_string(row.k) + "," + std::to_string(row.seed) + "," +
           row.algorithm + "," + detail::FormatDouble(row.objective) + "," +
           detail::FormatDouble(row.relative_pct) + "," + detail::FormatDouble(row.wall_time_s) + "," +
           row.status + "\n";
  }
  return out;
}

namespace detail {

inline std::string JsonNumber(double value)
{
  return std::isfinite(value) ? FormatDouble(value) : "null";
}

inline double JsonToDouble(nlohmann::json const &value)
{
  return value.is_null() ? std::numeric_limits<double>::quiet_NaN() : value.get<double>();
}

}  // namespace detail

inline std::string report_to_json(ExperimentReport const &report)
{
  std::string out = "{\n  \"rows\": [";
  for (std::size_t r = 0; r < report.rows.size(); ++r)
  {
    auto const &row = report.rows[r];
    out += r == 0 ? "\n" : ",\n";
    out += "    {\"n\": " + std::to_string(row.n) + ", \"k\": " + std::to_string(row.k) +
           ", \"seed\": " + std::to_string(row.seed) + ", \"algorithm\": \"" + row.algorithm +
           "\", \"objective\": " + detail::JsonNumber(row.objective) +
           ", \"relative_pct\": " + detail::JsonNumber(row.relative_pct) +
           ", \"wall_time_s\": " + detail::JsonNumber(row.wall_time_s) + ", \"status\": \"" + row.status +
           "\"}";
  }
  out += report.rows.empty() ? "],\n" : "\n  ],\n";
  out += "  \"aggregates\": [";
  for (std::size_t a = 0; a < report.aggregates.size(); ++a)
  {
    auto const &agg = report.aggregates[a];
    out += a == 0 ? "\n" : ",\n";
    out += "    {\"n\": " + std::to_string(agg.n) + ", \"k\": " + std::to_string(agg.k) +
           ", \"algorithm\": \"" + agg.algorithm + "\", \"runs\": " + std::to_string(agg.runs) +
           ", \"ok\": " + std::to_string(agg.ok) +
           ", \"mean_relative_pct\": " + detail::JsonNumber(agg.mean_relative_pct) +
           ", \"std_relative_pct\": " + detail::JsonNumber(agg.std_relative_pct) +
           ", \"mean_wall_time_s\": " + detail::JsonNumber(agg.mean_wall_time_s) +
           ", \"median_wall_time_s\": " + detail::JsonNumber(agg.median_wall_time_s) + "}";
  }
  out += report.aggregates.empty() ? "]\n}\n" : "\n  ]\n}\n";
  return out;
}

inline ExperimentReport report_from_json(std::string const &text)
{
  try
  {
    auto const       doc = nlohmann::json::parse(text);
    ExperimentReport report;
    for (auto const &entry : doc.at("rows"))
    {
      ReportRow row;
      row.n            = entry.at("n").get<std::size_t>();
      row.k            = entry.at("k").get<std::size_t>();
      row.seed         = entry.at("seed").get<std::uint64_t>();
      row.algorithm    = entry.at("algorithm").get<std::string>();
      row.objective    = detail::JsonToDouble(entry.at("objective"));
      row.relative_pct = detail::JsonToDouble(entry.at("relative_pct"));
      row.wall_time_s  = detail::JsonToDouble(entry.at("wall_time_s"));
      row.status       = entry.at("status").get<std::string>();
      report.rows.push_back(std::move(row));
    }
    for (auto const &entry : doc.at("aggregates"))
    {
      AggregateRow agg;
      agg.n                  = entry.at("n").get<std::size_t>();
      agg.k                  = entry.at("k").get<std::size_t>();
      agg.algorithm          = entry.at("algorithm").get<std::string>();
      agg.runs               = entry.at("runs").get<std::size_t>();
      agg.ok                 = entry.at("ok").get<std::size_t>();
      agg.mean_relative_pct  = detail::JsonToDouble(entry.at("mean_relative_pct"));
      agg.std_relative_pct   = detail::JsonToDouble(entry.at("std_relative_pct"));
      agg.mean_wall_time_s   = detail::JsonToDouble(entry.at("mean_wall_time_s"));
      agg.median_wall_time_s = detail::JsonToDouble(entry.at("median_wall_time_s"));
      report.aggregates.push_back(std::move(agg));
    }
    return report;
  }
  catch (nlohmann::json::exception const &e)
  {
    throw InvalidArgument(std::string("malformed report JSON: ") + e.what());
  }
}

inline void emit_report(ExperimentReport const &report, ReportFormat format,
                        std::filesystem::path const &path)
{
  detail::WriteFile(path, format == ReportFormat::Csv ? report_to_csv(report) : report_to_json(report));
}

inline ExperimentConfig config_from_json(std::string const &text)
{
  ExperimentConfig config;
  try
  {
    auto const doc = nlohmann::json::parse(text);
    if (doc.contains("cells"))
    {
      config.cells.clear();
      for (auto const &cell : doc.at("cells"))
      {
        detail::Require(cell.is_array() && cell.size() == 2, "each cell must be [n, k]");
        config.cells.push_back(Cell{cell[0].get<std::size_t>(), cell[1].get<std::size_t>()});
      }
    }
    if (doc.contains("algorithms"))
    {
      config.algorithms.clear();
      for (auto const &name : doc.at("algorithms"))
      {
        config.algorithms.push_back(parse_algorithm(name.get<std::string>()));
      }
    }
    if (doc.contains("rng"))
    {
      detail::Require(doc.at("rng").get<std::string>() == kRngName,
                      std::string("only the ") + kRngName + " generator is available");
    }
    if (doc.contains("weight_scheme"))
    {
      auto const scheme = doc.at("weight_scheme").get<std::string>();
      if (scheme == "position")
      {
        config.weight_scheme = WeightScheme::Position;
      }
      else if (scheme == "single_item")
      {
        config.weight_scheme = WeightScheme::SingleItem;
      }
      else if (scheme == "unit")
      {
        config.weight_scheme = WeightScheme::Unit;
      }
      else
      {
        throw InvalidArgument("unknown weight_scheme '" + scheme + "'");
      }
    }
    config.seeds           = doc.value("seeds", config.seeds);
    config.seed_offset     = doc.value("seed_offset", config.seed_offset);
    config.rounding_trials = doc.value("rounding_trials", config.rounding_trials);
    config.timeout_seconds = doc.value("timeout_seconds", config.timeout_seconds);
    config.grid_size       = doc.value("grid_size", config.grid_size);
    config.units           = doc.value("units", config.units);
    config.delta           = doc.value("delta", config.delta);
    config.brute_force_cap = doc.value("brute_force_cap", config.brute_force_cap);
    config.include_large   = doc.value("include_large", config.include_large);
    config.parallel        = doc.value("parallel", config.parallel);
    if (doc.contains("solver"))
    {
      auto const &solver = doc.at("solver");
      config.tolerance   = solver.value("tolerance", config.tolerance);
      config.max_iters   = solver.value("max_iters", config.max_iters);
    }
    if (doc.contains("output"))
    {
      auto const &output = doc.at("output");
      config.csv_path    = output.value("csv", config.csv_path);
      config.json_path   = output.value("json", config.json_path);
    }
  }
  catch (nlohmann::json::exception const &e)
  {
    throw InvalidArgument(std::string("malformed config JSON: ") + e.what());
  }
  config.Validate();
  return config;
}

inline ExperimentConfig read_config(std::filesystem::path const &path)
{
  try
  {
    return config_from_json(detail::ReadFile(path));
  }
  catch (InvalidArgument const &e)
  {
    throw InvalidArgument(path.string() + ": " + e.what());
  }
}

}  // namespace bidsel
