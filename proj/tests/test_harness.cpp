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

#include "bidsel/harness.hpp"
#include "bidsel/instance_io.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

namespace bidsel {
namespace {

ExperimentConfig SmallConfig(std::vector<Algorithm> algorithms)
{
  ExperimentConfig config;
  config.cells      = {Cell{6, 2}};
  config.seeds      = 3;
  config.algorithms = std::move(algorithms);
  return config;
}

std::size_t CountLines(std::string const &text)
{
  return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

TEST(Algorithms, NamesRoundTrip)
{
  for (auto algorithm : kAllAlgorithms)
  {
    EXPECT_EQ(parse_algorithm(algorithm_name(algorithm)), algorithm);
  }
  EXPECT_THROW(parse_algorithm("simplex"), InvalidArgument);
  EXPECT_TRUE(is_fractional(Algorithm::Practical));
  EXPECT_FALSE(is_fractional(Algorithm::Greedy));
}

TEST(Experiment, BruteForceAloneIsTheReference)
{
  auto const report = run_experiment(SmallConfig({Algorithm::BruteForce}));
  ASSERT_EQ(report.rows.size(), 3u);
  for (auto const &row : report.rows)
  {
    EXPECT_EQ(row.status, "ok");
    EXPECT_DOUBLE_EQ(row.relative_pct, 100.0);
  }
}

TEST(Experiment, GreedyWithinConstantFactorOfOptimum)
{
  auto const report = run_experiment(SmallConfig({Algorithm::Greedy, Algorithm::BruteForce}));
  ASSERT_EQ(report.rows.size(), 6u);
  for (auto const &row : report.rows)
  {
    EXPECT_EQ(row.status, "ok");
    EXPECT_LE(row.relative_pct, 100.0 + 1e-12);
    if (row.algorithm == "greedy")
    {
      EXPECT_GE(row.relative_pct, 100.0 * (1.0 - std::exp(-1.0)));
    }
  }
}

TEST(Experiment, RowsAreDeterministicAndRelativeIsCapped)
{
  auto config = SmallConfig({Algorithm::Practical, Algorithm::Alg1, Algorithm::Greedy, Algorithm::LocalSearch});
  config.cells = {Cell{12, 3}, Cell{10, 5}};
  auto const first  = run_experiment(config);
  auto const second = run_experiment(config);
  ASSERT_EQ(first.rows.size(), 2u * 3u * 4u);
  for (std::size_t r = 0; r < first.rows.size(); ++r)
  {
    EXPECT_EQ(first.rows[r].objective, second.rows[r].objective);
    EXPECT_EQ(first.rows[r].status, "ok");
    EXPECT_LE(first.rows[r].relative_pct, 100.0);
    EXPECT_GT(first.rows[r].relative_pct, 0.0);
  }
  config.parallel     = true;
  auto const parallel = run_experiment(config);
  ASSERT_EQ(parallel.rows.size(), first.rows.size());
  for (std::size_t r = 0; r < first.rows.size(); ++r)
  {
    EXPECT_EQ(parallel.rows[r].objective, first.rows[r].objective);
  }
}

TEST(Experiment, UnsupportedAndCapExceededRows)
{
  auto config = SmallConfig({Algorithm::SingleItem, Algorithm::BruteForce, Algorithm::Greedy});
  config.cells           = {Cell{20, 10}};
  config.seeds           = 1;
  config.brute_force_cap = 10;
  auto const report      = run_experiment(config);
  ASSERT_EQ(report.rows.size(), 3u);
  EXPECT_EQ(report.rows[0].status, "unsupported");
  EXPECT_TRUE(std::isnan(report.rows[0].objective));
  EXPECT_EQ(report.rows[1].status, "cap-exceeded");
  EXPECT_EQ(report.rows[2].status, "ok");
  EXPECT_DOUBLE_EQ(report.rows[2].relative_pct, 100.0);
}

TEST(Experiment, TimeoutRow)
{
  auto config            = SmallConfig({Algorithm::LocalSearch});
  config.cells           = {Cell{200, 40}};
  config.seeds           = 1;
  config.timeout_seconds = 1e-3;
  auto const report      = run_experiment(config);
  ASSERT_EQ(report.rows.size(), 1u);
  EXPECT_EQ(report.rows[0].status, "timeout");
}

TEST(Experiment, LargeCellsRunFractionalAlgorithmsOnly)
{
  auto config          = SmallConfig({Algorithm::Practical, Algorithm::Greedy});
  config.cells         = {};
  config.seeds         = 1;
  config.include_large = true;
  auto const report    = run_experiment(config);
  ASSERT_EQ(report.rows.size(), large_cells().size());
  for (auto const &row : report.rows)
  {
    EXPECT_EQ(row.algorithm, "practical");
    EXPECT_EQ(row.n, 1000u);
    EXPECT_EQ(row.status, "ok");
  }
}

TEST(Aggregates, MeanStdAndMedian)
{
  std::vector<ReportRow> rows;
  for (double rel : {90.0, 100.0, 95.0})
  {
    ReportRow row;
    row.n = 5, row.k = 2, row.algorithm = "greedy", row.objective = rel, row.relative_pct = rel;
    row.wall_time_s = rel / 100.0, row.status = "ok";
    rows.push_back(row);
  }
  ReportRow failed;
  failed.n = 5, failed.k = 2, failed.algorithm = "greedy", failed.status = "timeout", failed.wall_time_s = 7.0;
  rows.push_back(failed);
  auto const aggregates = aggregate_rows(rows);
  ASSERT_EQ(aggregates.size(), 1u);
  auto const &agg = aggregates[0];
  EXPECT_EQ(agg.runs, 4u);
  EXPECT_EQ(agg.ok, 3u);
  EXPECT_DOUBLE_EQ(agg.mean_relative_pct, 95.0);
  EXPECT_DOUBLE_EQ(agg.std_relative_pct, 5.0);
  EXPECT_DOUBLE_EQ(agg.median_wall_time_s, 0.95);
  EXPECT_DOUBLE_EQ(agg.mean_wall_time_s, 0.95);
}

TEST(Reports, CsvShapes)
{
  ExperimentReport empty;
  EXPECT_EQ(report_to_csv(empty), std::string(kCsvHeader) + "\n");

  ExperimentReport one;
  ReportRow        row;
  row.n = 50, row.k = 5, row.seed = 3, row.algorithm = "practical";
  row.objective = 1.0 / 3.0, row.relative_pct = 100.0, row.wall_time_s = 0.25, row.status = "ok";
  one.rows.push_back(row);
  auto const csv = report_to_csv(one);
  EXPECT_EQ(CountLines(csv), 2u);
  EXPECT_NE(csv.find("50,5,3,practical,0.33333333333333331,100,0.25,ok"), std::string::npos);
}

TEST(Reports, JsonRoundTripKeepsBitsAndNulls)
{
  auto config   = SmallConfig({Algorithm::Practical, Algorithm::Greedy});
  auto report   = run_experiment(config);
  report.rows.push_back(ReportRow{6, 2, 99, "brute_force", std::numeric_limits<double>::quiet_NaN(),
                                  std::numeric_limits<double>::quiet_NaN(), 0.5, "timeout"});
  auto const text   = report_to_json(report);
  auto const parsed = report_from_json(text);
  ASSERT_EQ(parsed.rows.size(), report.rows.size());
  for (std::size_t r = 0; r < report.rows.size(); ++r)
  {
    auto const &a = report.rows[r];
    auto const &b = parsed.rows[r];
    EXPECT_EQ(a.algorithm, b.algorithm);
    EXPECT_EQ(a.status, b.status);
    EXPECT_EQ(a.seed, b.seed);
    if (std::isnan(a.objective))
    {
      EXPECT_TRUE(std::isnan(b.objective));
    }
    else
    {
      EXPECT_EQ(a.objective, b.objective);
      EXPECT_EQ(a.relative_pct, b.relative_pct);
    }
  }
  EXPECT_EQ(parsed.aggregates.size(), report.aggregates.size());
  EXPECT_NE(text.find("null"), std::string::npos);
  EXPECT_THROW(report_from_json("{\"rows\": 3}"), InvalidArgument);
}

TEST(Config, ParsesEveryField)
{
  auto const config = config_from_json(R"({
    "cells": [[20, 4], [30, 6]], "seeds": 2, "seed_offset": 100,
    "algorithms": ["practical", "alg1"], "rng": "mt19937_64",
    "weight_scheme": "unit", "units": 3, "delta": 0.1, "rounding_trials": 4,
    "timeout_seconds": 5, "grid_size": 20, "brute_force_cap": 100,
    "include_large": false, "parallel": true,
    "solver": {"tolerance": 1e-6, "max_iters": 50},
    "output": {"csv": "a.csv", "json": "b.json"}})");
  EXPECT_EQ(config.cells.size(), 2u);
  EXPECT_EQ(config.cells[1].k, 6u);
  EXPECT_EQ(config.seeds, 2u);
  EXPECT_EQ(config.seed_offset, 100u);
  EXPECT_EQ(config.algorithms, (std::vector<Algorithm>{Algorithm::Practical, Algorithm::Alg1}));
  EXPECT_EQ(config.weight_scheme, WeightScheme::Unit);
  EXPECT_EQ(config.units, 3u);
  EXPECT_EQ(config.rounding_trials, 4u);
  EXPECT_EQ(config.grid_size, 20u);
  EXPECT_TRUE(config.parallel);
  EXPECT_EQ(config.max_iters, 50u);
  EXPECT_EQ(config.csv_path, "a.csv");
  EXPECT_EQ(config.json_path, "b.json");
}

TEST(Config, RejectsInvalidInput)
{
  EXPECT_THROW(config_from_json("{"), InvalidArgument);
  EXPECT_THROW(config_from_json(R"({"cells": [[3, 5]]})"), InvalidArgument);
  EXPECT_THROW(config_from_json(R"({"algorithms": []})"), InvalidArgument);
  EXPECT_THROW(config_from_json(R"({"rng": "pcg32"})"), InvalidArgument);
  EXPECT_THROW(config_from_json(R"({"weight_scheme": "vickrey"})"), InvalidArgument);
  EXPECT_THROW(config_from_json(R"({"seeds": 0})"), InvalidArgument);
}

TEST(InstanceIo, JsonRoundTripIsExact)
{
  auto const instance = generate_lognormal_instance(15, 4, 8);
  EXPECT_EQ(instance_from_json(instance_to_json(instance)), instance);

  auto const dir  = std::filesystem::temp_directory_path() / "bidsel_io_test";
  auto const path = dir / "nested" / "instance.json";
  write_instance(instance, path);
  EXPECT_EQ(read_instance(path), instance);
  std::filesystem::remove_all(dir);

  EXPECT_THROW(read_instance(dir / "missing.json"), IoError);
  EXPECT_THROW(instance_from_json("{\"capacity\": 1}"), InvalidArgument);
}

TEST(Reports, EmitWritesFiles)
{
  auto const dir    = std::filesystem::temp_directory_path() / "bidsel_emit_test";
  auto const report = run_experiment(SmallConfig({Algorithm::Greedy}));
  emit_report(report, ReportFormat::Csv, dir / "r.csv");
  emit_report(report, ReportFormat::Json, dir / "r.json");
  EXPECT_TRUE(std::filesystem::exists(dir / "r.csv"));
  EXPECT_EQ(report_from_json(detail::ReadFile(dir / "r.json")).rows.size(), 3u);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace bidsel
