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

#include "bidsel/baselines.hpp"
#include "bidsel/testing/properties.hpp"
#include "bidsel/testing/random_instances.hpp"

#include <gtest/gtest.h>

#include <vector>

namespace bidsel {
namespace {

TEST(Greedy, PicksHigherMean)
{
  AuctionInstance const instance(
      {DiscreteDistribution::PointMass(1.0), DiscreteDistribution({0.0, 3.0}, {0.5, 0.5})}, {1.0}, 1);
  auto const report = greedy(instance);
  EXPECT_EQ(report.selected.members, (std::vector<std::size_t>{1}));
  EXPECT_DOUBLE_EQ(report.welfare, 1.5);
  EXPECT_EQ(report.evaluations, 2u);
}

TEST(Greedy, TiesGoToLowerIndex)
{
  AuctionInstance const instance({DiscreteDistribution::PointMass(1.0), DiscreteDistribution::PointMass(1.0)},
                                 {1.0}, 1);
  EXPECT_EQ(greedy(instance).selected.members, (std::vector<std::size_t>{0}));
}

TEST(Greedy, ReportedWelfareIsSetWelfare)
{
  for (std::uint64_t seed = 0; seed < 5; ++seed)
  {
    auto const instance = generate_lognormal_instance(30, 8, seed);
    auto const report   = greedy(instance);
    EXPECT_EQ(report.selected.size(), 8u);
    EXPECT_EQ(report.welfare, sw_set(instance, report.selected));
  }
}

TEST(Greedy, LazyMatchesReference)
{
  Rng rng(3);
  for (int trial = 0; trial < 30; ++trial)
  {
    auto const    instance = testing::random_instance(rng, 3, 15, 5, 8);
    GreedyOptions lazy;
    lazy.lazy = true;
    auto const fast = greedy(instance, lazy);
    auto const slow = greedy(instance);
    EXPECT_NEAR(fast.welfare, slow.welfare, 1e-9);
    EXPECT_LE(fast.evaluations, slow.evaluations);
  }
}

TEST(LocalSearch, OptimalStartIsUnchanged)
{
  auto const instance = generate_lognormal_instance(8, 3, 6);
  auto const opt      = brute_force(instance);
  auto const report   = local_search(instance, opt.selected);
  EXPECT_EQ(report.selected, opt.selected);
  EXPECT_EQ(report.iterations, 0u);
  EXPECT_DOUBLE_EQ(report.welfare, opt.welfare);
}

TEST(LocalSearch, NeverWorseThanGreedyStart)
{
  for (std::uint64_t seed = 0; seed < 5; ++seed)
  {
    auto const instance = generate_lognormal_instance(25, 6, seed);
    auto const start    = greedy(instance);
    auto const report   = local_search(instance, start.selected);
    EXPECT_GE(report.welfare, start.welfare);
    EXPECT_EQ(report.welfare, sw_set(instance, report.selected));
    auto const chained = local_search(instance);
    EXPECT_EQ(chained.selected, report.selected);
    EXPECT_EQ(chained.evaluations, report.evaluations + start.evaluations);
  }
}

TEST(LocalSearch, RejectsInfeasibleStart)
{
  auto const instance = generate_lognormal_instance(8, 2, 1);
  EXPECT_THROW(local_search(instance, SelectionSet{{0, 1, 2}}), InvalidArgument);
}

TEST(BruteForce, SmallCases)
{
  AuctionInstance const one({DiscreteDistribution::PointMass(2.0)}, {1.0}, 1);
  EXPECT_EQ(brute_force(one).selected.members, (std::vector<std::size_t>{0}));
  auto const three = generate_lognormal_instance(3, 3, 2);
  EXPECT_EQ(brute_force(three).selected.members, (std::vector<std::size_t>{0, 1, 2}));
}

TEST(BruteForce, CapIsEnforced)
{
  auto const        instance = generate_lognormal_instance(30, 10, 1);
  BruteForceOptions options;
  options.cap = 1000;
  EXPECT_THROW(brute_force(instance, options), CapExceeded);
  EXPECT_EQ(detail::Binomial(30, 10), 30045015u);
  EXPECT_EQ(detail::Binomial(5, 0), 1u);
}

TEST(BruteForce, DominatesHeuristics)
{
  auto const results = testing::check_baselines(25, 5);
  for (auto const &result : results)
  {
    EXPECT_TRUE(result.passed()) << result.name << ": " << result.detail;
  }
}

TEST(SetWelfare, MonotoneAndSubmodular)
{
  auto const results = testing::check_submodularity(10, 6, 6);
  for (auto const &result : results)
  {
    EXPECT_TRUE(result.passed()) << result.name << ": " << result.detail;
  }
}

}  // namespace
}  // namespace bidsel
