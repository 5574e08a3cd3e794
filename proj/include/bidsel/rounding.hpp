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

#include "bidsel/distributions.hpp"
#include "bidsel/error.hpp"
#include "bidsel/random.hpp"
#include "bidsel/welfare.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace bidsel {

inline constexpr std::size_t kDefaultRoundingTrials = 10;

struct RoundingOutcome
{
  SelectionSet          selected;
  SelectionSet          sampled;  // support of y before truncation
  std::size_t           pre_truncation_size = 0;
  std::optional<double> welfare;  // sw_set(selected) when an instance was supplied
  std::size_t           trial = 0;
};

/// y ~ Ber(x) independently; if |y| > k keep a uniform k-subset of y.
///
/// The subset is the prefix of a partial Fisher-Yates shuffle of y's support.
inline RoundingOutcome round_once(std::span<double const> x, std::size_t capacity, std::uint64_t seed)
{
  for (double xi : x)
  {
    detail::Require(xi >= -kProbabilityClampTolerance && xi <= 1.0 + kProbabilityClampTolerance,
                    "rounding needs x in [0, 1]^n");
  }
  Rng                      rng(seed);
  std::vector<std::size_t> support;
  for (std::size_t i = 0; i < x.size(); ++i)
  {
    if (rng.Bernoulli(x[i]))
    {
      support.push_back(i);
    }
  }
  RoundingOutcome outcome;
  outcome.pre_truncation_size = support.size();
  outcome.sampled.members     = support;
  if (support.size() > capacity)
  {
    for (std::size_t t = 0; t < capacity; ++t)
    {
      auto const pick = t + static_cast<std::size_t>(rng.Below(support.size() - t));
      std::swap(support[t], support[pick]);
    }
    support.resize(capacity);
  }
  outcome.selected = SelectionSet::FromIndices(std::move(support));
  return outcome;
}

inline RoundingOutcome round_once(AuctionInstance const &instance, FractionalSolution const &x,
                                  std::uint64_t seed)
{
  detail::Require(x.x.size() == instance.size(), "fractional solution has the wrong dimension");
  auto outcome    = round_once(x.x, instance.capacity(), seed);
  outcome.welfare = sw_set(instance, outcome.selected);
  return outcome;
}

/// Best of `trials` independent roundings with seeds seed, seed + 1, ...;
/// ties keep the earliest trial.
inline RoundingOutcome round_best_of(AuctionInstance const &instance, FractionalSolution const &x,
                                     std::size_t trials = kDefaultRoundingTrials,
                                     std::uint64_t seed = 0)
{
  detail::Require(trials >= 1, "need at least one rounding trial");
  detail::Require(x.x.size() == instance.size(), "fractional solution has the wrong dimension");
  WelfareEvaluator const         evaluator(instance);
  std::optional<RoundingOutcome> best;
  for (std::size_t t = 0; t < trials; ++t)
  {
    auto outcome    = round_once(x.x, instance.capacity(), seed + t);
    outcome.welfare = evaluator.Set(outcome.selected);
    outcome.trial   = t;
    if (!best || *outcome.welfare > *best->welfare)
    {
      best = std::move(outcome);
    }
  }
  return *best;
}

}  // namespace bidsel
