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
#include "bidsel/objectives.hpp"
#include "bidsel/random.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace bidsel {

inline constexpr double kBudgetTolerance = 1e-9;

/// Inclusion probabilities x in [0, 1]^n.
struct FractionalSolution
{
  std::vector<double> x;

  double Sum() const noexcept
  {
    double total = 0.0;
    for (double xi : x)
    {
      total += xi;
    }
    return total;
  }

  /// Box membership within `kProbabilityClampTolerance` and sum(x) <= budget.
  bool IsFeasible(double budget) const noexcept
  {
    for (double xi : x)
    {
      if (!(xi >= -kProbabilityClampTolerance && xi <= 1.0 + kProbabilityClampTolerance))
      {
        return false;
      }
    }
    return Sum() <= budget + kBudgetTolerance;
  }
};

/// Integral bidder set, members strictly increasing.
struct SelectionSet
{
  std::vector<std::size_t> members;

  static SelectionSet FromIndices(std::vector<std::size_t> indices)
  {
    std::sort(indices.begin(), indices.end());
    detail::Require(std::adjacent_find(indices.begin(), indices.end()) == indices.end(),
                    "selection contains a bidder twice");
    return SelectionSet{std::move(indices)};
  }

  std::size_t size() const noexcept
  {
    return members.size();
  }

  bool Contains(std::size_t i) const noexcept
  {
    return std::binary_search(members.begin(), members.end(), i);
  }

  bool IsFeasible(std::size_t n, std::size_t capacity) const noexcept
  {
    if (members.size() > capacity)
    {
      return false;
    }
    for (std::size_t j = 0; j < members.size(); ++j)
    {
      if (members[j] >= n || (j > 0 && members[j] <= members[j - 1]))
      {
        return false;
      }
    }
    return true;
  }

  FractionalSolution Indicator(std::size_t n) const
  {
    FractionalSolution out{std::vector<double>(n, 0.0)};
    for (auto i : members)
    {
      out.x.at(i) = 1.0;
    }
    return out;
  }

  bool operator==(SelectionSet const &) const = default;
};

/// Strict tails Pr[v_i > tau_j] for every grid segment j, row-major T x n.
///
/// This is the dominant memory object of a solve; value and gradient
/// evaluations share it.
class TailMatrix
{
public:
  TailMatrix() = default;

  explicit TailMatrix(AuctionInstance const &instance)
    : grid_(build_threshold_grid(instance))
    , bidders_(instance.size())
  {
    std::size_t const segments = grid_.segments();
    tails_.resize(segments * bidders_);
    for (std::size_t j = 0; j < segments; ++j)
    {
      double const tau = grid_.points[j];
      for (std::size_t i = 0; i < bidders_; ++i)
      {
        tails_[j * bidders_ + i] = instance.distribution(i).Tail(tau, true);
      }
    }
  }

  ThresholdGrid const &grid() const noexcept
  {
    return grid_;
  }

  std::size_t segments() const noexcept
  {
    return grid_.segments();
  }

  std::size_t bidders() const noexcept
  {
    return bidders_;
  }

  std::span<double const> Row(std::size_t segment) const noexcept
  {
    return {tails_.data() + segment * bidders_, bidders_};
  }

  double operator()(std::size_t segment, std::size_t bidder) const noexcept
  {
    return tails_[segment * bidders_ + bidder];
  }

private:
  ThresholdGrid       grid_;
  std::size_t         bidders_ = 0;
  std::vector<double> tails_;
};

struct MonteCarloEstimate
{
  double mean           = 0.0;
  double standard_error = 0.0;
};

/// Exact expected welfare on one instance; caches the strict-tail matrix.
///
/// Welfare is the threshold integral of the Bernoulli term, evaluated as
///   sum_j (tau_{j+1} - tau_j) * sum_m w_m Pr[Z(tau_j+) >= m],
/// where only the first `active` weights (up to the last nonzero) matter.
class WelfareEvaluator
{
public:
  explicit WelfareEvaluator(AuctionInstance const &instance)
    : instance_(&instance)
    , tails_(instance)
    , active_(detail::ActiveLength(instance.weights()))
  {}

  explicit WelfareEvaluator(AuctionInstance &&) = delete;

  AuctionInstance const &instance() const noexcept
  {
    return *instance_;
  }

  TailMatrix const &tails() const noexcept
  {
    return tails_;
  }

  /// Multilinear-extension welfare SW(x).
  double Fractional(std::span<double const> x) const
  {
    std::size_t const n = instance_->size();
    detail::Require(x.size() == n, "fractional solution has the wrong dimension");
    std::vector<double> xs(n);
    for (std::size_t i = 0; i < n; ++i)
    {
      xs[i] = detail::ClampProbability(x[i]);
    }
    std::vector<double> q;
    q.reserve(n);
    return Integrate([&](std::size_t segment) -> std::span<double const> {
      q.clear();
      auto const row = tails_.Row(segment);
      for (std::size_t i = 0; i < n; ++i)
      {
        double const qi = xs[i] * row[i];
        if (qi > 0.0)
        {
          q.push_back(qi);
        }
      }
      return q;
    });
  }

  double Fractional(FractionalSolution const &x) const
  {
    return Fractional(std::span<double const>(x.x));
  }

  /// Welfare of an integral set; sets larger than k are evaluated as-is.
  double Set(std::span<std::size_t const> members) const
  {
    std::vector<double> q;
    q.reserve(members.size());
    for (auto i : members)
    {
      detail::Require(i < instance_->size(), "bidder index out of range");
    }
    return Integrate([&](std::size_t segment) -> std::span<double const> {
      q.clear();
      auto const row = tails_.Row(segment);
      for (auto i : members)
      {
        if (row[i] > 0.0)
        {
          q.push_back(row[i]);
        }
      }
      return q;
    });
  }

  double Set(SelectionSet const &set) const
  {
    return Set(std::span<std::size_t const>(set.members));
  }

  /// Sampled welfare of the random set y ~ Ber(x); deterministic given seed.
  MonteCarloEstimate MonteCarlo(std::span<double const> x, std::size_t samples,
                                std::uint64_t seed) const
  {
    detail::Require(samples >= 1, "need at least one sample");
    std::size_t const n = instance_->size();
    detail::Require(x.size() == n, "fractional solution has the wrong dimension");
    auto const          weights = instance_->weights();
    Rng                 rng(seed);
    std::vector<double> values;
    values.reserve(n);
    // Welford accumulation keeps constant samples at exactly zero spread.
    double mean = 0.0;
    double m2   = 0.0;
    for (std::size_t s = 0; s < samples; ++s)
    {
      values.clear();
      for (std::size_t i = 0; i < n; ++i)
      {
        if (rng.Bernoulli(x[i]))
        {
          values.push_back(instance_->distribution(i).Sample(rng.Uniform()));
        }
      }
      std::sort(values.begin(), values.end(), std::greater<>());
      double welfare = 0.0;
      for (std::size_t r = 0; r < values.size() && r < active_; ++r)
      {
        welfare += weights[r] * values[r];
      }
      double const delta = welfare - mean;
      mean += delta / static_cast<double>(s + 1);
      m2 += delta * (welfare - mean);
    }
    MonteCarloEstimate out;
    out.mean = mean;
    if (samples > 1)
    {
      double const count    = static_cast<double>(samples);
      double const variance = std::max(0.0, m2 / (count - 1.0));
      out.standard_error    = std::sqrt(variance / count);
    }
    return out;
  }

private:
  template <typename RowBuilder>
  double Integrate(RowBuilder &&build_row) const
  {
    auto const  weights  = instance_->weights();
    auto const &lengths  = tails_.grid().segment_lengths;
    double      total    = 0.0;
    std::vector<double> state, count_tails;
    for (std::size_t j = 0; j < lengths.size(); ++j)
    {
      auto const        q   = build_row(j);
      std::size_t const cap = std::min(active_, q.size());
      if (cap == 0)
      {
        continue;
      }
      detail::CountTailsInto(q, cap, state, count_tails);
      double term = 0.0;
      for (std::size_t m = 1; m <= cap; ++m)
      {
        term += weights[m - 1] * count_tails[m];
      }
      total += lengths[j] * term;
    }
    return total;
  }

  AuctionInstance const *instance_;
  TailMatrix             tails_;
  std::size_t            active_;
};

inline double sw_fractional(AuctionInstance const &instance, FractionalSolution const &x)
{
  return WelfareEvaluator(instance).Fractional(x);
}

inline double sw_set(AuctionInstance const &instance, SelectionSet const &set)
{
  return WelfareEvaluator(instance).Set(set);
}

inline MonteCarloEstimate sw_monte_carlo(AuctionInstance const &instance, FractionalSolution const &x,
                                         std::size_t samples, std::uint64_t seed)
{
  return WelfareEvaluator(instance).MonteCarlo(x.x, samples, seed);
}

}  // namespace bidsel
