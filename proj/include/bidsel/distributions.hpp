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

#include "bidsel/error.hpp"
#include "bidsel/random.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace bidsel {

inline constexpr double kProbabilitySumTolerance = 1e-12;

/// Finite-support nonnegative value distribution.
class DiscreteDistribution
{
public:
  DiscreteDistribution() = default;

  DiscreteDistribution(std::vector<double> support, std::vector<double> probs)
    : support_(std::move(support))
    , probs_(std::move(probs))
  {
    detail::Require(!support_.empty(), "distribution support is empty");
    detail::Require(support_.size() == probs_.size(),
                    "support and probability lengths differ");
    double total = 0.0;
    for (std::size_t i = 0; i < support_.size(); ++i)
    {
      detail::Require(std::isfinite(support_[i]) && support_[i] >= 0.0,
                      "support values must be finite and nonnegative");
      detail::Require(i == 0 || support_[i] > support_[i - 1],
                      "support values must be strictly increasing");
      detail::Require(std::isfinite(probs_[i]) && probs_[i] >= 0.0,
                      "probabilities must be nonnegative");
      total += probs_[i];
    }
    detail::Require(std::abs(total - 1.0) <= kProbabilitySumTolerance,
                    "probabilities must sum to 1");
  }

  /// Point mass at `value`.
  static DiscreteDistribution PointMass(double value)
  {
    return DiscreteDistribution({value}, {1.0});
  }

  std::span<double const> support() const noexcept
  {
    return support_;
  }

  std::span<double const> probs() const noexcept
  {
    return probs_;
  }

  std::size_t size() const noexcept
  {
    return support_.size();
  }

  /// Pr[v >= tau], or Pr[v > tau] when `strict`.
  double Tail(double tau, bool strict) const noexcept
  {
    auto const begin = support_.begin();
    auto const it    = strict ? std::upper_bound(begin, support_.end(), tau)
                              : std::lower_bound(begin, support_.end(), tau);
    double     sum   = 0.0;
    for (auto j = static_cast<std::size_t>(it - begin); j < probs_.size(); ++j)
    {
      sum += probs_[j];
    }
    return std::min(sum, 1.0);
  }

  double Mean() const noexcept
  {
    double mean = 0.0;
    for (std::size_t j = 0; j < support_.size(); ++j)
    {
      mean += support_[j] * probs_[j];
    }
    return mean;
  }

  double Max() const noexcept
  {
    return support_.back();
  }

  /// Inverse-CDF draw for a uniform `u` in [0, 1).
  double Sample(double u) const noexcept
  {
    double cumulative = 0.0;
    for (std::size_t j = 0; j < support_.size(); ++j)
    {
      cumulative += probs_[j];
      if (u < cumulative)
      {
        return support_[j];
      }
    }
    // u landed in the rounding slack above the last cumulative sum
    for (std::size_t j = support_.size(); j-- > 0;)
    {
      if (probs_[j] > 0.0)
      {
        return support_[j];
      }
    }
    return support_.back();
  }

  bool operator==(DiscreteDistribution const &) const = default;

private:
  std::vector<double> support_;
  std::vector<double> probs_;
};

inline double tail_probability(DiscreteDistribution const &dist, double tau, bool strict)
{
  detail::Require(tau >= 0.0, "threshold must be nonnegative");
  return dist.Tail(tau, strict);
}

/// n value distributions, a non-increasing weight vector and a capacity k.
class AuctionInstance
{
public:
  AuctionInstance() = default;

  AuctionInstance(std::vector<DiscreteDistribution> distributions, std::vector<double> weights,
                  std::size_t capacity)
    : distributions_(std::move(distributions))
    , weights_(std::move(weights))
    , capacity_(capacity)
  {
    std::size_t const n = distributions_.size();
    detail::Require(n >= 1, "instance needs at least one bidder");
    detail::Require(weights_.size() <= n, "more weights than bidders");
    weights_.resize(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
    {
      detail::Require(std::isfinite(weights_[i]) && weights_[i] >= 0.0 && weights_[i] <= 1.0,
                      "weights must lie in [0, 1]");
      detail::Require(i == 0 || weights_[i] <= weights_[i - 1], "weights must be non-increasing");
    }
    detail::Require(capacity_ >= 1 && capacity_ <= n, "capacity must satisfy 1 <= k <= n");
  }

  std::size_t size() const noexcept
  {
    return distributions_.size();
  }

  std::size_t capacity() const noexcept
  {
    return capacity_;
  }

  std::span<double const> weights() const noexcept
  {
    return weights_;
  }

  std::span<DiscreteDistribution const> distributions() const noexcept
  {
    return distributions_;
  }

  DiscreteDistribution const &distribution(std::size_t i) const
  {
    return distributions_.at(i);
  }

  bool operator==(AuctionInstance const &) const = default;

private:
  std::vector<DiscreteDistribution> distributions_;
  std::vector<double>               weights_;
  std::size_t                       capacity_ = 0;
};

/// Sorted union of {0} and every support point, with segment lengths.
///
/// All welfare integrands are constant on (points[j], points[j+1]], so every
/// integral over thresholds reduces to a sum over the segments.
struct ThresholdGrid
{
  std::vector<double> points;
  std::vector<double> segment_lengths;

  std::size_t segments() const noexcept
  {
    return segment_lengths.size();
  }
};

inline ThresholdGrid build_threshold_grid(AuctionInstance const &instance)
{
  ThresholdGrid grid;
  grid.points.push_back(0.0);
  for (auto const &dist : instance.distributions())
  {
    grid.points.insert(grid.points.end(), dist.support().begin(), dist.support().end());
  }
  std::sort(grid.points.begin(), grid.points.end());
  grid.points.erase(std::unique(grid.points.begin(), grid.points.end()), grid.points.end());
  grid.segment_lengths.reserve(grid.points.size() - 1);
  for (std::size_t j = 0; j + 1 < grid.points.size(); ++j)
  {
    grid.segment_lengths.push_back(grid.points[j + 1] - grid.points[j]);
  }
  return grid;
}

/// Position weights: 1 on the top fifth of k, 0.2 up to three fifths, else 0.
///
/// Boundaries are floored; position 1 always keeps weight 1 so small k never
/// yields an all-zero auction.
inline std::vector<double> default_position_weights(std::size_t k, std::size_t n)
{
  detail::Require(k >= 1 && k <= n, "default weights need 1 <= k <= n");
  std::size_t const full    = std::max<std::size_t>(k / 5, 1);
  std::size_t const partial = std::max(3 * k / 5, full);
  std::vector<double> weights(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
  {
    if (i < full)
    {
      weights[i] = 1.0;
    }
    else if (i < partial)
    {
      weights[i] = 0.2;
    }
  }
  return weights;
}

/// Weights of an l-unit auction: 1 on the first l positions.
inline std::vector<double> unit_demand_weights(std::size_t units, std::size_t n)
{
  std::vector<double> weights(n, 0.0);
  std::fill_n(weights.begin(), std::min(units, n), 1.0);
  return weights;
}

/// Common support {0} U {1 + i/grid_size : i < grid_size}.
inline std::vector<double> lognormal_grid_support(std::size_t grid_size)
{
  std::vector<double> support{0.0};
  for (std::size_t i = 0; i < grid_size; ++i)
  {
    support.push_back(1.0 + static_cast<double>(i) / static_cast<double>(grid_size));
  }
  return support;
}

/// Discretize Lognormal(mu, sigma^2) onto the common grid support.
///
/// Mass of each cell inside [0, 2] moves to the cell's left endpoint; the
/// last interior cell is closed at 2. Mass strictly above 2 is spread over
/// the grid proportionally to the in-range probabilities (uniformly if those
/// are all zero).
inline DiscreteDistribution discretize_lognormal(double mu, double sigma, std::size_t grid_size)
{
  detail::Require(grid_size >= 2, "grid_size must be at least 2");
  detail::Require(sigma >= 0.0, "sigma must be nonnegative");
  std::vector<double> support = lognormal_grid_support(grid_size);

  // Pr[V < x] and Pr[V <= x]; they differ only for the point mass sigma = 0.
  auto const below = [&](double x, bool inclusive) {
    if (x <= 0.0)
    {
      return 0.0;
    }
    if (sigma == 0.0)
    {
      double const atom = std::exp(mu);
      return (inclusive ? atom <= x : atom < x) ? 1.0 : 0.0;
    }
    return 0.5 * std::erfc(-(std::log(x) - mu) / (sigma * std::sqrt(2.0)));
  };

  std::size_t const   m = support.size();
  std::vector<double> probs(m, 0.0);
  for (std::size_t j = 0; j < m; ++j)
  {
    double const left  = support[j];
    bool const   last  = j + 1 == m;
    double const right = last ? 2.0 : support[j + 1];
    probs[j]           = std::max(0.0, below(right, last) - below(left, false));
  }
  double const in_range = std::accumulate(probs.begin(), probs.end(), 0.0);
  double const excess   = std::max(0.0, 1.0 - below(2.0, true));
  if (in_range > 0.0)
  {
    for (auto &p : probs)
    {
      p += excess * p / in_range;
    }
  }
  else
  {
    for (auto &p : probs)
    {
      p = 1.0 / static_cast<double>(m);
    }
  }
  double const total = std::accumulate(probs.begin(), probs.end(), 0.0);
  for (auto &p : probs)
  {
    p /= total;
  }
  return DiscreteDistribution(std::move(support), std::move(probs));
}

struct LognormalParams
{
  double mu    = 0.0;
  double sigma = 0.0;
};

/// Per-bidder (mu, sigma) with mu ~ U[0, 0.2] and sigma ~ U[0, 0.5].
inline std::vector<LognormalParams> draw_lognormal_params(std::size_t n, std::uint64_t seed)
{
  Rng                          rng(seed);
  std::vector<LognormalParams> params(n);
  for (auto &p : params)
  {
    p.mu    = 0.2 * rng.Uniform();
    p.sigma = 0.5 * rng.Uniform();
  }
  return params;
}

inline AuctionInstance instance_from_lognormal_params(std::span<LognormalParams const> params,
                                                      std::size_t k, std::size_t grid_size)
{
  std::vector<DiscreteDistribution> dists;
  dists.reserve(params.size());
  for (auto const &p : params)
  {
    dists.push_back(discretize_lognormal(p.mu, p.sigma, grid_size));
  }
  std::size_t const n = params.size();
  return AuctionInstance(std::move(dists), default_position_weights(k, n), k);
}

/// Synthetic position-auction instance from discretized log-normal priors.
inline AuctionInstance generate_lognormal_instance(std::size_t n, std::size_t k, std::uint64_t seed,
                                                   std::size_t grid_size = 50)
{
  detail::Require(grid_size >= 2, "grid_size must be at least 2");
  detail::Require(n >= k && k >= 1, "generation needs n >= k >= 1");
  auto const params = draw_lognormal_params(n, seed);
  return instance_from_lognormal_params(params, k, grid_size);
}

}  // namespace bidsel
