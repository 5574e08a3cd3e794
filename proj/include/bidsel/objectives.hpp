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

// Per-threshold objective kernels.
//
// For a vector q of independent exceedance probabilities with Z = sum Ber(q_i)
// and lambda = sum q_i:
//
//   Bernoulli term  E[min(Z, l)]         exact, via the Poisson-binomial law
//   Chernoff term   min(lambda, l)       concave upper bound
//   Poisson term    E[min(Y, l)]         Y ~ Pois(lambda), concave in lambda
//
// Weighted versions combine the unit terms as sum_l (w_l - w_{l+1}) H(., l),
// which rearranges to sum_m w_m Pr[count >= m].

#include "bidsel/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace bidsel {

inline constexpr double kProbabilityClampTolerance = 1e-12;

/// Pr[Z = j], j = 0..n, for a Poisson-binomial count.
using CountDistribution = std::vector<double>;

namespace detail {

/// Number of leading weights up to and including the last nonzero one.
inline std::size_t ActiveLength(std::span<double const> weights) noexcept
{
  std::size_t length = weights.size();
  while (length > 0 && weights[length - 1] == 0.0)
  {
    --length;
  }
  return length;
}

inline double ClampProbability(double q)
{
  if (!(q >= -kProbabilityClampTolerance && q <= 1.0 + kProbabilityClampTolerance))
  {
    throw InvalidArgument("exceedance probability outside [0, 1]");
  }
  return std::clamp(q, 0.0, 1.0);
}

inline std::vector<double> ClampProbabilities(std::span<double const> q)
{
  std::vector<double> out(q.size());
  std::transform(q.begin(), q.end(), out.begin(), ClampProbability);
  return out;
}

/// Pr[Z >= j] for j = 0..cap, with the count truncated at `cap`.
///
/// State `cap` absorbs every count >= cap, so tails are suffix sums of
/// nonnegative terms and keep full relative accuracy.
inline void CountTailsInto(std::span<double const> q, std::size_t cap, std::vector<double> &state,
                           std::vector<double> &tails)
{
  state.assign(cap + 1, 0.0);
  state[0] = 1.0;
  if (cap > 0)
  {
    std::size_t top = 0;  // highest reachable state
    for (double qi : q)
    {
      if (qi <= 0.0)
      {
        continue;
      }
      double const      stay = 1.0 - qi;
      std::size_t const high = std::min(top + 1, cap);
      if (high == cap)
      {
        state[cap] += state[cap - 1] * qi;
      }
      for (std::size_t j = std::min(high, cap - 1); j > 0; --j)
      {
        state[j] = state[j] * stay + state[j - 1] * qi;
      }
      state[0] *= stay;
      top = high;
    }
  }
  tails.assign(cap + 1, 0.0);
  double running = 0.0;
  for (std::size_t j = cap + 1; j-- > 0;)
  {
    running += state[j];
    tails[j] = running;
  }
}

/// Poisson head quantities for Y ~ Pois(lambda):
///   pmf[j]      = Pr[Y = j],  j = 0..length
///   survival[m] = Pr[Y >= m], m = 0..length
///
/// Survival below the mode is 1 - cdf; above it, the tail beyond `length` is
/// summed directly and accumulated downwards, so neither side cancels.
inline void PoissonHeadInto(double lambda, std::size_t length, std::vector<double> &pmf,
                            std::vector<double> &survival)
{
  pmf.assign(length + 1, 0.0);
  survival.assign(length + 1, 0.0);
  survival[0] = 1.0;
  if (lambda <= 0.0)
  {
    pmf[0] = 1.0;
    return;
  }
  if (lambda <= 700.0)
  {
    pmf[0] = std::exp(-lambda);
    for (std::size_t j = 1; j <= length; ++j)
    {
      pmf[j] = pmf[j - 1] * lambda / static_cast<double>(j);
    }
  }
  else
  {
    double const log_lambda = std::log(lambda);
    for (std::size_t j = 0; j <= length; ++j)
    {
      double const jd = static_cast<double>(j);
      pmf[j]          = std::exp(jd * log_lambda - lambda - std::lgamma(jd + 1.0));
    }
  }

  // m <= split: survival[m] = 1 - Pr[Y <= m - 1], with m - 1 at or below the mean.
  auto const  split = std::min<std::size_t>(length, static_cast<std::size_t>(std::floor(lambda)) + 1);
  double      cdf   = 0.0;
  for (std::size_t m = 1; m <= split; ++m)
  {
    cdf += pmf[m - 1];
    survival[m] = std::max(0.0, 1.0 - cdf);
  }
  if (split >= length)
  {
    return;
  }

  // Tail beyond `length`; index length + 1 > lambda so the terms decay.
  double tail = 0.0;
  double term = pmf[length];
  for (std::size_t r = length + 1;; ++r)
  {
    term *= lambda / static_cast<double>(r);
    tail += term;
    if (term <= tail * 1e-18 || term == 0.0)
    {
      break;
    }
  }
  double running = tail;
  for (std::size_t m = length; m > split; --m)
  {
    running += pmf[m];
    survival[m] = running;
  }
}

/// sum_l (w_l - w_{l+1}) min(lambda, l), i.e. sum_m w_m clamp(lambda - m + 1, 0, 1).
inline double ChernoffWeighted(double lambda, std::span<double const> weights) noexcept
{
  double value = 0.0;
  for (std::size_t m = 0; m < weights.size(); ++m)
  {
    double const slice = std::clamp(lambda - static_cast<double>(m), 0.0, 1.0);
    if (slice <= 0.0)
    {
      break;
    }
    value += weights[m] * slice;
  }
  return value;
}

/// Subgradient of ChernoffWeighted: w_{floor(lambda) + 1}, zero past the end.
///
/// At an integer lambda = l the unit term min(lambda, l) contributes slope 0.
inline double ChernoffWeightedSlope(double lambda, std::span<double const> weights) noexcept
{
  if (lambda < 0.0)
  {
    return weights.empty() ? 0.0 : weights[0];
  }
  auto const index = static_cast<std::size_t>(std::floor(lambda));
  return index < weights.size() ? weights[index] : 0.0;
}

}  // namespace detail

/// Exact Poisson-binomial pmf by sequential convolution, O(n^2).
inline CountDistribution poisson_binomial_pmf(std::span<double const> q)
{
  CountDistribution pmf{1.0};
  pmf.reserve(q.size() + 1);
  for (double raw : q)
  {
    double const qi = detail::ClampProbability(raw);
    pmf.push_back(0.0);
    for (std::size_t j = pmf.size() - 1; j > 0; --j)
    {
      pmf[j] = pmf[j] * (1.0 - qi) + pmf[j - 1] * qi;
    }
    pmf[0] *= 1.0 - qi;
  }
  return pmf;
}

/// E[min(Z, l)] = sum_{j=1}^{l} Pr[Z >= j].
inline double h_ber(std::span<double const> q, std::size_t units)
{
  detail::Require(units >= 1, "l must be positive");
  auto const          clamped = detail::ClampProbabilities(q);
  std::size_t const   cap     = std::min(units, clamped.size());
  std::vector<double> state, tails;
  detail::CountTailsInto(clamped, cap, state, tails);
  double value = 0.0;
  for (std::size_t j = 1; j <= cap; ++j)
  {
    value += tails[j];
  }
  return value;
}

/// Position-auction Bernoulli term: sum_j w_j Pr[Z >= j].
inline double h_ber_weighted(std::span<double const> q, std::span<double const> weights)
{
  auto const          clamped = detail::ClampProbabilities(q);
  std::size_t const   cap     = std::min(detail::ActiveLength(weights), clamped.size());
  std::vector<double> state, tails;
  detail::CountTailsInto(clamped, cap, state, tails);
  double value = 0.0;
  for (std::size_t j = 1; j <= cap; ++j)
  {
    value += weights[j - 1] * tails[j];
  }
  return value;
}

inline double h_cher(std::span<double const> q, std::size_t units)
{
  detail::Require(units >= 1, "l must be positive");
  double lambda = 0.0;
  for (double qi : q)
  {
    lambda += detail::ClampProbability(qi);
  }
  return std::min(lambda, static_cast<double>(units));
}

inline double h_cher_weighted(std::span<double const> q, std::span<double const> weights)
{
  double lambda = 0.0;
  for (double qi : q)
  {
    lambda += detail::ClampProbability(qi);
  }
  return detail::ChernoffWeighted(lambda, weights);
}

/// E[min(Y, l)] for Y ~ Pois(lambda).
inline double h_pois(double lambda, std::size_t units)
{
  detail::Require(units >= 1, "l must be positive");
  detail::Require(lambda >= 0.0, "lambda must be nonnegative");
  std::vector<double> pmf, survival;
  detail::PoissonHeadInto(lambda, units, pmf, survival);
  double value = 0.0;
  for (std::size_t m = 1; m <= units; ++m)
  {
    value += survival[m];
  }
  return value;
}

/// d/dlambda E[min(Y, l)] = Pr[Y <= l - 1].
inline double h_pois_deriv(double lambda, std::size_t units)
{
  detail::Require(units >= 1, "l must be positive");
  detail::Require(lambda >= 0.0, "lambda must be nonnegative");
  std::vector<double> pmf, survival;
  detail::PoissonHeadInto(lambda, units, pmf, survival);
  double value = 0.0;
  for (std::size_t j = 0; j < units; ++j)
  {
    value += pmf[j];
  }
  return std::min(value, 1.0);
}

inline double h_pois_weighted(double lambda, std::span<double const> weights)
{
  detail::Require(lambda >= 0.0, "lambda must be nonnegative");
  std::size_t const   length = detail::ActiveLength(weights);
  std::vector<double> pmf, survival;
  detail::PoissonHeadInto(lambda, length, pmf, survival);
  double value = 0.0;
  for (std::size_t m = 1; m <= length; ++m)
  {
    value += weights[m - 1] * survival[m];
  }
  return value;
}

inline double h_pois_weighted_deriv(double lambda, std::span<double const> weights)
{
  detail::Require(lambda >= 0.0, "lambda must be nonnegative");
  std::size_t const   length = detail::ActiveLength(weights);
  std::vector<double> pmf, survival;
  detail::PoissonHeadInto(lambda, length, pmf, survival);
  double value = 0.0;
  for (std::size_t m = 1; m <= length; ++m)
  {
    value += weights[m - 1] * pmf[m - 1];
  }
  return value;
}

/// sum_j |Pr[Z = j] - Pr[Y = j]| over j = 0..n plus Pr[Y > n], Y ~ Pois(sum q).
inline double total_variation_pb_vs_poisson(std::span<double const> q)
{
  auto const pb     = poisson_binomial_pmf(q);
  double     lambda = 0.0;
  for (double qi : q)
  {
    lambda += detail::ClampProbability(qi);
  }
  std::size_t const   n = q.size();
  std::vector<double> pmf, survival;
  detail::PoissonHeadInto(lambda, n + 1, pmf, survival);
  double distance = 0.0;
  for (std::size_t j = 0; j <= n; ++j)
  {
    distance += std::abs(pb[j] - pmf[j]);
  }
  return distance + survival[n + 1];
}

}  // namespace bidsel
