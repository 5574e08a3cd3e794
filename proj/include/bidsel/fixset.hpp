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

// Core/tail split: choose a threshold eta and a small set of bidders that is
// fixed into the solution, so that every other bidder exceeds eta only with
// small probability.

#include "bidsel/distributions.hpp"
#include "bidsel/error.hpp"
#include "bidsel/welfare.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

namespace bidsel {

struct FixSetResult
{
  double       eta = 0.0;
  SelectionSet fixed;
  double       epsilon = 0.0;
  double       delta   = 0.0;  // tail cap applied to bidders outside `fixed`
  double       target  = 0.0;  // l* for the position variant, unused otherwise
  bool         degenerate = false;
};

namespace detail {

/// Integer epsilon * k, or throws when epsilon is not a multiple of 1/k.
inline std::size_t FixedSetSize(double epsilon, std::size_t capacity)
{
  double const scaled  = epsilon * static_cast<double>(capacity);
  double const rounded = std::round(scaled);
  if (!(epsilon >= 0.0) || std::abs(scaled - rounded) > 1e-9)
  {
    throw InfeasibleParameters("epsilon must be a nonnegative multiple of 1/k");
  }
  return static_cast<std::size_t>(rounded);
}

/// Consecutive-threshold scan shared by the position and single-item variants.
///
/// eta is the largest grid point at which at least `size` bidders have
/// Pr[v >= eta] >= cap. Bidders with Pr[v > eta] >= cap are fixed first, the
/// rest is filled by lowest index among bidders that only clear the cap at
/// eta itself. When eta is 0 the instance is degenerate and the `size`
/// bidders with the largest Pr[v > 0] are fixed instead.
inline FixSetResult ScanFixSet(AuctionInstance const &instance, double cap, std::size_t size)
{
  FixSetResult result;
  std::size_t const n = instance.size();
  if (size == 0)
  {
    return result;
  }
  auto const grid = build_threshold_grid(instance);

  auto const qualifying = [&](double tau, bool strict) {
    std::size_t count = 0;
    for (auto const &dist : instance.distributions())
    {
      count += dist.Tail(tau, strict) >= cap ? 1 : 0;
    }
    return count;
  };

  std::size_t eta_index = 0;
  for (std::size_t j = grid.points.size(); j-- > 0;)
  {
    if (qualifying(grid.points[j], false) >= size)
    {
      eta_index = j;
      break;
    }
  }
  result.eta = grid.points[eta_index];

  std::vector<std::size_t> fixed;
  if (eta_index == 0)
  {
    result.degenerate = true;
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return instance.distribution(a).Tail(0.0, true) > instance.distribution(b).Tail(0.0, true);
    });
    fixed.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(size));
  }
  else
  {
    for (std::size_t i = 0; i < n; ++i)
    {
      if (instance.distribution(i).Tail(result.eta, true) >= cap)
      {
        fixed.push_back(i);
      }
    }
    for (std::size_t i = 0; i < n && fixed.size() < size; ++i)
    {
      auto const &dist = instance.distribution(i);
      if (dist.Tail(result.eta, false) >= cap && dist.Tail(result.eta, true) < cap)
      {
        fixed.push_back(i);
      }
    }
  }
  if (fixed.size() != size)
  {
    throw InternalError("fixed-set scan produced " + std::to_string(fixed.size()) +
                        " bidders, expected " + std::to_string(size));
  }
  result.fixed = SelectionSet::FromIndices(std::move(fixed));
  return result;
}

/// Every bidder outside the fixed set has Pr[v > eta] < cap.
inline bool OutsideTailsBelow(AuctionInstance const &instance, FixSetResult const &result, double cap)
{
  for (std::size_t i = 0; i < instance.size(); ++i)
  {
    if (!result.fixed.Contains(i) && instance.distribution(i).Tail(result.eta, true) >= cap)
    {
      return false;
    }
  }
  return true;
}

}  // namespace detail

/// Position-auction fixed set: for tau <= eta the fixed bidders exceed tau
/// l* times in expectation, and outside bidders satisfy Pr[v > eta] < delta.
inline FixSetResult select_fix_set_position(AuctionInstance const &instance, double target,
                                            double delta, double epsilon)
{
  std::size_t const k    = instance.capacity();
  std::size_t const size = detail::FixedSetSize(epsilon, k);
  if (!(epsilon < 1.0) || !(delta > 0.0 && delta <= 1.0) || !(target >= 0.0) ||
      !(target < static_cast<double>(k)) ||
      epsilon * delta * static_cast<double>(k) < target * (1.0 - 1e-12))
  {
    throw InfeasibleParameters("fixed-set parameters violate eps*delta*k >= l*, eps < 1, l* < k");
  }
  FixSetResult result = detail::ScanFixSet(instance, delta, size);
  result.epsilon      = epsilon;
  result.delta        = delta;
  result.target       = target;

  auto const grid = build_threshold_grid(instance);
  for (double tau : grid.points)
  {
    if (tau > result.eta)
    {
      break;
    }
    double expected = 0.0;
    for (auto i : result.fixed.members)
    {
      expected += instance.distribution(i).Tail(tau, false);
    }
    if (expected < target - 1e-12 * std::max(1.0, target))
    {
      throw InternalError("fixed set covers fewer than l* bidders below eta");
    }
  }
  if (!detail::OutsideTailsBelow(instance, result, delta))
  {
    throw InternalError("a bidder outside the fixed set exceeds the tail cap");
  }
  return result;
}

/// Single-item fixed set: some fixed bidder reaches eta with probability at
/// least 1 - 1/k, and outside bidders satisfy Pr[v > eta] < epsilon.
///
/// The guarantee needs epsilon >= sqrt(ln k / k). Smaller epsilon is accepted
/// when both conditions still hold on the given instance.
inline FixSetResult select_fix_set_single_item(AuctionInstance const &instance, double epsilon)
{
  std::size_t const k    = instance.capacity();
  std::size_t const size = detail::FixedSetSize(epsilon, k);
  if (epsilon > 1.0)
  {
    throw InfeasibleParameters("epsilon must not exceed 1");
  }
  double const kd         = static_cast<double>(k);
  bool const   guaranteed = epsilon >= std::sqrt(std::log(kd) / kd) - 1e-12;

  FixSetResult result = detail::ScanFixSet(instance, epsilon, size);
  result.epsilon      = epsilon;
  result.delta        = epsilon;
  if (size == 0)
  {
    return result;
  }

  double miss = 1.0;
  for (auto i : result.fixed.members)
  {
    miss *= 1.0 - instance.distribution(i).Tail(result.eta, false);
  }
  bool const covered = 1.0 - miss >= 1.0 - 1.0 / kd - 1e-12;
  bool const thin    = detail::OutsideTailsBelow(instance, result, epsilon);
  if (!covered || !thin)
  {
    if (guaranteed)
    {
      throw InternalError("single-item fixed set violates its guarantee");
    }
    throw InfeasibleParameters("epsilon below sqrt(ln k / k) and the fixed-set conditions fail");
  }
  return result;
}

/// Pr[some fixed bidder has v >= tau].
inline double fixed_set_coverage(AuctionInstance const &instance, SelectionSet const &fixed,
                                 double tau, bool strict = false)
{
  double miss = 1.0;
  for (auto i : fixed.members)
  {
    miss *= 1.0 - instance.distribution(i).Tail(tau, strict);
  }
  return 1.0 - miss;
}

}  // namespace bidsel
