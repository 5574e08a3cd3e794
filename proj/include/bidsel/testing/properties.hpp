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

// Randomized property suites shared by the `verify` command and the
// acceptance tests. Each suite reports how many cases it checked, how many
// violated the property, and the worst observed error.

#include "bidsel/baselines.hpp"
#include "bidsel/distributions.hpp"
#include "bidsel/fixset.hpp"
#include "bidsel/objectives.hpp"
#include "bidsel/random.hpp"
#include "bidsel/solver.hpp"
#include "bidsel/testing/oracles.hpp"
#include "bidsel/testing/random_instances.hpp"
#include "bidsel/timing.hpp"
#include "bidsel/welfare.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace bidsel::testing {

struct CheckResult
{
  CheckResult(std::string check_name = {})
    : name(std::move(check_name))
  {}

  std::string name;
  std::size_t cases      = 0;
  std::size_t violations = 0;
  double      worst      = 0.0;  // largest error or ratio, meaning depends on the check
  double      seconds    = 0.0;
  std::string detail;

  bool passed() const noexcept
  {
    return cases > 0 && violations == 0;
  }

  void Record(bool ok, double error = 0.0)
  {
    ++cases;
    violations += ok ? 0 : 1;
    worst = std::max(worst, error);
  }
};

/// sw_fractional against 2^n subset enumeration and sw_set against value
/// profile enumeration; absolute tolerance 1e-8.
inline CheckResult check_welfare_oracles(std::size_t instances, std::uint64_t seed)
{
  Stopwatch const clock;
  CheckResult     result{"welfare matches enumeration oracles"};
  Rng             rng(seed);
  for (std::size_t t = 0; t < instances; ++t)
  {
    auto const             instance = random_instance(rng, 1, 8, 4, 8);
    WelfareEvaluator const evaluator(instance);
    std::size_t const      n = instance.size();
    std::vector<double>    x(n);
    for (auto &xi : x)
    {
      double const u = rng.Uniform();
      xi             = u < 0.1 ? 0.0 : (u < 0.2 ? 1.0 : rng.Uniform());
    }
    double const fractional = evaluator.Fractional(x);
    double const expected   = multilinear_by_subsets(instance, x);
    result.Record(std::abs(fractional - expected) <= 1e-8, std::abs(fractional - expected));

    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < n; ++i)
    {
      if (rng.Bernoulli(0.5))
      {
        members.push_back(i);
      }
    }
    double const set_value = evaluator.Set(members);
    double const profiles  = set_welfare_by_profiles(instance, members);
    result.Record(std::abs(set_value - profiles) <= 1e-8, std::abs(set_value - profiles));
  }
  result.seconds = clock.Seconds();
  return result;
}

namespace detail {

inline std::vector<double> RandomProbabilities(Rng &rng, std::size_t n, double cap)
{
  std::vector<double> q(n);
  std::uint64_t const shape = rng.Below(4);
  for (auto &qi : q)
  {
    double const u = rng.Uniform();
    switch (shape)
    {
    case 0:
      qi = cap * u;
      break;
    case 1:
      qi = cap * u * u * u;  // mostly tiny
      break;
    case 2:
      qi = cap * (1.0 - 0.1 * u);  // close to the cap
      break;
    default:
      qi = rng.Bernoulli(0.3) ? 0.0 : cap * u;
      break;
    }
  }
  return q;
}

inline bool LeqRel(double lhs, double rhs)
{
  return lhs <= rhs + 1e-12 * std::max(1.0, std::abs(rhs));
}

}  // namespace detail

/// Bernoulli/Chernoff/Poisson comparison inequalities on random (q, l).
inline std::vector<CheckResult> check_objective_bounds(std::size_t trials, std::uint64_t seed)
{
  Stopwatch const          clock;
  Rng                      rng(seed);
  std::vector<CheckResult> results{
      {"h_ber <= h_cher <= 7 h_ber"},
      {"h_cher - h_ber <= 3/sqrt(lambda) h_cher"},
      {"h_cher - h_ber <= 5/sqrt(l) h_cher"},
      {"|h_ber - h_pois| <= 17.5 delta h_ber"},
      {"0 <= h_ber - h_pois <= delta h_ber at l = 1"},
      {"total variation <= delta"},
  };
  for (std::size_t t = 0; t < trials; ++t)
  {
    std::size_t const n     = 1 + static_cast<std::size_t>(rng.Below(30));
    std::size_t const units = 1 + static_cast<std::size_t>(rng.Below(35));
    auto const        q     = detail::RandomProbabilities(rng, n, 1.0);
    double            lambda = 0.0;
    for (double qi : q)
    {
      lambda += qi;
    }
    double const ber  = h_ber(q, units);
    double const cher = h_cher(q, units);
    double const gap  = cher - ber;
    results[0].Record(detail::LeqRel(ber, cher) && detail::LeqRel(cher, 7.0 * ber), ber > 0.0 ? cher / ber : 0.0);
    if (lambda > 0.0)
    {
      double const bound = 3.0 / std::sqrt(lambda) * cher;
      results[1].Record(detail::LeqRel(gap, bound), cher > 0.0 ? gap * std::sqrt(lambda) / cher : 0.0);
    }
    double const bound_l = 5.0 / std::sqrt(static_cast<double>(units)) * cher;
    results[2].Record(detail::LeqRel(gap, bound_l),
                      cher > 0.0 ? gap * std::sqrt(static_cast<double>(units)) / cher : 0.0);

    for (double delta : {0.01, 0.05, 0.2})
    {
      auto const small = detail::RandomProbabilities(rng, n, delta);
      double     mass  = 0.0;
      for (double qi : small)
      {
        mass += qi;
      }
      double const ber_small  = h_ber(small, units);
      double const pois_small = h_pois(mass, units);
      double const diff       = std::abs(ber_small - pois_small);
      results[3].Record(detail::LeqRel(diff, 17.5 * delta * ber_small),
                        ber_small > 0.0 ? diff / (delta * ber_small) : 0.0);

      double const ber_one  = h_ber(small, 1);
      double const pois_one = h_pois(mass, 1);
      double const slack    = 1e-15;
      bool const   sandwich = ber_one - pois_one >= -slack && detail::LeqRel(ber_one - pois_one, delta * ber_one);
      results[4].Record(sandwich, ber_one > 0.0 ? (ber_one - pois_one) / (delta * ber_one) : 0.0);

      double const tv = total_variation_pb_vs_poisson(small);
      results[5].Record(detail::LeqRel(tv, delta), tv / delta);
    }
  }
  double const seconds = clock.Seconds();
  for (auto &r : results)
  {
    r.seconds = seconds;
  }
  return results;
}

/// Midpoint concavity of lambda -> h_pois(lambda, l) with slack 1e-12.
inline CheckResult check_poisson_concavity(std::size_t pairs, std::uint64_t seed)
{
  Stopwatch const clock;
  CheckResult     result{"h_pois midpoint concavity"};
  Rng             rng(seed);
  for (std::size_t t = 0; t < pairs; ++t)
  {
    std::size_t const units = 1 + static_cast<std::size_t>(rng.Below(40));
    double const      scale = rng.Bernoulli(0.5) ? 5.0 : 60.0;
    double const      a     = scale * rng.Uniform();
    double const      b     = scale * rng.Uniform();
    double const      mid   = h_pois(0.5 * (a + b), units);
    double const      chord = 0.5 * (h_pois(a, units) + h_pois(b, units));
    result.Record(mid >= chord - 1e-12, std::max(0.0, chord - mid));
  }
  result.seconds = clock.Seconds();
  return result;
}

namespace detail {

/// Largest coordinate error of the analytic gradient against central
/// differences, relative to the largest finite-difference coordinate.
inline double GradientError(RelaxedObjective const &objective, std::vector<double> const &x, double h)
{
  auto const          analytic = objective.Gradient(x);
  std::vector<double> probe    = x;
  double              diff = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
  {
    probe[i]          = x[i] + h;
    double const up   = objective.Value(probe);
    probe[i]          = x[i] - h;
    double const down = objective.Value(probe);
    probe[i]          = x[i];
    double const fd   = (up - down) / (2.0 * h);
    diff              = std::max(diff, std::abs(analytic[i] - fd));
    scale             = std::max(scale, std::abs(fd));
  }
  return scale > 0.0 ? diff / scale : diff;
}

/// True when some coordinate sits close to a kink: one-sided differences disagree.
inline bool NearKink(RelaxedObjective const &objective, std::vector<double> const &x, double h)
{
  std::vector<double> probe = x;
  double const        base  = objective.Value(x);
  for (std::size_t i = 0; i < x.size(); ++i)
  {
    probe[i]          = x[i] + h;
    double const up   = (objective.Value(probe) - base) / h;
    probe[i]          = x[i] - h;
    double const down = (base - objective.Value(probe)) / h;
    probe[i]          = x[i];
    if (std::abs(up - down) > 1e-4 * std::max(1.0, std::abs(up)))
    {
      return true;
    }
  }
  return false;
}

inline std::vector<double> InteriorPoint(Rng &rng, std::size_t n)
{
  std::vector<double> x(n);
  for (auto &xi : x)
  {
    xi = 0.05 + 0.9 * rng.Uniform();
  }
  return x;
}

}  // namespace detail

/// Analytic gradients of every relaxation against central differences.
inline std::vector<CheckResult> check_gradients(std::size_t instances, std::uint64_t seed, double tolerance = 1e-5)
{
  Stopwatch const          clock;
  Rng                      rng(seed);
  std::vector<CheckResult> results{
      {"gradient practical_poisson"},      {"gradient adjusted_poisson_chernoff"},
      {"gradient single_item_core_tail"},  {"gradient chernoff_large_l"},
      {"gradient poisson_small_tail"},
  };
  double const h = 1e-6;
  auto const   check = [&](CheckResult &result, RelaxedObjective const &objective, bool kinked) {
    auto x = detail::InteriorPoint(rng, objective.dimension());
    if (kinked)
    {
      for (int attempt = 0; attempt < 50 && detail::NearKink(objective, x, 1e-4); ++attempt)
      {
        x = detail::InteriorPoint(rng, objective.dimension());
      }
    }
    double const error = detail::GradientError(objective, x, h);
    result.Record(error <= tolerance, error);
  };

  for (std::size_t t = 0; t < instances; ++t)
  {
    {
      auto const instance = random_instance(rng, 2, 10, 5, 10);
      check(results[0], RelaxedObjective::Practical(instance), false);
    }
    {
      // k >= 4 keeps the fixed set strictly smaller than k.
      auto               base = random_instance(rng, 6, 10, 5, 10);
      std::size_t const  k    = 4 + static_cast<std::size_t>(rng.Below(base.size() - 3));
      std::vector<DiscreteDistribution> dists(base.distributions().begin(), base.distributions().end());
      AuctionInstance const instance(std::move(dists), std::vector<double>(base.weights().begin(), base.weights().end()), k);
      std::size_t const     size    = bidsel::detail::PositionFixedCount(k);
      double const          epsilon = static_cast<double>(size) / static_cast<double>(k);
      auto fix = select_fix_set_position(instance, std::sqrt(static_cast<double>(k)), epsilon, epsilon);
      check(results[1], RelaxedObjective::Adjusted(instance, std::move(fix)), true);
    }
    {
      auto              base = random_instance(rng, 4, 10, 5, 10);
      std::size_t const k    = 3 + static_cast<std::size_t>(rng.Below(base.size() - 2));
      std::vector<DiscreteDistribution> dists(base.distributions().begin(), base.distributions().end());
      AuctionInstance const instance(std::move(dists), unit_demand_weights(1, base.size()), k);
      std::size_t const     size = bidsel::detail::SingleItemFixedCount(k);
      auto fix = select_fix_set_single_item(instance, static_cast<double>(size) / static_cast<double>(k));
      check(results[2], RelaxedObjective::SingleItem(instance, std::move(fix)), false);
    }
    {
      auto              base  = random_instance(rng, 2, 10, 5, 10);
      std::size_t const units = 1 + static_cast<std::size_t>(rng.Below(base.size()));
      std::vector<DiscreteDistribution> dists(base.distributions().begin(), base.distributions().end());
      AuctionInstance const instance(std::move(dists), unit_demand_weights(units, base.size()), base.capacity());
      check(results[3], RelaxedObjective::ChernoffLargeL(instance, units), true);
    }
    {
      auto              base  = random_instance(rng, 2, 10, 5, 10);
      std::size_t const units = 1 + static_cast<std::size_t>(rng.Below(base.size()));
      std::vector<DiscreteDistribution> dists(base.distributions().begin(), base.distributions().end());
      AuctionInstance const instance(std::move(dists), unit_demand_weights(units, base.size()), base.capacity());
      check(results[4], RelaxedObjective::PoissonSmallTail(instance, units), false);
    }
  }
  double const seconds = clock.Seconds();
  for (auto &r : results)
  {
    r.seconds = seconds;
  }
  return results;
}

/// E[(|y| - k)^+] for y ~ Ber(x) with x uniform at sum k over n bidders.
inline double rounding_overflow(std::size_t k, std::size_t n)
{
  std::vector<double> const x(n, static_cast<double>(k) / static_cast<double>(n));
  auto const                pmf      = poisson_binomial_pmf(x);
  double                    overflow = 0.0;
  // sum_{i >= 1} Pr[|y| >= k + i] = sum_{m > k} (m - k) Pr[|y| = m]
  for (std::size_t m = k + 1; m < pmf.size(); ++m)
  {
    overflow += static_cast<double>(m - k) * pmf[m];
  }
  return overflow;
}

inline CheckResult check_rounding_tail(std::vector<std::size_t> const &capacities, std::size_t n_factor = 4)
{
  Stopwatch const clock;
  CheckResult     result{"rounding overflow <= 3 sqrt(k)"};
  for (std::size_t k : capacities)
  {
    double const overflow = rounding_overflow(k, n_factor * k);
    double const bound    = 3.0 * std::sqrt(static_cast<double>(k));
    result.Record(overflow <= bound, overflow / bound);
    result.detail += "k=" + std::to_string(k) + ": " + std::to_string(overflow) + " vs " +
                     std::to_string(bound) + "; ";
  }
  result.seconds = clock.Seconds();
  return result;
}

/// Greedy against brute force, local search against greedy.
inline std::vector<CheckResult> check_baselines(std::size_t instances, std::uint64_t seed)
{
  Stopwatch const          clock;
  Rng                      rng(seed);
  std::vector<CheckResult> results{{"greedy >= (1 - 1/e) OPT"}, {"local_search >= greedy"}};
  double const             ratio = 1.0 - 1.0 / std::numbers::e;
  for (std::size_t t = 0; t < instances; ++t)
  {
    auto const instance = random_instance(rng, 2, 10, 4, 4);
    auto const opt      = brute_force(instance);
    auto const g        = greedy(instance);
    auto const ls       = local_search(instance, g.selected);
    results[0].Record(g.welfare >= ratio * opt.welfare, opt.welfare > 0.0 ? 1.0 - g.welfare / opt.welfare : 0.0);
    results[1].Record(ls.welfare >= g.welfare, std::max(0.0, g.welfare - ls.welfare));
  }
  double const seconds = clock.Seconds();
  for (auto &r : results)
  {
    r.seconds = seconds;
  }
  return results;
}

/// Monotonicity f(S + i) >= f(S) and submodularity
/// f(S + i) - f(S) >= f(T + i) - f(T) for all S subset T, i outside T.
/// Set values are tabulated once; comparisons allow 1e-12 of rounding.
inline std::vector<CheckResult> check_submodularity(std::size_t instances, std::uint64_t seed, std::size_t max_n = 7)
{
  Stopwatch const          clock;
  Rng                      rng(seed);
  std::vector<CheckResult> results{{"sw_set monotone"}, {"sw_set submodular"}};
  double const             slack = 1e-12;
  for (std::size_t t = 0; t < instances; ++t)
  {
    auto const             instance = random_instance(rng, 2, max_n, 4, max_n);
    std::size_t const      n        = instance.size();
    std::size_t const      subsets  = std::size_t{1} << n;
    WelfareEvaluator const evaluator(instance);
    std::vector<double>    value(subsets);
    std::vector<std::size_t> members;
    for (std::size_t mask = 0; mask < subsets; ++mask)
    {
      members.clear();
      for (std::size_t i = 0; i < n; ++i)
      {
        if (mask >> i & 1U)
        {
          members.push_back(i);
        }
      }
      value[mask] = evaluator.Set(members);
    }
    for (std::size_t big = 0; big < subsets; ++big)
    {
      for (std::size_t i = 0; i < n; ++i)
      {
        if (big >> i & 1U)
        {
          continue;
        }
        std::size_t const bit       = std::size_t{1} << i;
        double const      big_gain  = value[big | bit] - value[big];
        results[0].Record(big_gain >= -slack, std::max(0.0, -big_gain));
        // every subset of `big`
        for (std::size_t small = big;; small = (small - 1) & big)
        {
          double const small_gain = value[small | bit] - value[small];
          results[1].Record(small_gain >= big_gain - slack, std::max(0.0, big_gain - small_gain));
          if (small == 0)
          {
            break;
          }
        }
      }
    }
  }
  double const seconds = clock.Seconds();
  for (auto &r : results)
  {
    r.seconds = seconds;
  }
  return results;
}

}  // namespace bidsel::testing
