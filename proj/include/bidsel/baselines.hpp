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

// Reference heuristics and exact search over integral bidder sets. Every
// candidate set is evaluated in sorted member order, so the reported welfare
// equals sw_set(selected) bit for bit.

#include "bidsel/distributions.hpp"
#include "bidsel/error.hpp"
#include "bidsel/timing.hpp"
#include "bidsel/welfare.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <queue>
#include <string>
#include <utility>
#include <vector>

namespace bidsel {

inline constexpr double      kSwapImprovementThreshold = 1e-12;
inline constexpr std::size_t kDefaultBruteForceCap     = 2'000'000;

struct BaselineReport
{
  SelectionSet selected;
  double       welfare     = 0.0;
  std::size_t  evaluations = 0;  // sw_set calls
  double       wall_time   = 0.0;
  std::size_t  iterations  = 0;  // accepted swaps (local search)
};

struct GreedyOptions
{
  bool     lazy = false;  // stale-bound acceleration; evaluation count differs
  Deadline deadline;
};

struct LocalSearchOptions
{
  std::size_t max_sweeps = 10'000;
  Deadline    deadline;
};

struct BruteForceOptions
{
  std::uint64_t cap = kDefaultBruteForceCap;
  Deadline      deadline;
};

namespace detail {

inline std::vector<std::size_t> WithMember(std::vector<std::size_t> const &members, std::size_t i)
{
  std::vector<std::size_t> out;
  out.reserve(members.size() + 1);
  auto const pos = std::lower_bound(members.begin(), members.end(), i);
  out.insert(out.end(), members.begin(), pos);
  out.push_back(i);
  out.insert(out.end(), pos, members.end());
  return out;
}

inline std::vector<std::size_t> Swapped(std::vector<std::size_t> const &members, std::size_t out_index,
                                        std::size_t in)
{
  std::vector<std::size_t> rest;
  rest.reserve(members.size());
  for (std::size_t r = 0; r < members.size(); ++r)
  {
    if (r != out_index)
    {
      rest.push_back(members[r]);
    }
  }
  return WithMember(rest, in);
}

/// C(n, k), saturating at UINT64_MAX.
inline std::uint64_t Binomial(std::uint64_t n, std::uint64_t k)
{
  if (k > n)
  {
    return 0;
  }
  k                    = std::min(k, n - k);
  std::uint64_t result = 1;
  for (std::uint64_t i = 1; i <= k; ++i)
  {
    std::uint64_t const factor = n - k + i;
    if (result > UINT64_MAX / factor)
    {
      return UINT64_MAX;
    }
    // result * factor is divisible by i after the multiplication
    result = result * factor / i;
  }
  return result;
}

inline BaselineReport ReferenceGreedy(WelfareEvaluator const &evaluator, Deadline const &deadline)
{
  std::size_t const        n = evaluator.instance().size();
  std::size_t const        k = evaluator.instance().capacity();
  BaselineReport           report;
  std::vector<std::size_t> members;
  std::vector<bool>        taken(n, false);
  double                   current = 0.0;
  for (std::size_t t = 0; t < k; ++t)
  {
    double      best_value = 0.0;
    std::size_t best       = n;
    for (std::size_t i = 0; i < n; ++i)
    {
      if (taken[i])
      {
        continue;
      }
      deadline.Check();
      double const value = evaluator.Set(WithMember(members, i));
      ++report.evaluations;
      if (best == n || value > best_value)
      {
        best_value = value;
        best       = i;
      }
    }
    // Monotone welfare never yields a negative gain; the guard keeps the loop total.
    if (best == n || best_value - current < 0.0)
    {
      break;
    }
    members   = WithMember(members, best);
    taken[best] = true;
    current   = best_value;
  }
  report.selected.members = std::move(members);
  report.welfare          = current;
  return report;
}

/// Lazy greedy: marginal gains only shrink, so a stale gain that still tops
/// the queue after re-evaluation is the true maximum.
inline BaselineReport LazyGreedy(WelfareEvaluator const &evaluator, Deadline const &deadline)
{
  std::size_t const n = evaluator.instance().size();
  std::size_t const k = evaluator.instance().capacity();
  BaselineReport    report;

  struct Entry
  {
    double      gain;
    std::size_t bidder;
    std::size_t round;
    bool operator<(Entry const &other) const
    {
      return gain < other.gain || (gain == other.gain && bidder > other.bidder);
    }
  };
  std::priority_queue<Entry> queue;
  for (std::size_t i = 0; i < n; ++i)
  {
    deadline.Check();
    std::size_t const single[] = {i};
    queue.push(Entry{evaluator.Set(single), i, 0});
    ++report.evaluations;
  }
  std::vector<std::size_t> members;
  double                   current = 0.0;
  std::size_t              round   = 0;
  while (members.size() < k && !queue.empty())
  {
    deadline.Check();
    Entry top = queue.top();
    queue.pop();
    if (top.round == round)
    {
      if (top.gain < 0.0)
      {
        break;
      }
      members = WithMember(members, top.bidder);
      current += top.gain;
      ++round;
      continue;
    }
    top.gain  = evaluator.Set(WithMember(members, top.bidder)) - current;
    top.round = round;
    ++report.evaluations;
    queue.push(top);
  }
  report.selected.members = std::move(members);
  report.welfare          = evaluator.Set(report.selected);
  return report;
}

}  // namespace detail

/// Greedy by exact marginal welfare, ties to the lowest index.
inline BaselineReport greedy(AuctionInstance const &instance, GreedyOptions const &options = {})
{
  Stopwatch const        clock;
  WelfareEvaluator const evaluator(instance);
  BaselineReport report = options.lazy ? detail::LazyGreedy(evaluator, options.deadline)
                                       : detail::ReferenceGreedy(evaluator, options.deadline);
  report.wall_time = clock.Seconds();
  return report;
}

/// Best-improvement single-swap local search from `init`.
inline BaselineReport local_search(AuctionInstance const &instance, SelectionSet const &init,
                                   LocalSearchOptions const &options = {})
{
  Stopwatch const   clock;
  std::size_t const n = instance.size();
  detail::Require(init.IsFeasible(n, instance.capacity()), "local search needs a feasible start");
  WelfareEvaluator const evaluator(instance);
  BaselineReport         report;
  std::vector<std::size_t> members = init.members;
  double                   current = evaluator.Set(members);
  ++report.evaluations;

  for (std::size_t sweep = 0; sweep < options.max_sweeps; ++sweep)
  {
    std::vector<bool> inside(n, false);
    for (auto i : members)
    {
      inside[i] = true;
    }
    double                   best_value = current;
    std::vector<std::size_t> best_members;
    for (std::size_t r = 0; r < members.size(); ++r)
    {
      for (std::size_t in = 0; in < n; ++in)
      {
        if (inside[in])
        {
          continue;
        }
        options.deadline.Check();
        auto         candidate = detail::Swapped(members, r, in);
        double const value     = evaluator.Set(candidate);
        ++report.evaluations;
        if (value > best_value)
        {
          best_value   = value;
          best_members = std::move(candidate);
        }
      }
    }
    if (best_members.empty() || best_value - current <= kSwapImprovementThreshold)
    {
      break;
    }
    members = std::move(best_members);
    current = best_value;
    ++report.iterations;
  }
  report.selected.members = std::move(members);
  report.welfare          = current;
  report.wall_time        = clock.Seconds();
  return report;
}

/// Local search started from the greedy set.
inline BaselineReport local_search(AuctionInstance const &instance, LocalSearchOptions const &options = {})
{
  Stopwatch const clock;
  GreedyOptions   greedy_options;
  greedy_options.deadline = options.deadline;
  auto const start        = greedy(instance, greedy_options);
  auto       report       = local_search(instance, start.selected, options);
  report.evaluations += start.evaluations;
  report.wall_time = clock.Seconds();
  return report;
}

/// Exact optimum over all k-subsets; monotone welfare makes smaller sets
/// unnecessary. Ties keep the lexicographically first subset.
inline BaselineReport brute_force(AuctionInstance const &instance, BruteForceOptions const &options = {})
{
  Stopwatch const   clock;
  std::size_t const n     = instance.size();
  std::size_t const k     = instance.capacity();
  auto const        count = detail::Binomial(n, k);
  if (count > options.cap)
  {
    throw CapExceeded("brute force needs " + std::to_string(count) + " subsets, cap is " +
                      std::to_string(options.cap));
  }
  WelfareEvaluator const   evaluator(instance);
  BaselineReport           report;
  std::vector<std::size_t> subset(k);
  for (std::size_t j = 0; j < k; ++j)
  {
    subset[j] = j;
  }
  bool have = false;
  while (true)
  {
    options.deadline.Check();
    double const value = evaluator.Set(subset);
    ++report.evaluations;
    if (!have || value > report.welfare)
    {
      report.welfare          = value;
      report.selected.members = subset;
      have                    = true;
    }
    // next combination in lexicographic order
    std::size_t j = k;
    while (j > 0 && subset[j - 1] == n - k + (j - 1))
    {
      --j;
    }
    if (j == 0)
    {
      break;
    }
    ++subset[j - 1];
    for (std::size_t r = j; r < k; ++r)
    {
      subset[r] = subset[r - 1] + 1;
    }
  }
  report.wall_time = clock.Seconds();
  return report;
}

}  // namespace bidsel
