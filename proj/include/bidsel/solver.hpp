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

// Concave relaxations of expected welfare and a projected-gradient engine
// that maximizes them over the capped box {x in [0,1]^n : sum x <= B}.

#include "bidsel/distributions.hpp"
#include "bidsel/error.hpp"
#include "bidsel/fixset.hpp"
#include "bidsel/objectives.hpp"
#include "bidsel/timing.hpp"
#include "bidsel/welfare.hpp"

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace bidsel {

enum class RelaxedVariant
{
  PracticalPoisson,
  AdjustedPoissonChernoff,
  SingleItemCoreTail,
  ChernoffLargeL,
  PoissonSmallTail,
};

inline std::string_view variant_name(RelaxedVariant variant) noexcept
{
  switch (variant)
  {
  case RelaxedVariant::PracticalPoisson:
    return "practical_poisson";
  case RelaxedVariant::AdjustedPoissonChernoff:
    return "adjusted_poisson_chernoff";
  case RelaxedVariant::SingleItemCoreTail:
    return "single_item_core_tail";
  case RelaxedVariant::ChernoffLargeL:
    return "chernoff_large_l";
  case RelaxedVariant::PoissonSmallTail:
    return "poisson_small_tail";
  }
  return "unknown";
}

struct SolverOptions
{
  double      initial_step = 1.0;
  double      shrink       = 0.5;
  double      armijo       = 1e-4;
  double      tolerance    = 1e-7;  // relative objective improvement per step
  std::size_t max_iters    = 2000;
  Deadline    deadline;
};

struct SolveReport
{
  FractionalSolution  solution;
  double              objective_value = 0.0;
  std::size_t         iterations      = 0;
  bool                converged       = false;
  double              wall_time       = 0.0;
  double              budget          = 0.0;
  RelaxedVariant      variant         = RelaxedVariant::PracticalPoisson;
  bool                fell_back       = false;  // requested variant degraded to PracticalPoisson
  std::optional<FixSetResult> fix;
  std::vector<double> trace;  // objective after the start point and each accepted step
};

/// Euclidean projection onto {x in [0,1]^n : sum x <= budget}.
///
/// Returns clip(v - theta, 0, 1) where theta = 0 if the clipped point fits,
/// otherwise the root of the piecewise-linear sum found by sweeping sorted
/// breakpoints.
inline FractionalSolution project_capped_box(std::span<double const> v, double budget)
{
  detail::Require(budget >= 0.0, "budget must be nonnegative");
  std::size_t const  n = v.size();
  FractionalSolution out{std::vector<double>(n)};
  double             clipped_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i)
  {
    out.x[i] = std::clamp(v[i], 0.0, 1.0);
    clipped_sum += out.x[i];
  }
  if (clipped_sum <= budget)
  {
    return out;
  }

  // sum(theta) = saturated + free_sum - free_count * theta between events.
  // Event (t, +1): a saturated coordinate becomes free; (t, -1): a free one hits 0.
  std::vector<std::pair<double, int>> events;
  events.reserve(2 * n);
  double      saturated  = 0.0;
  double      free_sum   = 0.0;
  double      free_count = 0.0;
  for (double vi : v)
  {
    if (vi > 1.0)
    {
      saturated += 1.0;
      events.emplace_back(vi - 1.0, +1);
    }
    else if (vi > 0.0)
    {
      free_sum += vi;
      free_count += 1.0;
    }
    if (vi > 0.0)
    {
      events.emplace_back(vi, -1);
    }
  }
  std::sort(events.begin(), events.end());

  double previous = 0.0;
  double theta    = 0.0;
  bool   found    = false;
  for (auto const &[point, kind] : events)
  {
    double const total = saturated + free_sum - free_count * point;
    if (total <= budget && free_count > 0.0)
    {
      theta = std::clamp((saturated + free_sum - budget) / free_count, previous, point);
      found = true;
      break;
    }
    if (kind > 0)
    {
      saturated -= 1.0;
      free_sum += point + 1.0;
      free_count += 1.0;
    }
    else
    {
      free_sum -= point;
      free_count -= 1.0;
    }
    previous = point;
  }
  if (!found)
  {
    theta = previous;
  }
  for (std::size_t i = 0; i < n; ++i)
  {
    out.x[i] = std::clamp(v[i] - theta, 0.0, 1.0);
  }
  return out;
}

/// Smooth (or subdifferentiable) objective over a fixed-dimension box.
template <typename F>
concept AscentObjective = requires(F const &f, std::span<double const> x, std::span<double> g) {
  { f.dimension() } -> std::convertible_to<std::size_t>;
  { f.Value(x) } -> std::convertible_to<double>;
  f.Gradient(x, g);
};

/// Projected gradient ascent with Armijo backtracking from x = clip(B/n).
///
/// Every accepted step satisfies f(x+) >= f(x) + armijo * g.(x+ - x), so the
/// trace is non-decreasing. Stops when the relative improvement of a step
/// falls below the tolerance, when no step length in the backtracking range
/// is accepted, or at max_iters.
template <AscentObjective F>
SolveReport maximize(F const &objective, double budget, SolverOptions const &options = {})
{
  detail::Require(budget >= 0.0, "budget must be nonnegative");
  detail::Require(options.shrink > 0.0 && options.shrink < 1.0, "shrink factor must lie in (0, 1)");
  detail::Require(options.initial_step > 0.0, "initial step must be positive");
  Stopwatch const   clock;
  std::size_t const n = objective.dimension();

  SolveReport report;
  report.budget = budget;
  std::vector<double> start(n, n > 0 ? std::min(1.0, budget / static_cast<double>(n)) : 0.0);
  report.solution = project_capped_box(start, budget);

  std::vector<double> &x     = report.solution.x;
  double               value = objective.Value(std::span<double const>(x));
  std::vector<double>  gradient(n), trial(n);
  objective.Gradient(std::span<double const>(x), std::span<double>(gradient));
  report.trace.push_back(value);

  double constexpr kMinStep = 1e-16;
  while (report.iterations < options.max_iters)
  {
    options.deadline.Check();
    double             step = options.initial_step;
    bool               accepted = false;
    FractionalSolution candidate;
    double             candidate_value = value;
    while (step >= kMinStep)
    {
      for (std::size_t i = 0; i < n; ++i)
      {
        trial[i] = x[i] + step * gradient[i];
      }
      candidate     = project_capped_box(trial, budget);
      double ascent = 0.0;
      for (std::size_t i = 0; i < n; ++i)
      {
        ascent += gradient[i] * (candidate.x[i] - x[i]);
      }
      if (!(ascent > 0.0))
      {
        break;  // projected gradient vanishes: x is stationary
      }
      candidate_value = objective.Value(std::span<double const>(candidate.x));
      if (candidate_value >= value + options.armijo * ascent)
      {
        accepted = true;
        break;
      }
      step *= options.shrink;
    }
    if (!accepted)
    {
      report.converged = true;
      break;
    }
    ++report.iterations;
    double const improvement = candidate_value - value;
    x                        = std::move(candidate.x);
    value                    = candidate_value;
    report.trace.push_back(value);
    if (improvement <= options.tolerance * std::max(std::abs(value), std::numeric_limits<double>::min()))
    {
      report.converged = true;
      break;
    }
    objective.Gradient(std::span<double const>(x), std::span<double>(gradient));
  }
  report.objective_value = value;
  report.wall_time       = clock.Seconds();
  return report;
}

/// G_pois from its definition: for each fixed count j, the fixed bidders fill
/// the first j positions and the Poisson count of the rest fills position
/// j + 1 onwards.
inline double adjusted_poisson_term(std::span<double const> fixed_count_pmf,
                                    std::span<double const> weights, double lambda_m)
{
  std::size_t const n     = weights.size();
  auto const        w     = [&](std::size_t l) { return l >= 1 && l <= n ? weights[l - 1] : 0.0; };
  double            value = 0.0;
  for (std::size_t j = 0; j < fixed_count_pmf.size(); ++j)
  {
    double inner = 0.0;
    for (std::size_t l = 1; l <= j; ++l)
    {
      inner += w(l);
    }
    for (std::size_t l = j + 1; l <= n; ++l)
    {
      double const drop = w(l) - w(l + 1);
      if (drop != 0.0)
      {
        inner += drop * h_pois(lambda_m, l - j);
      }
    }
    value += fixed_count_pmf[j] * inner;
  }
  return value;
}

/// One concave relaxation over the free bidders M.
///
/// Per grid segment the integrand is either
///   constant + scale * ChernoffWeighted(offset + lambda_M, u)   or
///   constant + scale * sum_m u_m Pr[Pois(lambda_M) >= m],
/// with lambda_M = sum_{i in M} x_i Pr[v_i > tau]. All per-segment data is
/// built once at construction.
class RelaxedObjective
{
public:
  /// Poisson relaxation of every threshold, no fixed bidders, budget k.
  static RelaxedObjective Practical(AuctionInstance const &instance)
  {
    RelaxedObjective obj(instance, RelaxedVariant::PracticalPoisson, std::nullopt,
                         static_cast<double>(instance.capacity()));
    obj.AddWeights(instance.weights());
    obj.AddUniformPoisson(0);
    return obj;
  }

  /// Chernoff term below eta on (x_M, 1_fix); adjusted Poisson term above.
  static RelaxedObjective Adjusted(AuctionInstance const &instance, FixSetResult fix)
  {
    double const budget =
        static_cast<double>(instance.capacity()) - static_cast<double>(fix.fixed.size());
    RelaxedObjective obj(instance, RelaxedVariant::AdjustedPoissonChernoff, std::move(fix), budget);
    auto const       weights  = instance.weights();
    std::size_t const active  = detail::ActiveLength(weights);
    std::size_t const base    = obj.AddWeights(weights);
    auto const       &lengths = obj.tails_.grid().segment_lengths;
    obj.fixed_pmf_.resize(lengths.size());
    for (std::size_t j = 0; j < lengths.size(); ++j)
    {
      double const        tau = obj.tails_.grid().points[j];
      std::vector<double> fixed_tails;
      for (auto i : obj.fix_->fixed.members)
      {
        fixed_tails.push_back(instance.distribution(i).Tail(tau, true));
      }
      obj.fixed_pmf_[j] = poisson_binomial_pmf(fixed_tails);
      Segment segment{lengths[j], Kind::Poisson, 0.0, 0.0, 1.0, base};
      if (tau < obj.fix_->eta)
      {
        segment.kind = Kind::Chernoff;
        for (double t : fixed_tails)
        {
          segment.offset += t;
        }
      }
      else
      {
        // G = sum_j P_j W_j + sum_m u_m S_m, W_j = w_1 + .. + w_j, u_m = sum_j P_j w_{j+m}.
        auto const         &pmf = obj.fixed_pmf_[j];
        std::vector<double> shifted(active, 0.0);
        double              prefix = 0.0;
        for (std::size_t c = 0; c < pmf.size(); ++c)
        {
          if (c >= 1 && c <= active)
          {
            prefix += weights[c - 1];
          }
          segment.constant += pmf[c] * prefix;
          for (std::size_t m = 1; c + m <= active; ++m)
          {
            shifted[m - 1] += pmf[c] * weights[c + m - 1];
          }
        }
        segment.weights = obj.AddWeights(shifted);
      }
      obj.segments_.push_back(segment);
    }
    return obj;
  }

  /// (1 - 1/k) eta plus r + (1 - r) h_pois(lambda_M, 1) above eta.
  static RelaxedObjective SingleItem(AuctionInstance const &instance, FixSetResult fix)
  {
    double const k      = static_cast<double>(instance.capacity());
    double const budget = k - static_cast<double>(fix.fixed.size());
    RelaxedObjective obj(instance, RelaxedVariant::SingleItemCoreTail, std::move(fix), budget);
    std::vector<double> const unit{1.0};
    std::size_t const         row     = obj.AddWeights(unit);
    auto const               &lengths = obj.tails_.grid().segment_lengths;
    obj.constant_                     = (1.0 - 1.0 / k) * obj.fix_->eta;
    for (std::size_t j = 0; j < lengths.size(); ++j)
    {
      double const tau = obj.tails_.grid().points[j];
      if (tau < obj.fix_->eta)
      {
        continue;
      }
      double miss = 1.0;
      for (auto i : obj.fix_->fixed.members)
      {
        miss *= 1.0 - instance.distribution(i).Tail(tau, true);
      }
      double const covered = 1.0 - miss;
      obj.segments_.push_back(Segment{lengths[j], Kind::Poisson, 0.0, covered, miss, row});
      obj.coverage_.push_back(covered);
    }
    return obj;
  }

  /// min(lambda, l) at every threshold, budget k.
  static RelaxedObjective ChernoffLargeL(AuctionInstance const &instance, std::size_t units)
  {
    RelaxedObjective obj(instance, RelaxedVariant::ChernoffLargeL, std::nullopt,
                         static_cast<double>(instance.capacity()));
    std::vector<double> const unit(units, 1.0);
    std::size_t const         row = obj.AddWeights(unit);
    for (double length : obj.tails_.grid().segment_lengths)
    {
      obj.segments_.push_back(Segment{length, Kind::Chernoff, 0.0, 0.0, 1.0, row});
    }
    return obj;
  }

  /// E[min(Pois(lambda), l)] at every threshold, budget k.
  static RelaxedObjective PoissonSmallTail(AuctionInstance const &instance, std::size_t units)
  {
    RelaxedObjective obj(instance, RelaxedVariant::PoissonSmallTail, std::nullopt,
                         static_cast<double>(instance.capacity()));
    std::vector<double> const unit(units, 1.0);
    obj.AddWeights(unit);
    obj.AddUniformPoisson(0);
    return obj;
  }

  RelaxedVariant variant() const noexcept
  {
    return variant_;
  }

  AuctionInstance const &instance() const noexcept
  {
    return *instance_;
  }

  std::optional<FixSetResult> const &fix() const noexcept
  {
    return fix_;
  }

  /// Bidders M that the relaxation optimizes over, increasing.
  std::span<std::size_t const> free_bidders() const noexcept
  {
    return free_;
  }

  std::size_t dimension() const noexcept
  {
    return free_.size();
  }

  /// Budget on sum x_M: k minus the number of fixed bidders.
  double budget() const noexcept
  {
    return budget_;
  }

  std::size_t segments() const noexcept
  {
    return tails_.grid().segments();
  }

  double Value(std::span<double const> x) const
  {
    CheckDimension(x.size());
    double              total = constant_;
    std::vector<double> pmf, survival;
    for (std::size_t s = 0; s < segments_.size(); ++s)
    {
      auto const  &segment = segments_[s];
      double const lambda  = Lambda(x, SegmentRow(s));
      total += segment.length * Term(segment, lambda, pmf, survival);
    }
    return total;
  }

  void Gradient(std::span<double const> x, std::span<double> gradient) const
  {
    CheckDimension(x.size());
    detail::Require(gradient.size() == free_.size(), "gradient buffer has the wrong dimension");
    std::fill(gradient.begin(), gradient.end(), 0.0);
    std::vector<double> pmf, survival;
    for (std::size_t s = 0; s < segments_.size(); ++s)
    {
      auto const  &segment = segments_[s];
      auto const   row     = tails_.Row(SegmentRow(s));
      double const lambda  = Lambda(x, SegmentRow(s));
      double const slope   = segment.length * Slope(segment, lambda, pmf, survival);
      if (slope == 0.0)
      {
        continue;
      }
      for (std::size_t i = 0; i < free_.size(); ++i)
      {
        gradient[i] += slope * row[free_[i]];
      }
    }
  }

  std::vector<double> Gradient(std::span<double const> x) const
  {
    std::vector<double> gradient(free_.size());
    Gradient(x, std::span<double>(gradient));
    return gradient;
  }

  /// G_pois at the segment starting at grid point `segment`, from its definition.
  double AdjustedPoissonTerm(std::span<double const> x, std::size_t segment) const
  {
    if (variant_ != RelaxedVariant::AdjustedPoissonChernoff)
    {
      throw InvalidArgument("adjusted Poisson term needs the adjusted variant");
    }
    detail::Require(segment < tails_.grid().segments(), "segment index out of range");
    detail::Require(tails_.grid().points[segment] >= fix_->eta, "adjusted Poisson term applies above eta");
    CheckDimension(x.size());
    return adjusted_poisson_term(fixed_pmf_[segment], instance_->weights(),
                                 std::max(0.0, Lambda(x, segment)));
  }

  /// Pr[Z_fix = j] at the segment starting at grid point `segment` (adjusted variant).
  std::span<double const> FixedCountPmf(std::size_t segment) const
  {
    detail::Require(segment < fixed_pmf_.size(), "no fixed-count table for this segment");
    return fixed_pmf_[segment];
  }

  /// r_tau for the single-item variant, one entry per segment at or above eta.
  std::span<double const> CoreCoverage() const noexcept
  {
    return coverage_;
  }

  /// Full n-vector: x_M on M and 1 on the fixed bidders.
  FractionalSolution Expand(std::span<double const> x) const
  {
    CheckDimension(x.size());
    FractionalSolution out{std::vector<double>(instance_->size(), 0.0)};
    for (std::size_t i = 0; i < free_.size(); ++i)
    {
      out.x[free_[i]] = x[i];
    }
    if (fix_)
    {
      for (auto i : fix_->fixed.members)
      {
        out.x[i] = 1.0;
      }
    }
    return out;
  }

  /// x restricted to M.
  std::vector<double> Restrict(std::span<double const> full) const
  {
    detail::Require(full.size() == instance_->size(), "solution has the wrong dimension");
    std::vector<double> out(free_.size());
    for (std::size_t i = 0; i < free_.size(); ++i)
    {
      out[i] = full[free_[i]];
    }
    return out;
  }

private:
  enum class Kind
  {
    Chernoff,
    Poisson,
  };

  struct Segment
  {
    double      length;
    Kind        kind;
    double      offset;    // added to lambda_M in the Chernoff kind
    double      constant;  // added to the term
    double      scale;     // multiplies the lambda-dependent part
    std::size_t weights;   // row of weight_rows_
  };

  RelaxedObjective(AuctionInstance const &instance, RelaxedVariant variant,
                   std::optional<FixSetResult> fix, double budget)
    : instance_(&instance)
    , variant_(variant)
    , fix_(std::move(fix))
    , tails_(instance)
    , budget_(budget)
  {
    for (std::size_t i = 0; i < instance.size(); ++i)
    {
      if (!fix_ || !fix_->fixed.Contains(i))
      {
        free_.push_back(i);
      }
    }
  }

  std::size_t AddWeights(std::span<double const> weights)
  {
    std::size_t const active = detail::ActiveLength(weights);
    weight_rows_.emplace_back(weights.begin(), weights.begin() + static_cast<std::ptrdiff_t>(active));
    return weight_rows_.size() - 1;
  }

  void AddUniformPoisson(std::size_t row)
  {
    for (double length : tails_.grid().segment_lengths)
    {
      segments_.push_back(Segment{length, Kind::Poisson, 0.0, 0.0, 1.0, row});
    }
  }

  // Grid segment backing entry s of segments_; the single-item variant
  // skips segments below eta.
  std::size_t SegmentRow(std::size_t s) const noexcept
  {
    return tails_.grid().segments() - segments_.size() + s;
  }

  void CheckDimension(std::size_t size) const
  {
    detail::Require(size == free_.size(), "solution has the wrong dimension");
  }

  double Lambda(std::span<double const> x, std::size_t grid_segment) const noexcept
  {
    auto const row    = tails_.Row(grid_segment);
    double     lambda = 0.0;
    for (std::size_t i = 0; i < free_.size(); ++i)
    {
      lambda += x[i] * row[free_[i]];
    }
    return lambda;
  }

  double Term(Segment const &segment, double lambda, std::vector<double> &pmf,
              std::vector<double> &survival) const
  {
    auto const &u = weight_rows_[segment.weights];
    if (segment.kind == Kind::Chernoff)
    {
      return segment.constant + segment.scale * detail::ChernoffWeighted(segment.offset + lambda, u);
    }
    detail::PoissonHeadInto(std::max(0.0, lambda), u.size(), pmf, survival);
    double value = 0.0;
    for (std::size_t m = 1; m <= u.size(); ++m)
    {
      value += u[m - 1] * survival[m];
    }
    return segment.constant + segment.scale * value;
  }

  double Slope(Segment const &segment, double lambda, std::vector<double> &pmf,
               std::vector<double> &survival) const
  {
    auto const &u = weight_rows_[segment.weights];
    if (segment.kind == Kind::Chernoff)
    {
      return segment.scale * detail::ChernoffWeightedSlope(segment.offset + lambda, u);
    }
    detail::PoissonHeadInto(std::max(0.0, lambda), u.size(), pmf, survival);
    double value = 0.0;
    for (std::size_t m = 1; m <= u.size(); ++m)
    {
      value += u[m - 1] * pmf[m - 1];
    }
    return segment.scale * value;
  }

  AuctionInstance const           *instance_;
  RelaxedVariant                   variant_;
  std::optional<FixSetResult>      fix_;
  TailMatrix                       tails_;
  double                           budget_;
  double                           constant_ = 0.0;
  std::vector<std::size_t>         free_;
  std::vector<Segment>             segments_;
  std::vector<std::vector<double>> weight_rows_;
  std::vector<CountDistribution>   fixed_pmf_;
  std::vector<double>              coverage_;
};

inline double objective_value(RelaxedObjective const &objective, std::span<double const> x)
{
  return objective.Value(x);
}

inline std::vector<double> objective_gradient(RelaxedObjective const &objective,
                                              std::span<double const> x)
{
  return objective.Gradient(x);
}

namespace detail {

/// Smallest s with s^4 >= k^3, i.e. ceil(k * k^{-1/4}) without rounding error.
inline std::size_t PositionFixedCount(std::size_t k)
{
  detail::Require(k <= 2'000'000, "capacity too large for the fixed-set rule");
  std::uint64_t const cube = std::uint64_t{k} * k * k;
  std::uint64_t       s    = static_cast<std::uint64_t>(std::pow(static_cast<double>(k), 0.75));
  s                        = s > 2 ? s - 2 : 0;
  while (s * s * s * s < cube)
  {
    ++s;
  }
  return s;
}

/// ceil(k * sqrt(ln k / k)) = ceil(sqrt(k ln k)).
inline std::size_t SingleItemFixedCount(std::size_t k)
{
  double const kd = static_cast<double>(k);
  return static_cast<std::size_t>(std::ceil(std::sqrt(kd * std::log(kd)) - 1e-9));
}

inline SolveReport SolveRelaxed(RelaxedObjective const &objective, SolverOptions const &options)
{
  Stopwatch const clock;
  SolveReport     report = maximize(objective, objective.budget(), options);
  report.solution        = objective.Expand(report.solution.x);
  report.variant         = objective.variant();
  report.fix             = objective.fix();
  report.wall_time       = clock.Seconds();
  return report;
}

inline bool HasUnitWeights(AuctionInstance const &instance, std::size_t units)
{
  auto const weights = instance.weights();
  for (std::size_t i = 0; i < weights.size(); ++i)
  {
    if (weights[i] != (i < units ? 1.0 : 0.0))
    {
      return false;
    }
  }
  return true;
}

}  // namespace detail

inline SolveReport solve_practical(AuctionInstance const &instance, SolverOptions const &options = {})
{
  Stopwatch const clock;
  auto const      objective = RelaxedObjective::Practical(instance);
  SolveReport     report    = detail::SolveRelaxed(objective, options);
  report.wall_time          = clock.Seconds();
  return report;
}

/// Fixed core plus adjusted Poisson relaxation; degrades to the practical
/// variant when the fixed set would take the whole budget.
inline SolveReport solve_alg1(AuctionInstance const &instance, SolverOptions const &options = {})
{
  Stopwatch const   clock;
  std::size_t const k     = instance.capacity();
  std::size_t const fixed = detail::PositionFixedCount(k);
  if (fixed >= k)
  {
    SolveReport report = solve_practical(instance, options);
    report.fell_back   = true;
    report.wall_time   = clock.Seconds();
    return report;
  }
  double const kd      = static_cast<double>(k);
  double const epsilon = static_cast<double>(fixed) / kd;
  auto         fix     = select_fix_set_position(instance, std::sqrt(kd), epsilon, epsilon);
  auto const   objective = RelaxedObjective::Adjusted(instance, std::move(fix));
  SolveReport  report    = detail::SolveRelaxed(objective, options);
  report.wall_time       = clock.Seconds();
  return report;
}

/// Single-item core/tail relaxation. Requires weights (1, 0, ..., 0).
inline SolveReport solve_single_item(AuctionInstance const &instance, SolverOptions const &options = {})
{
  if (!detail::HasUnitWeights(instance, 1))
  {
    throw InvalidArgument("single-item solver needs weights (1, 0, ..., 0)");
  }
  Stopwatch const   clock;
  std::size_t const k     = instance.capacity();
  std::size_t const fixed = detail::SingleItemFixedCount(k);
  if (fixed >= k)
  {
    SolveReport report = solve_practical(instance, options);
    report.fell_back   = true;
    report.wall_time   = clock.Seconds();
    return report;
  }
  auto fix = select_fix_set_single_item(instance, static_cast<double>(fixed) / static_cast<double>(k));
  auto const  objective = RelaxedObjective::SingleItem(instance, std::move(fix));
  SolveReport report    = detail::SolveRelaxed(objective, options);
  report.wall_time      = clock.Seconds();
  return report;
}

/// Chernoff relaxation for l-unit auctions.
inline SolveReport solve_chernoff_large_l(AuctionInstance const &instance, std::size_t units,
                                          SolverOptions const &options = {})
{
  detail::Require(units >= 1, "l must be positive");
  if (!detail::HasUnitWeights(instance, units))
  {
    throw InvalidArgument("Chernoff solver needs l-unit weights");
  }
  return detail::SolveRelaxed(RelaxedObjective::ChernoffLargeL(instance, units), options);
}

/// Poisson relaxation for l-unit auctions whose bidders all satisfy Pr[v > 0] <= delta.
inline SolveReport solve_poisson_small_tail(AuctionInstance const &instance, std::size_t units,
                                            double delta, SolverOptions const &options = {})
{
  detail::Require(units >= 1, "l must be positive");
  detail::Require(delta >= 0.0 && delta <= 1.0, "delta must lie in [0, 1]");
  if (!detail::HasUnitWeights(instance, units))
  {
    throw InvalidArgument("small-tail solver needs l-unit weights");
  }
  for (auto const &dist : instance.distributions())
  {
    if (dist.Tail(0.0, true) > delta + kProbabilityClampTolerance)
    {
      throw InvalidArgument("a bidder exceeds the small-tail bound Pr[v > 0] <= delta");
    }
  }
  return detail::SolveRelaxed(RelaxedObjective::PoissonSmallTail(instance, units), options);
}

}  // namespace bidsel
