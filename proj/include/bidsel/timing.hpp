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

#include <chrono>
#include <optional>

namespace bidsel {

class Stopwatch
{
public:
  using Clock = std::chrono::steady_clock;

  Stopwatch()
    : start_(Clock::now())
  {}

  double Seconds() const
  {
    return std::chrono::duration<double>(Clock::now() - start_).count();
  }

private:
  Clock::time_point start_;
};

/// Cooperative time limit. Long loops poll `Check()`, which throws Timeout.
class Deadline
{
public:
  using Clock = std::chrono::steady_clock;

  Deadline() = default;

  static Deadline After(double seconds)
  {
    Deadline deadline;
    if (seconds > 0.0)
    {
      deadline.limit_ = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                           std::chrono::duration<double>(seconds));
    }
    return deadline;
  }

  bool Expired() const
  {
    return limit_ && Clock::now() >= *limit_;
  }

  void Check() const
  {
    if (Expired())
    {
      throw Timeout("time limit exceeded");
    }
  }

private:
  std::optional<Clock::time_point> limit_;
};

}  // namespace bidsel
