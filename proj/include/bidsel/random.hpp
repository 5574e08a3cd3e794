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

#include <cstdint>
#include <random>

namespace bidsel {

// Name recorded in reports and configs.
inline constexpr char const *kRngName = "mt19937_64";

/// Seedable 64-bit generator with platform-independent derived draws.
///
/// The engine output sequence of std::mt19937_64 is fixed by the standard,
/// but the std distributions are not, so uniform doubles and bounded integers
/// are derived here by hand.
class Rng
{
public:
  explicit Rng(std::uint64_t seed)
    : engine_(seed)
  {}

  std::uint64_t NextU64()
  {
    return engine_();
  }

  /// Uniform on [0, 1) with 53 random bits.
  double Uniform()
  {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [0, bound). Rejection sampling keeps it exact.
  std::uint64_t Below(std::uint64_t bound)
  {
    if (bound <= 1)
    {
      return 0;
    }
    std::uint64_t const limit = UINT64_MAX - (UINT64_MAX % bound);
    std::uint64_t       draw  = engine_();
    while (draw >= limit)
    {
      draw = engine_();
    }
    return draw % bound;
  }

  bool Bernoulli(double p)
  {
    return Uniform() < p;
  }

private:
  std::mt19937_64 engine_;
};

}  // namespace bidsel
