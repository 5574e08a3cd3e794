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

// Select 10 of 50 bidders with the Poisson relaxation and compare the
// rounded set against greedy.

#include "bidsel/bidsel.hpp"

#include <cstdio>

int main()
{
  auto const instance = bidsel::generate_lognormal_instance(50, 10, /*seed=*/7);

  auto const relaxed = bidsel::solve_practical(instance);
  auto const rounded = bidsel::round_best_of(instance, relaxed.solution, 10, /*seed=*/7);
  auto const baseline = bidsel::greedy(instance);

  std::printf("relaxation: %zu iterations, objective %.6f, fractional welfare %.6f\n", relaxed.iterations,
              relaxed.objective_value, bidsel::sw_fractional(instance, relaxed.solution));
  std::printf("rounded set welfare %.6f, greedy welfare %.6f\n", *rounded.welfare, baseline.welfare);
  std::printf("selected:");
  for (auto i : rounded.selected.members)
  {
    std::printf(" %zu", i);
  }
  std::printf("\n");
}
