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

#include "bidsel/baselines.hpp"
#include "bidsel/distributions.hpp"
#include "bidsel/error.hpp"
#include "bidsel/fixset.hpp"
#include "bidsel/harness.hpp"
#include "bidsel/instance_io.hpp"
#include "bidsel/objectives.hpp"
#include "bidsel/random.hpp"
#include "bidsel/rounding.hpp"
#include "bidsel/solver.hpp"
#include "bidsel/timing.hpp"
#include "bidsel/welfare.hpp"
