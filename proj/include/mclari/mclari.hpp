// Copyright 2026 The mclari-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Umbrella header for the complete library.

#ifndef MCLARI_MCLARI_HPP_
#define MCLARI_MCLARI_HPP_

#include "mclari/actuator.hpp"
#include "mclari/bench.hpp"
#include "mclari/body.hpp"
#include "mclari/csv.hpp"
#include "mclari/errors.hpp"
#include "mclari/gait.hpp"
#include "mclari/geometry.hpp"
#include "mclari/scenario.hpp"
#include "mclari/sim.hpp"
#include "mclari/transmission.hpp"

#endif  // MCLARI_MCLARI_HPP_
