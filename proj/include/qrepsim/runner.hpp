// Copyright 2026 The qrepsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QREPSIM_RUNNER_HPP
#define QREPSIM_RUNNER_HPP

#include <string>

#include "qrepsim/config.hpp"

namespace qrepsim {

/// CSV for a run: a header row, then one row per sweep point (per level for
/// the repeater and timing commands). Numbers carry 12 significant digits.
std::string run(const RunSpec& spec);

/// Same output as run(), evaluating sweep points on `workers` threads.
std::string sweep_execute(const RunSpec& spec, unsigned workers);

}  // namespace qrepsim

#endif  // QREPSIM_RUNNER_HPP
