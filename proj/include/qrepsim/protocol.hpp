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

#ifndef QREPSIM_PROTOCOL_HPP
#define QREPSIM_PROTOCOL_HPP

#include <vector>

#include "qrepsim/blocks.hpp"
#include "qrepsim/density_matrix.hpp"
#include "qrepsim/noise.hpp"

namespace qrepsim {

struct RepeaterConfig {
  int levels = 1;
  /// Connections L_j and purification rounds K_j for j = 1..levels.
  std::vector<int> connections{0};
  std::vector<int> purifications{0};
  double l0 = 10e3;
  double f0 = 0.9;
  StateFamily family = StateFamily::kWerner;
  QubitKind kind = QubitKind::kDfs;
  NoiseParams params;

  /// Throws std::invalid_argument describing the first violated constraint.
  void validate() const;
};

/// Lower-bound timing model. Per-level vectors are indexed by level, with
/// index 0 unused except for `S[0] = l0` and `t_c[0] = t0`.
struct TimingReport {
  std::vector<double> S;
  double t_sw = 0.0;
  double t_tr = 0.0;
  double t_pur = 0.0;
  double t0_prime = 0.0;
  double t1 = 0.0;
  std::vector<double> t;
  std::vector<double> t_c;
  std::vector<double> t_aw;
  std::vector<double> t_aw_tilde;
};

/// S_n = l0 prod_{j<=n} (L_j + 1).
double distance(const RepeaterConfig& config, int level);

TimingReport timing(const RepeaterConfig& config);

struct LevelResult {
  int level = 0;
  double fidelity = 0.0;
  double distance = 0.0;
  /// Minimum time to create a pair on this level.
  double time = 0.0;
  /// Probability that all purification rounds of the level succeed.
  double success_probability = 1.0;
  DensityMatrix state;
};

std::vector<LevelResult> run_repeater(const RepeaterConfig& config);

}  // namespace qrepsim

#endif  // QREPSIM_PROTOCOL_HPP
