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

#ifndef QREPSIM_BLOCKS_HPP
#define QREPSIM_BLOCKS_HPP

#include <vector>

#include "qrepsim/channel.hpp"
#include "qrepsim/circuit.hpp"
#include "qrepsim/density_matrix.hpp"
#include "qrepsim/noise.hpp"

namespace qrepsim {

/// Duration of a DFS x-rotation; an atom that waits for one dephases meanwhile.
inline constexpr double kDfsRotationTime = 2.5e-3;

struct BlockResult {
  /// Effective map on one pair. Post-selected blocks return the unnormalized
  /// branch map.
  Channel channel;
  double duration = 0.0;
  double success_probability = 1.0;
  /// Whether `duration` contains the classical communication time.
  bool includes_classical_wait = false;
};

struct PairState {
  DensityMatrix rho;
  double distance = 0.0;
  QubitKind kind = QubitKind::kAtom;
};

/// Local gate times of the atomic blocks: swap (up to the measurement),
/// transfer, and purification.
double swap_time(const NoiseParams& params);
double transfer_time(const NoiseParams& params);
double purification_time(const NoiseParams& params);

/// Single-end transfer maps (one qubit in, one qubit out).
Channel transfer_end_atom_atom(const NoiseParams& params);
Channel transfer_end_atom_dfs(const NoiseParams& params, bool idle_during_dfs_rotation = true);
Channel transfer_end_dfs_dfs(const NoiseParams& params, bool idle_during_dfs_rotation = true);

/// The same transfer at both ends of a pair.
BlockResult transfer_atom_atom(const NoiseParams& params);
BlockResult transfer_atom_dfs(const NoiseParams& params, bool idle_during_dfs_rotation = true);
BlockResult transfer_dfs_dfs(const NoiseParams& params);

/// Connects (A, C1) and (C2, B) by a Bell measurement on C1, C2 and a
/// correction of B. The channel acts on the first pair with the second pair
/// fixed; for atoms, A and B wait `previous_distance / c` for the outcomes.
BlockResult swap_once(QubitKind kind, const DensityMatrix& first, const DensityMatrix& second,
                      double previous_distance, const NoiseParams& params);

/// Connects L + 1 copies of `pair` by simultaneous swapping, working outwards
/// from the middle pair. The channel acts on the middle pair with all other
/// pairs fixed; the duration is ceil(L/2) (t_sw + previous_distance / c).
BlockResult swap_chain(QubitKind kind, int connections, const DensityMatrix& pair, double previous_distance,
                       const NoiseParams& params);

enum class PurifyKind { kAtomAtom, kAuxDfs, kDfsDfs };

/// One round of the Deutsch protocol. The channel acts on the kept pair with
/// the sacrificed pair fixed, keeping coincident outcomes only; the success
/// probability refers to `kept`.
BlockResult purify_step(PurifyKind kind, const DensityMatrix& kept, const DensityMatrix& sacrificed,
                        double distance, const NoiseParams& params);

enum class PumpStatus { kConverged, kMaxIterations, kOscillating };

struct PumpResult {
  double f_max = 0.0;
  int steps = 0;
  /// Set when the fixed point lies below the initial fidelity.
  bool threshold_flag = false;
  PumpStatus status = PumpStatus::kConverged;
  std::vector<double> history;
};

/// Repeatedly purifies one pair with fresh pairs of fidelity f0 until the
/// fidelity changes by less than 1e-10 (at most 200 rounds).
PumpResult pump_to_fixed_point(PurifyKind kind, double f0, StateFamily family, double distance,
                               const NoiseParams& params);

}  // namespace qrepsim

#endif  // QREPSIM_BLOCKS_HPP
