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

#ifndef QREPSIM_NOISE_HPP
#define QREPSIM_NOISE_HPP

#include <array>
#include <numbers>

#include "qrepsim/channel.hpp"

namespace qrepsim {

/// Physical parameters. Rates in 1/s, frequencies in rad/s, times in s,
/// speeds in m/s. Defaults are the reference parameter set with 1/gamma = 100 ms.
struct NoiseParams {
  double gamma = 10.0;
  double eta = 0.99;
  double omega = 2.0 * std::numbers::pi * 50e3;
  double omega_zz = 0.1 * 2.0 * std::numbers::pi * 50e3;
  double tau = 1e-3;
  double t_me = 10e-6;
  double t0 = 10e-6;
  double c = 3e8;

  /// Throws std::invalid_argument when a field is outside its domain.
  void validate() const;
};

enum class PauliAxis { kIdentity, kX, kY, kZ, kZZ };
enum class QubitKind { kAtom, kDfs };

struct TimedChannel {
  Channel channel;
  double duration = 0.0;
};

/// rho -> p1 rho + p2 Z rho Z, p1 = (1 + exp(-gamma t))/2.
Channel dephase(double gamma, double t);

/// exp(-i theta sigma/2) for a single-qubit axis, exp(-i theta Z(x)Z/2) for kZZ.
Matrix rotation_unitary(PauliAxis axis, double theta);
/// Angles are reduced to [0, 2pi) first: negative rotations are performed as
/// the equivalent positive ones.
double reduce_angle(double theta);
/// theta/(2 omega) for the reduced angle.
double rotation_duration(double theta, double omega);

/// Solution of the single-qubit master equation with H = omega sigma_axis and
/// dephasing at rate gamma for the rotation time. For kZ this is the ideal
/// rotation followed by dephasing.
Channel noisy_rotation(PauliAxis axis, double theta, const NoiseParams& params);
/// Noise-free rotation, used for DFS logical qubits.
Channel ideal_rotation(PauliAxis axis, double theta);

/// Ideal ZZ evolution followed by independent dephasing of both qubits for
/// xi/(2 omega_zz).
Channel ising_gate(double xi, const NoiseParams& params);

/// diag(1,1,1,-1) from ising_gate(pi/2) and simultaneous z-rotations.
TimedChannel controlled_z_atoms(const NoiseParams& params);

/// Two-outcome measurement with correctness probability eta. The measured
/// qubit becomes a classical record |m><m|: `record` is the trace-preserving
/// sum over outcomes and branches[m] the trace-decreasing map of outcome m.
struct Measurement {
  Channel record;
  std::array<Channel, 2> branches;
  double duration = 0.0;
};
Measurement povm_measure(double eta, double duration = 0.0);

/// diag(1,1,-1,1) on (aux, dfs), i.e. -Z on the DFS qubit when the aux is |1>.
Matrix controlled_minus_z_matrix();

/// C(-Z) between an aux atom (slot 0) and a DFS qubit (slot 1); the aux
/// dephases for tau.
TimedChannel controlled_minus_z_aux_dfs(const NoiseParams& params);

/// C(-Z) between DFS qubits (d1, d2) mediated by one aux atom. The aux error
/// from the second coupling acts on d2 only; d1 also sees the measurement
/// error through the conditional correction.
TimedChannel controlled_minus_z_dfs_dfs(const NoiseParams& params);

/// CNOT with control d1 and target d2 built from controlled_minus_z_dfs_dfs and
/// ideal DFS rotations.
TimedChannel cnot_dfs(const NoiseParams& params);

/// z-measurement of a DFS qubit through an aux atom. The DFS slot is replaced
/// by the classical record of the aux outcome.
Measurement measure_dfs(const NoiseParams& params);

}  // namespace qrepsim

#endif  // QREPSIM_NOISE_HPP
