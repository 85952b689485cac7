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

#ifndef QREPSIM_CIRCUIT_HPP
#define QREPSIM_CIRCUIT_HPP

#include <cstddef>
#include <functional>
#include <vector>

#include "qrepsim/compress.hpp"
#include "qrepsim/noise.hpp"

namespace qrepsim {

/// Builds a pipeline for a small register while tracking one clock per qubit.
///
/// Atom qubits dephase whenever they idle before a gate; DFS qubits are ideal
/// memories whose rotations are noiseless and take no modelled time. A
/// measured qubit turns into a classical record and stops evolving.
class CircuitBuilder {
 public:
  enum class Slot { kAtom, kDfs, kRecord };

  explicit CircuitBuilder(NoiseParams params);

  /// New qubit in |0> at time 0.
  std::size_t add_qubit(QubitKind kind);
  std::size_t size() const { return slots_.size(); }
  Slot slot(std::size_t q) const { return slots_.at(q); }
  double clock(std::size_t q) const { return clocks_.at(q); }
  const NoiseParams& params() const { return params_; }
  const Pipeline& pipeline() const { return pipeline_; }

  /// Replaces the state of `targets` with `state` (no time passes).
  void prepare(const DensityMatrix& state, std::vector<std::size_t> targets);

  void idle_until(std::size_t q, double t);
  void wait(std::size_t q, double dt) { idle_until(q, clock(q) + dt); }
  /// Brings all targets to their latest clock.
  void sync(const std::vector<std::size_t>& targets);
  /// Dephasing of an atom for `dt` without advancing its clock, for exposures
  /// that overlap other bookkeeping (e.g. idling in parallel with a DFS gate).
  void extra_dephasing(std::size_t q, double dt);

  /// Applies `channel` after syncing the targets; each target's clock advances
  /// by `duration`. The channel carries its own noise.
  void gate(const Channel& channel, std::vector<std::size_t> targets, double duration);

  /// Noisy rotation for atoms, ideal instantaneous rotation for DFS qubits.
  void rotate(std::size_t q, PauliAxis axis, double theta);
  void cz_atoms(std::size_t a, std::size_t b);
  /// R_y(pi/2) on t, CZ, R_y(-pi/2) on t, read right to left.
  void cnot_atoms(std::size_t control, std::size_t target);
  void cmz_aux_dfs(std::size_t aux, std::size_t dfs);
  void cnot_dfs(std::size_t control, std::size_t target);
  /// Atom: POVM. DFS: aux-mediated measurement. The qubit becomes a record.
  void measure(std::size_t q);

  /// Branch m of a classically controlled operation: a channel on the targets
  /// (including its noise) and the time it takes.
  using Branch = std::function<TimedChannel(unsigned outcome)>;
  /// `records` are read as a bit string, first record most significant. The
  /// targets finish at the slowest branch.
  void feed_forward(const std::vector<std::size_t>& records, const std::vector<std::size_t>& targets,
                    const Branch& branch);

 private:
  void require_live(std::size_t q) const;

  NoiseParams params_;
  std::vector<Slot> slots_;
  std::vector<double> clocks_;
  Pipeline pipeline_;
  Channel cz_atoms_;
  double cz_duration_ = 0.0;
  Channel cmz_aux_dfs_;
  Channel cnot_dfs_;
  double cnot_dfs_duration_ = 0.0;
  Measurement povm_;
  Measurement dfs_measurement_;
};

}  // namespace qrepsim

#endif  // QREPSIM_CIRCUIT_HPP
