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

#include "qrepsim/circuit.hpp"

#include <algorithm>
#include <numbers>
#include <stdexcept>

namespace qrepsim {

CircuitBuilder::CircuitBuilder(NoiseParams params) : params_(params) {
  const TimedChannel cz = controlled_z_atoms(params_);
  cz_atoms_ = cz.channel;
  cz_duration_ = cz.duration;
  cmz_aux_dfs_ = controlled_minus_z_aux_dfs(params_).channel;
  const TimedChannel cnot = qrepsim::cnot_dfs(params_);
  cnot_dfs_ = cnot.channel;
  cnot_dfs_duration_ = cnot.duration;
  povm_ = povm_measure(params_.eta, params_.t_me);
  dfs_measurement_ = measure_dfs(params_);
}

std::size_t CircuitBuilder::add_qubit(QubitKind kind) {
  slots_.push_back(kind == QubitKind::kAtom ? Slot::kAtom : Slot::kDfs);
  clocks_.push_back(0.0);
  return slots_.size() - 1;
}

void CircuitBuilder::require_live(std::size_t q) const {
  if (slot(q) == Slot::kRecord) throw std::logic_error("operation on a measured qubit");
}

void CircuitBuilder::prepare(const DensityMatrix& state, std::vector<std::size_t> targets) {
  for (auto q : targets) require_live(q);
  pipeline_.push_back({constant_channel(state), std::move(targets)});
}

void CircuitBuilder::idle_until(std::size_t q, double t) {
  const double dt = t - clock(q);
  if (dt <= 0.0) return;
  if (slot(q) == Slot::kAtom && params_.gamma > 0.0) pipeline_.push_back({dephase(params_.gamma, dt), {q}});
  clocks_[q] = t;
}

void CircuitBuilder::sync(const std::vector<std::size_t>& targets) {
  double latest = 0.0;
  for (auto q : targets) latest = std::max(latest, clock(q));
  for (auto q : targets) idle_until(q, latest);
}

void CircuitBuilder::extra_dephasing(std::size_t q, double dt) {
  if (slot(q) == Slot::kAtom) pipeline_.push_back({dephase(params_.gamma, dt), {q}});
}

void CircuitBuilder::gate(const Channel& channel, std::vector<std::size_t> targets, double duration) {
  for (auto q : targets) require_live(q);
  sync(targets);
  for (auto q : targets) clocks_[q] += duration;
  pipeline_.push_back({channel, std::move(targets)});
}

void CircuitBuilder::rotate(std::size_t q, PauliAxis axis, double theta) {
  require_live(q);
  if (slot(q) == Slot::kDfs) {
    gate(ideal_rotation(axis, theta), {q}, 0.0);
  } else {
    gate(noisy_rotation(axis, theta, params_), {q}, rotation_duration(theta, params_.omega));
  }
}

void CircuitBuilder::cz_atoms(std::size_t a, std::size_t b) {
  if (slot(a) != Slot::kAtom || slot(b) != Slot::kAtom) throw std::logic_error("CZ needs two atoms");
  gate(cz_atoms_, {a, b}, cz_duration_);
}

void CircuitBuilder::cnot_atoms(std::size_t control, std::size_t target) {
  constexpr double kPi = std::numbers::pi;
  rotate(target, PauliAxis::kY, -kPi / 2.0);
  cz_atoms(control, target);
  rotate(target, PauliAxis::kY, kPi / 2.0);
}

void CircuitBuilder::cmz_aux_dfs(std::size_t aux, std::size_t dfs) {
  if (slot(aux) != Slot::kAtom || slot(dfs) != Slot::kDfs) throw std::logic_error("C(-Z) needs (atom, DFS)");
  gate(cmz_aux_dfs_, {aux, dfs}, params_.tau);
}

void CircuitBuilder::cnot_dfs(std::size_t control, std::size_t target) {
  if (slot(control) != Slot::kDfs || slot(target) != Slot::kDfs) throw std::logic_error("DFS CNOT needs DFS qubits");
  gate(cnot_dfs_, {control, target}, cnot_dfs_duration_);
}

void CircuitBuilder::measure(std::size_t q) {
  require_live(q);
  if (slot(q) == Slot::kAtom) {
    gate(povm_.record, {q}, povm_.duration);
  } else {
    gate(dfs_measurement_.record, {q}, dfs_measurement_.duration);
  }
  slots_[q] = Slot::kRecord;
}

void CircuitBuilder::feed_forward(const std::vector<std::size_t>& records, const std::vector<std::size_t>& targets,
                                  const Branch& branch) {
  for (auto r : records)
    if (slot(r) != Slot::kRecord) throw std::logic_error("feed-forward from an unmeasured qubit");
  for (auto q : targets) require_live(q);
  sync(targets);
  const unsigned outcomes = 1u << records.size();
  std::vector<Channel> branches;
  double longest = 0.0;
  for (unsigned m = 0; m < outcomes; ++m) {
    TimedChannel b = branch(m);
    longest = std::max(longest, b.duration);
    branches.push_back(std::move(b.channel));
  }
  std::vector<std::size_t> all = records;
  all.insert(all.end(), targets.begin(), targets.end());
  pipeline_.push_back({classically_controlled(branches, records.size()), std::move(all)});
  for (auto q : targets) clocks_[q] += longest;
}

}  // namespace qrepsim
