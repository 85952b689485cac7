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

#include "qrepsim/blocks.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qrepsim/compress.hpp"

namespace qrepsim {

namespace {

constexpr double kPi = std::numbers::pi;
using Q = std::size_t;

Matrix hadamard() { return (pauli::X() + pauli::Z()) / std::sqrt(2.0); }

// Bell measurement of (c1, c2) followed by X^{m2} Z^{m1} on b. For atoms the
// waiting qubits (b, and a when `dephase_a`) idle until the outcomes arrive
// after `wait`; a keeps idling while b is corrected.
void add_bell_swap(CircuitBuilder& circuit, Q a, Q c1, Q c2, Q b, double wait, bool dephase_a) {
  const NoiseParams& p = circuit.params();
  const bool atoms = circuit.slot(c1) == CircuitBuilder::Slot::kAtom;
  if (atoms) {
    circuit.rotate(c2, PauliAxis::kY, -kPi / 2.0);
    circuit.cz_atoms(c1, c2);
    circuit.rotate(c1, PauliAxis::kY, -kPi / 2.0);
    circuit.rotate(c2, PauliAxis::kY, kPi / 2.0);
  } else {
    circuit.cnot_dfs(c1, c2);
    circuit.gate(Channel::unitary(hadamard()), {c1}, 0.0);
  }
  circuit.measure(c1);
  circuit.measure(c2);
  const double outcomes_known = std::max(circuit.clock(c1), circuit.clock(c2)) + (atoms ? wait : 0.0);
  circuit.idle_until(b, outcomes_known);
  if (dephase_a) circuit.idle_until(a, outcomes_known);

  std::vector<Q> targets{b};
  if (atoms && dephase_a) targets.push_back(a);
  circuit.feed_forward({c1, c2}, targets, [&](unsigned m) -> TimedChannel {
    const bool m1 = (m & 2u) != 0;
    const bool m2 = (m & 1u) != 0;
    if (!atoms) {
      Matrix u = pauli::I();
      if (m2) u = pauli::X() * u;
      if (m1) u = pauli::Z() * u;
      return {Channel::unitary(u), 0.0};
    }
    // The z-correction slot always takes pi/2 Omega; the x-flip only when needed.
    const double slot = rotation_duration(kPi, p.omega);
    Channel fix = compose(dephase(p.gamma, slot), m1 ? Channel::unitary(pauli::Z()) : Channel::identity(1));
    double t4 = slot;
    if (m2) {
      fix = compose(fix, noisy_rotation(PauliAxis::kX, kPi, p));
      t4 += slot;
    }
    if (targets.size() == 2) fix = tensor_product(fix, dephase(p.gamma, t4));
    return {fix, t4};
  });
}

Channel dephase_pair(double gamma, double t) {
  const Channel d = dephase(gamma, t);
  return tensor_product(d, d);
}

DensityMatrix pair_apply(const Channel& c, const DensityMatrix& rho) { return c.apply(rho); }

}  // namespace

double swap_time(const NoiseParams& p) { return 9.0 * kPi / (4.0 * p.omega) + kPi / (4.0 * p.omega_zz) + p.t_me; }
double transfer_time(const NoiseParams& p) { return 5.0 * kPi / (2.0 * p.omega) + kPi / (2.0 * p.omega_zz); }
double purification_time(const NoiseParams& p) {
  return 5.0 * kPi / (2.0 * p.omega) + kPi / (4.0 * p.omega_zz) + p.t_me;
}

Channel transfer_end_atom_atom(const NoiseParams& params) {
  CircuitBuilder circuit(params);
  const Q a = circuit.add_qubit(QubitKind::kAtom);
  const Q b = circuit.add_qubit(QubitKind::kAtom);
  circuit.rotate(b, PauliAxis::kY, kPi / 2.0);
  circuit.cz_atoms(a, b);
  circuit.rotate(a, PauliAxis::kY, kPi / 2.0);
  circuit.rotate(b, PauliAxis::kY, -kPi / 2.0);
  circuit.cz_atoms(a, b);
  return compress(circuit.pipeline(), circuit.size(), {b}, std::nullopt, std::nullopt, {a}).channel;
}

namespace {
// Moves the state of atom `a` into the fresh DFS qubit `d`.
void add_atom_to_dfs(CircuitBuilder& circuit, Q a, Q d, bool idle_during_dfs_rotation) {
  circuit.rotate(d, PauliAxis::kX, kPi / 2.0);
  circuit.cmz_aux_dfs(a, d);
  circuit.rotate(a, PauliAxis::kX, kPi / 2.0);
  circuit.rotate(d, PauliAxis::kX, -kPi / 2.0);
  if (idle_during_dfs_rotation) circuit.extra_dephasing(a, kDfsRotationTime);
  circuit.cmz_aux_dfs(a, d);
  circuit.rotate(d, PauliAxis::kZ, kPi);
}

// Moves the state of DFS qubit `d` into the fresh atom `a`.
void add_dfs_to_atom(CircuitBuilder& circuit, Q d, Q a) {
  circuit.rotate(a, PauliAxis::kX, kPi / 2.0);
  circuit.cmz_aux_dfs(a, d);
  circuit.rotate(a, PauliAxis::kX, kPi / 2.0);
  circuit.rotate(d, PauliAxis::kX, kPi / 2.0);
  circuit.cmz_aux_dfs(a, d);
}
}  // namespace

Channel transfer_end_atom_dfs(const NoiseParams& params, bool idle_during_dfs_rotation) {
  CircuitBuilder circuit(params);
  const Q a = circuit.add_qubit(QubitKind::kAtom);
  const Q d = circuit.add_qubit(QubitKind::kDfs);
  add_atom_to_dfs(circuit, a, d, idle_during_dfs_rotation);
  return compress(circuit.pipeline(), circuit.size(), {d}, std::nullopt, std::nullopt, {a}).channel;
}

Channel transfer_end_dfs_dfs(const NoiseParams& params, bool idle_during_dfs_rotation) {
  CircuitBuilder circuit(params);
  const Q d = circuit.add_qubit(QubitKind::kDfs);
  const Q a = circuit.add_qubit(QubitKind::kAtom);
  const Q out = circuit.add_qubit(QubitKind::kDfs);
  add_dfs_to_atom(circuit, d, a);
  add_atom_to_dfs(circuit, a, out, idle_during_dfs_rotation);
  return compress(circuit.pipeline(), circuit.size(), {out}, std::nullopt, std::nullopt, {d}).channel;
}

BlockResult transfer_atom_atom(const NoiseParams& params) {
  const Channel end = transfer_end_atom_atom(params);
  return {tensor_product(end, end), transfer_time(params), 1.0, false};
}

BlockResult transfer_atom_dfs(const NoiseParams& params, bool idle_during_dfs_rotation) {
  const Channel end = transfer_end_atom_dfs(params, idle_during_dfs_rotation);
  const double t = 2.0 * params.tau + std::max(rotation_duration(kPi / 2.0, params.omega), kDfsRotationTime);
  return {tensor_product(end, end), t, 1.0, false};
}

BlockResult transfer_dfs_dfs(const NoiseParams& params) {
  const Channel end = transfer_end_dfs_dfs(params);
  const double t = 2.0 * params.tau + rotation_duration(kPi, params.omega) + 2.0 * params.tau +
                   std::max(rotation_duration(kPi / 2.0, params.omega), kDfsRotationTime);
  return {tensor_product(end, end), t, 1.0, false};
}

BlockResult swap_once(QubitKind kind, const DensityMatrix& /*first*/, const DensityMatrix& second,
                      double previous_distance, const NoiseParams& params) {
  if (previous_distance < 0.0) throw std::invalid_argument("negative distance");
  CircuitBuilder circuit(params);
  const Q a = circuit.add_qubit(kind);
  const Q c1 = circuit.add_qubit(kind);
  const Q c2 = circuit.add_qubit(kind);
  const Q b = circuit.add_qubit(kind);
  circuit.prepare(second, {c2, b});
  const double wait = previous_distance / params.c;
  add_bell_swap(circuit, a, c1, c2, b, wait, true);
  auto result = compress(circuit.pipeline(), circuit.size(), {a, b}, std::nullopt, std::nullopt, {a, c1});
  const double duration = kind == QubitKind::kAtom ? swap_time(params) + wait
                                                   : cnot_dfs(params).duration + measure_dfs(params).duration;
  return {result.channel, duration, 1.0, kind == QubitKind::kAtom};
}

BlockResult swap_chain(QubitKind kind, int connections, const DensityMatrix& pair, double previous_distance,
                       const NoiseParams& params) {
  if (connections < 0) throw std::invalid_argument("negative number of connections");
  const bool atoms = kind == QubitKind::kAtom;
  const double wait = atoms ? previous_distance / params.c : 0.0;
  const double round_time = atoms ? swap_time(params) + wait
                                  : cnot_dfs(params).duration + measure_dfs(params).duration;
  const int pairs = connections + 1;
  const int center = (pairs + 1) / 2;
  const int left = center - 1;
  const int right = pairs - center;

  // Pairs further out wait for the inner rounds to finish.
  auto waited = [&](int distance_from_center) {
    const double t = std::max(0, distance_from_center - 1) * round_time;
    if (!atoms || t <= 0.0 || params.gamma == 0.0) return pair;
    return pair_apply(dephase_pair(params.gamma, t), pair);
  };

  Channel total = Channel::identity(2);
  for (int r = 1; r <= left; ++r) {
    const DensityMatrix outer = waited(r);
    CircuitBuilder circuit(params);
    const Q a = circuit.add_qubit(kind);
    const Q a2 = circuit.add_qubit(kind);
    const Q x = circuit.add_qubit(kind);
    const Q y = circuit.add_qubit(kind);
    const Q b2 = circuit.add_qubit(kind);
    const Q b = circuit.add_qubit(kind);
    circuit.prepare(outer, {a, a2});
    circuit.prepare(outer, {b2, b});
    add_bell_swap(circuit, y, x, a2, a, wait, false);
    add_bell_swap(circuit, x, y, b2, b, wait, false);
    const Channel round =
        compress(circuit.pipeline(), circuit.size(), {a, b}, std::nullopt, std::nullopt, {x, y}).channel;
    total = compose(round, total);
  }
  if (right > left) total = compose(swap_once(kind, pair, waited(right), previous_distance, params).channel, total);

  const int rounds = (connections + 1) / 2;
  return {total, rounds * round_time, 1.0, atoms};
}

BlockResult purify_step(PurifyKind kind, const DensityMatrix& kept, const DensityMatrix& sacrificed, double distance,
                        const NoiseParams& params) {
  if (distance < 0.0) throw std::invalid_argument("negative distance");
  const QubitKind kept_kind = kind == PurifyKind::kAtomAtom ? QubitKind::kAtom : QubitKind::kDfs;
  const QubitKind sac_kind = kind == PurifyKind::kDfsDfs ? QubitKind::kDfs : QubitKind::kAtom;
  CircuitBuilder circuit(params);
  const Q ka = circuit.add_qubit(kept_kind);
  const Q kb = circuit.add_qubit(kept_kind);
  const Q sa = circuit.add_qubit(sac_kind);
  const Q sb = circuit.add_qubit(sac_kind);
  circuit.prepare(sacrificed, {sa, sb});

  for (Q q : {ka, sa}) circuit.rotate(q, PauliAxis::kX, kPi / 2.0);
  for (Q q : {kb, sb}) circuit.rotate(q, PauliAxis::kX, -kPi / 2.0);
  for (auto [k, s] : {std::pair{ka, sa}, std::pair{kb, sb}}) {
    switch (kind) {
      case PurifyKind::kAtomAtom:
        circuit.cnot_atoms(k, s);
        break;
      case PurifyKind::kAuxDfs:
        circuit.rotate(s, PauliAxis::kZ, kPi);
        circuit.rotate(s, PauliAxis::kY, kPi / 2.0);
        circuit.cmz_aux_dfs(s, k);
        circuit.rotate(s, PauliAxis::kY, kPi / 2.0);
        break;
      case PurifyKind::kDfsDfs:
        circuit.cnot_dfs(k, s);
        break;
    }
  }
  circuit.measure(sa);
  circuit.measure(sb);
  double duration = std::max(circuit.clock(sa), circuit.clock(sb));
  if (kind == PurifyKind::kAtomAtom) {
    duration += distance / params.c;
    circuit.idle_until(ka, duration);
    circuit.idle_until(kb, duration);
  }
  const PostSelection coincidence{{sa, sb}, {{0, 0}, {1, 1}}};
  auto result = compress(circuit.pipeline(), circuit.size(), {ka, kb}, coincidence, kept);
  return {result.channel, duration, result.success_probability, kind == PurifyKind::kAtomAtom};
}

PumpResult pump_to_fixed_point(PurifyKind kind, double f0, StateFamily family, double distance,
                               const NoiseParams& params) {
  if (!(f0 > 0.5 && f0 <= 1.0)) throw std::invalid_argument("f0 must lie in (0.5, 1]");
  const DensityMatrix fresh = family_state(family, f0);
  const Channel step = purify_step(kind, fresh, fresh, distance, params).channel;
  PumpResult out;
  DensityMatrix rho = fresh;
  double f = entanglement_fidelity(rho);
  out.history.push_back(f);
  constexpr int kMaxSteps = 200;
  out.status = PumpStatus::kMaxIterations;
  for (int k = 1; k <= kMaxSteps; ++k) {
    rho = step.apply(rho).normalized();
    const double next = entanglement_fidelity(rho);
    out.history.push_back(next);
    out.steps = k;
    const double delta = next - f;
    f = next;
    if (std::abs(delta) < 1e-10) {
      out.status = PumpStatus::kConverged;
      break;
    }
  }
  if (out.status != PumpStatus::kConverged && out.history.size() >= 4) {
    const auto n = out.history.size();
    const double d1 = out.history[n - 1] - out.history[n - 2];
    const double d2 = out.history[n - 2] - out.history[n - 3];
    if (d1 * d2 < 0.0) out.status = PumpStatus::kOscillating;
  }
  out.f_max = f;
  out.threshold_flag = out.f_max < f0;
  return out;
}

}  // namespace qrepsim
