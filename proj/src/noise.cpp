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

#include "qrepsim/noise.hpp"

#include <cmath>
#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

#include "qrepsim/compress.hpp"

namespace qrepsim {

namespace {

constexpr double kPi = std::numbers::pi;

Matrix axis_operator(PauliAxis axis) {
  switch (axis) {
    case PauliAxis::kIdentity:
      return pauli::I();
    case PauliAxis::kX:
      return pauli::X();
    case PauliAxis::kY:
      return pauli::Y();
    case PauliAxis::kZ:
      return pauli::Z();
    case PauliAxis::kZZ:
      return kron(pauli::Z(), pauli::Z());
  }
  throw std::invalid_argument("unknown axis");
}

Matrix diag2(cplx a, cplx b, cplx c, cplx d) {
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = a;
  m(1, 1) = b;
  m(2, 2) = c;
  m(3, 3) = d;
  return m;
}

}  // namespace

void NoiseParams::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument(std::string(name) + " must be positive");
  };
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw std::invalid_argument("gamma must be non-negative");
  if (!(eta >= 0.5 && eta <= 1.0)) throw std::invalid_argument("eta must lie in [0.5, 1]");
  positive(omega, "omega");
  positive(omega_zz, "omega_zz");
  positive(tau, "tau");
  positive(t_me, "t_me");
  positive(t0, "t0");
  // An infinite signal speed removes all communication waits.
  if (!(c > 0.0)) throw std::invalid_argument("c must be positive");
}

Channel dephase(double gamma, double t) {
  if (t < 0.0) throw std::invalid_argument("negative dephasing duration");
  if (gamma < 0.0) throw std::invalid_argument("negative dephasing rate");
  const double decay = std::exp(-gamma * t);
  const double p1 = (1.0 + decay) / 2.0;
  const double p2 = (1.0 - decay) / 2.0;
  return kraus_to_channel(KrausSet{{std::sqrt(p1) * pauli::I(), std::sqrt(p2) * pauli::Z()}});
}

Matrix rotation_unitary(PauliAxis axis, double theta) {
  const Matrix s = axis_operator(axis);
  const Matrix id = Matrix::Identity(s.rows(), s.cols());
  // s^2 = 1 for every axis.
  return std::cos(theta / 2.0) * id - cplx(0.0, std::sin(theta / 2.0)) * s;
}

double reduce_angle(double theta) {
  double r = std::fmod(theta, 2.0 * kPi);
  if (r < 0.0) r += 2.0 * kPi;
  return r;
}

double rotation_duration(double theta, double omega) { return reduce_angle(theta) / (2.0 * omega); }

Channel ideal_rotation(PauliAxis axis, double theta) {
  if (axis == PauliAxis::kZZ) throw std::invalid_argument("single-qubit axis expected");
  return Channel::unitary(rotation_unitary(axis, theta));
}

Channel noisy_rotation(PauliAxis axis, double theta, const NoiseParams& params) {
  if (axis == PauliAxis::kIdentity || axis == PauliAxis::kZZ)
    throw std::invalid_argument("noisy_rotation needs axis X, Y or Z");
  const double angle = reduce_angle(theta);
  const double t = angle / (2.0 * params.omega);
  if (axis == PauliAxis::kZ) return compose(dephase(params.gamma, t), ideal_rotation(axis, angle));

  const Matrix h = params.omega * axis_operator(axis);
  const Matrix id = pauli::I();
  const Matrix z = pauli::Z();
  const Matrix id4 = Matrix::Identity(4, 4);
  const Matrix liouvillian = cplx(0.0, -1.0) * (kron(id, h) - kron(h.transpose(), id)) +
                             (params.gamma / 2.0) * (kron(z.conjugate(), z) - id4);
  const Matrix generator = liouvillian * t;
  const Matrix superop = generator.exp();
  return Channel(2, superop, true);
}

Channel ising_gate(double xi, const NoiseParams& params) {
  const double angle = reduce_angle(xi);
  const double t = angle / (2.0 * params.omega_zz);
  const Channel noise = tensor_product(dephase(params.gamma, t), dephase(params.gamma, t));
  return compose(noise, Channel::unitary(rotation_unitary(PauliAxis::kZZ, angle)));
}

TimedChannel controlled_z_atoms(const NoiseParams& params) {
  const double xi = kPi / 2.0;
  const double phi = 3.0 * kPi / 2.0;
  const Channel zz = ising_gate(xi, params);
  const Channel rz = noisy_rotation(PauliAxis::kZ, phi, params);
  return {compose(tensor_product(rz, rz), zz),
          rotation_duration(xi, params.omega_zz) + rotation_duration(phi, params.omega)};
}

Measurement povm_measure(double eta, double duration) {
  if (!(eta >= 0.5 && eta <= 1.0)) throw std::invalid_argument("eta must lie in [0.5, 1]");
  auto ket_bra = [](int m, int k) {
    Matrix e = Matrix::Zero(2, 2);
    e(m, k) = 1.0;
    return e;
  };
  auto weight = [eta](int m, int k) { return m == k ? eta : 1.0 - eta; };
  KrausSet all;
  std::array<KrausSet, 2> per_outcome;
  for (int m = 0; m < 2; ++m)
    for (int k = 0; k < 2; ++k) {
      const Matrix e = std::sqrt(weight(m, k)) * ket_bra(m, k);
      all.operators.push_back(e);
      per_outcome[static_cast<std::size_t>(m)].operators.push_back(e);
    }
  return {kraus_to_channel(all), {kraus_to_channel(per_outcome[0]), kraus_to_channel(per_outcome[1])}, duration};
}

Matrix controlled_minus_z_matrix() { return diag2(1.0, 1.0, -1.0, 1.0); }

TimedChannel controlled_minus_z_aux_dfs(const NoiseParams& params) {
  const Channel gate = Channel::unitary(controlled_minus_z_matrix());
  const Channel noise = tensor_product(dephase(params.gamma, params.tau), Channel::identity(1));
  return {compose(noise, gate), params.tau};
}

TimedChannel controlled_minus_z_dfs_dfs(const NoiseParams& params) {
  // Register: aux (0, starts in |0>), d1 (1), d2 (2).
  const Channel ry = noisy_rotation(PauliAxis::kY, kPi / 2.0, params);
  const TimedChannel g = controlled_minus_z_aux_dfs(params);
  const Measurement m = povm_measure(params.eta, params.t_me);
  const std::array<Channel, 2> correction{ideal_rotation(PauliAxis::kZ, kPi), Channel::identity(1)};
  const Pipeline pipeline{{ry, {0}},
                          {g.channel, {0, 1}},
                          {ry, {0}},
                          {g.channel, {0, 2}},
                          {ry, {0}},
                          {m.record, {0}},
                          {classically_controlled(correction, 1), {0, 1}}};
  const double duration = 3.0 * rotation_duration(kPi / 2.0, params.omega) + 2.0 * g.duration + m.duration;
  return {compress(pipeline, 3, {1, 2}).channel, duration};
}

TimedChannel cnot_dfs(const NoiseParams& params) {
  // The corrected slot of the DFS C(-Z) is the target here: with the slots
  // exchanged the gate reads diag(1,-1,1,1) = (1 (x) Z) CZ on (control, target).
  const TimedChannel cz = controlled_minus_z_dfs_dfs(params);
  const std::array<std::size_t, 2> exchanged{1, 0};
  const Channel cz_ct = embed(cz.channel, exchanged, 2);
  const Matrix h = (pauli::X() + pauli::Z()) / std::sqrt(2.0);
  const Channel before = Channel::unitary(kron(pauli::I(), h));
  const Channel after = Channel::unitary(kron(pauli::I(), h * pauli::Z()));
  return {compose(after, compose(cz_ct, before)), cz.duration};
}

Measurement measure_dfs(const NoiseParams& params) {
  // Register: aux (0, starts in |0>), DFS qubit (1).
  const Channel ry = noisy_rotation(PauliAxis::kY, kPi / 2.0, params);
  const TimedChannel g = controlled_minus_z_aux_dfs(params);
  const Measurement m = povm_measure(params.eta, params.t_me);
  const Pipeline pipeline{{ry, {0}}, {g.channel, {0, 1}}, {ry, {0}}, {m.record, {0}}};
  const Channel record = compress(pipeline, 2, {0}, std::nullopt, std::nullopt, {1}).channel;
  std::array<Channel, 2> branches;
  for (int outcome = 0; outcome < 2; ++outcome) {
    Matrix p = Matrix::Zero(2, 2);
    p(outcome, outcome) = 1.0;
    branches[static_cast<std::size_t>(outcome)] = compose(kraus_to_channel(KrausSet{{p}}), record);
  }
  const double duration = 2.0 * rotation_duration(kPi / 2.0, params.omega) + g.duration + m.duration;
  return {record, branches, duration};
}

}  // namespace qrepsim
