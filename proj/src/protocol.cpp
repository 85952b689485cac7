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

#include "qrepsim/protocol.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace qrepsim {

namespace {

int half_up(int l) { return (l + 1) / 2; }

Channel dephase_pair(double gamma, double t) {
  const Channel d = dephase(gamma, t);
  return tensor_product(d, d);
}

}  // namespace

void RepeaterConfig::validate() const {
  if (levels < 1) throw std::invalid_argument("levels must be at least 1");
  if (connections.size() != static_cast<std::size_t>(levels))
    throw std::invalid_argument("L must have one entry per level");
  if (purifications.size() != static_cast<std::size_t>(levels))
    throw std::invalid_argument("K must have one entry per level");
  for (int l : connections)
    if (l < 0) throw std::invalid_argument("L entries must be non-negative");
  for (int k : purifications)
    if (k < 0) throw std::invalid_argument("K entries must be non-negative");
  if (!(l0 > 0.0)) throw std::invalid_argument("l0 must be positive");
  if (!(f0 > 0.5 && f0 <= 1.0)) throw std::invalid_argument("f0 must lie in (0.5, 1]");
  params.validate();
}

double distance(const RepeaterConfig& config, int level) {
  if (level < 0 || level > config.levels || static_cast<std::size_t>(level) > config.connections.size())
    throw std::out_of_range("level " + std::to_string(level) + " out of range");
  double s = config.l0;
  for (int j = 0; j < level; ++j) s *= config.connections[static_cast<std::size_t>(j)] + 1;
  return s;
}

TimingReport timing(const RepeaterConfig& config) {
  config.validate();
  const NoiseParams& p = config.params;
  const int n = config.levels;
  const auto L = [&](int j) { return config.connections[static_cast<std::size_t>(j - 1)]; };
  const auto K = [&](int j) { return config.purifications[static_cast<std::size_t>(j - 1)]; };

  TimingReport r;
  r.t_sw = swap_time(p);
  r.t_tr = transfer_time(p);
  r.t_pur = purification_time(p);
  for (int j = 0; j <= n; ++j) r.S.push_back(distance(config, j));

  r.t0_prime = p.t0 + half_up(L(1)) * (r.t_sw + r.S[0] / p.c);
  r.t1 = r.t_tr + r.t0_prime + K(1) * (r.t_pur + std::max(r.t0_prime, r.S[1] / p.c));

  r.t.assign(static_cast<std::size_t>(n + 1), 0.0);
  r.t[1] = r.t1;
  for (int j = 2; j <= n; ++j) r.t[static_cast<std::size_t>(j)] = r.t[static_cast<std::size_t>(j - 1)] * (K(j) + 1);

  r.t_c.assign(static_cast<std::size_t>(n + 1), 0.0);
  r.t_c[0] = p.t0;
  for (int m = 1; m <= n; ++m) {
    double earlier = 0.0;
    for (int l = 1; l < m; ++l) earlier += r.t[static_cast<std::size_t>(l)];
    r.t_c[static_cast<std::size_t>(m)] = std::max(0.0, r.t[static_cast<std::size_t>(m)] - earlier);
  }

  r.t_aw.assign(static_cast<std::size_t>(n + 1), 0.0);
  r.t_aw_tilde.assign(static_cast<std::size_t>(n + 1), 0.0);
  for (int j = 1; j <= n; ++j) {
    const auto idx = static_cast<std::size_t>(j);
    const double connect = half_up(L(j)) * (r.t_sw + r.S[idx - 1] / p.c) + r.t_c[idx - 1];
    r.t_aw_tilde[idx] = connect;
    r.t_aw[idx] = std::max(0.0, connect - r.S[idx] / p.c);
  }
  return r;
}

std::vector<LevelResult> run_repeater(const RepeaterConfig& config) {
  config.validate();
  const NoiseParams& p = config.params;
  const TimingReport times = timing(config);
  const bool atoms = config.kind == QubitKind::kAtom;

  // Fresh atom pair after the photon-to-atom transfer.
  const DensityMatrix initial = family_state(config.family, config.f0);
  DensityMatrix line = atoms ? dephase_pair(p.gamma, p.t0).apply(initial) : initial;

  const Channel atom_transfer = atoms ? transfer_atom_atom(p).channel : Channel();
  const Channel dfs_transfer = atoms ? Channel() : transfer_dfs_dfs(p).channel;
  if (!atoms) line = transfer_atom_dfs(p).channel.apply(line);

  std::vector<LevelResult> out;
  for (int j = 1; j <= config.levels; ++j) {
    const auto idx = static_cast<std::size_t>(j);
    const int l = config.connections[idx - 1];
    const int k = config.purifications[idx - 1];

    const DensityMatrix connected = swap_chain(config.kind, l, line, times.S[idx - 1], p).channel.apply(line);
    DensityMatrix kept = connected;
    PurifyKind purify_kind = PurifyKind::kDfsDfs;
    DensityMatrix sacrificed = connected;
    if (atoms) {
      purify_kind = PurifyKind::kAtomAtom;
      kept = compose(dephase_pair(p.gamma, times.t_aw_tilde[idx]), atom_transfer).apply(connected);
    } else if (j == 1 && l == 0) {
      // The first level purifies with bare atom pairs through aux-DFS gates.
      purify_kind = PurifyKind::kAuxDfs;
      sacrificed = initial;
    } else if (j > 1) {
      kept = dfs_transfer.apply(connected);
    }

    double success = 1.0;
    if (k > 0) {
      const Channel idle = atoms ? dephase_pair(p.gamma, times.t_aw[idx]) : Channel::identity(2);
      for (int round = 0; round < k; ++round) {
        const BlockResult step = purify_step(purify_kind, kept, sacrificed, times.S[idx], p);
        success *= step.success_probability;
        kept = idle.apply(step.channel.apply(kept).normalized());
      }
    }
    line = kept;
    out.push_back({j, entanglement_fidelity(kept), times.S[idx], times.t[idx], success, kept});
  }
  return out;
}

}  // namespace qrepsim
