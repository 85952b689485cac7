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

#include "qrepsim/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <functional>
#include <thread>

namespace qrepsim {

namespace {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

std::string join(const std::vector<std::string>& cells) {
  std::string row;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) row += ',';
    row += cells[i];
  }
  row += '\n';
  return row;
}

std::vector<std::string> columns(Command command) {
  switch (command) {
    case Command::kTransfer:
      return {"input_fidelity", "fidelity", "success_probability", "duration"};
    case Command::kSwap:
      return {"connections", "distance", "fidelity", "success_probability", "duration"};
    case Command::kPurify:
      return {"f0", "f_max", "steps", "threshold", "status", "success_probability", "duration"};
    case Command::kRepeater:
      return {"level", "distance", "fidelity", "success_probability", "time"};
    case Command::kTiming:
      return {"level", "distance", "t_n", "t_c", "t_aw", "t_aw_tilde", "t_sw", "t_tr", "t_pur"};
  }
  return {};
}

const char* status_name(PumpStatus s) {
  switch (s) {
    case PumpStatus::kConverged:
      return "converged";
    case PumpStatus::kMaxIterations:
      return "max_iterations";
    case PumpStatus::kOscillating:
      return "oscillating";
  }
  return "";
}

// Rows for one fully resolved spec, without the sweep column.
std::vector<std::vector<std::string>> evaluate(const RunSpec& spec) {
  const RepeaterConfig& cfg = spec.config;
  const NoiseParams& p = cfg.params;
  const DensityMatrix input = family_state(cfg.family, cfg.f0);
  std::vector<std::vector<std::string>> rows;
  switch (spec.command) {
    case Command::kTransfer: {
      BlockResult r;
      switch (spec.transfer) {
        case TransferKind::kAtomAtom:
          r = transfer_atom_atom(p);
          break;
        case TransferKind::kAtomDfs:
          r = transfer_atom_dfs(p);
          break;
        case TransferKind::kDfsDfs:
          r = transfer_dfs_dfs(p);
          break;
      }
      const double f = entanglement_fidelity(r.channel.apply(input));
      rows.push_back({fmt(cfg.f0), fmt(f), fmt(r.success_probability), fmt(r.duration)});
      break;
    }
    case Command::kSwap: {
      const int l = cfg.connections.front();
      const BlockResult r = swap_chain(cfg.kind, l, input, cfg.l0, p);
      const double f = entanglement_fidelity(r.channel.apply(input));
      rows.push_back({std::to_string(l), fmt(cfg.l0 * (l + 1)), fmt(f), fmt(r.success_probability), fmt(r.duration)});
      break;
    }
    case Command::kPurify: {
      const PumpResult pump = pump_to_fixed_point(spec.purify, cfg.f0, cfg.family, cfg.l0, p);
      const BlockResult step = purify_step(spec.purify, input, input, cfg.l0, p);
      rows.push_back({fmt(cfg.f0), fmt(pump.f_max), std::to_string(pump.steps), pump.threshold_flag ? "1" : "0",
                      status_name(pump.status), fmt(step.success_probability), fmt(step.duration)});
      break;
    }
    case Command::kRepeater: {
      for (const auto& level : run_repeater(cfg))
        rows.push_back({std::to_string(level.level), fmt(level.distance), fmt(level.fidelity),
                        fmt(level.success_probability), fmt(level.time)});
      break;
    }
    case Command::kTiming: {
      const TimingReport t = timing(cfg);
      for (int j = 1; j <= cfg.levels; ++j) {
        const auto i = static_cast<std::size_t>(j);
        rows.push_back({std::to_string(j), fmt(t.S[i]), fmt(t.t[i]), fmt(t.t_c[i]), fmt(t.t_aw[i]),
                        fmt(t.t_aw_tilde[i]), fmt(t.t_sw), fmt(t.t_tr), fmt(t.t_pur)});
      }
      break;
    }
  }
  return rows;
}

std::string annotate(const RunSpec& spec, double value, const std::string& what) {
  return "sweep point " + spec.sweep_key + "=" + fmt(value) + ": " + what;
}

}  // namespace

std::string run(const RunSpec& spec) { return sweep_execute(spec, 1); }

std::string sweep_execute(const RunSpec& spec, unsigned workers) {
  if (workers < 1) workers = 1;
  const bool swept = !spec.sweep_key.empty();
  std::vector<std::string> header = columns(spec.command);
  // A swept key that is already an output column is not repeated.
  const bool extra_column = swept && std::find(header.begin(), header.end(), spec.sweep_key) == header.end();
  if (extra_column) header.insert(header.begin(), spec.sweep_key);
  std::string csv = join(header);

  if (!swept) {
    for (auto& row : evaluate(spec)) csv += join(row);
    return csv;
  }

  const std::size_t n = spec.sweep_values.size();
  std::vector<std::string> blocks(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      const double value = spec.sweep_values[i];
      try {
        std::string block;
        for (auto row : evaluate(with_value(spec, spec.sweep_key, value))) {
          if (extra_column) row.insert(row.begin(), fmt(value));
          block += join(row);
        }
        blocks[i] = std::move(block);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned threads = static_cast<unsigned>(std::min<std::size_t>(workers, n));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  for (std::size_t i = 0; i < n; ++i) {
    if (!errors[i]) continue;
    try {
      std::rethrow_exception(errors[i]);
    } catch (const NumericalError& e) {
      throw NumericalError(annotate(spec, spec.sweep_values[i], e.what()));
    } catch (const ConfigError& e) {
      throw ConfigError(e.line(), annotate(spec, spec.sweep_values[i], e.what()));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(annotate(spec, spec.sweep_values[i], e.what()));
    }
  }
  for (auto& b : blocks) csv += b;
  return csv;
}

}  // namespace qrepsim
