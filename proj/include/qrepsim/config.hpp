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

#ifndef QREPSIM_CONFIG_HPP
#define QREPSIM_CONFIG_HPP

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qrepsim/blocks.hpp"
#include "qrepsim/protocol.hpp"

namespace qrepsim {

/// Invalid run configuration. `line` is 1-based, or 0 when the problem is
/// not tied to a single line.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(int line, const std::string& message);
  int line() const { return line_; }

 private:
  int line_;
};

enum class Command { kTransfer, kSwap, kPurify, kRepeater, kTiming };
enum class TransferKind { kAtomAtom, kAtomDfs, kDfsDfs };

struct RunSpec {
  Command command = Command::kRepeater;
  RepeaterConfig config;
  /// Transfer and purification variants; by default they follow `config.kind`.
  TransferKind transfer = TransferKind::kDfsDfs;
  PurifyKind purify = PurifyKind::kDfsDfs;
  std::string sweep_key;
  std::vector<double> sweep_values;
  std::string out;
};

/// Parses key=value lines ('#' starts a comment). Without L and K the
/// reference strategy is used: L = 0,1,1,... and K = 5 on every level, with
/// 12 levels unless `levels` is given.
RunSpec parse_config(std::string_view text);

/// Numeric keys that may be swept.
bool is_sweepable(const std::string& key);
/// Copy of `spec` with one numeric key set.
RunSpec with_value(const RunSpec& spec, const std::string& key, double value);

}  // namespace qrepsim

#endif  // QREPSIM_CONFIG_HPP
