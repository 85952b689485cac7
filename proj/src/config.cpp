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

#include "qrepsim/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <optional>

namespace qrepsim {

ConfigError::ConfigError(int line, const std::string& message)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message), line_(line) {}

namespace {

constexpr int kDefaultLevels = 12;
constexpr int kDefaultPurifications = 5;

std::string trim(std::string_view s) {
  auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string_view::npos) return {};
  auto end = s.find_last_not_of(" \t\r");
  return std::string(s.substr(begin, end - begin + 1));
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

double parse_number(const std::string& text, int line, const std::string& key) {
  double value = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto res = std::from_chars(first, last, value);
  // Only the signal speed may be infinite.
  const bool finite_ok = std::isfinite(value) || (key == "c" && value > 0.0);
  if (text.empty() || res.ec != std::errc() || res.ptr != last || !finite_ok)
    throw ConfigError(line, "malformed number '" + text + "' for " + key);
  return value;
}

int parse_count(const std::string& text, int line, const std::string& key) {
  int value = 0;
  const auto* last = text.data() + text.size();
  auto res = std::from_chars(text.data(), last, value);
  if (text.empty() || res.ec != std::errc() || res.ptr != last)
    throw ConfigError(line, "malformed integer '" + text + "' for " + key);
  return value;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  if (trim(text).empty()) return items;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    items.push_back(trim(std::string_view(text).substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return items;
}

double* numeric_field(RunSpec& spec, const std::string& key) {
  NoiseParams& p = spec.config.params;
  static const std::map<std::string, double NoiseParams::*> params{
      {"gamma", &NoiseParams::gamma}, {"eta", &NoiseParams::eta}, {"omega", &NoiseParams::omega},
      {"omega_zz", &NoiseParams::omega_zz}, {"tau", &NoiseParams::tau}, {"t_me", &NoiseParams::t_me},
      {"t0", &NoiseParams::t0}, {"c", &NoiseParams::c}};
  if (auto it = params.find(key); it != params.end()) return &(p.*(it->second));
  if (key == "f0") return &spec.config.f0;
  if (key == "l0") return &spec.config.l0;
  return nullptr;
}

}  // namespace

bool is_sweepable(const std::string& key) {
  RunSpec probe;
  return numeric_field(probe, key) != nullptr;
}

RunSpec with_value(const RunSpec& spec, const std::string& key, double value) {
  RunSpec out = spec;
  double* field = numeric_field(out, key);
  if (!field) throw ConfigError(0, "key '" + key + "' cannot be swept");
  *field = value;
  return out;
}

RunSpec parse_config(std::string_view text) {
  RunSpec spec;
  std::optional<std::pair<int, std::string>> levels_entry, l_entry, k_entry, transfer_entry, purify_entry;
  std::optional<int> sweep_values_line;
  std::map<std::string, int> seen;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(line_no, "expected key=value");
    const std::string key = lower(trim(std::string_view(line).substr(0, eq)));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (seen.count(key)) throw ConfigError(line_no, "duplicate key '" + key + "'");
    seen[key] = line_no;

    if (key == "command") {
      static const std::map<std::string, Command> commands{{"transfer", Command::kTransfer},
                                                           {"swap", Command::kSwap},
                                                           {"purify", Command::kPurify},
                                                           {"repeater", Command::kRepeater},
                                                           {"timing", Command::kTiming}};
      auto it = commands.find(lower(value));
      if (it == commands.end()) throw ConfigError(line_no, "unknown command '" + value + "'");
      spec.command = it->second;
    } else if (key == "kind") {
      const std::string v = lower(value);
      if (v == "atom") {
        spec.config.kind = QubitKind::kAtom;
      } else if (v == "dfs") {
        spec.config.kind = QubitKind::kDfs;
      } else {
        throw ConfigError(line_no, "kind must be atom or dfs");
      }
    } else if (key == "family") {
      const std::string v = lower(value);
      if (v == "werner") {
        spec.config.family = StateFamily::kWerner;
      } else if (v == "binary") {
        spec.config.family = StateFamily::kBinary;
      } else {
        throw ConfigError(line_no, "family must be werner or binary");
      }
    } else if (key == "levels") {
      levels_entry = {{line_no, value}};
    } else if (key == "l") {
      l_entry = {{line_no, value}};
    } else if (key == "k") {
      k_entry = {{line_no, value}};
    } else if (key == "transfer") {
      transfer_entry = {{line_no, lower(value)}};
    } else if (key == "purify") {
      purify_entry = {{line_no, lower(value)}};
    } else if (key == "sweep_key") {
      if (!value.empty() && !is_sweepable(value)) throw ConfigError(line_no, "key '" + value + "' cannot be swept");
      spec.sweep_key = value;
    } else if (key == "sweep_values") {
      sweep_values_line = line_no;
      for (const auto& item : split_list(value)) spec.sweep_values.push_back(parse_number(item, line_no, key));
    } else if (key == "out") {
      spec.out = value;
    } else if (double* field = numeric_field(spec, key)) {
      *field = parse_number(value, line_no, key);
    } else {
      throw ConfigError(line_no, "unknown key '" + key + "'");
    }
  }

  // omega_zz defaults to a tenth of omega.
  if (seen.count("omega") && !seen.count("omega_zz")) spec.config.params.omega_zz = 0.1 * spec.config.params.omega;

  int levels = kDefaultLevels;
  if (levels_entry) {
    levels = parse_count(levels_entry->second, levels_entry->first, "levels");
    if (levels < 1) throw ConfigError(levels_entry->first, "levels must be at least 1");
  }
  auto parse_levels_list = [&](const std::optional<std::pair<int, std::string>>& entry, const char* name,
                               std::vector<int> fallback) {
    if (!entry) return fallback;
    std::vector<int> values;
    for (const auto& item : split_list(entry->second)) {
      const int v = parse_count(item, entry->first, name);
      if (v < 0) throw ConfigError(entry->first, std::string(name) + " entries must be non-negative");
      values.push_back(v);
    }
    if (values.size() != static_cast<std::size_t>(levels))
      throw ConfigError(entry->first, std::string(name) + " has " + std::to_string(values.size()) +
                                          " entries but levels = " + std::to_string(levels));
    return values;
  };
  std::vector<int> default_l(static_cast<std::size_t>(levels), 1);
  default_l[0] = 0;
  spec.config.levels = levels;
  spec.config.connections = parse_levels_list(l_entry, "L", default_l);
  spec.config.purifications =
      parse_levels_list(k_entry, "K", std::vector<int>(static_cast<std::size_t>(levels), kDefaultPurifications));

  const bool atoms = spec.config.kind == QubitKind::kAtom;
  spec.transfer = atoms ? TransferKind::kAtomAtom : TransferKind::kDfsDfs;
  spec.purify = atoms ? PurifyKind::kAtomAtom : PurifyKind::kDfsDfs;
  if (transfer_entry) {
    const auto& v = transfer_entry->second;
    if (v == "atom-atom") {
      spec.transfer = TransferKind::kAtomAtom;
    } else if (v == "atom-dfs") {
      spec.transfer = TransferKind::kAtomDfs;
    } else if (v == "dfs-dfs") {
      spec.transfer = TransferKind::kDfsDfs;
    } else {
      throw ConfigError(transfer_entry->first, "transfer must be atom-atom, atom-dfs or dfs-dfs");
    }
  }
  if (purify_entry) {
    const auto& v = purify_entry->second;
    if (v == "atom-atom") {
      spec.purify = PurifyKind::kAtomAtom;
    } else if (v == "aux-dfs") {
      spec.purify = PurifyKind::kAuxDfs;
    } else if (v == "dfs-dfs") {
      spec.purify = PurifyKind::kDfsDfs;
    } else {
      throw ConfigError(purify_entry->first, "purify must be atom-atom, aux-dfs or dfs-dfs");
    }
  }

  if (sweep_values_line && spec.sweep_key.empty())
    throw ConfigError(*sweep_values_line, "sweep_values given without sweep_key");

  try {
    spec.config.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(0, e.what());
  }
  for (double v : spec.sweep_values) {
    try {
      with_value(spec, spec.sweep_key, v).config.validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(sweep_values_line.value_or(0), e.what());
    }
  }
  return spec;
}

}  // namespace qrepsim
