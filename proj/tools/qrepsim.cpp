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

// qrepsim: batch front-end for the repeater simulator.
//
//   qrepsim <configfile> [--out PATH] [--workers N]
//
// Exit codes: 0 success, 2 configuration error, 3 numerical failure.
// QREPSIM_TOL overrides the CP/TP check tolerance (default 1e-10).

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "qrepsim/runner.hpp"

namespace {

constexpr int kConfigError = 2;
constexpr int kNumericalError = 3;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Density-matrix quantum repeater simulator"};
  std::string config_path;
  std::string out_path;
  unsigned workers = 1;
  app.add_option("configfile", config_path, "key=value run configuration")->required();
  app.add_option("--out", out_path, "CSV output path (overrides the config's out key; default stdout)");
  app.add_option("--workers", workers, "threads used for sweep points")->check(CLI::PositiveNumber);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  if (const char* tol = std::getenv("QREPSIM_TOL")) {
    char* end = nullptr;
    const double value = std::strtod(tol, &end);
    if (end == tol || *end != '\0' || !(value > 0.0)) {
      std::cerr << "qrepsim: QREPSIM_TOL must be a positive number\n";
      return kConfigError;
    }
    qrepsim::set_check_tolerance(value);
  }

  std::ifstream in(config_path);
  if (!in) {
    std::cerr << "qrepsim: cannot read " << config_path << "\n";
    return kConfigError;
  }
  std::stringstream text;
  text << in.rdbuf();

  try {
    const qrepsim::RunSpec spec = qrepsim::parse_config(text.str());
    const std::string csv = qrepsim::sweep_execute(spec, workers);
    const std::string target = out_path.empty() ? spec.out : out_path;
    if (target.empty()) {
      std::cout << csv;
    } else {
      std::ofstream out(target, std::ios::binary);
      if (!(out << csv)) {
        std::cerr << "qrepsim: cannot write " << target << "\n";
        return kConfigError;
      }
    }
  } catch (const qrepsim::ConfigError& e) {
    std::cerr << "qrepsim: " << config_path << ": " << e.what() << "\n";
    return kConfigError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "qrepsim: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::out_of_range& e) {
    std::cerr << "qrepsim: " << e.what() << "\n";
    return kConfigError;
  } catch (const qrepsim::NumericalError& e) {
    std::cerr << "qrepsim: numerical failure: " << e.what() << "\n";
    return kNumericalError;
  }
  return 0;
}
