// Copyright 2026 The Cyclerec Authors
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

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "cyclerec/cer.hpp"
#include "cyclerec/circuit.hpp"
#include "cyclerec/pie.hpp"
#include "cyclerec/sc.hpp"
#include "cyclerec/sim.hpp"

namespace cyclerec {

inline constexpr const char* kConfigSchema = "cyclerec.config/1";

/// Schema violations; the message names the offending key path.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PieRunConfig {
  std::string cycle_id;
  std::vector<Pauli> queries;
  PieSettings settings;
  std::vector<Pauli> resolve;
  ResolveSettings resolve_settings;
};

struct CerRunConfig {
  std::vector<std::string> cycles;
  CerConfig cer;  // cycle_id and seed filled per run
};

struct SimRunConfig {
  std::string cycle_id;
  int m = 1;
  std::vector<Gate> e0;
  std::vector<Gate> em;
  int randomizations = 1;
  int shots = 1;
};

struct ExperimentConfig {
  uint64_t seed = 0;
  int n = 1;
  std::vector<Cycle> cycles;
  NoiseModel model;
  std::string kind;  // pie | cer | sc | oracle-check | sim
  std::string output_dir;
  std::string sha256;  // of the raw config text

  PieRunConfig pie;
  CerRunConfig cer;
  ScConfig sc;
  SimRunConfig sim;

  const Cycle& cycle(const std::string& id) const;
};

/// Parses and validates a JSON configuration.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

/// Either "ZXX@{0,2,5}" or a full-register label such as "IZIXI".
Pauli parse_pauli_text(const std::string& text, int n);

}  // namespace cyclerec
