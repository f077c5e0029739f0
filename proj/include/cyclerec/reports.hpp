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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cyclerec/cer.hpp"
#include "cyclerec/pie.hpp"
#include "cyclerec/sc.hpp"
#include "cyclerec/sim.hpp"
#include "json.hpp"

namespace cyclerec {

inline constexpr const char* kPieSchema = "cyclerec.pie_result/1";
inline constexpr const char* kDecaySchema = "cyclerec.decays/1";
inline constexpr const char* kCerSchema = "cyclerec.cer_result/1";
inline constexpr const char* kHeatmapSchema = "cyclerec.heatmap/1";
inline constexpr const char* kScSchema = "cyclerec.sc_sweep/1";
inline constexpr const char* kSweepSchema = "cyclerec.sweep/1";
inline constexpr const char* kSimSchema = "cyclerec.samples/1";
inline constexpr const char* kManifestSchema = "cyclerec.manifest/1";

std::string sha256_hex(std::string_view data);

/// Stamped into every output file.
struct ReportHeader {
  std::string config_sha256;
  uint64_t seed = 0;
};

/// Shortest round-trip decimal; NaN renders as "NaN".
std::string format_number(double v);
std::string csv_field(const std::string& s);

/// Two-space indented JSON with a trailing newline.
std::string dump_json(const nlohmann::json& j);

struct ResolveOutcome {
  Pauli query;
  std::optional<ResolvedEstimate> estimate;
  std::string status = "ok";
};

nlohmann::json pie_to_json(const PieResult& pie, const Cycle& hard, int n,
                           const std::vector<ResolveOutcome>& resolved, const ReportHeader& h);
std::string decays_csv(const PieResult& pie, const ReportHeader& h);

nlohmann::json cer_result_json(const CerResult& r);
/// Whole-run file: one entry per cycle, reduced model included when the
/// tables allow it.
nlohmann::json cer_to_json(const std::vector<CerResult>& results, const ReportHeader& h);
std::string heatmap_csv(const HeatmapData& data, const ReportHeader& h);

nlohmann::json sc_to_json(const Calibration& cal, const ScConfig& config, const ReportHeader& h);
std::string sweep_csv(const ScSweep& sweep, const ReportHeader& h);

nlohmann::json samples_to_json(const std::vector<InstanceResult>& batch, const CbCircuit& base,
                               const ReportHeader& h);

}  // namespace cyclerec
