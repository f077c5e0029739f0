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
#include <map>
#include <string>
#include <vector>

#include "cyclerec/channel.hpp"
#include "cyclerec/circuit.hpp"
#include "cyclerec/pie.hpp"
#include "cyclerec/sim.hpp"

namespace cyclerec {

inline constexpr double kDefaultRowThreshold = 0.001;

struct CerConfig {
  std::string cycle_id;
  int k = 2;
  PieSettings pie;
  uint64_t seed = 0;
  double threshold = kDefaultRowThreshold;
};

/// Marginal table of one union of supports, with the orbit fidelities it was
/// built from (identity orbit included, f = 1).
struct SupportResult {
  QubitSet support;
  std::string label;
  MarginalTable table;
  std::vector<FidelityEstimate> fidelities;  // parallel to table.rows
  std::string status = "ok";
  int circuits = 0;

  bool ok() const { return status == "ok"; }
};

struct CerResult {
  std::string cycle_id;
  std::string cycle_label;
  Cycle hard;
  int n = 1;
  int k = 1;
  std::vector<QubitSet> supports;  // A_0 .. A_{s-1}
  std::vector<SupportResult> tables;
  CerConfig config;

  bool all_ok() const;
  const SupportResult& at(const QubitSet& a) const;
};

/// Runs PIE on every orbit of every union of k supports and converts the
/// orbit fidelities into marginal tables. Failed estimates leave the affected
/// table unresolved; other supports are still processed. `job_offset` keeps
/// the random streams of separate runs under one seed apart.
CerResult cer_run(const CerConfig& config, const Cycle& hard, int n, const NoiseModel& model,
                  uint64_t job_offset = 0);

struct HeatmapCell {
  double value = 0.0;
  double sigma = 0.0;
  std::string status = "ok";
};

struct HeatmapColumn {
  std::string cycle_id;
  std::string cycle_label;
  QubitSet support;
  std::string label;                          // "(0,1): CX"
  std::map<std::string, HeatmapCell> cells;  // by row label
};

inline constexpr const char* kInfidelityRow = "1 - mu(I)";

struct HeatmapData {
  int n = 1;
  double threshold = kDefaultRowThreshold;
  std::vector<std::string> rows;  // infidelity row first, then by weight and label
  std::vector<HeatmapColumn> columns;
};

/// One column per marginal table, grouped by cycle in input order. The
/// identity orbit is shown as the infidelity 1 - mu(I). Rows whose every
/// value is below the threshold are dropped.
HeatmapData heatmap_table(const std::vector<CerResult>& results, double threshold);

struct ReducedFit {
  ReducedModel model;
  std::vector<std::string> violations;
};

/// Weight-2 reconstruction from a k = 2 result. Site tables are obtained by
/// marginalizing the union tables. A single-support result needs only k = 1.
ReducedFit reduced_model_fit(const CerResult& result);
/// Same, with the site tables taken from a separate k = 1 result.
ReducedFit reduced_model_fit(const CerResult& sites, const CerResult& pairs);

}  // namespace cyclerec
