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

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "cyclerec/cer.hpp"
#include "cyclerec/channel.hpp"
#include "cyclerec/circuit.hpp"
#include "cyclerec/pie.hpp"
#include "cyclerec/sim.hpp"

namespace cyclerec {

/// One tunable parameter: a rotation appended to the cycle's coherent terms,
/// the queries whose fidelity sum depends on it, and the errors it targets.
struct ScAxis {
  std::string name;
  int qubit = 0;
  char axis = 'Z';
  std::vector<double> sweep_deg;
  std::vector<Pauli> queries;
  std::vector<Pauli> targets;  // empty means the rotation axis on its qubit
};

struct ScConfig {
  std::string cycle_id;
  std::vector<ScAxis> axes;
  PieSettings pie;
  uint64_t seed = 0;
  int cer_k = 1;
  double threshold = kDefaultRowThreshold;
};

/// (1 - j) * step for j = 0 .. points-1.
std::vector<double> param_grid(double step_deg = 5.0, int points = 9);

std::vector<Pauli> axis_targets(const ScAxis& axis, int n);

/// Throws std::invalid_argument on an unusable configuration.
void validate_sc_config(const ScConfig& config, const Cycle& hard, int n);

/// Model with one compensation rotation per axis appended to the cycle.
NoiseModel with_parameters(const NoiseModel& model, const std::string& cycle_id,
                           const std::vector<ScAxis>& axes, const std::vector<double>& theta_deg);

/// Paulis on the support of orbit(S, H) anticommuting with at least one
/// orbit element, in canonical order.
std::vector<Pauli> sensitivity_set(const std::vector<Pauli>& s, const CliffordOp& h);

struct ObjectiveValue {
  double value = 0.0;
  double sigma = 0.0;
  std::string status = "ok";
  std::vector<double> replicates;
  bool ok() const { return status == "ok"; }
};

struct ObjectivePoint {
  std::vector<ObjectiveValue> per_axis;
  ObjectiveValue total;
};

/// Sum of PIE fidelity estimates over each axis' queries, for a model that
/// already carries the parameters.
ObjectivePoint objective_estimate(const ScConfig& config, const Cycle& hard, int n,
                                  const NoiseModel& model, uint64_t job);

/// y = a x^2 + b x + c with x in degrees.
struct QuadraticFit {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  std::array<std::array<double, 3>, 3> cov{};  // over (a, b, c)
  double chi2 = 0.0;
  int dof = 0;
  std::vector<double> residuals;
  double vertex = 0.0;
  double vertex_sigma = 0.0;
  bool extrapolated = false;
  std::string status = "ok";
  bool ok() const { return status == "ok"; }
};

/// Weighted least squares with weights 1/sigma^2, or unweighted when every
/// sigma is zero.
QuadraticFit fit_quadratic(const std::vector<double>& x, const std::vector<double>& y,
                           const std::vector<double>& sigma);

struct AxisSweep {
  ScAxis axis;
  std::vector<double> theta_deg;
  std::vector<ObjectiveValue> objective;
  QuadraticFit fit;
};

struct ScSweep {
  std::vector<AxisSweep> axes;
  std::vector<double> theta_star_deg;  // NaN where the fit failed
  std::vector<double> theta_star_sigma_deg;
  bool all_ok() const;
};

/// Runs PIE at every grid point (all axes move together) and fits each axis.
ScSweep sweep_and_fit(const ScConfig& config, const Cycle& hard, int n, const NoiseModel& model);

struct TargetReduction {
  std::string axis;
  Pauli target;
  QubitSet support;
  double before = 0.0;
  double before_sigma = 0.0;
  double after = 0.0;
  double after_sigma = 0.0;
  double factor = 0.0;
};

struct Calibration {
  ScSweep sweep;
  std::vector<double> applied_deg;  // theta* with failed axes left at 0
  NoiseModel calibrated;
  CerResult before;
  CerResult after;
  std::vector<TargetReduction> targets;
  double aggregate_before = 0.0;
  double aggregate_after = 0.0;
  double aggregate_factor = 0.0;
  bool ok() const { return sweep.all_ok() && before.all_ok() && after.all_ok(); }
};

Calibration calibrate(const ScConfig& config, const Cycle& hard, int n, const NoiseModel& model);

}  // namespace cyclerec
