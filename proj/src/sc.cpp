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

#include "cyclerec/sc.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <stdexcept>

#include "cyclerec/stats.hpp"

namespace cyclerec {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kMaxCondition = 1e10;
constexpr uint64_t kBeforeJobs = 1000;
constexpr uint64_t kAfterJobs = 2000;

double radians(double deg) { return deg * std::numbers::pi / 180.0; }

ObjectiveValue sum_estimates(const std::vector<const FidelityEstimate*>& parts) {
  ObjectiveValue out;
  double var = 0.0;
  size_t reps = parts.empty() ? 0 : parts.front()->replicates.size();
  for (const auto* e : parts) {
    if (!e->ok()) {
      out.status = "failed: " + e->status;
      out.value = out.sigma = kNaN;
      out.replicates.clear();
      return out;
    }
    out.value += e->f;
    var += e->sigma * e->sigma;
    if (e->replicates.size() != reps) reps = 0;
  }
  if (reps >= 2) {
    out.replicates.assign(reps, 0.0);
    for (const auto* e : parts) {
      for (size_t b = 0; b < reps; ++b) out.replicates[b] += e->replicates[b];
    }
    out.sigma = sample_sd(out.replicates);
  } else {
    out.sigma = std::sqrt(var);
  }
  return out;
}

}  // namespace

std::vector<double> param_grid(double step_deg, int points) {
  if (points < 1) throw std::invalid_argument("grid needs at least one point");
  std::vector<double> g;
  for (int j = 0; j < points; ++j) g.push_back((1 - j) * step_deg);
  return g;
}

std::vector<Pauli> axis_targets(const ScAxis& axis, int n) {
  if (!axis.targets.empty()) return axis.targets;
  return {Pauli::single(n, axis.qubit, axis.axis)};
}

void validate_sc_config(const ScConfig& config, const Cycle& hard, int n) {
  if (config.axes.empty()) throw std::invalid_argument("calibration needs at least one axis");
  CliffordOp h = hard.clifford(n);
  std::set<Pauli> seen;
  size_t points = config.axes.front().sweep_deg.size();
  for (const auto& ax : config.axes) {
    std::string who = "axis '" + ax.name + "'";
    if (ax.qubit < 0 || ax.qubit >= n) throw std::invalid_argument(who + ": qubit out of range");
    if (ax.axis != 'X' && ax.axis != 'Y' && ax.axis != 'Z') {
      throw std::invalid_argument(who + ": rotation axis must be X, Y or Z");
    }
    if (ax.sweep_deg.size() < 3) {
      throw std::invalid_argument(who + ": sweep needs at least 3 points");
    }
    if (ax.sweep_deg.size() != points) {
      throw std::invalid_argument(who + ": all axes must sweep the same number of points");
    }
    for (double v : ax.sweep_deg) {
      if (!std::isfinite(v)) throw std::invalid_argument(who + ": sweep values must be finite");
    }
    if (ax.queries.empty()) throw std::invalid_argument(who + ": no queries");
    for (const auto& q : ax.queries) {
      if (q.num_qubits() != n || q.is_identity()) {
        throw std::invalid_argument(who + ": bad query " + q.to_string());
      }
      if (!seen.insert(q.phaseless()).second) {
        throw std::invalid_argument(who + ": query " + q.to_string() +
                                    " is assigned to more than one axis");
      }
    }
    auto sens = sensitivity_set(ax.queries, h);
    for (const auto& t : axis_targets(ax, n)) {
      if (!std::binary_search(sens.begin(), sens.end(), t.phaseless())) {
        throw std::invalid_argument(who + ": target " + t.to_string() +
                                    " commutes with every query orbit element");
      }
    }
  }
}

NoiseModel with_parameters(const NoiseModel& model, const std::string& cycle_id,
                           const std::vector<ScAxis>& axes, const std::vector<double>& theta_deg) {
  if (theta_deg.size() != axes.size()) {
    throw std::invalid_argument("parameter vector does not match the axes");
  }
  NoiseModel out = model;
  auto& terms = out.coherent_terms[cycle_id];
  for (size_t i = 0; i < axes.size(); ++i) {
    terms.push_back({axes[i].qubit, axes[i].axis, radians(theta_deg[i])});
  }
  return out;
}

std::vector<Pauli> sensitivity_set(const std::vector<Pauli>& s, const CliffordOp& h) {
  std::set<Pauli> members;
  QubitSet region;
  for (const auto& q : s) {
    for (const auto& r : orbit(q, h).members) {
      members.insert(r);
      region = region | r.support();
    }
  }
  std::vector<Pauli> out;
  if (members.empty()) return out;
  int n = members.begin()->num_qubits();
  for (const auto& p : enumerate_subgroup(region, n)) {
    for (const auto& r : members) {
      if (!commutes(p, r)) {
        out.push_back(p);
        break;
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

ObjectivePoint objective_estimate(const ScConfig& config, const Cycle& hard, int n,
                                  const NoiseModel& model, uint64_t job) {
  std::vector<Pauli> all;
  for (const auto& ax : config.axes) all.insert(all.end(), ax.queries.begin(), ax.queries.end());
  PieResult pie = pie_oracle(all, hard, n, config.pie, model, config.seed, job);
  ObjectivePoint out;
  std::vector<const FidelityEstimate*> every;
  for (const auto& ax : config.axes) {
    std::vector<const FidelityEstimate*> parts;
    for (const auto& q : ax.queries) parts.push_back(&pie.for_query(q).estimate);
    every.insert(every.end(), parts.begin(), parts.end());
    out.per_axis.push_back(sum_estimates(parts));
  }
  out.total = sum_estimates(every);
  return out;
}

QuadraticFit fit_quadratic(const std::vector<double>& x, const std::vector<double>& y,
                           const std::vector<double>& sigma) {
  QuadraticFit fit;
  size_t k = x.size();
  if (y.size() != k || sigma.size() != k) throw std::invalid_argument("fit inputs differ in size");
  if (k < 3) {
    fit.status = "too few points";
    fit.vertex = fit.vertex_sigma = kNaN;
    return fit;
  }
  bool weighted = std::any_of(sigma.begin(), sigma.end(), [](double s) { return s > 0.0; });
  double floor = std::numeric_limits<double>::infinity();
  for (double s : sigma) {
    if (s > 0.0) floor = std::min(floor, s);
  }

  // centred and scaled abscissa keeps the normal equations well conditioned
  double lo = *std::min_element(x.begin(), x.end());
  double hi = *std::max_element(x.begin(), x.end());
  double mid = 0.5 * (lo + hi);
  double scale = hi > lo ? 0.5 * (hi - lo) : 1.0;
  Eigen::MatrixXd design(k, 3);
  Eigen::VectorXd rhs(k);
  Eigen::VectorXd w(k);
  for (size_t i = 0; i < k; ++i) {
    double u = (x[i] - mid) / scale;
    double s = weighted ? std::max(sigma[i], floor) : 1.0;
    w(i) = 1.0 / s;
    design(i, 0) = u * u * w(i);
    design(i, 1) = u * w(i);
    design(i, 2) = w(i);
    rhs(i) = y[i] * w(i);
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(design, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  if (sv(2) <= 0.0 || sv(0) / sv(2) > kMaxCondition) {
    fit.status = "ill-conditioned";
    fit.vertex = fit.vertex_sigma = kNaN;
    return fit;
  }
  Eigen::Vector3d beta = svd.solve(rhs);
  Eigen::Matrix3d cov_u = (design.transpose() * design).inverse();
  if (!weighted) cov_u.setZero();

  fit.dof = static_cast<int>(k) - 3;
  for (size_t i = 0; i < k; ++i) {
    double u = (x[i] - mid) / scale;
    double r = y[i] - (beta(0) * u * u + beta(1) * u + beta(2));
    fit.residuals.push_back(r);
    fit.chi2 += r * r * w(i) * w(i);
  }

  // back to degrees
  Eigen::Matrix3d t;
  double s2 = scale * scale;
  t << 1 / s2, 0, 0,
       -2 * mid / s2, 1 / scale, 0,
       mid * mid / s2, -mid / scale, 1;
  Eigen::Vector3d coef = t * beta;
  Eigen::Matrix3d cov = t * cov_u * t.transpose();
  fit.a = coef(0);
  fit.b = coef(1);
  fit.c = coef(2);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) fit.cov[i][j] = cov(i, j);
  }

  if (beta(0) >= 0.0) {
    fit.status = "not concave";
    fit.vertex = fit.vertex_sigma = kNaN;
    return fit;
  }
  double v = -beta(1) / (2 * beta(0));
  Eigen::Vector3d g(beta(1) / (2 * beta(0) * beta(0)), -1 / (2 * beta(0)), 0.0);
  fit.vertex = mid + scale * v;
  fit.vertex_sigma = scale * std::sqrt(std::max(0.0, g.dot(cov_u * g)));
  double spacing = (hi - lo) / static_cast<double>(k - 1);
  fit.extrapolated = fit.vertex < lo - spacing || fit.vertex > hi + spacing;
  return fit;
}

bool ScSweep::all_ok() const {
  return std::all_of(axes.begin(), axes.end(), [](const auto& a) { return a.fit.ok(); });
}

ScSweep sweep_and_fit(const ScConfig& config, const Cycle& hard, int n, const NoiseModel& model) {
  validate_sc_config(config, hard, n);
  size_t points = config.axes.front().sweep_deg.size();
  ScSweep out;
  for (const auto& ax : config.axes) out.axes.push_back({ax, {}, {}, {}});
  for (size_t j = 0; j < points; ++j) {
    std::vector<double> theta;
    for (const auto& ax : config.axes) theta.push_back(ax.sweep_deg[j]);
    NoiseModel at = with_parameters(model, hard.id, config.axes, theta);
    ObjectivePoint pt = objective_estimate(config, hard, n, at, 1 + j);
    for (size_t i = 0; i < config.axes.size(); ++i) {
      out.axes[i].theta_deg.push_back(theta[i]);
      out.axes[i].objective.push_back(pt.per_axis[i]);
    }
  }
  for (auto& ax : out.axes) {
    std::vector<double> x, y, s;
    for (size_t j = 0; j < ax.theta_deg.size(); ++j) {
      if (!ax.objective[j].ok()) continue;
      x.push_back(ax.theta_deg[j]);
      y.push_back(ax.objective[j].value);
      s.push_back(ax.objective[j].sigma);
    }
    ax.fit = fit_quadratic(x, y, s);
    out.theta_star_deg.push_back(ax.fit.vertex);
    out.theta_star_sigma_deg.push_back(ax.fit.vertex_sigma);
  }
  return out;
}

Calibration calibrate(const ScConfig& config, const Cycle& hard, int n, const NoiseModel& model) {
  Calibration cal;
  cal.sweep = sweep_and_fit(config, hard, n, model);
  for (const auto& ax : cal.sweep.axes) cal.applied_deg.push_back(ax.fit.ok() ? ax.fit.vertex : 0.0);
  cal.calibrated = with_parameters(model, hard.id, config.axes, cal.applied_deg);

  CerConfig cer;
  cer.cycle_id = hard.id;
  cer.k = config.cer_k;
  cer.pie = config.pie;
  cer.seed = config.seed;
  cer.threshold = config.threshold;
  cal.before = cer_run(cer, hard, n, model, kBeforeJobs);
  cal.after = cer_run(cer, hard, n, cal.calibrated, kAfterJobs);

  auto locate = [](const CerResult& r, const Pauli& p) -> const SupportResult& {
    const SupportResult* best = nullptr;
    for (const auto& t : r.tables) {
      if (p.support().subset_of(t.support) && (!best || t.support.size() < best->support.size())) {
        best = &t;
      }
    }
    if (!best) throw std::invalid_argument("no marginal table covers " + p.to_string());
    return *best;
  };
  for (const auto& ax : config.axes) {
    for (const auto& t : axis_targets(ax, n)) {
      const SupportResult& b = locate(cal.before, t);
      const SupportResult& a = locate(cal.after, t);
      const MarginalRow* rb = b.table.find(t);
      const MarginalRow* ra = a.table.find(t);
      TargetReduction red;
      red.axis = ax.name;
      red.target = t;
      red.support = b.support;
      red.before = rb->mu;
      red.before_sigma = rb->sigma;
      red.after = ra->mu;
      red.after_sigma = ra->sigma;
      red.factor = red.before / red.after;
      cal.aggregate_before += red.before;
      cal.aggregate_after += red.after;
      cal.targets.push_back(red);
    }
  }
  cal.aggregate_factor = cal.aggregate_before / cal.aggregate_after;
  return cal;
}

}  // namespace cyclerec
