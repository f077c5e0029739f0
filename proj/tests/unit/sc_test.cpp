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

#include <cmath>
#include <numbers>
#include <random>

#include "gtest/gtest.h"

using namespace cyclerec;

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

Pauli L(const char* s) { return Pauli::from_label(s); }

Cycle cx13() {
  Cycle c;
  c.id = "h";
  c.gates = {{"CX", {1, 3}}};
  return c;
}

ScAxis axis(int q, std::vector<double> sweep) {
  ScAxis a;
  a.name = "z" + std::to_string(q);
  a.qubit = q;
  a.axis = 'Z';
  a.sweep_deg = std::move(sweep);
  a.queries = {Pauli::single(5, q, 'X')};
  return a;
}

ScConfig spectator_config(std::vector<int> qubits, std::vector<double> sweep, uint64_t seed) {
  ScConfig c;
  c.cycle_id = "h";
  c.seed = seed;
  for (int q : qubits) c.axes.push_back(axis(q, sweep));
  return c;
}

NoiseModel crosstalk(std::vector<double> deg, double floor) {
  NoiseModel m = NoiseModel::noiseless(5, "h");
  PauliDistribution d = PauliDistribution::identity(5);
  int spectators[] = {0, 2, 4};
  for (size_t i = 0; i < deg.size(); ++i) {
    m.coherent_terms["h"].push_back({spectators[i], 'Z', deg[i] * kDeg});
    if (floor > 0) {
      PauliDistribution f(5);
      f.add(Pauli::identity(5), 1 - floor);
      f.add(Pauli::single(5, spectators[i], 'Z'), floor);
      d = compose(d, f);
    }
  }
  m.per_cycle_errors["h"] = d;
  return m;
}

}  // namespace

TEST(ParamGrid, NinePoints) {
  auto g = param_grid();
  ASSERT_EQ(g.size(), 9u);
  EXPECT_EQ(g.front(), 5.0);
  EXPECT_EQ(g[1], 0.0);
  EXPECT_EQ(g.back(), -35.0);
}

TEST(SensitivitySet, AnticommutingUnion) {
  std::vector<Pauli> expect;
  for (const char* l : {"XI", "ZI", "XX", "ZX", "XY", "ZY", "XZ", "ZZ", "IX", "IZ", "YX", "YZ"}) {
    expect.push_back(L(l));
  }
  std::sort(expect.begin(), expect.end());
  EXPECT_EQ(sensitivity_set({L("YI"), L("IY")}, CliffordOp::identity(2)), expect);
  EXPECT_EQ(sensitivity_set({L("YI")}, clifford_from_cycle({{"SWAP", {0, 1}}}, 2)), expect);
  EXPECT_EQ(expect.size(), 12u);
}

TEST(ValidateScConfig, Coverage) {
  Cycle c = cx13();
  auto ok = spectator_config({0}, param_grid(), 1);
  EXPECT_NO_THROW(validate_sc_config(ok, c, 5));
  auto commuting = ok;
  commuting.axes[0].queries = {Pauli::single(5, 0, 'Z')};
  EXPECT_THROW(validate_sc_config(commuting, c, 5), std::invalid_argument);
  auto short_grid = spectator_config({0}, {0.0, 1.0}, 1);
  EXPECT_THROW(validate_sc_config(short_grid, c, 5), std::invalid_argument);
  auto dup = spectator_config({0, 2}, param_grid(), 1);
  dup.axes[1].queries = dup.axes[0].queries;
  EXPECT_THROW(validate_sc_config(dup, c, 5), std::invalid_argument);
  auto ragged = spectator_config({0, 2}, param_grid(), 1);
  ragged.axes[1].sweep_deg.pop_back();
  EXPECT_THROW(validate_sc_config(ragged, c, 5), std::invalid_argument);
  auto inf = spectator_config({0}, {0.0, 1.0, INFINITY}, 1);
  EXPECT_THROW(validate_sc_config(inf, c, 5), std::invalid_argument);
  ScConfig none;
  EXPECT_THROW(validate_sc_config(none, c, 5), std::invalid_argument);
}

TEST(ObjectiveEstimate, NoiselessIsQueryCount) {
  auto cfg = spectator_config({0, 2, 4}, param_grid(), 2);
  auto pt = objective_estimate(cfg, cx13(), 5, NoiseModel::noiseless(5, "h"), 1);
  EXPECT_DOUBLE_EQ(pt.total.value, 3.0);
  for (const auto& v : pt.per_axis) EXPECT_DOUBLE_EQ(v.value, 1.0);
}

TEST(ObjectiveEstimate, CompensatedRotation) {
  auto cfg = spectator_config({0}, param_grid(), 3);
  NoiseModel m = crosstalk({20.0}, 0.0);
  for (double comp : {0.0, -10.0, -20.0}) {
    NoiseModel at = with_parameters(m, "h", cfg.axes, {comp});
    auto pt = objective_estimate(cfg, cx13(), 5, at, 1);
    double expect = 1 - 2 * std::pow(std::sin((20.0 + comp) * kDeg / 2), 2);
    EXPECT_NEAR(pt.total.value, expect, 3 * pt.total.sigma + 1e-12) << comp;
  }
}

TEST(ObjectiveEstimate, SumOverIndependentTerms) {
  auto cfg = spectator_config({0, 2, 4}, param_grid(), 4);
  NoiseModel m = crosstalk({4.8, 15.1, 20.8}, 0.003);
  auto pt = objective_estimate(cfg, cx13(), 5, m, 1);
  double sum = 0.0, var = 0.0;
  for (const auto& v : pt.per_axis) {
    sum += v.value;
    var += v.sigma * v.sigma;
  }
  EXPECT_NEAR(pt.total.value, sum, 1e-12);
  EXPECT_GT(pt.total.sigma, 0.0);
  double expect = 0.0;
  for (double d : {4.8, 15.1, 20.8}) {
    expect += (1 - 2 * 0.003) * (1 - 2 * std::pow(std::sin(d * kDeg / 2), 2));
  }
  EXPECT_NEAR(pt.total.value, expect, 3 * pt.total.sigma);
}

TEST(FitQuadratic, ExactParabola) {
  std::vector<double> x = param_grid(), y, s(x.size(), 0.0);
  for (double v : x) y.push_back(-0.002 * (v + 12.3) * (v + 12.3) + 2.9);
  auto f = fit_quadratic(x, y, s);
  ASSERT_TRUE(f.ok());
  EXPECT_NEAR(f.vertex, -12.3, 1e-10);
  EXPECT_NEAR(f.a, -0.002, 1e-12);
  EXPECT_FALSE(f.extrapolated);
  EXPECT_EQ(f.vertex_sigma, 0.0);

  std::vector<double> up;
  for (double v : x) up.push_back(0.001 * v * v);
  EXPECT_EQ(fit_quadratic(x, up, s).status, "not concave");
  EXPECT_EQ(fit_quadratic({1, 2}, {1, 2}, {0, 0}).status, "too few points");

  std::vector<double> far;
  for (double v : x) far.push_back(-0.001 * (v - 30) * (v - 30));
  EXPECT_TRUE(fit_quadratic(x, far, s).extrapolated);
}

TEST(FitQuadratic, VertexSigmaMatchesSpread) {
  std::vector<double> x = param_grid(), s(x.size(), 0.002);
  std::mt19937_64 gen(7);
  std::normal_distribution<double> noise(0.0, 0.002);
  std::vector<double> vertices;
  double reported = 0.0;
  for (int t = 0; t < 2000; ++t) {
    std::vector<double> y;
    for (double v : x) y.push_back(-1e-4 * (v + 15) * (v + 15) + noise(gen));
    auto f = fit_quadratic(x, y, s);
    ASSERT_TRUE(f.ok());
    vertices.push_back(f.vertex);
    reported = f.vertex_sigma;
  }
  double mean = 0, var = 0;
  for (double v : vertices) mean += v / vertices.size();
  for (double v : vertices) var += (v - mean) * (v - mean) / (vertices.size() - 1);
  EXPECT_NEAR(std::sqrt(var), reported, 0.1 * reported);
  EXPECT_NEAR(mean, -15.0, 0.1);
}

TEST(SweepAndFit, RecoversNegatedInjection) {
  auto cfg = spectator_config({0, 2, 4}, param_grid(), 5);
  auto sweep = sweep_and_fit(cfg, cx13(), 5, crosstalk({4.8, 15.1, 20.8}, 0.003));
  ASSERT_TRUE(sweep.all_ok());
  double truth[] = {-4.8, -15.1, -20.8};
  for (int i = 0; i < 3; ++i) {
    EXPECT_NEAR(sweep.theta_star_deg[i], truth[i], 1.0);
    EXPECT_GT(sweep.theta_star_sigma_deg[i], 0.0);
    EXPECT_EQ(sweep.axes[i].objective.size(), 9u);
    EXPECT_EQ(sweep.axes[i].fit.dof, 6);
  }
}

TEST(SweepAndFit, ReflectedGridGivesSameVertex) {
  NoiseModel m = crosstalk({15.0}, 0.0);
  auto grid = param_grid();
  std::vector<double> mirrored;
  for (double v : grid) mirrored.push_back(-30.0 - v);
  auto a = sweep_and_fit(spectator_config({0}, grid, 6), cx13(), 5, m);
  auto b = sweep_and_fit(spectator_config({0}, mirrored, 7), cx13(), 5, m);
  ASSERT_TRUE(a.all_ok() && b.all_ok());
  EXPECT_LT(std::abs(a.theta_star_deg[0] - b.theta_star_deg[0]),
            3 * std::hypot(a.theta_star_sigma_deg[0], b.theta_star_sigma_deg[0]));
}

TEST(SweepAndFit, JointAndSeparateSweepsAgree) {
  NoiseModel m = crosstalk({4.8, 15.1, 20.8}, 0.0);
  auto joint = sweep_and_fit(spectator_config({0, 2, 4}, param_grid(), 8), cx13(), 5, m);
  int qubits[] = {0, 2, 4};
  for (int i = 0; i < 3; ++i) {
    auto cfg = spectator_config({qubits[i]}, param_grid(), 9 + i);
    auto one = sweep_and_fit(cfg, cx13(), 5, m);
    EXPECT_LT(std::abs(one.theta_star_deg[0] - joint.theta_star_deg[i]),
              3 * std::hypot(one.theta_star_sigma_deg[0], joint.theta_star_sigma_deg[i]));
  }
}

TEST(SweepAndFit, FlatDirectionIsNotConcave) {
  // X rotations leave an X query untouched
  auto cfg = spectator_config({0}, param_grid(), 10);
  cfg.axes[0].axis = 'X';
  cfg.axes[0].targets = {Pauli::single(5, 0, 'Z')};
  auto sweep = sweep_and_fit(cfg, cx13(), 5, crosstalk({10.0}, 0.0));
  const auto& fit = sweep.axes[0].fit;
  EXPECT_TRUE(!fit.ok() || fit.extrapolated || fit.vertex_sigma > 5.0);
}

TEST(Calibrate, NoCoherentError) {
  auto cfg = spectator_config({0}, param_grid(), 11);
  NoiseModel m = crosstalk({0.0}, 0.003);
  auto cal = calibrate(cfg, cx13(), 5, m);
  ASSERT_TRUE(cal.ok());
  EXPECT_NEAR(cal.applied_deg[0], 0.0, 3 * cal.sweep.theta_star_sigma_deg[0]);
  const auto& t = cal.targets.at(0);
  EXPECT_LT(std::abs(t.before - t.after), 3 * std::hypot(t.before_sigma, t.after_sigma));
  EXPECT_NEAR(t.after, 0.003, 3 * t.after_sigma);
}

TEST(Calibrate, TargetedErrorsReduced) {
  auto cfg = spectator_config({0, 2, 4}, param_grid(), 12);
  auto cal = calibrate(cfg, cx13(), 5, crosstalk({4.8, 15.1, 20.8}, 0.003));
  ASSERT_TRUE(cal.ok());
  ASSERT_EQ(cal.targets.size(), 3u);
  EXPECT_GE(cal.aggregate_factor, 5.0);
  for (const auto& t : cal.targets) {
    EXPECT_LT(t.after, t.before);
    EXPECT_NEAR(t.after, 0.003, 3 * t.after_sigma + 5e-4) << t.target.to_string();
  }
  EXPECT_EQ(cal.calibrated.coherent_terms.at("h").size(), 6u);
}
