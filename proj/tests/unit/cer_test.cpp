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

#include "cyclerec/cer.hpp"

#include <cmath>
#include <numbers>

#include "gtest/gtest.h"
#include "test_util.hpp"

using namespace cyclerec;

namespace {

Pauli L(const char* s) { return Pauli::from_label(s); }

Cycle hard(std::vector<Gate> gates, std::string id = "h") {
  Cycle c;
  c.id = std::move(id);
  c.gates = std::move(gates);
  return c;
}

NoiseModel model_with(int n, std::vector<std::pair<const char*, double>> e) {
  NoiseModel m;
  m.n = n;
  PauliDistribution d(n);
  for (auto& [l, w] : e) d.add(L(l), w);
  m.per_cycle_errors["h"] = d;
  return m;
}

CerConfig config(int k, uint64_t seed = 1) {
  CerConfig c;
  c.k = k;
  c.seed = seed;
  c.cycle_id = "h";
  return c;
}

// Synthetic result holding exact tables, used to test the pure post-processing.
CerResult exact_result(const PauliDistribution& p, const Cycle& c, int k) {
  int n = p.num_qubits();
  CerResult r;
  r.cycle_id = c.id;
  r.hard = c;
  r.n = n;
  r.k = k;
  r.cycle_label = describe_cycle(c, n);
  r.supports = parallel_supports(c, n);
  for (const auto& u : support_unions(r.supports, k)) {
    SupportResult s;
    s.support = u;
    s.label = support_label(c, u, n);
    s.table = exact_marginal_table(p, u, c.clifford(n));
    r.tables.push_back(s);
  }
  return r;
}

const MarginalRow& row(const CerResult& r, const QubitSet& a, const Pauli& p) {
  const MarginalRow* found = r.at(a).table.find(p);
  if (!found) throw std::out_of_range("row missing");
  return *found;
}

}  // namespace

TEST(CerRun, NoiselessModel) {
  Cycle c = hard({{"CX", {1, 3}}});
  auto res = cer_run(config(1), c, 5, NoiseModel::noiseless(5, "h"));
  ASSERT_TRUE(res.all_ok());
  ASSERT_EQ(res.tables.size(), 4u);
  for (const auto& t : res.tables) {
    for (const auto& r : t.table.rows) {
      double expect = r.orbit.representative().is_identity() ? 1.0 : 0.0;
      EXPECT_NEAR(r.mu, expect, 1e-12) << t.label;
    }
  }
}

TEST(CerRun, InjectedLocalZErrors) {
  Cycle c = hard({{"CX", {0, 1}}, {"I", {2}}, {"CX", {3, 4}}});
  auto model = model_with(5, {{"IIIII", 0.97}, {"ZIIII", 0.02}, {"IIZII", 0.01}});
  auto res = cer_run(config(1, 2), c, 5, model);
  ASSERT_TRUE(res.all_ok());
  ASSERT_EQ(res.tables.size(), 3u);
  const auto& z0 = row(res, QubitSet{0, 1}, L("ZIIII"));
  EXPECT_EQ(z0.orbit.size(), 1);
  EXPECT_NEAR(z0.mu, 0.02, 3 * z0.sigma);
  const auto& z2 = row(res, QubitSet{2}, L("IIZII"));
  EXPECT_NEAR(z2.mu, 0.01, 3 * z2.sigma);
  EXPECT_GT(z2.sigma, 0.0);
  EXPECT_LT(z2.sigma, 0.003);
}

TEST(CerRun, UnionCount) {
  Cycle c = hard({{"CX", {0, 1}}, {"I", {2}}, {"CX", {3, 4}}});
  PieSettings quick;
  quick.randomizations = 2;
  quick.shots = 8;
  quick.bootstrap = 0;
  auto cfg = config(2);
  cfg.pie = quick;
  auto res = cer_run(cfg, c, 5, NoiseModel::noiseless(5, "h"));
  EXPECT_EQ(res.tables.size(), 3u);
  EXPECT_THROW(cer_run(config(4), c, 5, NoiseModel::noiseless(5, "h")), std::invalid_argument);
  EXPECT_THROW(cer_run(config(0), c, 5, NoiseModel::noiseless(5, "h")), std::invalid_argument);
}

TEST(CerRun, MatchesExactMarginalsAndCloses) {
  int n = 5;
  Cycle c = hard({{"CX", {1, 3}}});
  RngStream rng(3, StreamDomain::kTest, 3);
  NoiseModel model;
  model.n = n;
  model.per_cycle_errors["h"] = cyclerec::testing::random_sparse_distribution(n, 0.03, 12, rng);
  auto res = cer_run(config(1, 3), c, n, model);
  ASSERT_TRUE(res.all_ok());
  int rows = 0, within2 = 0;
  for (const auto& t : res.tables) {
    auto exact = exact_marginal_table(model.per_cycle_errors["h"], t.support, c.clifford(n));
    ASSERT_EQ(exact.rows.size(), t.table.rows.size());
    double total_var = 0.0;
    for (size_t i = 0; i < exact.rows.size(); ++i) {
      const auto& r = t.table.rows[i];
      EXPECT_EQ(r.orbit.members, exact.rows[i].orbit.members);
      EXPECT_LT(std::abs(r.mu - exact.rows[i].mu), 3 * r.sigma + 1e-12) << t.label;
      within2 += std::abs(r.mu - exact.rows[i].mu) < 2 * r.sigma + 1e-12;
      ++rows;
      total_var += r.sigma * r.sigma;
      EXPECT_EQ(r.replicates.size(), 200u);
    }
    EXPECT_NEAR(t.table.sum(), 1.0, 1e-12);
    EXPECT_LE(std::abs(t.table.sum() - 1.0), 3 * std::sqrt(total_var) + 1e-12);
  }
  EXPECT_GE(within2, static_cast<int>(0.8 * rows));
}

TEST(CerRun, FailedSupportStillReportsOthers) {
  // qubit 2 fully dephased: every Z-free query there decays to zero
  Cycle c = hard({{"CX", {0, 1}}, {"I", {2}}});
  auto model = model_with(3, {{"III", 0.5}, {"IIZ", 0.5}});
  auto res = cer_run(config(1, 4), c, 3, model);
  EXPECT_FALSE(res.all_ok());
  const auto& bad = res.at(QubitSet{2});
  EXPECT_FALSE(bad.ok());
  EXPECT_EQ(bad.status.rfind("failed", 0), 0u);
  for (const auto& r : bad.table.rows) {
    EXPECT_TRUE(std::isnan(r.mu));
    EXPECT_EQ(r.status, "unresolved");
  }
  const auto& good = res.at(QubitSet{0, 1});
  EXPECT_TRUE(good.ok());
  EXPECT_NEAR(good.table.sum(), 1.0, 1e-12);
}

TEST(CerRun, QueryCountIndependentOfRegister) {
  PieSettings quick;
  quick.randomizations = 2;
  quick.shots = 4;
  quick.bootstrap = 0;
  auto cfg = config(1);
  cfg.pie = quick;
  auto small = cer_run(cfg, hard({{"CX", {1, 3}}}), 5, NoiseModel::noiseless(5, "h"));
  auto big = cer_run(cfg, hard({{"CX", {1, 3}}}), 8, NoiseModel::noiseless(8, "h"));
  EXPECT_EQ(small.at(QubitSet{1, 3}).circuits, big.at(QubitSet{1, 3}).circuits);
  for (const auto& t : big.tables) {
    int groups = t.circuits / 2;
    EXPECT_LE(groups, static_cast<int>(std::pow(3, t.support.size())));
  }
  EXPECT_EQ(big.tables.size(), 7u);
}

TEST(CerRun, SpectatorCrosstalkDetected) {
  Cycle c = hard({{"CX", {1, 3}}});
  NoiseModel model = NoiseModel::noiseless(5, "h");
  model.coherent_terms["h"] = {{0, 'Z', 15.0 * std::numbers::pi / 180}};
  auto res = cer_run(config(1, 5), c, 5, model);
  const auto& z0 = row(res, QubitSet{0}, L("ZIIII"));
  double expect = std::pow(std::sin(7.5 * std::numbers::pi / 180), 2);
  EXPECT_NEAR(expect, 0.0170, 1e-4);
  EXPECT_NEAR(z0.mu, expect, 3 * z0.sigma);
  EXPECT_GT(z0.mu, 5 * z0.sigma);
}

TEST(Heatmap, AllRowsAtZeroThreshold) {
  Cycle c = hard({{"CX", {0, 1}}});
  auto p = PauliDistribution(2, {{L("II"), 0.95}, {L("IZ"), 0.02}, {L("ZZ"), 0.01},
                                 {L("XI"), 0.02}});
  auto r = exact_result(p, c, 1);
  auto hm = heatmap_table({r}, 0.0);
  ASSERT_EQ(hm.columns.size(), 1u);
  EXPECT_EQ(hm.columns[0].label, "(0,1): CX");
  size_t orbits = r.tables[0].table.rows.size();
  EXPECT_EQ(hm.rows.size(), orbits);
  EXPECT_EQ(hm.rows.front(), kInfidelityRow);
  EXPECT_NEAR(hm.columns[0].cells.at(kInfidelityRow).value, 0.05, 1e-14);
  EXPECT_NEAR(hm.columns[0].cells.at("{IZ, ZZ}").value, 0.03, 1e-14);
}

TEST(Heatmap, ThresholdDropsQuietRows) {
  Cycle c = hard({{"CX", {0, 1}}, {"I", {2}}});
  auto p = PauliDistribution(3, {{L("III"), 0.985},
                                 {L("IIZ"), 0.01},
                                 {L("XXX"), 0.001},
                                 {L("ZYX"), 0.001},
                                 {L("YIZ"), 0.003}});
  auto r1 = exact_result(p, c, 1);
  auto r2 = exact_result(p, c, 2);
  auto hm = heatmap_table({r1, r2}, 0.002);
  EXPECT_EQ(hm.columns.size(), 3u);
  for (const auto& label : hm.rows) {
    if (label == kInfidelityRow) continue;
    int w = 0;
    for (char ch : label) w += ch == 'X' || ch == 'Y' || ch == 'Z';
    bool braced = label.front() == '{';
    if (!braced) EXPECT_LT(w, 3) << label;
  }
  bool has_z = false;
  for (const auto& l : hm.rows) has_z = has_z || l == "Z";
  EXPECT_TRUE(has_z);
  EXPECT_EQ(heatmap_table({r1, r2}, 0.0).rows.size() > hm.rows.size(), true);
  EXPECT_THROW(heatmap_table({r1, exact_result(PauliDistribution::identity(2),
                                               hard({{"CX", {0, 1}}}), 1)},
                             0.0),
               std::invalid_argument);
}

TEST(ReducedModelFit, ExactInputs) {
  Cycle c = hard({{"CX", {0, 1}}, {"I", {2}}});
  auto id = reduced_model_fit(exact_result(PauliDistribution::identity(3), c, 2));
  EXPECT_NEAR(id.model.identity_p, 1.0, 1e-14);
  EXPECT_TRUE(id.violations.empty());

  auto clean = PauliDistribution(3, {{L("III"), 0.95}, {L("IIZ"), 0.02}, {L("XZI"), 0.02},
                                     {L("ZIX"), 0.01}});
  auto fit = reduced_model_fit(exact_result(clean, c, 2));
  EXPECT_TRUE(fit.violations.empty());
  auto sites_first = reduced_model_fit(exact_result(clean, c, 1), exact_result(clean, c, 2));
  ASSERT_EQ(sites_first.model.terms.size(), fit.model.terms.size());
  for (size_t i = 0; i < fit.model.terms.size(); ++i) {
    EXPECT_NEAR(fit.model.terms[i].p, sites_first.model.terms[i].p, 1e-14);
  }
  auto dist = fit.model.as_distribution();
  EXPECT_NEAR(dist.prob(L("IIZ")), 0.02, 1e-14);
  EXPECT_NEAR(dist.prob(L("ZIX")), 0.01, 1e-14);

  // weight 3 in sites only when every qubit is its own site
  Cycle three = hard({{"I", {0, 1, 2}}});
  auto dirty = PauliDistribution(3, {{L("III"), 0.97}, {L("IIZ"), 0.02}, {L("XXX"), 0.01}});
  EXPECT_TRUE(reduced_model_fit(exact_result(dirty, c, 2)).violations.empty());
  auto bad = reduced_model_fit(exact_result(dirty, three, 2));
  EXPECT_FALSE(bad.violations.empty());
  auto bd = bad.model.as_distribution();
  EXPECT_LE(bd.prob(L("XXI")), 0.01 + 1e-15);
  EXPECT_GT(bd.prob(L("XXI")), 0.01 - 3 * 0.01);

  EXPECT_THROW(reduced_model_fit(exact_result(clean, three, 1)), std::invalid_argument);
}

TEST(ReducedModelFit, SimulatedWeightTwoModel) {
  int n = 3;
  Cycle c = hard({{"CX", {0, 1}}, {"I", {2}}});
  auto model = model_with(n, {{"III", 0.955}, {"IIZ", 0.01}, {"ZII", 0.015}, {"XIZ", 0.01},
                              {"IXI", 0.01}});
  auto res = cer_run(config(2, 7), c, n, model);
  ASSERT_TRUE(res.all_ok());
  auto fit = reduced_model_fit(res);
  const auto& truth = model.per_cycle_errors["h"];
  OrbitPartition full(QubitSet::range(n), c.clifford(n));
  for (const auto& t : fit.model.terms) {
    double expect = 0.0;
    for (const auto& m : t.orbit.members) expect += truth.prob(m);
    EXPECT_LT(std::abs(t.p - expect), 3 * t.sigma + 1e-12) << t.orbit.label_on(t.support);
  }
  EXPECT_LT(std::abs(fit.model.identity_p - 0.955), 3 * fit.model.identity_sigma);
}
