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

#include "cyclerec/dense_oracle.hpp"

#include <cmath>
#include <numbers>

#include "cyclerec/sim.hpp"
#include "gtest/gtest.h"
#include "test_util.hpp"

using namespace cyclerec;
using namespace cyclerec::dense;

namespace {

Pauli L(const char* s) { return Pauli::from_label(s); }

constexpr double kDeg = std::numbers::pi / 180;

TransferMatrix ptm(const Unitary& u) { return ptm_of_unitary(u); }

TransferMatrix random_channel(int n, RngStream& rng, double strength = 0.2) {
  return ptm_of_kraus(random_kraus(n, 3, strength, rng));
}

}  // namespace

TEST(PauliMatrix, MatchesSymbolicProduct) {
  for (int n = 1; n <= 2; ++n) {
    auto all = enumerate_subgroup(QubitSet::range(n), n);
    for (const auto& p : all) {
      for (const auto& q : all) {
        Unitary prod = pauli_matrix(p) * pauli_matrix(q);
        Unitary sym = pauli_matrix(multiply(p, q));
        if (commutes(p, q)) {
          EXPECT_LT((prod - sym).norm(), 1e-14) << p.label() << " " << q.label();
        } else {
          double a = (prod - Complex(0, 1) * sym).norm(), b = (prod + Complex(0, 1) * sym).norm();
          EXPECT_LT(std::min(a, b), 1e-14);
        }
      }
    }
  }
  EXPECT_LT((pauli_matrix(L("Y")) - (Unitary(2, 2) << 0, Complex(0, -1), Complex(0, 1), 0).finished())
                .norm(),
            1e-15);
}

TEST(PtmOfUnitary, Identity) {
  for (int n = 1; n <= 3; ++n) {
    Unitary id = Unitary::Identity(1 << n, 1 << n);
    EXPECT_LT((ptm(id).m - TransferMatrix::identity(n).m).norm(), 1e-14);
  }
}

TEST(PtmOfUnitary, ZRotationBlock) {
  double th = 0.37;
  auto r = ptm(rotation_unitary({0, 'Z', th}, 1)).m;
  int x = basis_index(L("X")), y = basis_index(L("Y")), z = basis_index(L("Z"));
  EXPECT_NEAR(r(x, x), std::cos(th), 1e-14);
  EXPECT_NEAR(r(y, x), std::sin(th), 1e-14);
  EXPECT_NEAR(r(x, y), -std::sin(th), 1e-14);
  EXPECT_NEAR(r(y, y), std::cos(th), 1e-14);
  EXPECT_NEAR(r(z, z), 1.0, 1e-14);
}

TEST(PtmOfUnitary, RejectsNonUnitary) {
  Unitary a = Unitary::Identity(2, 2);
  a(0, 0) = 1.1;
  EXPECT_THROW(ptm_of_unitary(a), std::invalid_argument);
  EXPECT_THROW(ptm_of_unitary(Unitary::Identity(16, 16)), std::invalid_argument);
}

TEST(PtmOfUnitary, OrthogonalAndTracePreserving) {
  RngStream rng(1, StreamDomain::kTest, 1);
  for (int n = 1; n <= 3; ++n) {
    auto r = ptm(random_local_unitary(n, rng) * cycle_unitary(random_clifford_cycle(n, rng), n)).m;
    EXPECT_LT((r.transpose() * r - Eigen::MatrixXd::Identity(r.rows(), r.cols())).norm(), 1e-12);
    EXPECT_NEAR(r(0, 0), 1.0, 1e-14);
    for (int j = 1; j < r.cols(); ++j) EXPECT_NEAR(r(0, j), 0.0, 1e-14);
  }
  auto c = random_channel(2, rng).m;
  EXPECT_NEAR(c(0, 0), 1.0, 1e-12);
  for (int j = 1; j < c.cols(); ++j) EXPECT_NEAR(c(0, j), 0.0, 1e-12);
}

// Tableau conjugation agrees with the dense unitary on every Pauli.
TEST(TableauVsDense, EveryNamedGateExhaustive) {
  for (const auto& name : gate_vocabulary()) {
    std::vector<std::vector<int>> placements =
        is_two_qubit_gate(name) ? std::vector<std::vector<int>>{{0, 1}, {1, 0}}
                                : std::vector<std::vector<int>>{{0}, {1}, {0, 1}};
    for (const auto& qs : placements) {
      Gate g{name, qs};
      auto dense = ptm(gate_unitary(g, 2)).m;
      auto tab = ptm_of_clifford(gate_clifford(g, 2)).m;
      EXPECT_LT((dense - tab).norm(), 1e-12) << name;
    }
  }
}

TEST(TableauVsDense, RandomCycles) {
  RngStream rng(2, StreamDomain::kTest, 2);
  for (int t = 0; t < 100; ++t) {
    int n = 1 + static_cast<int>(rng.below(3));
    auto gates = random_clifford_cycle(n, rng);
    auto dense = ptm(cycle_unitary(gates, n)).m;
    auto tab = ptm_of_clifford(clifford_from_cycle(gates, n)).m;
    ASSERT_LT((dense - tab).norm(), 1e-12);
  }
}

TEST(TableauVsDense, CompositionHomomorphism) {
  RngStream rng(3, StreamDomain::kTest, 3);
  for (int t = 0; t < 50; ++t) {
    int n = 1 + static_cast<int>(rng.below(3));
    Unitary u = cycle_unitary(random_clifford_cycle(n, rng), n);
    Unitary v = cycle_unitary(random_clifford_cycle(n, rng), n);
    EXPECT_LT((ptm(u * v).m - ptm(u).m * ptm(v).m).norm(), 1e-12);
  }
}

TEST(PauliTwirl, DiagonalUnchanged) {
  RngStream rng(4, StreamDomain::kTest, 4);
  auto d = ptm_of_pauli_channel(cyclerec::testing::random_dense_distribution(2, rng));
  EXPECT_LT((pauli_twirl(d).m - d.m).norm(), 1e-14);
}

TEST(PauliTwirl, ZRotation) {
  for (double deg : {-20.8, 4.8, 15.1, 90.0}) {
    double th = deg * kDeg;
    auto t = pauli_twirl(ptm(rotation_unitary({0, 'Z', th}, 1))).m;
    EXPECT_NEAR(t(1, 1), std::cos(th), 1e-14);
    EXPECT_NEAR(t(2, 2), std::cos(th), 1e-14);
    EXPECT_NEAR(t(3, 3), 1.0, 1e-14);
    auto p = pauli_twirl_rotation({0, 'Z', th});
    EXPECT_NEAR(p.prob(L("Z")), (1 - std::cos(th)) / 2, 1e-14);
    EXPECT_NEAR(p.prob(L("Z")), std::pow(std::sin(th / 2), 2), 1e-14);
  }
}

TEST(PauliTwirl, RotationExampleValues) {
  auto p = pauli_twirl_rotation({0, 'Z', -20.8 * kDeg});
  auto t = pauli_twirl(ptm(rotation_unitary({0, 'Z', -20.8 * kDeg}, 1))).m;
  auto dist = dist_from_fidelities(
      {1, {{L("X"), t(1, 1)}, {L("Y"), t(2, 2)}, {L("Z"), t(3, 3)}}});
  EXPECT_NEAR(p.prob(L("I")), dist.prob(L("I")), 1e-14);
  EXPECT_NEAR(p.prob(L("Z")), dist.prob(L("Z")), 1e-14);
  EXPECT_NEAR(p.prob(L("Z")), 0.032588, 1e-6);
}

TEST(PauliTwirl, CoherentTermsMatchDense) {
  RngStream rng(5, StreamDomain::kTest, 5);
  static const char kAxes[] = {'X', 'Y', 'Z'};
  for (int t = 0; t < 100; ++t) {
    int n = 1 + static_cast<int>(rng.below(3));
    std::vector<CoherentTerm> terms;
    Unitary u = Unitary::Identity(1 << n, 1 << n);
    int k = 1 + static_cast<int>(rng.below(4));
    for (int j = 0; j < k; ++j) {
      CoherentTerm term{static_cast<int>(rng.below(n)), kAxes[rng.below(3)],
                        (rng.uniform() - 0.5) * std::numbers::pi};
      terms.push_back(term);
      u = rotation_unitary(term, n) * u;  // later terms act after earlier ones
    }
    auto twirled = pauli_twirl(ptm(u));
    auto analytic = ptm_of_pauli_channel(twirl_coherent_terms(terms, n));
    ASSERT_LT((twirled.m - analytic.m).norm(), 1e-12);
  }
}

TEST(PauliTwirl, EffectiveErrorMatchesDense) {
  NoiseModel m;
  m.n = 2;
  PauliDistribution s(2);
  s.add(L("II"), 0.99);
  s.add(L("IZ"), 0.01);
  m.per_cycle_errors["h"] = s;
  m.coherent_terms["h"] = {{0, 'Z', -20.8 * kDeg}};
  auto eff = ptm_of_pauli_channel(effective_error(m, "h"));
  auto dense =
      pauli_twirl(ptm_of_pauli_channel(s) * ptm(rotation_unitary({0, 'Z', -20.8 * kDeg}, 2)));
  EXPECT_LT((eff.m - dense.m).norm(), 1e-13);
}

TEST(PauliTwirl, RandomChannelBecomesDiagonal) {
  RngStream rng(6, StreamDomain::kTest, 6);
  for (int n = 1; n <= 3; ++n) {
    for (int t = 0; t < 5; ++t) {
      auto tw = pauli_twirl(random_channel(n, rng, 0.5));
      EXPECT_LE(max_off_diagonal(tw.m), 1e-12);
      EXPECT_LT((pauli_twirl(tw).m - tw.m).norm(), 1e-13);
    }
  }
}

TEST(PauliTwirl, DiagonalIsPauliFidelity) {
  RngStream rng(7, StreamDomain::kTest, 7);
  auto d = cyclerec::testing::random_dense_distribution(2, rng);
  auto m = ptm_of_pauli_channel(d).m;
  for (const auto& q : enumerate_subgroup(QubitSet::range(2), 2)) {
    EXPECT_NEAR(m(basis_index(q), basis_index(q)), fidelity_from_dist(d, q), 1e-14);
  }
}

TEST(ProcessFidelity, Examples) {
  EXPECT_NEAR(process_fidelity(TransferMatrix::identity(2)), 1.0, 1e-15);
  PauliDistribution p(1);
  p.add(L("I"), 0.99);
  p.add(L("Z"), 0.01);
  // (1 + .98 + .98 + 1) / 4
  EXPECT_NEAR(process_fidelity(ptm_of_pauli_channel(p)), 0.99, 1e-15);
  for (int n = 1; n <= 3; ++n) {
    PauliDistribution dep(n);
    for (const auto& q : enumerate_subgroup(QubitSet::range(n), n)) dep.add(q, 1.0 / (1 << 2 * n));
    EXPECT_NEAR(process_fidelity(ptm_of_pauli_channel(dep)), 1.0 / (1 << 2 * n), 1e-15);
  }
}

TEST(ProcessFidelity, EqualsIdentityMassForPauliChannels) {
  RngStream rng(8, StreamDomain::kTest, 8);
  for (int t = 0; t < 20; ++t) {
    int n = 1 + static_cast<int>(rng.below(3));
    auto d = cyclerec::testing::random_dense_distribution(n, rng);
    EXPECT_NEAR(process_fidelity(ptm_of_pauli_channel(d)), d.prob(Pauli::identity(n)), 1e-14);
  }
}

TEST(ProcessFidelity, KrausTraceFormula) {
  RngStream rng(9, StreamDomain::kTest, 9);
  auto ks = random_kraus(2, 3, 0.3, rng);
  double f = 0.0;
  for (const auto& k : ks) f += std::norm(k.trace());
  EXPECT_NEAR(process_fidelity(ptm_of_kraus(ks)), f / 16.0, 1e-13);
}

TEST(RandomKraus, TracePreserving) {
  RngStream rng(10, StreamDomain::kTest, 10);
  auto ks = random_kraus(3, 4, 0.4, rng);
  Unitary s = Unitary::Zero(8, 8);
  for (const auto& k : ks) s += k.adjoint() * k;
  EXPECT_LT((s - Unitary::Identity(8, 8)).norm(), 1e-12);
}

TEST(AverageRc, NoiselessIsIdealCircuit) {
  RngStream rng(11, StreamDomain::kTest, 11);
  int n = 2;
  DenseCircuit c{n, gate_unitary({"CX", {0, 1}}, n), {}};
  for (int i = 0; i <= 3; ++i) c.easy.push_back(random_local_unitary(n, rng));
  EasyImpl ideal = [](const Unitary& u) { return ptm_of_unitary(u); };
  auto avg = average_rc_circuit(c, ptm(c.hard), ideal);
  Unitary full = c.easy[0];
  for (int i = 1; i <= 3; ++i) full = c.easy[i] * c.hard * full;
  EXPECT_LT((avg.m - ptm(full).m).norm(), 1e-12);
}

TEST(AverageRc, GateIndependentEasyNoiseFactorsExactly) {
  RngStream rng(12, StreamDomain::kTest, 12);
  for (int n = 1; n <= 2; ++n) {
    for (int m = 1; m <= 3; ++m) {
      DenseCircuit c{n, n == 2 ? gate_unitary({"CZ", {0, 1}}, n) : gate_unitary({"S", {0}}, n), {}};
      for (int i = 0; i <= m; ++i) c.easy.push_back(random_local_unitary(n, rng));
      auto lambda = random_channel(n, rng, 0.3);
      auto hard = random_channel(n, rng, 0.3) * ptm(c.hard);
      EasyImpl impl = [&](const Unitary& u) { return lambda * ptm_of_unitary(u); };
      auto avg = average_rc_circuit(c, hard, impl);
      auto prod = effective_product(c, hard, impl);
      EXPECT_LT(spectral_norm(avg.m - prod.m), 1e-12) << "n=" << n << " m=" << m;
    }
  }
}

TEST(AverageRc, GateDependenceErrorIsSecondOrder) {
  RngStream rng(13, StreamDomain::kTest, 13);
  int n = 2;
  DenseCircuit c{n, gate_unitary({"CX", {0, 1}}, n), {}};
  for (int i = 0; i <= 3; ++i) c.easy.push_back(random_local_unitary(n, rng));
  // stochastic base noise: otherwise the cross term with the non-Pauli part
  // of the base channel is first order in eps
  auto lambda = ptm_of_pauli_channel(cyclerec::testing::random_sparse_distribution(n, 0.05, 6, rng));
  auto hard = ptm(c.hard) * ptm_of_pauli_channel(cyclerec::testing::random_sparse_distribution(n, 0.1, 8, rng));
  Eigen::VectorXd a = Eigen::VectorXd::Random(16);
  std::vector<double> le, lerr;
  for (double eps : {1e-1, 1e-2, 1e-3}) {
    EasyImpl impl = [&](const Unitary& u) {
      return lambda * ptm_of_unitary(gate_dependent_error(u, a, eps)) * ptm_of_unitary(u);
    };
    double err = spectral_norm(average_rc_circuit(c, hard, impl).m - effective_product(c, hard, impl).m);
    le.push_back(std::log10(eps));
    lerr.push_back(std::log10(err));
  }
  double mx = (le[0] + le[1] + le[2]) / 3, my = (lerr[0] + lerr[1] + lerr[2]) / 3;
  double sxy = 0, sxx = 0;
  for (int i = 0; i < 3; ++i) {
    sxy += (le[i] - mx) * (lerr[i] - my);
    sxx += (le[i] - mx) * (le[i] - mx);
  }
  EXPECT_NEAR(sxy / sxx, 2.0, 0.2);
}

TEST(AverageRc, SizeCaps) {
  DenseCircuit c{3, Unitary::Identity(8, 8), std::vector<Unitary>(2, Unitary::Identity(8, 8))};
  EasyImpl impl = [](const Unitary& u) { return ptm_of_unitary(u); };
  EXPECT_THROW(average_rc_circuit(c, TransferMatrix::identity(3), impl), std::invalid_argument);
  DenseCircuit d{1, Unitary::Identity(2, 2), std::vector<Unitary>(5, Unitary::Identity(2, 2))};
  EXPECT_THROW(average_rc_circuit(d, TransferMatrix::identity(1), impl), std::invalid_argument);
}

TEST(EffectiveDressedCycle, NoiselessIsIdeal) {
  int n = 2;
  Unitary h = gate_unitary({"CX", {0, 1}}, n), e = gate_unitary({"H", {1}}, n);
  EasyImpl ideal = [](const Unitary& u) { return ptm_of_unitary(u); };
  auto eff = effective_dressed_cycle(h, e, ptm(h), ideal);
  EXPECT_LT((eff.m - ptm(h * e).m).norm(), 1e-12);
}

// Arbitrary gate-dependent noise on Clifford cycles is tailored to a
// stochastic channel.
TEST(EffectiveDressedCycle, GateDependentNoiseBecomesStochastic) {
  RngStream rng(14, StreamDomain::kTest, 14);
  for (int t = 0; t < 10; ++t) {
    int n = 1 + static_cast<int>(rng.below(2));
    Unitary h = cycle_unitary(random_clifford_cycle(n, rng), n);
    Unitary e = cycle_unitary(random_clifford_cycle(n, rng), n);
    auto hard = random_channel(n, rng, 0.3) * ptm(h);
    std::vector<std::pair<TransferMatrix, TransferMatrix>> table;
    EasyImpl impl = [&](const Unitary& u) {
      auto ideal = ptm_of_unitary(u);
      for (const auto& [k, v] : table) {
        if ((k.m - ideal.m).norm() < 1e-9) return v * ideal;
      }
      table.emplace_back(ideal, random_channel(n, rng, 0.3));
      return table.back().second * ideal;
    };
    auto eff = effective_dressed_cycle(h, e, hard, impl);
    auto tailored = ptm(h * e).m.transpose() * eff.m;
    ASSERT_LE(max_off_diagonal(tailored), 1e-12);
    ASSERT_GT(table.size(), 1u);
  }
}

TEST(EffectiveDressedCycle, FixedEasyErrorMatchesTwirledSandwich) {
  RngStream rng(15, StreamDomain::kTest, 15);
  int n = 2;
  Unitary h = gate_unitary({"CX", {1, 0}}, n), e = gate_unitary({"S", {0, 1}}, n);
  auto nh = random_channel(n, rng, 0.3);
  auto lambda = random_channel(n, rng, 0.3);
  EasyImpl impl = [&](const Unitary& u) { return lambda * ptm_of_unitary(u); };
  auto eff = effective_dressed_cycle(h, e, nh * ptm(h), impl);
  auto expect = pauli_twirl(nh * ptm(h) * lambda * ptm(h.adjoint())) * ptm(h * e);
  EXPECT_LT((eff.m - expect.m).norm(), 1e-12);
}

TEST(OutcomeProbabilities, Examples) {
  auto p0 = outcome_probabilities(TransferMatrix::identity(2));
  EXPECT_NEAR(p0[0], 1.0, 1e-15);
  auto px = outcome_probabilities(ptm(gate_unitary({"X", {1}}, 2)));
  EXPECT_NEAR(px[2], 1.0, 1e-15);
  auto ph = outcome_probabilities(ptm(gate_unitary({"H", {0}}, 2)));
  EXPECT_NEAR(ph[0], 0.5, 1e-15);
  EXPECT_NEAR(ph[1], 0.5, 1e-15);
  auto pf = outcome_probabilities(bit_flip_channel({0.1, 0.3}));
  EXPECT_NEAR(pf[3], 0.03, 1e-15);
  EXPECT_NEAR(pf[1], 0.07, 1e-15);
}

// Sampler frequencies converge to the exact randomized-compiling average.
TEST(OracleVsSampler, TotalVariation) {
  RngStream rng(16, StreamDomain::kTest, 16);
  struct Case {
    int n, m;
    std::vector<Gate> hard, e0, em;
  };
  std::vector<Case> cases = {
      {1, 3, {{"S", {0}}}, {{"H", {0}}}, {{"H", {0}}}},
      {2, 2, {{"CX", {0, 1}}}, {{"H", {0}}}, {}},
      {2, 3, {{"CZ", {0, 1}}}, {{"H", {0, 1}}}, {{"H_YZ", {1}}}},
  };
  for (const auto& cs : cases) {
    int n = cs.n;
    Cycle hc;
    hc.id = "h";
    hc.gates = cs.hard;
    CbCircuit base = CbCircuit::make(n, hc, cs.e0, cs.em, cs.m);
    NoiseModel model;
    model.n = n;
    model.per_cycle_errors["h"] = cyclerec::testing::random_sparse_distribution(n, 0.15, 4, rng);
    PauliDistribution easy = cyclerec::testing::random_sparse_distribution(n, 0.05, 2, rng);
    model.easy_error = easy;
    model.meas_flip = std::vector<double>(n, 0.03);
    model.prep_flip = std::vector<double>(n, 0.02);

    auto batch = run_batch(base, model, 200, 500, 77);
    std::vector<double> freq(1 << n, 0.0);
    for (const auto& r : batch) {
      for (uint64_t s : r.outcomes) freq[s ^ r.instance.record.frame.x_bits()] += 1.0;
    }
    for (auto& f : freq) f /= 1e5;

    DenseCircuit dc{n, cycle_unitary(cs.hard, n), {}};
    dc.easy.push_back(cycle_unitary(cs.e0, n));
    for (int i = 1; i < cs.m; ++i) dc.easy.push_back(Unitary::Identity(1 << n, 1 << n));
    dc.easy.push_back(cycle_unitary(cs.em, n));
    auto le = ptm_of_pauli_channel(easy);
    EasyImpl impl = [&](const Unitary& u) { return le * ptm_of_unitary(u); };
    auto hard = ptm(dc.hard) * ptm_of_pauli_channel(model.per_cycle_errors["h"]);
    auto full = bit_flip_channel(model.meas_flip) * average_rc_circuit(dc, hard, impl) *
                bit_flip_channel(model.prep_flip);
    auto exact = outcome_probabilities(full);
    double tv = 0.0;
    for (size_t s = 0; s < exact.size(); ++s) tv += std::abs(exact[s] - freq[s]) / 2;
    EXPECT_LT(tv, 4.0 / std::sqrt(1e5)) << "n=" << n << " m=" << cs.m;
  }
}
