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

#include "cyclerec/oracle_suite.hpp"

#include <cmath>
#include <cstdio>
#include <utility>

#include "cyclerec/dense_oracle.hpp"
#include "cyclerec/random_models.hpp"

namespace cyclerec {

namespace {

using dense::TransferMatrix;
using dense::Unitary;

struct GateCase {
  Gate gate;
  int width;
};

std::vector<GateCase> named_gate_cases() {
  std::vector<GateCase> out;
  for (const auto& name : gate_vocabulary()) {
    if (is_two_qubit_gate(name)) {
      out.push_back({{name, {0, 1}}, 2});
      if (name == "CX") out.push_back({{name, {1, 0}}, 2});
    } else {
      out.push_back({{name, {0}}, 1});
    }
  }
  return out;
}

// Memoized random channel per distinct easy-cycle transfer matrix.
class GateDependentNoise {
 public:
  GateDependentNoise(int n, RngStream& rng) : n_(n), rng_(rng) {}
  TransferMatrix operator()(const Unitary& u) {
    auto ideal = dense::ptm_of_unitary(u);
    for (const auto& [k, v] : table_) {
      if ((k.m - ideal.m).norm() < 1e-9) return v * ideal;
    }
    table_.emplace_back(ideal, dense::ptm_of_kraus(dense::random_kraus(n_, 3, 0.3, rng_)));
    return table_.back().second * ideal;
  }

 private:
  int n_;
  RngStream& rng_;
  std::vector<std::pair<TransferMatrix, TransferMatrix>> table_;
};

std::string fmt(const char* f, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

}  // namespace

OrbitMarginalReport orbit_marginal_check(int distributions, uint64_t seed, const OrbitMarginalFn& fn) {
  OrbitMarginalReport rep;
  rep.distributions = distributions;
  RngStream rng(seed, StreamDomain::kModel, 3);
  for (const auto& gc : named_gate_cases()) {
    int n = gc.width + 1;  // one spectator qubit outside the support
    QubitSet a = QubitSet::range(gc.width);
    OrbitPartition part(a, gate_clifford(gc.gate, n), gc.gate.name);
    for (int d = 0; d < distributions; ++d) {
      auto p = random_dense_distribution(n, rng);
      auto fids = orbit_fidelities(p, part);
      auto direct = orbit_marginals_direct(p, part);
      for (size_t t = 0; t < direct.size(); ++t) {
        double got = fn(part, fids, static_cast<int>(t));
        rep.max_error = std::max(rep.max_error, std::abs(got - direct[t]));
      }
    }
    ++rep.gate_cases;
  }
  return rep;
}

StochasticReport stochastic_check(int trials, uint64_t seed) {
  StochasticReport rep;
  rep.trials = trials;
  RngStream rng(seed, StreamDomain::kModel, 2);
  for (int t = 0; t < trials; ++t) {
    int n = 1 + t % 2;
    Unitary h = dense::cycle_unitary(random_clifford_cycle(n, rng), n);
    Unitary e = dense::cycle_unitary(random_clifford_cycle(n, rng), n);
    auto hard = dense::ptm_of_kraus(dense::random_kraus(n, 3, 0.3, rng)) * dense::ptm_of_unitary(h);
    GateDependentNoise noise(n, rng);
    dense::EasyImpl impl = [&](const Unitary& u) { return noise(u); };
    auto eff = dense::effective_dressed_cycle(h, e, hard, impl);
    Eigen::MatrixXd tailored = dense::ptm_of_unitary(h * e).m.transpose() * eff.m;
    rep.max_off_diagonal = std::max(rep.max_off_diagonal, dense::max_off_diagonal(tailored));
  }
  return rep;
}

FactorizationReport factorization_check(uint64_t seed, std::vector<double> eps) {
  FactorizationReport rep;
  rep.eps = std::move(eps);
  RngStream rng(seed, StreamDomain::kModel, 1);
  int n = 2, m = 3;
  dense::DenseCircuit c{n, dense::gate_unitary({"CX", {0, 1}}, n), {}};
  for (int i = 0; i <= m; ++i) c.easy.push_back(dense::random_local_unitary(n, rng));

  // gate-independent but otherwise arbitrary easy and hard noise
  auto lambda_g = dense::ptm_of_kraus(dense::random_kraus(n, 3, 0.3, rng));
  auto hard_g = dense::ptm_of_kraus(dense::random_kraus(n, 3, 0.3, rng)) * dense::ptm_of_unitary(c.hard);
  dense::EasyImpl gi = [&](const Unitary& u) { return lambda_g * dense::ptm_of_unitary(u); };
  rep.gate_independent_error = dense::spectral_norm(dense::average_rc_circuit(c, hard_g, gi).m -
                                                    dense::effective_product(c, hard_g, gi).m);

  // stochastic base noise plus a gate-dependent coherent perturbation
  auto lambda = dense::ptm_of_pauli_channel(random_sparse_distribution(n, 0.05, 6, rng));
  auto hard = dense::ptm_of_unitary(c.hard) *
              dense::ptm_of_pauli_channel(random_sparse_distribution(n, 0.1, 8, rng));
  Eigen::VectorXd a(16);
  for (int i = 0; i < 16; ++i) a(i) = 2 * rng.uniform() - 1;
  std::vector<double> lx, ly;
  for (double e : rep.eps) {
    dense::EasyImpl impl = [&](const Unitary& u) {
      return lambda * dense::ptm_of_unitary(dense::gate_dependent_error(u, a, e)) *
             dense::ptm_of_unitary(u);
    };
    double err = dense::spectral_norm(dense::average_rc_circuit(c, hard, impl).m -
                                      dense::effective_product(c, hard, impl).m);
    rep.error.push_back(err);
    lx.push_back(std::log10(e));
    ly.push_back(std::log10(err));
  }
  double mx = 0, my = 0;
  for (size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i] / lx.size();
    my += ly[i] / ly.size();
  }
  double sxy = 0, sxx = 0;
  for (size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  rep.slope = sxx > 0 ? sxy / sxx : 0.0;
  return rep;
}

TableauReport tableau_check(int random_cycles, uint64_t seed) {
  TableauReport rep;
  auto check = [&](const std::vector<Gate>& gates, int n) {
    auto d = dense::ptm_of_unitary(dense::cycle_unitary(gates, n)).m;
    auto t = dense::ptm_of_clifford(clifford_from_cycle(gates, n)).m;
    rep.max_error = std::max(rep.max_error, (d - t).cwiseAbs().maxCoeff());
    ++rep.cases;
  };
  for (const auto& gc : named_gate_cases()) check({gc.gate}, 2);
  RngStream rng(seed, StreamDomain::kModel, 4);
  for (int t = 0; t < random_cycles; ++t) {
    int n = 1 + t % 3;
    check(random_clifford_cycle(n, rng), n);
  }
  return rep;
}

std::vector<OracleCheckLine> oracle_check(uint64_t seed, const OrbitMarginalFn& fn) {
  std::vector<OracleCheckLine> out;
  auto tab = tableau_check(100, seed);
  out.push_back({"tableau_vs_dense", tab.max_error < 1e-12,
                 std::to_string(tab.cases) + " cycles, " + fmt("max |diff| %.3g", tab.max_error)});
  auto fac = factorization_check(seed);
  bool fac_ok = std::abs(fac.slope - kFactorizationSlope) <= kFactorizationSlopeTolerance &&
                fac.gate_independent_error < kFactorizationExactTolerance;
  out.push_back({"factorization_scaling", fac_ok,
                 fmt("slope %.3f, gate-independent error %.3g", fac.slope,
                     fac.gate_independent_error)});
  auto sto = stochastic_check(20, seed);
  out.push_back({"dressed_cycle_stochastic", sto.max_off_diagonal <= kStochasticTolerance,
                 std::to_string(sto.trials) + " trials, " +
                     fmt("max off-diagonal %.3g", sto.max_off_diagonal)});
  auto orb = orbit_marginal_check(1000, seed, fn);
  out.push_back({"orbit_marginals", orb.max_error <= kOrbitMarginalTolerance,
                 std::to_string(orb.gate_cases) + " gates x " + std::to_string(orb.distributions) +
                     " distributions, " + fmt("max |diff| %.3g", orb.max_error)});
  return out;
}

}  // namespace cyclerec
