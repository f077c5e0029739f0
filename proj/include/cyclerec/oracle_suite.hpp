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

// Equivalence checks between the tableau/channel code and the dense oracle.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cyclerec/channel.hpp"

namespace cyclerec {

inline constexpr double kOrbitMarginalTolerance = 1e-12;
inline constexpr double kStochasticTolerance = 1e-12;
inline constexpr double kFactorizationExactTolerance = 1e-12;
inline constexpr double kFactorizationSlope = 2.0;
inline constexpr double kFactorizationSlopeTolerance = 0.2;

struct OrbitMarginalReport {
  int gate_cases = 0;
  int distributions = 0;
  double max_error = 0.0;
};

/// Orbit marginals from orbit fidelities vs direct orbit sums, for every
/// named 1-2 qubit gate.
OrbitMarginalReport orbit_marginal_check(int distributions, uint64_t seed,
                          const OrbitMarginalFn& fn = orbit_marginal_from_orbit_fidelities);

struct StochasticReport {
  int trials = 0;
  double max_off_diagonal = 0.0;
};

/// phi(HE)^dag nu_eff for random Clifford H, E with gate-dependent noise.
StochasticReport stochastic_check(int trials, uint64_t seed);

struct FactorizationReport {
  std::vector<double> eps;
  std::vector<double> error;
  double slope = 0.0;
  double gate_independent_error = 0.0;
};

/// Factorization error of the averaged circuit against easy-cycle gate
/// dependence eps, n = 2, m = 3.
FactorizationReport factorization_check(uint64_t seed, std::vector<double> eps = {1e-1, 1e-2, 1e-3});

struct TableauReport {
  int cases = 0;
  double max_error = 0.0;
};

TableauReport tableau_check(int random_cycles, uint64_t seed);

struct OracleCheckLine {
  std::string name;
  bool pass = false;
  std::string detail;
};

std::vector<OracleCheckLine> oracle_check(uint64_t seed,
                                          const OrbitMarginalFn& fn =
                                              orbit_marginal_from_orbit_fidelities);

}  // namespace cyclerec
