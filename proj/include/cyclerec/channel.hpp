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

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "cyclerec/clifford.hpp"
#include "cyclerec/pauli.hpp"

namespace cyclerec {

/// Sparse distribution over phaseless Paulis. Entries may go slightly
/// negative when produced by inversions of noisy data; validate() is the
/// gate for anything used as a physical channel.
class PauliDistribution {
 public:
  PauliDistribution() = default;
  explicit PauliDistribution(int n) : n_(n) {}
  PauliDistribution(int n, std::map<Pauli, double> entries);
  /// {I: 1}
  static PauliDistribution identity(int n);

  int num_qubits() const { return n_; }
  const std::map<Pauli, double>& entries() const { return entries_; }
  double prob(const Pauli& p) const;
  /// Accumulates into the phaseless key.
  void add(const Pauli& p, double w);
  double total() const;
  double min_prob() const;
  /// Throws unless every entry lies in [0,1] and the total is 1 within tol.
  void validate(double tol = 1e-12) const;
  /// Drops entries with |p| <= eps.
  PauliDistribution pruned(double eps = 0.0) const;

 private:
  int n_ = 1;
  std::map<Pauli, double> entries_;
};

struct FidelityTable {
  int n = 1;
  std::map<Pauli, double> entries;

  double at(const Pauli& p) const;
  bool has(const Pauli& p) const { return entries.count(p.phaseless()) != 0; }
};

struct CoherentTerm {
  int qubit = 0;
  char axis = 'Z';
  double angle = 0.0;  // radians, U = exp(-i angle/2 axis)
};

struct MarginalRow {
  OrbitSet orbit;
  double mu = 0.0;
  double sigma = 0.0;
  std::string status = "ok";
  /// Bootstrap replicates of mu, empty if unavailable.
  std::vector<double> replicates;
};

struct MarginalTable {
  QubitSet support;
  std::vector<MarginalRow> rows;

  double sum() const;
  const MarginalRow* find(const Pauli& p) const;
};

double fidelity_from_dist(const PauliDistribution& p, const Pauli& q);
FidelityTable fidelity_table(const PauliDistribution& p, const std::vector<Pauli>& queries);

inline constexpr int kMaxDenseInversionQubits = 3;
/// Inverse character transform over the complete table on P_n, n <= 3.
PauliDistribution dist_from_fidelities(const FidelityTable& f);

double marginal(const PauliDistribution& p, const Pauli& pa, const QubitSet& a);
/// Entire marginal distribution on P_A.
PauliDistribution marginal_distribution(const PauliDistribution& p, const QubitSet& a);

double marginal_from_fidelities(const FidelityTable& f, const Pauli& pa, const QubitSet& a);

/// Orbit-averaged fidelities indexed like partition.orbits(); returns the
/// marginal of orbits()[target].
double orbit_marginal_from_orbit_fidelities(const OrbitPartition& partition,
                                            const std::vector<double>& orbit_fids, int target);

/// Pluggable form of the orbit-marginal transform.
using OrbitMarginalFn =
    std::function<double(const OrbitPartition&, const std::vector<double>&, int)>;

/// Linear propagation of independent per-orbit standard errors.
double orbit_marginal_sigma(const OrbitPartition& partition,
                            const std::vector<double>& orbit_sigmas, int target);

/// Orbit sums of the exact marginals of p (ground truth for the transform).
std::vector<double> orbit_marginals_direct(const PauliDistribution& p,
                                           const OrbitPartition& partition);

enum class AverageMode { kArithmetic, kGeometric };

double orbit_average(const FidelityTable& f, const OrbitSet& orbit,
                     AverageMode mode = AverageMode::kArithmetic);
/// Exact orbit-average fidelities of p over every orbit of the partition.
std::vector<double> orbit_fidelities(const PauliDistribution& p, const OrbitPartition& partition,
                                     AverageMode mode = AverageMode::kArithmetic);

/// Result row of the reduced-model inversion.
struct ReducedTerm {
  QubitSet support;  // union of the sites this orbit touches
  OrbitSet orbit;
  double p = 0.0;
  double sigma = 0.0;
  bool violation = false;
};

struct ReducedModel {
  int n = 1;
  std::vector<ReducedTerm> terms;  // non-identity orbits, canonical order
  double identity_p = 1.0;
  double identity_sigma = 0.0;
  bool violation = false;

  /// Orbit-representative keyed distribution (identity included).
  PauliDistribution as_distribution() const;
};

/// Inputs: tables on each site A_i and on each union A_i u A_k. Each table's
/// rows must partition P of its support. A row is a violation when p < -3 sigma,
/// or when p < -exact_tol for rows whose sigma is zero.
ReducedModel weight2_inversion(const std::vector<QubitSet>& sites,
                               const std::vector<MarginalTable>& site_tables,
                               const std::vector<MarginalTable>& pair_tables, int n,
                               double exact_tol = 1e-9);

/// Exact marginal table of p on A for the orbit partition of h.
MarginalTable exact_marginal_table(const PauliDistribution& p, const QubitSet& a,
                                   const CliffordOp& h);

/// Single-qubit twirl of exp(-i angle/2 axis), embedded in n qubits.
PauliDistribution pauli_twirl_rotation(const CoherentTerm& term, int n = 1);
/// Exact twirl of the product of all terms; terms on the same qubit are
/// multiplied in list order into one 2x2 unitary before twirling.
PauliDistribution twirl_coherent_terms(const std::vector<CoherentTerm>& terms, int n);

PauliDistribution compose(const PauliDistribution& p, const PauliDistribution& q);

}  // namespace cyclerec
