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

// Brute-force channel arithmetic on at most three qubits. Test oracle only.

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <vector>

#include "cyclerec/channel.hpp"
#include "cyclerec/clifford.hpp"
#include "cyclerec/pauli.hpp"
#include "cyclerec/rng.hpp"

namespace cyclerec::dense {

using Complex = std::complex<double>;
using Unitary = Eigen::MatrixXcd;

inline constexpr int kMaxQubits = 3;
inline constexpr int kMaxRcQubits = 2;
inline constexpr int kMaxRcLength = 3;

/// Real 4^n x 4^n matrix in the normalized Pauli basis. Basis index of a
/// Pauli is sum_q 4^q * code(q) with I=0, X=1, Y=2, Z=3.
struct TransferMatrix {
  int n = 1;
  Eigen::MatrixXd m;

  static TransferMatrix identity(int n);
  TransferMatrix operator*(const TransferMatrix& rhs) const;
};

int basis_index(const Pauli& p);
Pauli basis_pauli(int n, int index);

/// Dense matrix of a signed Pauli; computational basis bit q is qubit q.
Unitary pauli_matrix(const Pauli& p);

/// Written out from the textbook matrices, independent of the tableau rules.
Unitary gate_unitary(const Gate& g, int n);
Unitary cycle_unitary(const std::vector<Gate>& gates, int n);

/// exp(-i theta/2 axis) on one qubit of an n-qubit register.
Unitary rotation_unitary(const CoherentTerm& term, int n);

TransferMatrix ptm_of_unitary(const Unitary& u, double tol = 1e-10);
TransferMatrix ptm_of_kraus(const std::vector<Unitary>& kraus);
TransferMatrix ptm_of_pauli_channel(const PauliDistribution& p);

TransferMatrix pauli_twirl(const TransferMatrix& m);

double process_fidelity(const TransferMatrix& m);
double spectral_norm(const Eigen::MatrixXd& m);
double max_off_diagonal(const Eigen::MatrixXd& m);

/// Kraus set of a random CPTP map with `rank` operators; strength 0 gives
/// the identity channel.
std::vector<Unitary> random_kraus(int n, int rank, double strength, RngStream& rng);

/// Product of random single-qubit rotations on every qubit.
Unitary random_local_unitary(int n, RngStream& rng);

/// Small unitary error exp(-i eps K(e)) whose generator depends nonlinearly
/// on the transfer matrix of e, so it is not covariant under Pauli twirls.
Unitary gate_dependent_error(const Unitary& e, const Eigen::VectorXd& a, double eps);

/// Pauli-basis PTM conjugation U P U^dag as predicted by a tableau.
TransferMatrix ptm_of_clifford(const CliffordOp& c);

/// Noisy implementation of an easy cycle, keyed by its ideal unitary.
using EasyImpl = std::function<TransferMatrix(const Unitary& ideal)>;

/// C = E_m H E_{m-1} ... H E_0 with arbitrary easy cycles E_i.
struct DenseCircuit {
  int n = 1;
  Unitary hard;
  std::vector<Unitary> easy;  // m + 1 entries
  int m() const { return static_cast<int>(easy.size()) - 1; }
};

/// Exact average over all twirl tuples (T_0 .. T_{m-1}) of the
/// randomly compiled circuit with E_i' = T_i^c E_i T_{i-1}.
TransferMatrix average_rc_circuit(const DenseCircuit& c, const TransferMatrix& hard_impl,
                                  const EasyImpl& easy_impl);

/// Twirl-averaged adjusted dressed cycle phi(T_i) nu(H) nu(T_i^c E T_{i-1}) phi(T_{i-1})^dag.
TransferMatrix effective_dressed_cycle(const Unitary& h, const Unitary& e,
                                       const TransferMatrix& hard_impl, const EasyImpl& easy_impl);

/// Ordered product of effective dressed cycles for the whole circuit. The
/// first cycle has T_{-1} = I and the last easy cycle carries no correction.
TransferMatrix effective_product(const DenseCircuit& c, const TransferMatrix& hard_impl,
                                 const EasyImpl& easy_impl);

/// Z-basis outcome probabilities of channel `c` applied to |0^n>.
std::vector<double> outcome_probabilities(const TransferMatrix& c);

/// Independent bit flips on each qubit.
TransferMatrix bit_flip_channel(const std::vector<double>& rates);

}  // namespace cyclerec::dense
