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

#include <string>
#include <unordered_map>
#include <vector>

#include "cyclerec/pauli.hpp"

namespace cyclerec {

/// A named gate on an ordered list of qubits. Two-qubit gates take exactly two
/// qubits, (control, target) for CX. A single-qubit gate listed on several
/// qubits acts on each of them in parallel.
struct Gate {
  std::string name;
  std::vector<int> qubits;

  QubitSet support() const { return QubitSet(qubits); }
  friend bool operator==(const Gate&, const Gate&) = default;
};

bool is_known_gate(const std::string& name);
bool is_two_qubit_gate(const std::string& name);
const std::vector<std::string>& gate_vocabulary();

/// Clifford stored as the signed images of X_i and Z_i under conjugation.
class CliffordOp {
 public:
  CliffordOp() = default;
  static CliffordOp identity(int n);
  /// Images must be given in generator order X_0..X_{n-1}, Z_0..Z_{n-1}.
  static CliffordOp from_images(std::vector<Pauli> x_images, std::vector<Pauli> z_images);

  int num_qubits() const { return n_; }
  const Pauli& image_x(int q) const { return x_img_[q]; }
  const Pauli& image_z(int q) const { return z_img_[q]; }

  /// C P C^dagger with exact sign.
  Pauli conjugate(const Pauli& p) const;
  /// Phaseless part of C P C^dagger.
  Pauli conjugate_phaseless(const Pauli& p) const;

  /// P -> after(before(P)), i.e. the unitary after*before.
  static CliffordOp compose(const CliffordOp& after, const CliffordOp& before);
  CliffordOp inverse() const;
  CliffordOp power(int k) const;

  /// True iff the phaseless images preserve the symplectic form.
  bool is_symplectic() const;
  /// Phaseless action is the identity map (the unitary is a Pauli up to phase).
  bool is_pauli_action() const;

  friend bool operator==(const CliffordOp& a, const CliffordOp& b);

 private:
  int n_ = 0;
  std::vector<Pauli> x_img_;
  std::vector<Pauli> z_img_;
};

/// Tableau of one named gate (qubits unmentioned act as identity).
CliffordOp gate_clifford(const Gate& g, int n);

/// Parallel composition; supports must be pairwise disjoint.
CliffordOp clifford_from_cycle(const std::vector<Gate>& gates, int n);

Pauli conjugate(const CliffordOp& c, const Pauli& p);

/// Smallest c >= 1 whose tableau power is the identity map.
inline constexpr int kMaxPauliOrder = 4096;
int pauli_order(const CliffordOp& h);

struct OrbitSet {
  std::vector<Pauli> members;  // canonical order; members[0] is the representative
  std::string generator_label;

  const Pauli& representative() const { return members.front(); }
  int size() const { return static_cast<int>(members.size()); }
  bool contains(const Pauli& p) const;
  /// "{IZ, ZZ}" with letters on `a`; singletons render bare ("ZI").
  std::string label_on(const QubitSet& a) const;
};

OrbitSet orbit(const Pauli& p, const CliffordOp& h, const std::string& label = "");

bool invariance_check(const QubitSet& a, const CliffordOp& h);

class OrbitPartition {
 public:
  OrbitPartition() = default;
  OrbitPartition(const QubitSet& a, const CliffordOp& h, const std::string& label = "");

  const QubitSet& support() const { return support_; }
  int num_qubits() const { return n_; }
  const std::vector<OrbitSet>& orbits() const { return orbits_; }
  /// Index into orbits() of the orbit holding p; throws if p is outside P_A.
  int index_of(const Pauli& p) const;

 private:
  QubitSet support_;
  int n_ = 0;
  std::vector<OrbitSet> orbits_;
  std::unordered_map<Pauli, int, PauliHash> index_;
};

/// Orbits partitioning P_A, sorted by representative. Throws if P_A is not
/// invariant under h.
std::vector<OrbitSet> orbit_partition(const QubitSet& a, const CliffordOp& h,
                                      const std::string& label = "");

}  // namespace cyclerec
