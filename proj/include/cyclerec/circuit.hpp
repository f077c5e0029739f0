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
#include <vector>

#include "cyclerec/channel.hpp"
#include "cyclerec/clifford.hpp"
#include "cyclerec/pauli.hpp"
#include "cyclerec/rng.hpp"

namespace cyclerec {

struct Cycle {
  enum class Kind { kEasy, kHard };

  std::string id;
  Kind kind = Kind::kHard;
  std::vector<Gate> gates;  // qubits not listed are idle

  /// Validates gates against an n-qubit register (disjoint, known names).
  CliffordOp clifford(int n) const;
};

/// Gate supports of a hard cycle in canonical order. Multi-qubit gates give
/// one support, single-qubit gates and idle qubits one singleton each.
std::vector<QubitSet> parallel_supports(const Cycle& h, int n);

/// All distinct unions of k supports, canonical order.
std::vector<QubitSet> support_unions(const std::vector<QubitSet>& supports, int k);

/// "(0,1): CX" or "2: I"; unions join their parts with "; ".
std::string support_label(const Cycle& h, const QubitSet& a, int n);

/// "{(1,3): CX; 0,2,4: I}".
std::string describe_cycle(const Cycle& h, int n);

/// One concrete easy cycle: the Pauli `before`, then the basis gates, then
/// the Pauli `after`.
struct EasyLayer {
  Pauli before;
  std::vector<Gate> basis;
  Pauli after;

  CliffordOp clifford(int n) const;
  bool is_pauli() const { return basis.empty(); }
};

/// E_m H E_{m-1} H ... E_1 H E_0 with interior E_i = I.
struct CbCircuit {
  int n = 1;
  Cycle hard;
  CliffordOp h;  // hard.clifford(n), cached
  std::vector<Gate> e0;
  std::vector<Gate> em;
  int m = 1;

  static CbCircuit make(int n, const Cycle& hard, std::vector<Gate> e0, std::vector<Gate> em,
                        int m);
  /// Signed ideal unitary action E_m H^m E_0.
  CliffordOp ideal() const;
};

struct TwirlRecord {
  std::vector<Pauli> twirls;  // T_0 .. T_{m-1}
  Pauli frame;                // T_m^c = X^x Z^z
};

struct CompiledInstance {
  int n = 1;
  std::vector<EasyLayer> easy;  // E_0' .. E_m'
  TwirlRecord record;

  /// Signed ideal action E_m' H ... H E_0'.
  CliffordOp ideal(const CliffordOp& h) const;
};

/// Phaseless H^dagger T H.
Pauli correction_gate(const CliffordOp& h, const Pauli& t);

Pauli random_pauli(int n, RngStream& rng);

/// E_i' = T_i^c E_i T_{i-1} with T_{-1} = I, T_i uniform for i < m, and a
/// uniform final frame T_m^c compiled into E_m'.
CompiledInstance randomized_compile(const CbCircuit& base, RngStream& rng);

}  // namespace cyclerec
