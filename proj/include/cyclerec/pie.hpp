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

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cyclerec/circuit.hpp"
#include "cyclerec/sim.hpp"

namespace cyclerec {

struct PieSettings {
  std::vector<int> m = {4, 32};
  int randomizations = 30;
  int shots = 512;
  int bootstrap = 200;
  /// Reject when |N(m1)| is below this many standard errors.
  double noise_floor = 3.0;
};

/// E0 maps P to Z on A = support(P); Em maps Q = H^m P H^-m to Z on B.
struct BoundaryCycles {
  std::vector<Gate> e0;
  std::vector<Gate> em;
  QubitSet a;
  QubitSet b;
};

/// Single-qubit basis change taking `letter` to Z by conjugation.
const char* basis_gate_for(char letter);

BoundaryCycles choose_boundary_cycles(const Pauli& p, const CliffordOp& h, int m);

/// (-1)^{|(outcome ^ frame_x) & B|}
int counting_value(uint64_t outcome, uint64_t frame_x, const QubitSet& b);

/// Ideal sign s with E_m H^m E_0 [Z^A] = s Z^B.
int ideal_sign(const CbCircuit& c, const QubitSet& a, const QubitSet& b);

struct DecayRecord {
  Pauli query;
  std::string cycle_id;
  int m = 0;
  double N = 0.0;
  double se = 0.0;  // across randomizations
  int shots = 0;
  int randomizations = 0;
  std::vector<double> per_randomization;
};

/// Queries measurable with one state preparation and one measurement
/// setting. `letters` holds one of I/X/Y/Z per qubit.
struct BasisGroup {
  std::string letters;
  std::string final_letters;  // letters after the hard cycles, empty if unused
  std::vector<Pauli> members;
};

/// First-fit decreasing by weight. With `h` set, members must also agree on
/// the letters of H^m P H^-m so that one E_m serves the whole group.
std::vector<BasisGroup> basis_grouping(const std::vector<Pauli>& queries,
                                       const CliffordOp* h = nullptr, int m = 0);

/// Decay records for every member of a group at one length.
std::vector<DecayRecord> pie_counts(const BasisGroup& group, const Cycle& hard, int n, int m,
                                    const PieSettings& settings, const NoiseModel& model,
                                    uint64_t seed, uint64_t job);

struct FidelityEstimate {
  double f = 0.0;
  double sigma = 0.0;
  std::string status = "ok";
  std::vector<double> replicates;
  bool ok() const { return status == "ok"; }
};

/// Two-point estimate (N2/N1)^{1/(m2-m1)} with a bootstrap over
/// randomizations. Records taken from the same circuits should share `key` so
/// their replicates stay correlated. bootstrap = 0 falls back to the delta
/// method.
FidelityEstimate estimate_orbit_fidelity(const DecayRecord& rec1, const DecayRecord& rec2,
                                         int bootstrap = 0, uint64_t key = 0,
                                         double noise_floor = 3.0);

struct OrbitEstimate {
  OrbitSet orbit;
  Pauli measured;
  FidelityEstimate estimate;
  std::vector<DecayRecord> records;
};

struct PieResult {
  std::string cycle_id;
  std::vector<OrbitEstimate> orbits;
  std::vector<BasisGroup> groups;
  std::map<Pauli, int> query_orbit;  // query -> index into orbits
  PieSettings settings;

  const OrbitEstimate& for_query(const Pauli& p) const;
  bool all_ok() const;
  int circuits() const;
};

/// Checks that two lengths are given, ordered, and H^{m2-m1} acts as a Pauli.
void validate_lengths(const std::vector<int>& m, const CliffordOp& h);

PieResult pie_oracle(const std::vector<Pauli>& queries, const Cycle& hard, int n,
                     const PieSettings& settings, const NoiseModel& model, uint64_t seed,
                     uint64_t job_base = 0);

struct ResolveSettings {
  /// m1, m2 = 1 mod |orbit| and m3 = 0 mod |orbit|. Defaults chosen from the
  /// orbit when empty.
  std::vector<int> m;
  int randomizations = 30;
  int shots = 512;
  int bootstrap = 200;
  double noise_floor = 3.0;
};

struct ResolvedEstimate {
  Pauli query;
  OrbitSet orbit;
  std::vector<int> m;
  double A = 0.0;
  double p = 0.0;  // orbit decay
  double N3 = 0.0;
  FidelityEstimate estimate;
  std::string caveat;
};

class ProtocolRefused : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Individual fidelity of one orbit member. Throws ProtocolRefused when the
/// model has state-preparation error or a distinct first-cycle error.
ResolvedEstimate resolve_orbit(const Pauli& query, const Cycle& hard, int n,
                               const ResolveSettings& settings, const NoiseModel& model,
                               uint64_t seed, uint64_t job_base = 0);

}  // namespace cyclerec
