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

#include "cyclerec/channel.hpp"
#include "cyclerec/circuit.hpp"
#include "cyclerec/rng.hpp"

namespace cyclerec {

/// Noise acting on compiled CB circuits. Within a dressed cycle the order is
/// easy layer, easy error, dressed-cycle error S, ideal hard cycle. The last
/// easy layer is followed by the easy error and then readout flips.
struct NoiseModel {
  int n = 1;
  std::map<std::string, PauliDistribution> per_cycle_errors;
  std::map<std::string, std::vector<CoherentTerm>> coherent_terms;
  /// Optional distinct S for the first dressed cycle of every circuit.
  std::map<std::string, PauliDistribution> first_cycle_errors;
  /// Optional gate-independent error after every easy layer.
  std::optional<PauliDistribution> easy_error;
  std::vector<double> meas_flip;  // per qubit, empty means 0
  std::vector<double> prep_flip;

  static NoiseModel noiseless(int n, const std::string& cycle_id);

  void validate() const;
  bool has_cycle(const std::string& id) const { return per_cycle_errors.count(id) != 0; }
  bool has_prep_error() const;
  double meas(int q) const { return meas_flip.empty() ? 0.0 : meas_flip.at(q); }
  double prep(int q) const { return prep_flip.empty() ? 0.0 : prep_flip.at(q); }
};

/// S_id composed with the twirl of the cycle's coherent terms.
PauliDistribution effective_error(const NoiseModel& model, const std::string& cycle_id);
/// Error of the first dressed cycle (the override if present).
PauliDistribution effective_first_error(const NoiseModel& model, const std::string& cycle_id);

struct ShotOutcome {
  uint64_t bits = 0;  // bit q is qubit q
};

/// Sampling table over a Pauli distribution.
class PauliSampler {
 public:
  PauliSampler() = default;
  explicit PauliSampler(const PauliDistribution& d);
  bool trivial() const { return trivial_; }
  Pauli sample(RngStream& rng) const;

 private:
  bool trivial_ = true;
  int n_ = 1;
  std::vector<Pauli> values_;
  std::vector<double> cumulative_;
};

/// Stabilizer state held as signed generators, for reference outcomes and
/// cross-checks.
class StabilizerState {
 public:
  explicit StabilizerState(int n);  // |0^n>
  int num_qubits() const { return n_; }
  const std::vector<Pauli>& generators() const { return gens_; }
  void apply(const CliffordOp& c);
  void apply_pauli(const Pauli& p);

  /// Z-basis outcome distribution: uniform over {s : c.s = b for every
  /// constraint (c, b)}.
  struct Support {
    uint64_t reference = 0;
    std::vector<std::pair<uint64_t, int>> constraints;
    bool contains(uint64_t s) const;
  };
  Support outcome_support() const;

 private:
  int n_;
  std::vector<Pauli> gens_;
};

/// Samplers for one (model, cycle) pair, shared by all instances of a batch.
struct ModelSamplers {
  ModelSamplers(const NoiseModel& model, const std::string& cycle_id);
  int n;
  PauliSampler first;
  PauliSampler rest;
  PauliSampler easy;
  std::vector<double> meas;
  std::vector<double> prep;
};

/// Per-instance sampler: precomputes the reference outcome and the frame
/// propagators.
class InstanceSampler {
 public:
  InstanceSampler(const CompiledInstance& inst, const CliffordOp& h, const ModelSamplers& noise);
  ShotOutcome run_shot(RngStream& rng) const;
  uint64_t reference() const { return reference_; }

 private:
  const ModelSamplers& noise_;
  int n_;
  int m_;
  const CliffordOp& h_;
  CliffordOp first_;  // basis gates of E_0'; Pauli parts act trivially on the frame
  CliffordOp last_;   // of E_m'
  bool first_trivial_;
  bool last_trivial_;
  uint64_t reference_ = 0;
};

ShotOutcome run_shot(const CompiledInstance& inst, const CliffordOp& h, const NoiseModel& model,
                     const std::string& cycle_id, RngStream& rng);

struct InstanceResult {
  CompiledInstance instance;
  std::vector<uint64_t> outcomes;  // one per shot, shot order
  std::map<uint64_t, int> counts() const;
};

/// Key for the substreams of one batch job.
uint64_t derive_key(uint64_t seed, uint64_t job);

/// Instances use twirl stream (key, instance) and shot streams (key,
/// instance, shot); runs in parallel over instances.
std::vector<InstanceResult> run_batch(const CbCircuit& base, const NoiseModel& model,
                                      int randomizations, int shots, uint64_t seed,
                                      uint64_t job = 0);

}  // namespace cyclerec
