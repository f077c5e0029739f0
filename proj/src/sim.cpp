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

#include "cyclerec/sim.hpp"

#include <algorithm>
#include <stdexcept>

#include "cyclerec/parallel.hpp"

namespace cyclerec {

namespace {

void check_rates(const std::vector<double>& v, int n, const char* what) {
  if (v.empty()) return;
  if (static_cast<int>(v.size()) != n) {
    throw std::invalid_argument(std::string(what) + " needs one rate per qubit");
  }
  for (double r : v) {
    if (!(r >= 0.0 && r <= 1.0)) throw std::invalid_argument(std::string(what) + " outside [0,1]");
  }
}

uint64_t splitmix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::vector<double> rates(const std::vector<double>& v, int n) {
  return v.empty() ? std::vector<double>(n, 0.0) : v;
}

}  // namespace

NoiseModel NoiseModel::noiseless(int n, const std::string& cycle_id) {
  NoiseModel m;
  m.n = n;
  m.per_cycle_errors.emplace(cycle_id, PauliDistribution::identity(n));
  return m;
}

void NoiseModel::validate() const {
  auto check = [&](const PauliDistribution& d, const std::string& what) {
    if (d.num_qubits() != n) throw std::invalid_argument(what + " has the wrong qubit count");
    d.validate(1e-9);
  };
  for (const auto& [id, d] : per_cycle_errors) check(d, "error of cycle " + id);
  for (const auto& [id, d] : first_cycle_errors) check(d, "first-cycle error of " + id);
  if (easy_error) check(*easy_error, "easy-cycle error");
  for (const auto& [id, terms] : coherent_terms) {
    for (const auto& t : terms) {
      if (t.qubit < 0 || t.qubit >= n) throw std::invalid_argument("coherent term qubit out of range");
      if (t.axis != 'X' && t.axis != 'Y' && t.axis != 'Z') {
        throw std::invalid_argument("coherent term axis must be X, Y or Z");
      }
    }
  }
  check_rates(meas_flip, n, "meas_flip");
  check_rates(prep_flip, n, "prep_flip");
}

bool NoiseModel::has_prep_error() const {
  return std::any_of(prep_flip.begin(), prep_flip.end(), [](double r) { return r > 0.0; });
}

PauliDistribution effective_error(const NoiseModel& model, const std::string& cycle_id) {
  auto it = model.per_cycle_errors.find(cycle_id);
  if (it == model.per_cycle_errors.end()) {
    throw std::invalid_argument("noise model has no cycle '" + cycle_id + "'");
  }
  auto ct = model.coherent_terms.find(cycle_id);
  if (ct == model.coherent_terms.end() || ct->second.empty()) return it->second;
  return compose(it->second, twirl_coherent_terms(ct->second, model.n));
}

PauliDistribution effective_first_error(const NoiseModel& model, const std::string& cycle_id) {
  auto it = model.first_cycle_errors.find(cycle_id);
  if (it == model.first_cycle_errors.end()) return effective_error(model, cycle_id);
  auto ct = model.coherent_terms.find(cycle_id);
  if (ct == model.coherent_terms.end() || ct->second.empty()) return it->second;
  return compose(it->second, twirl_coherent_terms(ct->second, model.n));
}

PauliSampler::PauliSampler(const PauliDistribution& d) : n_(d.num_qubits()) {
  double acc = 0.0;
  for (const auto& [p, w] : d.entries()) {
    if (w <= 0.0) continue;
    if (!p.is_identity()) trivial_ = false;
    acc += w;
    values_.push_back(p);
    cumulative_.push_back(acc);
  }
  if (values_.empty()) throw std::invalid_argument("empty error distribution");
  for (double& c : cumulative_) c /= acc;
  cumulative_.back() = 1.0;
}

Pauli PauliSampler::sample(RngStream& rng) const {
  double u = rng.uniform();
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  size_t i = std::min(static_cast<size_t>(it - cumulative_.begin()), values_.size() - 1);
  return values_[i];
}

StabilizerState::StabilizerState(int n) : n_(n) {
  for (int q = 0; q < n; ++q) gens_.push_back(Pauli::single(n, q, 'Z'));
}

void StabilizerState::apply(const CliffordOp& c) {
  for (auto& g : gens_) g = c.conjugate(g);
}

void StabilizerState::apply_pauli(const Pauli& p) {
  for (auto& g : gens_) {
    if (chi(p, g) == -1) g = g.negated();
  }
}

bool StabilizerState::Support::contains(uint64_t s) const {
  for (const auto& [c, b] : constraints) {
    if ((std::popcount(c & s) & 1) != b) return false;
  }
  return true;
}

StabilizerState::Support StabilizerState::outcome_support() const {
  std::vector<PhasedPauli> rows;
  for (const auto& g : gens_) rows.push_back(PhasedPauli::from(g));
  size_t rank = 0;
  for (int q = 0; q < n_ && rank < rows.size(); ++q) {
    uint64_t bit = uint64_t{1} << q;
    size_t piv = rank;
    while (piv < rows.size() && !(rows[piv].x & bit)) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[rank], rows[piv]);
    for (size_t r = 0; r < rows.size(); ++r) {
      if (r != rank && (rows[r].x & bit)) rows[r] *= rows[rank];
    }
    ++rank;
  }
  Support sup;
  for (size_t r = rank; r < rows.size(); ++r) {
    Pauli p = rows[r].to_pauli(n_);
    sup.constraints.push_back({p.z_bits(), p.negative() ? 1 : 0});
  }
  // reference: solve the constraints with free variables at 0
  std::vector<std::pair<uint64_t, int>> eqs = sup.constraints;
  std::vector<int> pivots;
  size_t r = 0;
  for (int q = 0; q < n_ && r < eqs.size(); ++q) {
    uint64_t bit = uint64_t{1} << q;
    size_t piv = r;
    while (piv < eqs.size() && !(eqs[piv].first & bit)) ++piv;
    if (piv == eqs.size()) continue;
    std::swap(eqs[r], eqs[piv]);
    for (size_t k = 0; k < eqs.size(); ++k) {
      if (k != r && (eqs[k].first & bit)) {
        eqs[k].first ^= eqs[r].first;
        eqs[k].second ^= eqs[r].second;
      }
    }
    pivots.push_back(q);
    ++r;
  }
  for (size_t k = 0; k < pivots.size(); ++k) {
    if (eqs[k].second) sup.reference |= uint64_t{1} << pivots[k];
  }
  return sup;
}

ModelSamplers::ModelSamplers(const NoiseModel& model, const std::string& cycle_id)
    : n(model.n),
      first(effective_first_error(model, cycle_id)),
      rest(effective_error(model, cycle_id)),
      easy(model.easy_error ? *model.easy_error : PauliDistribution::identity(model.n)),
      meas(rates(model.meas_flip, model.n)),
      prep(rates(model.prep_flip, model.n)) {
  model.validate();
}

InstanceSampler::InstanceSampler(const CompiledInstance& inst, const CliffordOp& h,
                                 const ModelSamplers& noise)
    : noise_(noise),
      n_(inst.n),
      m_(static_cast<int>(inst.easy.size()) - 1),
      h_(h),
      first_(clifford_from_cycle(inst.easy.front().basis, inst.n)),
      last_(clifford_from_cycle(inst.easy.back().basis, inst.n)),
      first_trivial_(inst.easy.front().basis.empty()),
      last_trivial_(inst.easy.back().basis.empty()) {
  if (noise.n != inst.n || h.num_qubits() != inst.n) {
    throw std::invalid_argument("instance and noise model register sizes differ");
  }
  StabilizerState st(n_);
  st.apply(inst.ideal(h));
  reference_ = st.outcome_support().reference;
}

ShotOutcome InstanceSampler::run_shot(RngStream& rng) const {
  uint64_t px = 0;
  for (int q = 0; q < n_; ++q) {
    if (noise_.prep[q] > 0.0 && rng.uniform() < noise_.prep[q]) px |= uint64_t{1} << q;
  }
  // random Z frame randomizes non-deterministic outcomes
  Pauli frame(n_, px, rng.bits(n_));
  auto hit = [&](const PauliSampler& s) {
    if (!s.trivial()) frame = multiply(s.sample(rng), frame).phaseless();
  };
  for (int i = 0; i < m_; ++i) {
    if (i == 0 && !first_trivial_) frame = first_.conjugate_phaseless(frame);
    hit(noise_.easy);
    hit(i == 0 ? noise_.first : noise_.rest);
    frame = h_.conjugate_phaseless(frame);
  }
  if (!last_trivial_) frame = last_.conjugate_phaseless(frame);
  hit(noise_.easy);
  uint64_t bits = reference_ ^ frame.x_bits();
  for (int q = 0; q < n_; ++q) {
    if (noise_.meas[q] > 0.0 && rng.uniform() < noise_.meas[q]) bits ^= uint64_t{1} << q;
  }
  return {bits};
}

ShotOutcome run_shot(const CompiledInstance& inst, const CliffordOp& h, const NoiseModel& model,
                     const std::string& cycle_id, RngStream& rng) {
  ModelSamplers noise(model, cycle_id);
  return InstanceSampler(inst, h, noise).run_shot(rng);
}

std::map<uint64_t, int> InstanceResult::counts() const {
  std::map<uint64_t, int> c;
  for (uint64_t s : outcomes) ++c[s];
  return c;
}

uint64_t derive_key(uint64_t seed, uint64_t job) {
  return splitmix64(splitmix64(seed) ^ splitmix64(job + 0x632BE59BD9B4E019ULL));
}

std::vector<InstanceResult> run_batch(const CbCircuit& base, const NoiseModel& model,
                                      int randomizations, int shots, uint64_t seed, uint64_t job) {
  if (randomizations < 1 || shots < 1) {
    throw std::invalid_argument("randomizations and shots must be positive");
  }
  if (model.n != base.n) throw std::invalid_argument("model and circuit register sizes differ");
  ModelSamplers noise(model, base.hard.id);
  uint64_t key = derive_key(seed, job);
  std::vector<InstanceResult> out(randomizations);
  parallel_for(static_cast<size_t>(randomizations), [&](size_t r) {
    RngStream twirl(key, StreamDomain::kTwirl, static_cast<uint32_t>(r));
    out[r].instance = randomized_compile(base, twirl);
    InstanceSampler sampler(out[r].instance, base.h, noise);
    out[r].outcomes.resize(shots);
    for (int s = 0; s < shots; ++s) {
      RngStream rng(key, StreamDomain::kShot, static_cast<uint32_t>(r), static_cast<uint32_t>(s));
      out[r].outcomes[s] = sampler.run_shot(rng).bits;
    }
  });
  return out;
}

}  // namespace cyclerec
