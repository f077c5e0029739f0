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

#include "cyclerec/pie.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "cyclerec/stats.hpp"

namespace cyclerec {

namespace {

std::vector<Gate> basis_layer(const std::string& letters) {
  std::vector<int> h, hyz;
  for (int q = 0; q < static_cast<int>(letters.size()); ++q) {
    if (letters[q] == 'X') h.push_back(q);
    if (letters[q] == 'Y') hyz.push_back(q);
  }
  std::vector<Gate> out;
  if (!h.empty()) out.push_back({"H", h});
  if (!hyz.empty()) out.push_back({"H_YZ", hyz});
  return out;
}

std::string letters_of(const Pauli& p) { return p.label(); }

bool compatible(const std::string& a, const std::string& b) {
  for (size_t q = 0; q < a.size(); ++q) {
    if (a[q] != 'I' && b[q] != 'I' && a[q] != b[q]) return false;
  }
  return true;
}

void merge_into(std::string& a, const std::string& b) {
  for (size_t q = 0; q < a.size(); ++q) {
    if (a[q] == 'I') a[q] = b[q];
  }
}

Pauli z_on(const QubitSet& s, int n) { return Pauli(n, 0, s.mask()); }

uint64_t job_id(uint64_t base, uint64_t group, uint64_t slot) {
  return base * 1000003ULL + group * 16ULL + slot;
}

double resampled_mean(const std::vector<double>& v, RngStream& rng) {
  double s = 0.0;
  for (size_t i = 0; i < v.size(); ++i) s += v[rng.below(v.size())];
  return s / static_cast<double>(v.size());
}

}  // namespace

const char* basis_gate_for(char letter) {
  switch (letter) {
    case 'X':
      return "H";
    case 'Y':
      return "H_YZ";
    case 'Z':
    case 'I':
      return "I";
  }
  throw std::invalid_argument(std::string("no basis change for letter '") + letter + "'");
}

BoundaryCycles choose_boundary_cycles(const Pauli& p, const CliffordOp& h, int m) {
  if (p.is_identity()) {
    throw std::invalid_argument("identity query needs no circuit (f(I) = 1)");
  }
  if (m < 1) throw std::invalid_argument("sequence length m must be >= 1");
  if (p.num_qubits() != h.num_qubits()) throw std::invalid_argument("register size mismatch");
  Pauli q = h.power(m).conjugate_phaseless(p.phaseless());
  return {basis_layer(letters_of(p)), basis_layer(letters_of(q)), p.support(), q.support()};
}

int counting_value(uint64_t outcome, uint64_t frame_x, const QubitSet& b) {
  return (std::popcount((outcome ^ frame_x) & b.mask()) & 1) ? -1 : 1;
}

int ideal_sign(const CbCircuit& c, const QubitSet& a, const QubitSet& b) {
  Pauli img = c.ideal().conjugate(z_on(a, c.n));
  if (img.x_bits() != 0 || img.z_bits() != b.mask()) {
    throw std::logic_error("boundary cycles do not map Z^A to Z^B: got " + img.to_string());
  }
  return img.sign();
}

std::vector<BasisGroup> basis_grouping(const std::vector<Pauli>& queries, const CliffordOp* h,
                                       int m) {
  std::vector<Pauli> order;
  for (const auto& q : queries) order.push_back(q.phaseless());
  std::stable_sort(order.begin(), order.end(),
                   [](const Pauli& a, const Pauli& b) { return a.weight() > b.weight(); });
  CliffordOp hm;
  if (h) hm = h->power(m);
  std::vector<BasisGroup> groups;
  for (const auto& q : order) {
    std::string l0 = letters_of(q);
    std::string lm = h ? letters_of(hm.conjugate_phaseless(q)) : std::string();
    bool placed = false;
    for (auto& g : groups) {
      if (compatible(g.letters, l0) && (!h || compatible(g.final_letters, lm))) {
        merge_into(g.letters, l0);
        if (h) merge_into(g.final_letters, lm);
        g.members.push_back(q);
        placed = true;
        break;
      }
    }
    if (!placed) groups.push_back({l0, lm, {q}});
  }
  return groups;
}

std::vector<DecayRecord> pie_counts(const BasisGroup& group, const Cycle& hard, int n, int m,
                                    const PieSettings& settings, const NoiseModel& model,
                                    uint64_t seed, uint64_t job) {
  if (m < 1) throw std::invalid_argument("sequence length m must be >= 1");
  CliffordOp h = hard.clifford(n);
  CliffordOp hm = h.power(m);
  std::string final_letters(n, 'I');
  for (const auto& p : group.members) {
    std::string lm = letters_of(hm.conjugate_phaseless(p));
    if (!compatible(final_letters, lm)) {
      throw std::invalid_argument("group members need conflicting measurement bases at m = " +
                                  std::to_string(m));
    }
    merge_into(final_letters, lm);
  }
  CbCircuit c = CbCircuit::make(n, hard, basis_layer(group.letters), basis_layer(final_letters), m);

  struct Target {
    QubitSet b;
    int sign;
  };
  std::vector<Target> targets;
  for (const auto& p : group.members) {
    QubitSet b = hm.conjugate_phaseless(p).support();
    targets.push_back({b, ideal_sign(c, p.support(), b)});
  }

  auto batch = run_batch(c, model, settings.randomizations, settings.shots, seed, job);
  std::vector<DecayRecord> out;
  for (size_t k = 0; k < group.members.size(); ++k) {
    DecayRecord rec;
    rec.query = group.members[k];
    rec.cycle_id = hard.id;
    rec.m = m;
    rec.shots = settings.shots;
    rec.randomizations = settings.randomizations;
    for (const auto& r : batch) {
      uint64_t fx = r.instance.record.frame.x_bits();
      long acc = 0;
      for (uint64_t s : r.outcomes) acc += counting_value(s, fx, targets[k].b);
      rec.per_randomization.push_back(targets[k].sign * static_cast<double>(acc) /
                                      static_cast<double>(r.outcomes.size()));
    }
    rec.N = mean(rec.per_randomization);
    rec.se = standard_error(rec.per_randomization);
    out.push_back(std::move(rec));
  }
  return out;
}

FidelityEstimate estimate_orbit_fidelity(const DecayRecord& rec1, const DecayRecord& rec2,
                                         int bootstrap, uint64_t key, double noise_floor) {
  FidelityEstimate est;
  int dm = rec2.m - rec1.m;
  if (dm <= 0) throw std::invalid_argument("estimate_orbit_fidelity needs m2 > m1");
  if (rec1.N == 0.0 || std::abs(rec1.N) < noise_floor * rec1.se) {
    est.status = "rejected: N(m1) within noise floor; lower m2 or add shots";
    return est;
  }
  double ratio = rec2.N / rec1.N;
  if (ratio <= 0.0) {
    est.status = "rejected: non-positive decay ratio; signal decayed into noise, lower m2";
    return est;
  }
  est.f = std::pow(ratio, 1.0 / dm);
  if (bootstrap > 0) {
    for (int b = 0; b < bootstrap; ++b) {
      RngStream r1(key, StreamDomain::kBootstrap, static_cast<uint32_t>(b), 1);
      RngStream r2(key, StreamDomain::kBootstrap, static_cast<uint32_t>(b), 2);
      double n1 = resampled_mean(rec1.per_randomization, r1);
      double n2 = resampled_mean(rec2.per_randomization, r2);
      if (n1 != 0.0 && n2 / n1 > 0.0) est.replicates.push_back(std::pow(n2 / n1, 1.0 / dm));
    }
    if (est.replicates.size() < static_cast<size_t>(bootstrap) / 2) {
      est.status = "rejected: bootstrap replicates mostly non-positive";
      return est;
    }
    est.sigma = sample_sd(est.replicates);
  } else {
    double r1 = rec1.se / rec1.N, r2 = rec2.se / rec2.N;
    est.sigma = est.f / dm * std::sqrt(r1 * r1 + r2 * r2);
  }
  return est;
}

const OrbitEstimate& PieResult::for_query(const Pauli& p) const {
  auto it = query_orbit.find(p.phaseless());
  if (it == query_orbit.end()) throw std::out_of_range("not a query of this result: " + p.label());
  return orbits[it->second];
}

bool PieResult::all_ok() const {
  return std::all_of(orbits.begin(), orbits.end(),
                     [](const OrbitEstimate& o) { return o.estimate.ok(); });
}

int PieResult::circuits() const {
  return static_cast<int>(groups.size() * settings.m.size());
}

void validate_lengths(const std::vector<int>& m, const CliffordOp& h) {
  if (m.size() != 2) throw std::invalid_argument("PIE needs exactly two sequence lengths");
  if (m[0] < 1 || m[1] <= m[0]) {
    throw std::invalid_argument("sequence lengths must satisfy 1 <= m1 < m2");
  }
  if (!h.power(m[1] - m[0]).is_pauli_action()) {
    throw std::invalid_argument("m2 - m1 = " + std::to_string(m[1] - m[0]) +
                                " is not a multiple of the hard cycle's Pauli order " +
                                std::to_string(pauli_order(h)));
  }
}

PieResult pie_oracle(const std::vector<Pauli>& queries, const Cycle& hard, int n,
                     const PieSettings& settings, const NoiseModel& model, uint64_t seed,
                     uint64_t job_base) {
  CliffordOp h = hard.clifford(n);
  validate_lengths(settings.m, h);
  if (settings.randomizations < 2) throw std::invalid_argument("PIE needs >= 2 randomizations");
  PieResult res;
  res.cycle_id = hard.id;
  res.settings = settings;

  std::vector<Pauli> measured;
  for (const auto& q0 : queries) {
    Pauli q = q0.phaseless();
    if (q.num_qubits() != n) throw std::invalid_argument("query " + q.label() + " has wrong size");
    if (res.query_orbit.count(q)) continue;
    int found = -1;
    for (size_t i = 0; i < res.orbits.size(); ++i) {
      if (res.orbits[i].orbit.contains(q)) found = static_cast<int>(i);
    }
    if (found < 0) {
      OrbitEstimate oe;
      oe.orbit = orbit(q, h, hard.id);
      oe.measured = q;
      if (q.is_identity()) {
        oe.estimate.f = 1.0;
        oe.estimate.replicates.assign(settings.bootstrap, 1.0);
      } else {
        measured.push_back(q);
      }
      res.orbits.push_back(std::move(oe));
      found = static_cast<int>(res.orbits.size()) - 1;
    }
    res.query_orbit[q] = found;
  }

  res.groups = basis_grouping(measured, &h, settings.m[0]);
  for (size_t g = 0; g < res.groups.size(); ++g) {
    const auto& group = res.groups[g];
    auto r1 = pie_counts(group, hard, n, settings.m[0], settings, model, seed,
                         job_id(job_base, g, 0));
    auto r2 = pie_counts(group, hard, n, settings.m[1], settings, model, seed,
                         job_id(job_base, g, 1));
    uint64_t key = derive_key(seed, job_id(job_base, g, 15));
    for (size_t k = 0; k < group.members.size(); ++k) {
      auto& oe = res.orbits[res.query_orbit.at(group.members[k])];
      oe.records = {r1[k], r2[k]};
      oe.estimate =
          estimate_orbit_fidelity(r1[k], r2[k], settings.bootstrap, key, settings.noise_floor);
    }
  }
  return res;
}

ResolvedEstimate resolve_orbit(const Pauli& query, const Cycle& hard, int n,
                               const ResolveSettings& settings, const NoiseModel& model,
                               uint64_t seed, uint64_t job_base) {
  if (model.has_prep_error()) {
    throw ProtocolRefused("orbit resolution requires negligible state-preparation error");
  }
  if (model.first_cycle_errors.count(hard.id)) {
    throw ProtocolRefused("orbit resolution requires the first dressed cycle to share the cycle error");
  }
  if (query.is_identity()) throw std::invalid_argument("identity query is trivially resolved");
  CliffordOp h = hard.clifford(n);
  ResolvedEstimate out;
  out.query = query.phaseless();
  out.orbit = orbit(out.query, h, hard.id);
  int k = out.orbit.size();
  int order = pauli_order(h);
  std::vector<int> m = settings.m;
  if (m.empty()) {
    int step = order * ((16 + order - 1) / order);
    m = {1, 1 + step, k};
  }
  if (m.size() != 3) throw std::invalid_argument("orbit resolution needs lengths m1, m2, m3");
  if (m[0] < 1 || m[1] <= m[0] || m[2] < 1) throw std::invalid_argument("bad sequence lengths");
  if (m[0] % k != 1 % k || m[1] % k != 1 % k || m[2] % k != 0) {
    throw std::invalid_argument("need m1, m2 = 1 and m3 = 0 modulo the orbit size " +
                                std::to_string(k));
  }
  if ((m[1] - m[0]) % order != 0) {
    throw std::invalid_argument("m2 - m1 must be a multiple of the Pauli order " +
                                std::to_string(order));
  }
  out.m = m;

  PieSettings ps;
  ps.m = {m[0], m[1]};
  ps.randomizations = settings.randomizations;
  ps.shots = settings.shots;
  BasisGroup gp{letters_of(out.query), "", {out.query}};
  Pauli q = h.conjugate_phaseless(out.query);
  BasisGroup gq{letters_of(q), "", {q}};
  auto r1 = pie_counts(gp, hard, n, m[0], ps, model, seed, job_id(job_base, 0, 0))[0];
  auto r2 = pie_counts(gp, hard, n, m[1], ps, model, seed, job_id(job_base, 0, 1))[0];
  auto r3 = pie_counts(gq, hard, n, m[2], ps, model, seed, job_id(job_base, 0, 2))[0];

  auto decay = estimate_orbit_fidelity(r1, r2, 0, 0, settings.noise_floor);
  out.caveat = "additive precision: the resolved value is limited by shot noise at m3";
  if (!decay.ok()) {
    out.estimate.status = decay.status;
    return out;
  }
  if (r3.N == 0.0 || std::abs(r3.N) < settings.noise_floor * r3.se) {
    out.estimate.status = "rejected: N(m3) within noise floor";
    return out;
  }
  auto value = [&](double n1, double n2, double n3) {
    double p = std::pow(n2 / n1, 1.0 / (m[1] - m[0]));
    return n1 * std::pow(p, m[2] + 1 - m[0]) / n3;
  };
  out.p = decay.f;
  out.A = r1.N / std::pow(out.p, m[0]);
  out.N3 = r3.N;
  out.estimate.f = value(r1.N, r2.N, r3.N);

  uint64_t key = derive_key(seed, job_id(job_base, 0, 15));
  for (int b = 0; b < settings.bootstrap; ++b) {
    RngStream s1(key, StreamDomain::kBootstrap, static_cast<uint32_t>(b), 1);
    RngStream s2(key, StreamDomain::kBootstrap, static_cast<uint32_t>(b), 2);
    RngStream s3(key, StreamDomain::kBootstrap, static_cast<uint32_t>(b), 3);
    double n1 = resampled_mean(r1.per_randomization, s1);
    double n2 = resampled_mean(r2.per_randomization, s2);
    double n3 = resampled_mean(r3.per_randomization, s3);
    if (n1 != 0.0 && n3 != 0.0 && n2 / n1 > 0.0) out.estimate.replicates.push_back(value(n1, n2, n3));
  }
  out.estimate.sigma = sample_sd(out.estimate.replicates);
  return out;
}

}  // namespace cyclerec
