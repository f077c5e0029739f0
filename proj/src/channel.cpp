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

#include "cyclerec/channel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

namespace cyclerec {

namespace {

void check_same_n(int a, int b) {
  if (a != b) {
    throw std::invalid_argument("qubit count mismatch: " + std::to_string(a) + " vs " +
                                std::to_string(b));
  }
}

double sample_sd(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

using Mat2 = std::array<std::complex<double>, 4>;  // row major

Mat2 mat_mul(const Mat2& a, const Mat2& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2],
          a[2] * b[1] + a[3] * b[3]};
}

Mat2 rotation(char axis, double angle) {
  using C = std::complex<double>;
  double c = std::cos(angle / 2), s = std::sin(angle / 2);
  const C mi(0, -1);
  switch (axis) {
    case 'X': return {C(c), mi * s, mi * s, C(c)};
    case 'Y': return {C(c), C(-s), C(s), C(c)};
    case 'Z': return {C(c) + mi * s, C(0), C(0), C(c) - mi * s};
    default: throw std::invalid_argument(std::string("bad rotation axis '") + axis + "'");
  }
}

// |tr(P U)/2|^2 for P in {I, X, Y, Z}.
std::array<double, 4> twirl_weights(const Mat2& u) {
  using C = std::complex<double>;
  C ti = (u[0] + u[3]) / 2.0;
  C tx = (u[1] + u[2]) / 2.0;
  C ty = (C(0, 1) * u[1] - C(0, 1) * u[2]) / 2.0;  // tr(Y U)/2, Y = [[0,-i],[i,0]]
  C tz = (u[0] - u[3]) / 2.0;
  return {std::norm(ti), std::norm(tx), std::norm(ty), std::norm(tz)};
}

}  // namespace

PauliDistribution::PauliDistribution(int n, std::map<Pauli, double> entries) : n_(n) {
  for (const auto& [p, w] : entries) add(p, w);
}

PauliDistribution PauliDistribution::identity(int n) {
  PauliDistribution d(n);
  d.add(Pauli::identity(n), 1.0);
  return d;
}

double PauliDistribution::prob(const Pauli& p) const {
  check_same_n(n_, p.num_qubits());
  auto it = entries_.find(p);
  return it == entries_.end() ? 0.0 : it->second;
}

void PauliDistribution::add(const Pauli& p, double w) {
  check_same_n(n_, p.num_qubits());
  entries_[p.phaseless()] += w;
}

double PauliDistribution::total() const {
  double t = 0.0;
  for (const auto& [p, w] : entries_) t += w;
  return t;
}

double PauliDistribution::min_prob() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& [p, w] : entries_) m = std::min(m, w);
  return entries_.empty() ? 0.0 : m;
}

void PauliDistribution::validate(double tol) const {
  for (const auto& [p, w] : entries_) {
    if (!(w >= -tol && w <= 1.0 + tol)) {
      throw std::invalid_argument("probability of " + p.to_string() + " is " + std::to_string(w));
    }
  }
  if (std::abs(total() - 1.0) > tol) {
    throw std::invalid_argument("distribution sums to " + std::to_string(total()));
  }
}

PauliDistribution PauliDistribution::pruned(double eps) const {
  PauliDistribution out(n_);
  for (const auto& [p, w] : entries_) {
    if (std::abs(w) > eps) out.add(p, w);
  }
  return out;
}

double FidelityTable::at(const Pauli& p) const {
  auto it = entries.find(p.phaseless());
  if (it == entries.end()) {
    if (p.is_identity()) return 1.0;
    throw std::invalid_argument("no fidelity for " + p.to_string());
  }
  return it->second;
}

double MarginalTable::sum() const {
  double s = 0.0;
  for (const auto& r : rows) s += r.mu;
  return s;
}

const MarginalRow* MarginalTable::find(const Pauli& p) const {
  for (const auto& r : rows) {
    if (r.orbit.contains(p)) return &r;
  }
  return nullptr;
}

double fidelity_from_dist(const PauliDistribution& p, const Pauli& q) {
  check_same_n(p.num_qubits(), q.num_qubits());
  double f = 0.0;
  for (const auto& [r, w] : p.entries()) f += chi(q, r) * w;
  return f;
}

FidelityTable fidelity_table(const PauliDistribution& p, const std::vector<Pauli>& queries) {
  FidelityTable t;
  t.n = p.num_qubits();
  for (const auto& q : queries) t.entries[q.phaseless()] = fidelity_from_dist(p, q);
  return t;
}

PauliDistribution dist_from_fidelities(const FidelityTable& f) {
  if (f.n > kMaxDenseInversionQubits) {
    throw std::invalid_argument("dense inversion limited to 3 qubits");
  }
  auto all = enumerate_subgroup(QubitSet::range(f.n), f.n);
  for (const auto& q : all) {
    if (!q.is_identity() && !f.has(q)) {
      throw std::invalid_argument("fidelity table incomplete: missing " + q.to_string());
    }
  }
  PauliDistribution d(f.n);
  double norm = 1.0 / static_cast<double>(all.size());
  for (const auto& p : all) {
    double s = 0.0;
    for (const auto& q : all) s += chi(q, p) * f.at(q);
    d.add(p, s * norm);
  }
  return d;
}

double marginal(const PauliDistribution& p, const Pauli& pa, const QubitSet& a) {
  check_same_n(p.num_qubits(), pa.num_qubits());
  if (!pa.support().subset_of(a)) {
    throw std::invalid_argument(pa.to_string() + " is not supported inside " + a.to_string());
  }
  double m = 0.0;
  for (const auto& [q, w] : p.entries()) {
    if (q.restricted(a) == pa) m += w;
  }
  return m;
}

PauliDistribution marginal_distribution(const PauliDistribution& p, const QubitSet& a) {
  PauliDistribution out(p.num_qubits());
  for (const auto& [q, w] : p.entries()) out.add(q.restricted(a), w);
  return out;
}

double marginal_from_fidelities(const FidelityTable& f, const Pauli& pa, const QubitSet& a) {
  if (!pa.support().subset_of(a)) {
    throw std::invalid_argument(pa.to_string() + " is not supported inside " + a.to_string());
  }
  auto group = enumerate_subgroup(a, f.n);
  double s = 0.0;
  for (const auto& q : group) s += chi(q, pa) * f.at(q);
  return s / static_cast<double>(group.size());
}

double orbit_marginal_from_orbit_fidelities(const OrbitPartition& partition,
                                            const std::vector<double>& orbit_fids, int target) {
  const auto& orbits = partition.orbits();
  if (orbit_fids.size() != orbits.size()) {
    throw std::invalid_argument("orbit fidelities cover " + std::to_string(orbit_fids.size()) +
                                " of " + std::to_string(orbits.size()) + " orbits");
  }
  if (target < 0 || target >= static_cast<int>(orbits.size())) {
    throw std::invalid_argument("target orbit index out of range");
  }
  const Pauli& rep = orbits[target].representative();
  double s = 0.0;
  size_t count = 0;
  for (size_t o = 0; o < orbits.size(); ++o) {
    for (const auto& q : orbits[o].members) {
      s += chi(q, rep) * orbit_fids[o];
      ++count;
    }
  }
  return static_cast<double>(orbits[target].size()) * s / static_cast<double>(count);
}

double orbit_marginal_sigma(const OrbitPartition& partition,
                            const std::vector<double>& orbit_sigmas, int target) {
  const auto& orbits = partition.orbits();
  if (orbit_sigmas.size() != orbits.size()) {
    throw std::invalid_argument("orbit sigma vector has wrong size");
  }
  const Pauli& rep = orbits[target].representative();
  double var = 0.0;
  size_t count = 0;
  for (size_t o = 0; o < orbits.size(); ++o) {
    int c = 0;
    for (const auto& q : orbits[o].members) c += chi(q, rep);
    var += static_cast<double>(c) * c * orbit_sigmas[o] * orbit_sigmas[o];
    count += orbits[o].members.size();
  }
  return static_cast<double>(orbits[target].size()) * std::sqrt(var) / static_cast<double>(count);
}

std::vector<double> orbit_marginals_direct(const PauliDistribution& p,
                                           const OrbitPartition& partition) {
  std::vector<double> out(partition.orbits().size(), 0.0);
  for (const auto& [q, w] : p.entries()) {
    out[partition.index_of(q.restricted(partition.support()))] += w;
  }
  return out;
}

double orbit_average(const FidelityTable& f, const OrbitSet& orbit, AverageMode mode) {
  if (orbit.members.empty()) throw std::invalid_argument("empty orbit");
  if (mode == AverageMode::kArithmetic) {
    double s = 0.0;
    for (const auto& m : orbit.members) s += f.at(m);
    return s / orbit.size();
  }
  double logs = 0.0;
  for (const auto& m : orbit.members) {
    double v = f.at(m);
    if (v <= 0.0) {
      throw std::invalid_argument("geometric orbit average needs positive fidelities; " +
                                  m.to_string() + " has " + std::to_string(v));
    }
    logs += std::log(v);
  }
  return std::exp(logs / orbit.size());
}

std::vector<double> orbit_fidelities(const PauliDistribution& p, const OrbitPartition& partition,
                                     AverageMode mode) {
  std::vector<double> out;
  for (const auto& o : partition.orbits()) {
    out.push_back(orbit_average(fidelity_table(p, o.members), o, mode));
  }
  return out;
}

PauliDistribution ReducedModel::as_distribution() const {
  PauliDistribution d(n);
  d.add(Pauli::identity(n), identity_p);
  for (const auto& t : terms) d.add(t.orbit.representative(), t.p);
  return d;
}

ReducedModel weight2_inversion(const std::vector<QubitSet>& sites,
                               const std::vector<MarginalTable>& site_tables,
                               const std::vector<MarginalTable>& pair_tables, int n,
                               double exact_tol) {
  auto find_table = [](const std::vector<MarginalTable>& tables,
                       const QubitSet& s) -> const MarginalTable& {
    for (const auto& t : tables) {
      if (t.support == s) return t;
    }
    throw std::invalid_argument("missing marginal table for support " + s.to_string());
  };
  uint64_t seen = 0;
  for (const auto& s : sites) {
    if (s.empty() || (seen & s.mask())) throw std::invalid_argument("sites must be disjoint");
    seen |= s.mask();
  }

  // Signed sums of rows; replicates propagate when every row carries them.
  struct Combo {
    std::vector<std::pair<const MarginalRow*, double>> parts;
  };
  auto evaluate = [&](const Combo& c, double& value, double& sigma) {
    value = 0.0;
    double var = 0.0;
    size_t reps = c.parts.empty() ? 0 : c.parts.front().first->replicates.size();
    for (const auto& [row, coef] : c.parts) {
      value += coef * row->mu;
      var += coef * coef * row->sigma * row->sigma;
      if (row->replicates.size() != reps) reps = 0;
    }
    if (reps >= 2) {
      std::vector<double> r(reps, 0.0);
      for (const auto& [row, coef] : c.parts) {
        for (size_t b = 0; b < reps; ++b) r[b] += coef * row->replicates[b];
      }
      sigma = sample_sd(r);
    } else {
      sigma = std::sqrt(var);
    }
  };

  ReducedModel out;
  out.n = n;
  Combo identity_combo;
  std::vector<std::pair<ReducedTerm, Combo>> pending;

  size_t s = sites.size();
  std::vector<std::vector<const MarginalTable*>> pair(s, std::vector<const MarginalTable*>(s));
  for (size_t i = 0; i < s; ++i) {
    for (size_t k = i + 1; k < s; ++k) {
      pair[i][k] = pair[k][i] = &find_table(pair_tables, sites[i] | sites[k]);
    }
  }

  for (size_t i = 0; i < s; ++i) {
    const MarginalTable& st = find_table(site_tables, sites[i]);
    for (const auto& row : st.rows) {
      if (row.orbit.representative().is_identity()) continue;
      ReducedTerm t;
      t.support = sites[i];
      t.orbit = row.orbit;
      Combo c;
      c.parts.push_back({&row, 1.0});
      for (size_t k = 0; k < s; ++k) {
        if (k == i) continue;
        for (const auto& pr : pair[i][k]->rows) {
          const Pauli& rep = pr.orbit.representative();
          if (rep.restricted(sites[k]).is_identity()) continue;
          if (!row.orbit.contains(rep.restricted(sites[i]))) continue;
          c.parts.push_back({&pr, -1.0});
        }
      }
      pending.push_back({t, c});
    }
  }
  for (size_t i = 0; i < s; ++i) {
    for (size_t k = i + 1; k < s; ++k) {
      for (const auto& pr : pair[i][k]->rows) {
        const Pauli& rep = pr.orbit.representative();
        if (rep.restricted(sites[i]).is_identity() || rep.restricted(sites[k]).is_identity()) {
          continue;
        }
        ReducedTerm t;
        t.support = sites[i] | sites[k];
        t.orbit = pr.orbit;
        Combo c;
        c.parts.push_back({&pr, 1.0});
        pending.push_back({t, c});
      }
    }
  }

  // identity = 1 - sum of all terms, expanded over rows
  // insertion order, not pointer order, keeps the sum reproducible
  std::vector<std::pair<const MarginalRow*, double>> id_coefs;
  double id_value = 1.0;
  for (auto& [t, c] : pending) {
    evaluate(c, t.p, t.sigma);
    t.violation = t.sigma > 0.0 ? t.p < -3.0 * t.sigma : t.p < -exact_tol;
    out.violation = out.violation || t.violation;
    id_value -= t.p;
    for (const auto& [row, coef] : c.parts) {
      auto it = std::find_if(id_coefs.begin(), id_coefs.end(),
                             [&](const auto& e) { return e.first == row; });
      if (it == id_coefs.end()) {
        id_coefs.push_back({row, -coef});
      } else {
        it->second -= coef;
      }
    }
    out.terms.push_back(t);
  }
  for (const auto& [row, coef] : id_coefs) {
    if (coef != 0.0) identity_combo.parts.push_back({row, coef});
  }
  double id_shift = 0.0, id_sigma = 0.0;
  evaluate(identity_combo, id_shift, id_sigma);
  out.identity_p = id_value;
  out.identity_sigma = id_sigma;
  std::sort(out.terms.begin(), out.terms.end(), [](const ReducedTerm& a, const ReducedTerm& b) {
    return a.orbit.representative() < b.orbit.representative();
  });
  return out;
}

MarginalTable exact_marginal_table(const PauliDistribution& p, const QubitSet& a,
                                   const CliffordOp& h) {
  OrbitPartition part(a, h);
  auto mu = orbit_marginals_direct(p, part);
  MarginalTable t;
  t.support = a;
  for (size_t o = 0; o < part.orbits().size(); ++o) {
    MarginalRow r;
    r.orbit = part.orbits()[o];
    r.mu = mu[o];
    t.rows.push_back(std::move(r));
  }
  return t;
}

PauliDistribution pauli_twirl_rotation(const CoherentTerm& term, int n) {
  if (term.qubit < 0 || term.qubit >= n) throw std::invalid_argument("rotation qubit out of range");
  Pauli axis = Pauli::single(n, term.qubit, term.axis);
  if (term.axis == 'I') throw std::invalid_argument("rotation axis must be X, Y or Z");
  double s = std::sin(term.angle / 2);
  PauliDistribution d(n);
  d.add(Pauli::identity(n), 1.0 - s * s);
  d.add(axis, s * s);
  return d.pruned(0.0);
}

PauliDistribution twirl_coherent_terms(const std::vector<CoherentTerm>& terms, int n) {
  std::map<int, Mat2> per_qubit;
  for (const auto& t : terms) {
    if (t.qubit < 0 || t.qubit >= n) throw std::invalid_argument("rotation qubit out of range");
    Mat2 r = rotation(t.axis, t.angle);
    auto it = per_qubit.find(t.qubit);
    if (it == per_qubit.end()) {
      per_qubit.emplace(t.qubit, r);
    } else {
      it->second = mat_mul(r, it->second);
    }
  }
  PauliDistribution out = PauliDistribution::identity(n);
  static constexpr char kLetters[4] = {'I', 'X', 'Y', 'Z'};
  for (const auto& [q, u] : per_qubit) {
    auto w = twirl_weights(u);
    PauliDistribution local(n);
    for (int l = 0; l < 4; ++l) {
      if (w[l] > 0.0) local.add(Pauli::single(n, q, kLetters[l]), w[l]);
    }
    out = compose(out, local);
  }
  return out;
}

PauliDistribution compose(const PauliDistribution& p, const PauliDistribution& q) {
  check_same_n(p.num_qubits(), q.num_qubits());
  PauliDistribution out(p.num_qubits());
  for (const auto& [a, wa] : p.entries()) {
    for (const auto& [b, wb] : q.entries()) out.add(multiply(a, b), wa * wb);
  }
  return out;
}

}  // namespace cyclerec
