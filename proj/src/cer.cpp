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

#include "cyclerec/cer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "cyclerec/stats.hpp"

namespace cyclerec {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// coef[t][o]: weight of orbit fidelity o in the marginal of orbit t.
std::vector<std::vector<double>> transform_coefficients(const OrbitPartition& part) {
  size_t k = part.orbits().size();
  std::vector<std::vector<double>> coef(k, std::vector<double>(k, 0.0));
  std::vector<double> unit(k, 0.0);
  for (size_t o = 0; o < k; ++o) {
    unit[o] = 1.0;
    for (size_t t = 0; t < k; ++t) {
      coef[t][o] = orbit_marginal_from_orbit_fidelities(part, unit, static_cast<int>(t));
    }
    unit[o] = 0.0;
  }
  return coef;
}

SupportResult build_table(const OrbitPartition& part, const std::vector<FidelityEstimate>& fids) {
  SupportResult out;
  out.support = part.support();
  out.table.support = part.support();
  out.fidelities = fids;
  const auto& orbits = part.orbits();

  std::string failure;
  size_t reps = 0;
  bool have_reps = true;
  for (size_t o = 0; o < orbits.size(); ++o) {
    if (orbits[o].representative().is_identity()) continue;
    if (!fids[o].ok() && failure.empty()) {
      failure = "orbit " + orbits[o].label_on(part.support()) + " " + fids[o].status;
    }
    if (reps == 0) reps = fids[o].replicates.size();
    if (fids[o].replicates.size() != reps || reps < 2) have_reps = false;
  }

  if (!failure.empty()) {
    out.status = "failed: " + failure;
    for (const auto& orb : orbits) {
      out.table.rows.push_back({orb, kNaN, kNaN, "unresolved", {}});
    }
    return out;
  }

  auto coef = transform_coefficients(part);
  std::vector<double> sig(orbits.size(), 0.0);
  for (size_t o = 0; o < orbits.size(); ++o) sig[o] = fids[o].sigma;
  for (size_t t = 0; t < orbits.size(); ++t) {
    MarginalRow row;
    row.orbit = orbits[t];
    for (size_t o = 0; o < orbits.size(); ++o) row.mu += coef[t][o] * fids[o].f;
    if (have_reps) {
      row.replicates.assign(reps, 0.0);
      for (size_t o = 0; o < orbits.size(); ++o) {
        for (size_t b = 0; b < reps; ++b) {
          double f = orbits[o].representative().is_identity() ? 1.0 : fids[o].replicates[b];
          row.replicates[b] += coef[t][o] * f;
        }
      }
      row.sigma = sample_sd(row.replicates);
    } else {
      row.sigma = orbit_marginal_sigma(part, sig, static_cast<int>(t));
    }
    out.table.rows.push_back(std::move(row));
  }
  return out;
}

}  // namespace

bool CerResult::all_ok() const {
  return std::all_of(tables.begin(), tables.end(), [](const auto& t) { return t.ok(); });
}

const SupportResult& CerResult::at(const QubitSet& a) const {
  for (const auto& t : tables) {
    if (t.support == a) return t;
  }
  throw std::out_of_range("no table for support " + a.to_string());
}

CerResult cer_run(const CerConfig& config, const Cycle& hard, int n, const NoiseModel& model,
                  uint64_t job_offset) {
  CerResult res;
  res.cycle_id = hard.id;
  res.hard = hard;
  res.cycle_label = describe_cycle(hard, n);
  res.n = n;
  res.k = config.k;
  res.config = config;
  res.supports = parallel_supports(hard, n);
  if (config.k < 1 || config.k > static_cast<int>(res.supports.size())) {
    throw std::invalid_argument("k must lie in [1, " + std::to_string(res.supports.size()) + "]");
  }
  CliffordOp h = hard.clifford(n);
  auto unions = support_unions(res.supports, config.k);
  for (size_t u = 0; u < unions.size(); ++u) {
    OrbitPartition part(unions[u], h);
    std::vector<Pauli> queries;
    for (const auto& orb : part.orbits()) {
      if (!orb.representative().is_identity()) queries.push_back(orb.representative());
    }
    PieResult pie = pie_oracle(queries, hard, n, config.pie, model, config.seed,
                               job_offset + static_cast<uint64_t>(u) + 1);
    std::vector<FidelityEstimate> fids;
    for (const auto& orb : part.orbits()) {
      if (orb.representative().is_identity()) {
        FidelityEstimate one;
        one.f = 1.0;
        fids.push_back(one);
      } else {
        fids.push_back(pie.for_query(orb.representative()).estimate);
      }
    }
    SupportResult sr = build_table(part, fids);
    sr.label = support_label(hard, unions[u], n);
    sr.circuits = pie.circuits();
    res.tables.push_back(std::move(sr));
  }
  return res;
}

HeatmapData heatmap_table(const std::vector<CerResult>& results, double threshold) {
  HeatmapData out;
  out.threshold = threshold;
  if (!results.empty()) out.n = results.front().n;
  std::map<std::string, int> weight;
  for (const auto& r : results) {
    if (r.n != out.n) throw std::invalid_argument("results disagree on the register size");
    for (const auto& t : r.tables) {
      HeatmapColumn col;
      col.cycle_id = r.cycle_id;
      col.cycle_label = r.cycle_label;
      col.support = t.support;
      col.label = t.label;
      for (const auto& row : t.table.rows) {
        HeatmapCell cell{row.mu, row.sigma, row.status};
        std::string key;
        if (row.orbit.representative().is_identity()) {
          key = kInfidelityRow;
          cell.value = 1.0 - row.mu;
          weight[key] = 0;
        } else {
          key = row.orbit.label_on(t.support);
          weight[key] = row.orbit.representative().weight();
        }
        col.cells[key] = cell;
      }
      out.columns.push_back(std::move(col));
    }
  }
  for (const auto& [label, w] : weight) {
    bool keep = false;
    for (const auto& col : out.columns) {
      auto it = col.cells.find(label);
      if (it == col.cells.end()) continue;
      // unresolved cells carry NaN and always keep their row
      if (!(it->second.value < threshold)) keep = true;
    }
    if (keep) out.rows.push_back(label);
  }
  std::stable_sort(out.rows.begin(), out.rows.end(), [&](const auto& a, const auto& b) {
    if (weight[a] != weight[b]) return weight[a] < weight[b];
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

namespace {

void require_complete(const CerResult& r) {
  for (const auto& t : r.tables) {
    if (!t.ok()) {
      throw std::runtime_error("table " + t.label + " is unresolved: " + t.status);
    }
  }
}

// Site table by summing the rows of a union table over the other sites.
MarginalTable site_from_union(const MarginalTable& u, const QubitSet& site, const CliffordOp& h) {
  OrbitPartition part(site, h);
  MarginalTable out;
  out.support = site;
  size_t reps = u.rows.empty() ? 0 : u.rows.front().replicates.size();
  for (const auto& row : u.rows) {
    if (row.replicates.size() != reps) reps = 0;
  }
  for (const auto& orb : part.orbits()) {
    MarginalRow r;
    r.orbit = orb;
    r.replicates.assign(reps, 0.0);
    double var = 0.0;
    for (const auto& row : u.rows) {
      if (!orb.contains(row.orbit.representative().restricted(site))) continue;
      r.mu += row.mu;
      var += row.sigma * row.sigma;
      for (size_t b = 0; b < reps; ++b) r.replicates[b] += row.replicates[b];
    }
    r.sigma = reps >= 2 ? sample_sd(r.replicates) : std::sqrt(var);
    out.rows.push_back(std::move(r));
  }
  return out;
}

ReducedFit finish(ReducedModel model) {
  ReducedFit fit;
  fit.model = std::move(model);
  for (const auto& t : fit.model.terms) {
    if (!t.violation) continue;
    char buf[96];
    std::snprintf(buf, sizeof buf, " p = %.6g +/- %.3g", t.p, t.sigma);
    fit.violations.push_back(t.orbit.label_on(t.support) + " on " + t.support.to_string() + buf);
  }
  return fit;
}

}  // namespace

ReducedFit reduced_model_fit(const CerResult& result) {
  require_complete(result);
  const auto& sites = result.supports;
  std::vector<MarginalTable> site_tables, pair_tables;
  if (sites.size() == 1) {
    site_tables.push_back(result.tables.at(0).table);
  } else {
    if (result.k != 2) {
      throw std::invalid_argument("weight-2 reconstruction needs the k = 2 tables");
    }
    for (const auto& t : result.tables) pair_tables.push_back(t.table);
    CliffordOp h = result.hard.clifford(result.n);
    for (const auto& s : sites) {
      const SupportResult* src = nullptr;
      for (const auto& t : result.tables) {
        if (s.subset_of(t.support)) {
          src = &t;
          break;
        }
      }
      site_tables.push_back(site_from_union(src->table, s, h));
    }
  }
  return finish(weight2_inversion(sites, site_tables, pair_tables, result.n));
}

ReducedFit reduced_model_fit(const CerResult& sites, const CerResult& pairs) {
  require_complete(sites);
  require_complete(pairs);
  if (sites.k != 1 || (sites.supports.size() > 1 && pairs.k != 2)) {
    throw std::invalid_argument("expected a k = 1 and a k = 2 result");
  }
  if (sites.cycle_id != pairs.cycle_id || sites.n != pairs.n) {
    throw std::invalid_argument("results describe different cycles");
  }
  std::vector<MarginalTable> st, pt;
  for (const auto& t : sites.tables) st.push_back(t.table);
  for (const auto& t : pairs.tables) pt.push_back(t.table);
  return finish(weight2_inversion(sites.supports, st, pt, sites.n));
}

}  // namespace cyclerec
