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

#include "cyclerec/reports.hpp"

#include <openssl/evp.h>

#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace cyclerec {

using nlohmann::json;

namespace {

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json qubits(const QubitSet& s) { return json(s.indices()); }

json estimate_json(const FidelityEstimate& e) {
  return {{"f", number(e.f)}, {"sigma", number(e.sigma)}, {"status", e.status}};
}

json stamp(const char* schema, const ReportHeader& h) {
  return {{"schema", schema}, {"config_sha256", h.config_sha256}, {"seed", h.seed}};
}

std::string csv_header(const char* schema, const ReportHeader& h) {
  return std::string("# schema=") + schema + "\n# config_sha256=" + h.config_sha256 +
         "\n# seed=" + std::to_string(h.seed) + "\n";
}

json orbit_members(const OrbitSet& o, const QubitSet& a) {
  json m = json::array();
  for (const auto& p : o.members) m.push_back(p.label_on(a));
  return m;
}

json settings_json(const PieSettings& s) {
  return {{"m", s.m},
          {"randomizations", s.randomizations},
          {"shots", s.shots},
          {"bootstrap", s.bootstrap},
          {"noise_floor", s.noise_floor}};
}

json reduced_json(const ReducedFit& fit) {
  json terms = json::array();
  for (const auto& t : fit.model.terms) {
    terms.push_back({{"support", qubits(t.support)},
                     {"orbit", orbit_members(t.orbit, t.support)},
                     {"label", t.orbit.label_on(t.support)},
                     {"p", number(t.p)},
                     {"sigma", number(t.sigma)},
                     {"violation", t.violation}});
  }
  return {{"identity_p", number(fit.model.identity_p)},
          {"identity_sigma", number(fit.model.identity_sigma)},
          {"terms", terms},
          {"violations", fit.violations}};
}

}  // namespace

std::string sha256_hex(std::string_view data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 failed");
  }
  static const char* kHex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[md[i] >> 4];
    out += kHex[md[i] & 15];
  }
  return out;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "NaN";
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

json pie_to_json(const PieResult& pie, const Cycle& hard, int n,
                 const std::vector<ResolveOutcome>& resolved, const ReportHeader& h) {
  json j = stamp(kPieSchema, h);
  QubitSet all = QubitSet::range(n);
  j["cycle"] = {{"id", hard.id}, {"label", describe_cycle(hard, n)}};
  j["n"] = n;
  j["settings"] = settings_json(pie.settings);
  json groups = json::array();
  for (const auto& g : pie.groups) {
    json members = json::array();
    for (const auto& p : g.members) members.push_back(p.to_string());
    groups.push_back(
        {{"letters", g.letters}, {"final_letters", g.final_letters}, {"members", members}});
  }
  j["groups"] = groups;
  json orbits = json::array();
  for (const auto& o : pie.orbits) {
    json records = json::array();
    for (const auto& r : o.records) {
      records.push_back({{"m", r.m}, {"N", number(r.N)}, {"se", number(r.se)}});
    }
    json e = estimate_json(o.estimate);
    e["members"] = orbit_members(o.orbit, all);
    e["measured"] = o.measured.label();
    e["records"] = records;
    orbits.push_back(e);
  }
  j["orbits"] = orbits;
  json queries = json::array();
  for (const auto& [q, idx] : pie.query_orbit) {
    json e = estimate_json(pie.orbits[idx].estimate);
    e["query"] = q.to_string();
    e["orbit"] = idx;
    queries.push_back(e);
  }
  j["queries"] = queries;
  json res = json::array();
  for (const auto& r : resolved) {
    json e = {{"query", r.query.to_string()}, {"status", r.status}};
    if (r.estimate) {
      const auto& x = *r.estimate;
      e["orbit"] = orbit_members(x.orbit, all);
      e["m"] = x.m;
      e["A"] = number(x.A);
      e["p"] = number(x.p);
      e["N3"] = number(x.N3);
      e["f"] = number(x.estimate.f);
      e["sigma"] = number(x.estimate.sigma);
      e["status"] = x.estimate.status;
      e["caveat"] = x.caveat;
    }
    res.push_back(e);
  }
  j["resolved"] = res;
  return j;
}

std::string decays_csv(const PieResult& pie, const ReportHeader& h) {
  std::ostringstream out;
  out << csv_header(kDecaySchema, h);
  out << "orbit,measured,m,N,se,shots,randomizations\n";
  for (size_t i = 0; i < pie.orbits.size(); ++i) {
    for (const auto& r : pie.orbits[i].records) {
      out << i << ',' << r.query.label() << ',' << r.m << ',' << format_number(r.N) << ','
          << format_number(r.se) << ',' << r.shots << ',' << r.randomizations << '\n';
    }
  }
  return out.str();
}

json cer_result_json(const CerResult& r) {
  json supports = json::array();
  for (const auto& s : r.supports) supports.push_back(qubits(s));
  json tables = json::array();
  for (const auto& t : r.tables) {
    json rows = json::array();
    for (size_t i = 0; i < t.table.rows.size(); ++i) {
      const auto& row = t.table.rows[i];
      rows.push_back({{"orbit", orbit_members(row.orbit, t.support)},
                      {"label", row.orbit.label_on(t.support)},
                      {"mu", number(row.mu)},
                      {"sigma", number(row.sigma)},
                      {"status", row.status},
                      {"fidelity", estimate_json(t.fidelities.at(i))}});
    }
    tables.push_back({{"support", qubits(t.support)},
                      {"label", t.label},
                      {"status", t.status},
                      {"circuits", t.circuits},
                      {"sum", number(t.ok() ? t.table.sum() : NAN)},
                      {"rows", rows}});
  }
  json j = {{"id", r.cycle_id}, {"label", r.cycle_label}, {"n", r.n},
            {"k", r.k},         {"supports", supports},   {"tables", tables}};
  j["reduced_model"] = nullptr;
  if (r.all_ok() && (r.k == 2 || r.supports.size() == 1)) {
    j["reduced_model"] = reduced_json(reduced_model_fit(r));
  }
  return j;
}

json cer_to_json(const std::vector<CerResult>& results, const ReportHeader& h) {
  json j = stamp(kCerSchema, h);
  if (!results.empty()) {
    j["n"] = results.front().n;
    j["k"] = results.front().k;
    j["threshold"] = results.front().config.threshold;
    j["settings"] = settings_json(results.front().config.pie);
  }
  json cycles = json::array();
  bool ok = true;
  for (const auto& r : results) {
    cycles.push_back(cer_result_json(r));
    ok = ok && r.all_ok();
  }
  j["cycles"] = cycles;
  j["status"] = ok ? "ok" : "partial";
  return j;
}

std::string heatmap_csv(const HeatmapData& data, const ReportHeader& h) {
  std::ostringstream out;
  out << csv_header(kHeatmapSchema, h);
  out << "# threshold=" << format_number(data.threshold) << "\n";
  out << "row";
  for (const auto& c : data.columns) {
    std::string name = c.cycle_id + "/" + c.label;
    out << ',' << csv_field(name) << ',' << csv_field(name + "/sigma");
  }
  out << '\n';
  for (const auto& row : data.rows) {
    out << csv_field(row);
    for (const auto& c : data.columns) {
      auto it = c.cells.find(row);
      if (it == c.cells.end()) {
        out << ",,";
      } else {
        out << ',' << format_number(it->second.value) << ',' << format_number(it->second.sigma);
      }
    }
    out << '\n';
  }
  return out.str();
}

json sc_to_json(const Calibration& cal, const ScConfig& config, const ReportHeader& h) {
  json j = stamp(kScSchema, h);
  j["cycle"] = config.cycle_id;
  j["settings"] = settings_json(config.pie);
  json axes = json::array();
  int n = cal.before.n;
  for (size_t i = 0; i < cal.sweep.axes.size(); ++i) {
    const auto& ax = cal.sweep.axes[i];
    json points = json::array();
    for (size_t p = 0; p < ax.theta_deg.size(); ++p) {
      points.push_back({{"theta_deg", ax.theta_deg[p]},
                        {"objective", number(ax.objective[p].value)},
                        {"sigma", number(ax.objective[p].sigma)},
                        {"status", ax.objective[p].status}});
    }
    json cov = json::array();
    for (const auto& r : ax.fit.cov) cov.push_back({number(r[0]), number(r[1]), number(r[2])});
    json residuals = json::array();
    for (double r : ax.fit.residuals) residuals.push_back(number(r));
    json queries = json::array(), targets = json::array();
    for (const auto& q : ax.axis.queries) queries.push_back(q.to_string());
    for (const auto& t : axis_targets(ax.axis, n)) targets.push_back(t.to_string());
    axes.push_back({{"name", ax.axis.name},
                    {"qubit", ax.axis.qubit},
                    {"axis", std::string(1, ax.axis.axis)},
                    {"queries", queries},
                    {"targets", targets},
                    {"points", points},
                    {"fit",
                     {{"a", number(ax.fit.a)},
                      {"b", number(ax.fit.b)},
                      {"c", number(ax.fit.c)},
                      {"cov", cov},
                      {"chi2", number(ax.fit.chi2)},
                      {"dof", ax.fit.dof},
                      {"residuals", residuals},
                      {"status", ax.fit.status},
                      {"extrapolated", ax.fit.extrapolated}}},
                    {"theta_star_deg", number(cal.sweep.theta_star_deg[i])},
                    {"theta_star_sigma_deg", number(cal.sweep.theta_star_sigma_deg[i])},
                    {"applied_deg", cal.applied_deg[i]}});
  }
  j["axes"] = axes;
  json targets = json::array();
  for (const auto& t : cal.targets) {
    targets.push_back({{"axis", t.axis},
                       {"target", t.target.to_string()},
                       {"support", qubits(t.support)},
                       {"before", number(t.before)},
                       {"before_sigma", number(t.before_sigma)},
                       {"after", number(t.after)},
                       {"after_sigma", number(t.after_sigma)},
                       {"factor", number(t.factor)}});
  }
  j["targets"] = targets;
  j["aggregate"] = {{"before", number(cal.aggregate_before)},
                    {"after", number(cal.aggregate_after)},
                    {"factor", number(cal.aggregate_factor)}};
  j["status"] = cal.ok() ? "ok" : "partial";
  return j;
}

std::string sweep_csv(const ScSweep& sweep, const ReportHeader& h) {
  std::ostringstream out;
  out << csv_header(kSweepSchema, h);
  out << "axis,theta_deg,objective,sigma,status,fitted\n";
  for (const auto& ax : sweep.axes) {
    for (size_t p = 0; p < ax.theta_deg.size(); ++p) {
      double x = ax.theta_deg[p];
      double fitted = ax.fit.status == "too few points" || ax.fit.status == "ill-conditioned"
                          ? NAN
                          : ax.fit.a * x * x + ax.fit.b * x + ax.fit.c;
      out << csv_field(ax.axis.name) << ',' << format_number(x) << ','
          << format_number(ax.objective[p].value) << ',' << format_number(ax.objective[p].sigma)
          << ',' << csv_field(ax.objective[p].status) << ',' << format_number(fitted) << '\n';
    }
  }
  return out.str();
}

json samples_to_json(const std::vector<InstanceResult>& batch, const CbCircuit& base,
                     const ReportHeader& h) {
  json j = stamp(kSimSchema, h);
  j["cycle"] = base.hard.id;
  j["n"] = base.n;
  j["m"] = base.m;
  json inst = json::array();
  for (const auto& r : batch) {
    json twirls = json::array();
    for (const auto& t : r.instance.record.twirls) twirls.push_back(t.label());
    json counts = json::object();
    for (const auto& [bits, k] : r.counts()) {
      std::string s(base.n, '0');
      for (int q = 0; q < base.n; ++q) s[q] = ((bits >> q) & 1) ? '1' : '0';
      counts[s] = k;
    }
    inst.push_back({{"twirls", twirls}, {"frame", r.instance.record.frame.label()},
                    {"counts", counts}});
  }
  j["instances"] = inst;
  return j;
}

}  // namespace cyclerec
