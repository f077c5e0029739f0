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

#include "cyclerec/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "cyclerec/reports.hpp"
#include "json.hpp"

namespace cyclerec {

namespace {

using nlohmann::json;

// JSON object view that remembers which keys were read, so that leftovers
// can be rejected by name.
class Section {
 public:
  Section(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) fail("must be an object");
  }

  const std::string& path() const { return path_; }
  std::string key_path(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  bool has(const std::string& key) const { return j_.contains(key); }

  const json& at(const std::string& key) {
    used_.insert(key);
    if (!j_.contains(key)) throw ConfigError("missing required key '" + key_path(key) + "'");
    return j_.at(key);
  }

  const json* find(const std::string& key) {
    used_.insert(key);
    auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  Section child(const std::string& key) { return Section(at(key), key_path(key)); }

  std::string string(const std::string& key) {
    const json& v = at(key);
    if (!v.is_string()) throw ConfigError("'" + key_path(key) + "' must be a string");
    return v.get<std::string>();
  }

  std::string string_or(const std::string& key, const std::string& dflt) {
    return has(key) ? string(key) : (used_.insert(key), dflt);
  }

  int64_t integer(const std::string& key) { return as_integer(at(key), key_path(key)); }
  int64_t integer_or(const std::string& key, int64_t dflt) {
    return has(key) ? integer(key) : (used_.insert(key), dflt);
  }

  double number(const std::string& key) { return as_number(at(key), key_path(key)); }
  double number_or(const std::string& key, double dflt) {
    return has(key) ? number(key) : (used_.insert(key), dflt);
  }

  void done() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!used_.count(it.key())) throw ConfigError("unknown key '" + key_path(it.key()) + "'");
    }
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ConfigError("'" + (path_.empty() ? std::string("<root>") : path_) + "' " + what);
  }

  static int64_t as_integer(const json& v, const std::string& path) {
    if (!v.is_number_integer()) throw ConfigError("'" + path + "' must be an integer");
    return v.get<int64_t>();
  }
  static double as_number(const json& v, const std::string& path) {
    if (!v.is_number()) throw ConfigError("'" + path + "' must be a number");
    double d = v.get<double>();
    if (!std::isfinite(d)) throw ConfigError("'" + path + "' must be finite");
    return d;
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> used_;
};

const json& array_at(Section& s, const std::string& key) {
  const json& v = s.at(key);
  if (!v.is_array()) throw ConfigError("'" + s.key_path(key) + "' must be an array");
  return v;
}

int positive_int(Section& s, const std::string& key, int dflt) {
  int64_t v = s.integer_or(key, dflt);
  if (v < 1 || v > 100000000) throw ConfigError("'" + s.key_path(key) + "' must be positive");
  return static_cast<int>(v);
}

std::vector<int> int_list(Section& s, const std::string& key) {
  std::vector<int> out;
  const json& a = array_at(s, key);
  for (size_t i = 0; i < a.size(); ++i) {
    out.push_back(static_cast<int>(
        Section::as_integer(a[i], s.key_path(key) + "[" + std::to_string(i) + "]")));
  }
  return out;
}

std::vector<Pauli> pauli_list(Section& s, const std::string& key, int n) {
  std::vector<Pauli> out;
  const json& a = array_at(s, key);
  for (size_t i = 0; i < a.size(); ++i) {
    std::string p = s.key_path(key) + "[" + std::to_string(i) + "]";
    if (!a[i].is_string()) throw ConfigError("'" + p + "' must be a Pauli string");
    try {
      out.push_back(parse_pauli_text(a[i].get<std::string>(), n));
    } catch (const std::invalid_argument& e) {
      throw ConfigError("'" + p + "': " + e.what());
    }
  }
  return out;
}

std::vector<Gate> gate_list(const json& a, const std::string& path) {
  if (!a.is_array()) throw ConfigError("'" + path + "' must be an array");
  std::vector<Gate> out;
  for (size_t i = 0; i < a.size(); ++i) {
    Section g(a[i], path + "[" + std::to_string(i) + "]");
    Gate gate;
    gate.name = g.string("gate");
    gate.qubits = int_list(g, "qubits");
    g.done();
    if (!is_known_gate(gate.name)) {
      throw ConfigError("'" + g.key_path("gate") + "': unknown gate '" + gate.name + "'");
    }
    out.push_back(std::move(gate));
  }
  return out;
}

PauliDistribution distribution(const json& j, const std::string& path, int n) {
  Section s(j, path);
  PauliDistribution d(n);
  bool has_identity = false;
  for (auto it = j.begin(); it != j.end(); ++it) {
    std::string p = s.key_path(it.key());
    s.find(it.key());
    Pauli q;
    try {
      q = parse_pauli_text(it.key(), n);
    } catch (const std::invalid_argument& e) {
      throw ConfigError("'" + p + "': " + e.what());
    }
    double w = Section::as_number(it.value(), p);
    if (w < 0 || w > 1) throw ConfigError("'" + p + "' must lie in [0, 1]");
    has_identity = has_identity || q.is_identity();
    d.add(q, w);
  }
  if (!has_identity) d.add(Pauli::identity(n), std::max(0.0, 1.0 - d.total()));
  try {
    d.validate(1e-9);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("'" + path + "': " + e.what());
  }
  return d;
}

std::vector<double> per_qubit(Section& s, const std::string& key, int n) {
  const json* v = s.find(key);
  if (!v) return {};
  std::string path = s.key_path(key);
  std::vector<double> out;
  if (v->is_number()) {
    out.assign(n, Section::as_number(*v, path));
  } else if (v->is_array()) {
    if (static_cast<int>(v->size()) != n) {
      throw ConfigError("'" + path + "' needs one entry per qubit");
    }
    for (size_t i = 0; i < v->size(); ++i) {
      out.push_back(Section::as_number((*v)[i], path + "[" + std::to_string(i) + "]"));
    }
  } else {
    throw ConfigError("'" + path + "' must be a number or an array");
  }
  for (double p : out) {
    if (p < 0 || p > 1) throw ConfigError("'" + path + "' entries must lie in [0, 1]");
  }
  return out;
}

char axis_letter(Section& s, const std::string& key) {
  std::string a = s.string(key);
  if (a != "X" && a != "Y" && a != "Z") throw ConfigError("'" + s.key_path(key) + "' must be X, Y or Z");
  return a[0];
}

PieSettings pie_settings(Section& parent) {
  PieSettings p;
  if (!parent.has("settings")) {
    parent.find("settings");
    return p;
  }
  Section s = parent.child("settings");
  if (s.has("m")) p.m = int_list(s, "m");
  p.randomizations = positive_int(s, "randomizations", p.randomizations);
  p.shots = positive_int(s, "shots", p.shots);
  int64_t b = s.integer_or("bootstrap", p.bootstrap);
  if (b < 0) throw ConfigError("'" + s.key_path("bootstrap") + "' must be non-negative");
  p.bootstrap = static_cast<int>(b);
  p.noise_floor = s.number_or("noise_floor", p.noise_floor);
  s.done();
  return p;
}

void require_cycle(const ExperimentConfig& c, const std::string& id, const std::string& path) {
  for (const auto& cy : c.cycles) {
    if (cy.id == id) return;
  }
  throw ConfigError("'" + path + "': unknown cycle '" + id + "'");
}

void parse_noise(ExperimentConfig& c, Section& root) {
  for (const auto& cy : c.cycles) c.model.per_cycle_errors[cy.id] = PauliDistribution::identity(c.n);
  c.model.n = c.n;
  if (!root.has("noise")) {
    root.find("noise");
    return;
  }
  Section noise = root.child("noise");
  if (noise.has("cycles")) {
    Section per = noise.child("cycles");
    const json& obj = noise.at("cycles");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      per.find(it.key());
      require_cycle(c, it.key(), per.key_path(it.key()));
      Section cy(it.value(), per.key_path(it.key()));
      if (cy.has("pauli")) {
        c.model.per_cycle_errors[it.key()] = distribution(cy.at("pauli"), cy.key_path("pauli"), c.n);
      }
      if (cy.has("first_cycle")) {
        c.model.first_cycle_errors[it.key()] =
            distribution(cy.at("first_cycle"), cy.key_path("first_cycle"), c.n);
      }
      if (cy.has("coherent")) {
        const json& a = array_at(cy, "coherent");
        for (size_t i = 0; i < a.size(); ++i) {
          Section t(a[i], cy.key_path("coherent") + "[" + std::to_string(i) + "]");
          CoherentTerm term;
          term.qubit = static_cast<int>(t.integer("qubit"));
          if (term.qubit < 0 || term.qubit >= c.n) t.fail("qubit out of range");
          term.axis = axis_letter(t, "axis");
          term.angle = t.number("angle_deg") * std::numbers::pi / 180.0;
          t.done();
          c.model.coherent_terms[it.key()].push_back(term);
        }
      }
      cy.done();
    }
    per.done();
  }
  if (noise.has("easy")) c.model.easy_error = distribution(noise.at("easy"), noise.key_path("easy"), c.n);
  c.model.meas_flip = per_qubit(noise, "meas_flip", c.n);
  c.model.prep_flip = per_qubit(noise, "prep_flip", c.n);
  noise.done();
}

void parse_pie(ExperimentConfig& c, Section& p) {
  c.pie.cycle_id = p.string("cycle");
  require_cycle(c, c.pie.cycle_id, p.key_path("cycle"));
  if (p.has("queries")) c.pie.queries = pauli_list(p, "queries", c.n);
  if (p.has("supports")) {
    const json& a = array_at(p, "supports");
    for (size_t i = 0; i < a.size(); ++i) {
      std::string path = p.key_path("supports") + "[" + std::to_string(i) + "]";
      if (!a[i].is_array()) throw ConfigError("'" + path + "' must be an array of qubits");
      std::vector<int> q;
      for (const auto& v : a[i]) q.push_back(static_cast<int>(Section::as_integer(v, path)));
      QubitSet s(q);
      if (s.empty() || s.max_index() >= c.n) throw ConfigError("'" + path + "' is not a valid support");
      auto sub = enumerate_subgroup(s, c.n);
      c.pie.queries.insert(c.pie.queries.end(), sub.begin() + 1, sub.end());
    }
  }
  if (p.has("resolve")) c.pie.resolve = pauli_list(p, "resolve", c.n);
  if (c.pie.queries.empty() && c.pie.resolve.empty()) p.fail("needs queries, supports or resolve");
  c.pie.settings = pie_settings(p);
  if (p.has("resolve_settings")) {
    Section r = p.child("resolve_settings");
    auto& rs = c.pie.resolve_settings;
    if (r.has("m")) rs.m = int_list(r, "m");
    rs.randomizations = positive_int(r, "randomizations", rs.randomizations);
    rs.shots = positive_int(r, "shots", rs.shots);
    rs.bootstrap = static_cast<int>(r.integer_or("bootstrap", rs.bootstrap));
    rs.noise_floor = r.number_or("noise_floor", rs.noise_floor);
    r.done();
  } else {
    p.find("resolve_settings");
  }
}

void parse_cer(ExperimentConfig& c, Section& p) {
  if (p.has("cycles")) {
    const json& a = array_at(p, "cycles");
    for (size_t i = 0; i < a.size(); ++i) {
      std::string path = p.key_path("cycles") + "[" + std::to_string(i) + "]";
      if (!a[i].is_string()) throw ConfigError("'" + path + "' must be a cycle id");
      require_cycle(c, a[i].get<std::string>(), path);
      c.cer.cycles.push_back(a[i].get<std::string>());
    }
    if (c.cer.cycles.empty()) throw ConfigError("'" + p.key_path("cycles") + "' is empty");
  } else {
    p.find("cycles");
    for (const auto& cy : c.cycles) c.cer.cycles.push_back(cy.id);
  }
  c.cer.cer.k = static_cast<int>(p.integer_or("k", 2));
  c.cer.cer.threshold = p.number_or("threshold", kDefaultRowThreshold);
  c.cer.cer.pie = pie_settings(p);
  for (const auto& id : c.cer.cycles) {
    int s = static_cast<int>(parallel_supports(c.cycle(id), c.n).size());
    if (c.cer.cer.k < 1 || c.cer.cer.k > s) {
      throw ConfigError("'" + p.key_path("k") + "' must lie in [1, " + std::to_string(s) +
                        "] for cycle '" + id + "'");
    }
  }
}

void parse_sc(ExperimentConfig& c, Section& p) {
  auto& sc = c.sc;
  sc.cycle_id = p.string("cycle");
  require_cycle(c, sc.cycle_id, p.key_path("cycle"));
  const json& axes = array_at(p, "axes");
  if (axes.empty()) throw ConfigError("'" + p.key_path("axes") + "' is empty");
  for (size_t i = 0; i < axes.size(); ++i) {
    Section a(axes[i], p.key_path("axes") + "[" + std::to_string(i) + "]");
    ScAxis ax;
    ax.name = a.string_or("name", "axis" + std::to_string(i));
    ax.qubit = static_cast<int>(a.integer("qubit"));
    if (ax.qubit < 0 || ax.qubit >= c.n) a.fail("qubit out of range");
    ax.axis = axis_letter(a, "axis");
    if (a.has("sweep_deg") == a.has("grid")) a.fail("needs exactly one of sweep_deg and grid");
    if (a.has("sweep_deg")) {
      const json& sw = array_at(a, "sweep_deg");
      for (size_t k = 0; k < sw.size(); ++k) {
        ax.sweep_deg.push_back(
            Section::as_number(sw[k], a.key_path("sweep_deg") + "[" + std::to_string(k) + "]"));
      }
      a.find("grid");
    } else {
      Section g = a.child("grid");
      double step = g.number_or("step_deg", 5.0);
      int points = static_cast<int>(g.integer_or("points", 9));
      g.done();
      if (points < 1) g.fail("needs at least one point");
      ax.sweep_deg = param_grid(step, points);
      a.find("sweep_deg");
    }
    if (ax.sweep_deg.empty()) throw ConfigError("'" + a.path() + "' has an empty sweep grid");
    ax.queries = pauli_list(a, "queries", c.n);
    if (a.has("targets")) {
      ax.targets = pauli_list(a, "targets", c.n);
    } else {
      a.find("targets");
    }
    a.done();
    sc.axes.push_back(std::move(ax));
  }
  sc.cer_k = static_cast<int>(p.integer_or("cer_k", 1));
  sc.threshold = p.number_or("threshold", kDefaultRowThreshold);
  sc.pie = pie_settings(p);
  try {
    validate_sc_config(sc, c.cycle(sc.cycle_id), c.n);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("'" + p.key_path("axes") + "': " + e.what());
  }
}

void parse_sim(ExperimentConfig& c, Section& p) {
  auto& s = c.sim;
  s.cycle_id = p.string("cycle");
  require_cycle(c, s.cycle_id, p.key_path("cycle"));
  s.m = positive_int(p, "m", 1);
  if (p.has("e0")) s.e0 = gate_list(p.at("e0"), p.key_path("e0"));
  else p.find("e0");
  if (p.has("em")) s.em = gate_list(p.at("em"), p.key_path("em"));
  else p.find("em");
  s.randomizations = positive_int(p, "randomizations", 1);
  s.shots = positive_int(p, "shots", 1);
}

}  // namespace

const Cycle& ExperimentConfig::cycle(const std::string& id) const {
  for (const auto& c : cycles) {
    if (c.id == id) return c;
  }
  throw ConfigError("unknown cycle '" + id + "'");
}

Pauli parse_pauli_text(const std::string& text, int n) {
  if (text.find('@') != std::string::npos) return Pauli::parse(text, n);
  Pauli p = Pauli::from_label(text);
  if (p.num_qubits() != n) {
    throw std::invalid_argument("label '" + text + "' does not span " + std::to_string(n) +
                                " qubits");
  }
  return p;
}

ExperimentConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
  ExperimentConfig c;
  c.sha256 = sha256_hex(text);
  Section root(j, "");
  if (root.has("schema") && root.string("schema") != kConfigSchema) {
    throw ConfigError("'schema' must be \"" + std::string(kConfigSchema) + "\"");
  }
  root.find("schema");
  const json& seed = root.at("seed");
  if (!seed.is_number_unsigned() && !(seed.is_number_integer() && seed.get<int64_t>() >= 0)) {
    throw ConfigError("'seed' must be a non-negative integer");
  }
  c.seed = seed.get<uint64_t>();
  int64_t n = root.integer("n");
  if (n < 1 || n > kMaxQubits) throw ConfigError("'n' must lie in [1, 64]");
  c.n = static_cast<int>(n);
  c.output_dir = root.string_or("output_dir", "");

  const json& cycles = array_at(root, "cycles");
  for (size_t i = 0; i < cycles.size(); ++i) {
    std::string path = "cycles[" + std::to_string(i) + "]";
    Section cy(cycles[i], path);
    Cycle cycle;
    cycle.id = cy.string("id");
    std::string kind = cy.string_or("kind", "hard");
    if (kind != "hard" && kind != "easy") throw ConfigError("'" + cy.key_path("kind") + "' must be hard or easy");
    cycle.kind = kind == "hard" ? Cycle::Kind::kHard : Cycle::Kind::kEasy;
    cycle.gates = gate_list(cy.at("gates"), cy.key_path("gates"));
    cy.done();
    try {
      cycle.clifford(c.n);
    } catch (const std::invalid_argument& e) {
      throw ConfigError("'" + path + "': " + e.what());
    }
    for (const auto& other : c.cycles) {
      if (other.id == cycle.id) throw ConfigError("'" + path + "': duplicate cycle id");
    }
    c.cycles.push_back(std::move(cycle));
  }

  parse_noise(c, root);
  try {
    c.model.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("'noise': ") + e.what());
  }

  Section p = root.child("protocol");
  c.kind = p.string("kind");
  if (c.kind == "pie") {
    parse_pie(c, p);
  } else if (c.kind == "cer") {
    parse_cer(c, p);
  } else if (c.kind == "sc") {
    parse_sc(c, p);
  } else if (c.kind == "sim") {
    parse_sim(c, p);
  } else if (c.kind != "oracle-check") {
    throw ConfigError("'protocol.kind' must be one of pie, cer, sc, oracle-check, sim");
  }
  p.done();
  root.done();
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace cyclerec
