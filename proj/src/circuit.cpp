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

#include "cyclerec/circuit.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace cyclerec {

namespace {

CliffordOp pauli_clifford(const Pauli& p) {
  // conjugation by P flips the sign of anticommuting generators
  int n = p.num_qubits();
  std::vector<Pauli> xs, zs;
  for (int q = 0; q < n; ++q) {
    Pauli x = Pauli::single(n, q, 'X'), z = Pauli::single(n, q, 'Z');
    xs.push_back(chi(p, x) == 1 ? x : x.negated());
    zs.push_back(chi(p, z) == 1 ? z : z.negated());
  }
  return CliffordOp::from_images(xs, zs);
}

std::string join_qubits(const std::vector<int>& qs) {
  std::string s;
  for (size_t i = 0; i < qs.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(qs[i]);
  }
  return s;
}

}  // namespace

CliffordOp Cycle::clifford(int n) const { return clifford_from_cycle(gates, n); }

std::vector<QubitSet> parallel_supports(const Cycle& h, int n) {
  (void)h.clifford(n);
  uint64_t covered = 0;
  std::vector<QubitSet> out;
  for (const auto& g : h.gates) {
    if (is_two_qubit_gate(g.name)) {
      out.push_back(g.support());
    } else {
      for (int q : g.qubits) out.push_back(QubitSet{q});
    }
    covered |= g.support().mask();
  }
  for (int q = 0; q < n; ++q) {
    if (!((covered >> q) & 1)) out.push_back(QubitSet{q});
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<QubitSet> support_unions(const std::vector<QubitSet>& supports, int k) {
  int s = static_cast<int>(supports.size());
  if (k < 1 || k > s) {
    throw std::invalid_argument("union order k=" + std::to_string(k) + " outside [1, " +
                                std::to_string(s) + "]");
  }
  std::set<QubitSet> out;
  std::vector<int> pick(k);
  for (int i = 0; i < k; ++i) pick[i] = i;
  for (;;) {
    QubitSet u;
    for (int i : pick) u = u | supports[i];
    out.insert(u);
    int i = k - 1;
    while (i >= 0 && pick[i] == s - k + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
  return {out.begin(), out.end()};
}

std::string support_label(const Cycle& h, const QubitSet& a, int n) {
  std::string s;
  for (const QubitSet& part : parallel_supports(h, n)) {
    if (!part.subset_of(a)) continue;
    std::string name = "I";
    std::vector<int> order = part.indices();
    for (const auto& g : h.gates) {
      if (part.subset_of(g.support())) {
        name = g.name;
        if (is_two_qubit_gate(g.name)) order = g.qubits;
      }
    }
    if (!s.empty()) s += "; ";
    std::string qs = join_qubits(order);
    s += (order.size() > 1 ? "(" + qs + ")" : qs) + ": " + name;
  }
  return s;
}

std::string describe_cycle(const Cycle& h, int n) {
  // two-qubit gates as is; single-qubit gates and idles grouped by name
  std::vector<std::string> parts;
  std::vector<std::pair<std::string, std::vector<int>>> singles;
  uint64_t covered = 0;
  auto add_single = [&](const std::string& name, int q) {
    for (auto& [nm, qs] : singles) {
      if (nm == name) {
        qs.push_back(q);
        return;
      }
    }
    singles.push_back({name, {q}});
  };
  for (const auto& g : h.gates) {
    covered |= g.support().mask();
    if (is_two_qubit_gate(g.name)) {
      parts.push_back("(" + join_qubits(g.qubits) + "): " + g.name);
    } else {
      for (int q : g.qubits) add_single(g.name, q);
    }
  }
  for (int q = 0; q < n; ++q) {
    if (!((covered >> q) & 1)) add_single("I", q);
  }
  for (auto& [nm, qs] : singles) {
    std::sort(qs.begin(), qs.end());
    std::string q = join_qubits(qs);
    parts.push_back((qs.size() > 1 ? "(" + q + ")" : q) + ": " + nm);
  }
  std::string s = "{";
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) s += "; ";
    s += parts[i];
  }
  return s + "}";
}

CliffordOp EasyLayer::clifford(int n) const {
  CliffordOp c = pauli_clifford(before);
  c = CliffordOp::compose(clifford_from_cycle(basis, n), c);
  return CliffordOp::compose(pauli_clifford(after), c);
}

CbCircuit CbCircuit::make(int n, const Cycle& hard, std::vector<Gate> e0, std::vector<Gate> em,
                          int m) {
  if (m < 1) throw std::invalid_argument("sequence length m must be >= 1");
  if (hard.kind != Cycle::Kind::kHard) throw std::invalid_argument("CB circuit needs a hard cycle");
  for (const auto* layer : {&e0, &em}) {
    for (const auto& g : *layer) {
      if (is_two_qubit_gate(g.name)) {
        throw std::invalid_argument("boundary easy cycles take single-qubit gates only");
      }
    }
  }
  CbCircuit c;
  c.n = n;
  c.hard = hard;
  c.h = hard.clifford(n);
  c.e0 = std::move(e0);
  c.em = std::move(em);
  c.m = m;
  (void)clifford_from_cycle(c.e0, n);
  (void)clifford_from_cycle(c.em, n);
  return c;
}

CliffordOp CbCircuit::ideal() const {
  CliffordOp u = clifford_from_cycle(e0, n);
  u = CliffordOp::compose(h.power(m), u);
  return CliffordOp::compose(clifford_from_cycle(em, n), u);
}

CliffordOp CompiledInstance::ideal(const CliffordOp& h) const {
  CliffordOp u = easy.front().clifford(n);
  for (size_t i = 1; i < easy.size(); ++i) {
    u = CliffordOp::compose(h, u);
    u = CliffordOp::compose(easy[i].clifford(n), u);
  }
  return u;
}

Pauli correction_gate(const CliffordOp& h, const Pauli& t) {
  return h.inverse().conjugate_phaseless(t);
}

Pauli random_pauli(int n, RngStream& rng) { return Pauli(n, rng.bits(n), rng.bits(n)); }

CompiledInstance randomized_compile(const CbCircuit& base, RngStream& rng) {
  int n = base.n;
  CliffordOp h_inv = base.h.inverse();
  CompiledInstance inst;
  inst.n = n;
  Pauli prev = Pauli::identity(n);
  for (int i = 0; i < base.m; ++i) {
    Pauli t = random_pauli(n, rng);
    EasyLayer layer;
    layer.before = prev;
    if (i == 0) layer.basis = base.e0;
    layer.after = h_inv.conjugate_phaseless(t);
    inst.easy.push_back(std::move(layer));
    inst.record.twirls.push_back(t);
    prev = t;
  }
  inst.record.frame = random_pauli(n, rng);
  EasyLayer last;
  last.before = prev;
  last.basis = base.em;
  last.after = inst.record.frame;
  inst.easy.push_back(std::move(last));
  return inst;
}

}  // namespace cyclerec
