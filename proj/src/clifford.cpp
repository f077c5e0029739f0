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

#include "cyclerec/clifford.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace cyclerec {

namespace {

int symplectic(const Pauli& a, const Pauli& b) { return chi(a, b) == -1 ? 1 : 0; }

void check_n(const CliffordOp& c, const Pauli& p) {
  if (c.num_qubits() != p.num_qubits()) {
    throw std::invalid_argument("Clifford/Pauli dimension mismatch: " +
                                std::to_string(c.num_qubits()) + " vs " +
                                std::to_string(p.num_qubits()));
  }
}

// Single-qubit images (x image, z image) on the qubit itself.
struct OneQubitRule {
  const char* name;
  const char* x_img;
  const char* z_img;
};

constexpr OneQubitRule kOneQubit[] = {
    {"I", "X", "Z"},     {"X", "X", "-Z"},   {"Y", "-X", "-Z"}, {"Z", "-X", "Z"},
    {"H", "Z", "X"},     {"S", "Y", "Z"},    {"Sdg", "-Y", "Z"}, {"H_YZ", "-X", "Y"},
};

const OneQubitRule* find_one_qubit(const std::string& name) {
  for (const auto& r : kOneQubit) {
    if (name == r.name) return &r;
  }
  return nullptr;
}

Pauli place(const char* img, int n, int q) {
  std::string_view s(img);
  bool neg = s.front() == '-';
  if (neg) s.remove_prefix(1);
  return Pauli::single(n, q, s.front()).with_sign(neg ? -1 : 1);
}

Pauli two(int n, int a, char la, int b, char lb) {
  return multiply(Pauli::single(n, a, la), Pauli::single(n, b, lb));
}

}  // namespace

const std::vector<std::string>& gate_vocabulary() {
  static const std::vector<std::string> v = {"I", "X",  "Y",    "Z",  "H",  "S",
                                             "Sdg", "H_YZ", "CX", "CZ", "SWAP"};
  return v;
}

bool is_known_gate(const std::string& name) {
  const auto& v = gate_vocabulary();
  return std::find(v.begin(), v.end(), name) != v.end();
}

bool is_two_qubit_gate(const std::string& name) {
  return name == "CX" || name == "CZ" || name == "SWAP";
}

CliffordOp CliffordOp::identity(int n) {
  std::vector<Pauli> xs, zs;
  for (int q = 0; q < n; ++q) {
    xs.push_back(Pauli::single(n, q, 'X'));
    zs.push_back(Pauli::single(n, q, 'Z'));
  }
  return from_images(std::move(xs), std::move(zs));
}

CliffordOp CliffordOp::from_images(std::vector<Pauli> x_images, std::vector<Pauli> z_images) {
  if (x_images.size() != z_images.size() || x_images.empty()) {
    throw std::invalid_argument("tableau needs n X images and n Z images");
  }
  CliffordOp c;
  c.n_ = static_cast<int>(x_images.size());
  for (const auto& p : x_images) {
    if (p.num_qubits() != c.n_) throw std::invalid_argument("tableau image has wrong length");
  }
  for (const auto& p : z_images) {
    if (p.num_qubits() != c.n_) throw std::invalid_argument("tableau image has wrong length");
  }
  c.x_img_ = std::move(x_images);
  c.z_img_ = std::move(z_images);
  if (!c.is_symplectic()) throw std::invalid_argument("tableau is not symplectic");
  return c;
}

Pauli CliffordOp::conjugate(const Pauli& p) const {
  check_n(*this, p);
  // P = (-1)^neg i^{|x&z|} X^x Z^z, conjugated factor by factor.
  PhasedPauli acc;
  acc.phase = ((p.negative() ? 2 : 0) + std::popcount(p.x_bits() & p.z_bits())) & 3;
  for (uint64_t m = p.x_bits(); m; m &= m - 1) acc *= PhasedPauli::from(x_img_[std::countr_zero(m)]);
  for (uint64_t m = p.z_bits(); m; m &= m - 1) acc *= PhasedPauli::from(z_img_[std::countr_zero(m)]);
  return acc.to_pauli(n_);
}

Pauli CliffordOp::conjugate_phaseless(const Pauli& p) const {
  check_n(*this, p);
  uint64_t x = 0, z = 0;
  for (uint64_t m = p.x_bits(); m; m &= m - 1) {
    const Pauli& img = x_img_[std::countr_zero(m)];
    x ^= img.x_bits();
    z ^= img.z_bits();
  }
  for (uint64_t m = p.z_bits(); m; m &= m - 1) {
    const Pauli& img = z_img_[std::countr_zero(m)];
    x ^= img.x_bits();
    z ^= img.z_bits();
  }
  return Pauli(n_, x, z);
}

CliffordOp CliffordOp::compose(const CliffordOp& after, const CliffordOp& before) {
  if (after.n_ != before.n_) throw std::invalid_argument("Clifford dimension mismatch");
  CliffordOp c;
  c.n_ = after.n_;
  for (int q = 0; q < c.n_; ++q) {
    c.x_img_.push_back(after.conjugate(before.x_img_[q]));
    c.z_img_.push_back(after.conjugate(before.z_img_[q]));
  }
  return c;
}

CliffordOp CliffordOp::inverse() const {
  // Q = prod_i C(X_i)^{<Q,C(Z_i)>} C(Z_i)^{<Q,C(X_i)>} up to sign, so
  // C^dagger Q C has x_i = <Q,C(Z_i)>, z_i = <Q,C(X_i)>.
  auto pre_image = [&](const Pauli& q) {
    uint64_t x = 0, z = 0;
    for (int i = 0; i < n_; ++i) {
      if (symplectic(q, z_img_[i])) x |= uint64_t{1} << i;
      if (symplectic(q, x_img_[i])) z |= uint64_t{1} << i;
    }
    return Pauli(n_, x, z);
  };
  CliffordOp inv;
  inv.n_ = n_;
  for (int q = 0; q < n_; ++q) {
    for (int which = 0; which < 2; ++which) {
      Pauli g = Pauli::single(n_, q, which == 0 ? 'X' : 'Z');
      Pauli d = pre_image(g);
      if (conjugate(d).negative()) d = d.negated();
      (which == 0 ? inv.x_img_ : inv.z_img_).push_back(d);
    }
  }
  return inv;
}

CliffordOp CliffordOp::power(int k) const {
  if (k < 0) return inverse().power(-k);
  CliffordOp result = identity(n_);
  CliffordOp base = *this;
  while (k) {
    if (k & 1) result = compose(base, result);
    base = compose(base, base);
    k >>= 1;
  }
  return result;
}

bool CliffordOp::is_symplectic() const {
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) {
      if (symplectic(x_img_[i], x_img_[j]) != 0) return false;
      if (symplectic(z_img_[i], z_img_[j]) != 0) return false;
      if (symplectic(x_img_[i], z_img_[j]) != (i == j ? 1 : 0)) return false;
    }
  }
  return true;
}

bool CliffordOp::is_pauli_action() const {
  for (int q = 0; q < n_; ++q) {
    if (!(x_img_[q] == Pauli::single(n_, q, 'X'))) return false;
    if (!(z_img_[q] == Pauli::single(n_, q, 'Z'))) return false;
  }
  return true;
}

bool operator==(const CliffordOp& a, const CliffordOp& b) {
  if (a.n_ != b.n_) return false;
  for (int q = 0; q < a.n_; ++q) {
    if (!a.x_img_[q].identical(b.x_img_[q]) || !a.z_img_[q].identical(b.z_img_[q])) return false;
  }
  return true;
}

CliffordOp gate_clifford(const Gate& g, int n) {
  for (int q : g.qubits) {
    if (q < 0 || q >= n) {
      throw std::invalid_argument("gate " + g.name + " qubit " + std::to_string(q) +
                                  " outside register of " + std::to_string(n));
    }
  }
  if (g.qubits.empty()) throw std::invalid_argument("gate " + g.name + " has no qubits");
  (void)g.support();  // rejects duplicates
  CliffordOp id = CliffordOp::identity(n);
  std::vector<Pauli> xs, zs;
  for (int q = 0; q < n; ++q) {
    xs.push_back(id.image_x(q));
    zs.push_back(id.image_z(q));
  }
  if (const OneQubitRule* r = find_one_qubit(g.name)) {
    for (int q : g.qubits) {
      xs[q] = place(r->x_img, n, q);
      zs[q] = place(r->z_img, n, q);
    }
    return CliffordOp::from_images(xs, zs);
  }
  if (!is_two_qubit_gate(g.name)) throw std::invalid_argument("unknown gate '" + g.name + "'");
  if (g.qubits.size() != 2) {
    throw std::invalid_argument("gate " + g.name + " needs exactly 2 qubits");
  }
  int a = g.qubits[0], b = g.qubits[1];
  if (g.name == "CX") {
    xs[a] = two(n, a, 'X', b, 'X');
    zs[b] = two(n, a, 'Z', b, 'Z');
  } else if (g.name == "CZ") {
    xs[a] = two(n, a, 'X', b, 'Z');
    xs[b] = two(n, a, 'Z', b, 'X');
  } else {  // SWAP
    xs[a] = Pauli::single(n, b, 'X');
    xs[b] = Pauli::single(n, a, 'X');
    zs[a] = Pauli::single(n, b, 'Z');
    zs[b] = Pauli::single(n, a, 'Z');
  }
  return CliffordOp::from_images(xs, zs);
}

CliffordOp clifford_from_cycle(const std::vector<Gate>& gates, int n) {
  uint64_t used = 0;
  CliffordOp c = CliffordOp::identity(n);
  for (const auto& g : gates) {
    if (!is_known_gate(g.name)) throw std::invalid_argument("unknown gate '" + g.name + "'");
    CliffordOp gc = gate_clifford(g, n);
    uint64_t m = g.support().mask();
    if (used & m) {
      throw std::invalid_argument("gate supports overlap at " +
                                  QubitSet::from_mask(used & m).to_string());
    }
    used |= m;
    c = CliffordOp::compose(gc, c);
  }
  return c;
}

Pauli conjugate(const CliffordOp& c, const Pauli& p) { return c.conjugate(p); }

int pauli_order(const CliffordOp& h) {
  CliffordOp p = h;
  for (int c = 1; c <= kMaxPauliOrder; ++c) {
    if (p.is_pauli_action()) return c;
    p = CliffordOp::compose(h, p);
  }
  throw std::runtime_error("Clifford order exceeds cap of " + std::to_string(kMaxPauliOrder));
}

bool OrbitSet::contains(const Pauli& p) const {
  return std::find(members.begin(), members.end(), p) != members.end();
}

std::string OrbitSet::label_on(const QubitSet& a) const {
  if (members.size() == 1) return members[0].label_on(a);
  std::string s = "{";
  for (size_t i = 0; i < members.size(); ++i) {
    if (i) s += ", ";
    s += members[i].label_on(a);
  }
  return s + "}";
}

OrbitSet orbit(const Pauli& p, const CliffordOp& h, const std::string& label) {
  OrbitSet o;
  o.generator_label = label;
  Pauli cur = p.phaseless();
  for (int step = 0; step <= kMaxPauliOrder; ++step) {
    if (std::find(o.members.begin(), o.members.end(), cur) != o.members.end()) break;
    o.members.push_back(cur);
    cur = h.conjugate_phaseless(cur);
  }
  std::sort(o.members.begin(), o.members.end());
  return o;
}

bool invariance_check(const QubitSet& a, const CliffordOp& h) {
  uint64_t m = a.mask();
  if (m & ~low_mask(h.num_qubits())) return false;
  for (int q : a.indices()) {
    if (h.image_x(q).support_mask() & ~m) return false;
    if (h.image_z(q).support_mask() & ~m) return false;
  }
  return true;
}

std::vector<OrbitSet> orbit_partition(const QubitSet& a, const CliffordOp& h,
                                      const std::string& label) {
  if (!invariance_check(a, h)) {
    throw std::invalid_argument("P_A for A = " + a.to_string() + " is not invariant under " +
                                (label.empty() ? std::string("the cycle") : label));
  }
  std::vector<OrbitSet> out;
  std::set<Pauli> seen;
  for (const Pauli& p : enumerate_subgroup(a, h.num_qubits())) {
    if (seen.count(p)) continue;
    OrbitSet o = orbit(p, h, label);
    for (const auto& m : o.members) seen.insert(m);
    out.push_back(std::move(o));
  }
  std::sort(out.begin(), out.end(), [](const OrbitSet& x, const OrbitSet& y) {
    return x.representative() < y.representative();
  });
  return out;
}

OrbitPartition::OrbitPartition(const QubitSet& a, const CliffordOp& h, const std::string& label)
    : support_(a), n_(h.num_qubits()), orbits_(orbit_partition(a, h, label)) {
  for (size_t i = 0; i < orbits_.size(); ++i) {
    for (const auto& m : orbits_[i].members) index_[m] = static_cast<int>(i);
  }
}

int OrbitPartition::index_of(const Pauli& p) const {
  auto it = index_.find(p);
  if (it == index_.end()) {
    throw std::invalid_argument("Pauli " + p.to_string() + " is not in P_A for A = " +
                                support_.to_string());
  }
  return it->second;
}

}  // namespace cyclerec
