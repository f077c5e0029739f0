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

#include "cyclerec/pauli.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace cyclerec {

namespace {

void check_qubit_count(int n) {
  if (n < 1 || n > kMaxQubits) {
    throw std::invalid_argument("qubit count " + std::to_string(n) + " outside [1, 64]");
  }
}

void check_same_n(const Pauli& p, const Pauli& q) {
  if (p.num_qubits() != q.num_qubits()) {
    throw std::invalid_argument("Pauli length mismatch: " + std::to_string(p.num_qubits()) +
                                " vs " + std::to_string(q.num_qubits()));
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

QubitSet::QubitSet(std::initializer_list<int> indices) : QubitSet(std::vector<int>(indices)) {}

QubitSet::QubitSet(const std::vector<int>& indices) {
  for (int q : indices) {
    if (q < 0 || q >= kMaxQubits) {
      throw std::invalid_argument("qubit index " + std::to_string(q) + " out of range");
    }
    uint64_t bit = uint64_t{1} << q;
    if (mask_ & bit) throw std::invalid_argument("duplicate qubit index " + std::to_string(q));
    mask_ |= bit;
  }
}

std::vector<int> QubitSet::indices() const {
  std::vector<int> out;
  out.reserve(size());
  for (uint64_t m = mask_; m; m &= m - 1) out.push_back(std::countr_zero(m));
  return out;
}

void QubitSet::validate(int n) const {
  if (mask_ & ~low_mask(n)) {
    throw std::invalid_argument("support " + to_string() + " exceeds register of " +
                                std::to_string(n) + " qubits");
  }
}

std::string QubitSet::to_string() const {
  std::string s = "{";
  bool first = true;
  for (int q : indices()) {
    if (!first) s += ',';
    s += std::to_string(q);
    first = false;
  }
  return s + "}";
}

QubitSet QubitSet::parse(std::string_view text) {
  text = trim(text);
  if (text.size() < 2 || text.front() != '{' || text.back() != '}') {
    throw std::invalid_argument("qubit set must look like {0,2}: '" + std::string(text) + "'");
  }
  text = text.substr(1, text.size() - 2);
  std::vector<int> idx;
  while (!trim(text).empty()) {
    size_t comma = text.find(',');
    std::string_view tok = trim(text.substr(0, comma));
    if (tok.empty()) throw std::invalid_argument("empty qubit index");
    int v = 0;
    for (char c : tok) {
      if (!std::isdigit(static_cast<unsigned char>(c))) {
        throw std::invalid_argument("bad qubit index '" + std::string(tok) + "'");
      }
      v = v * 10 + (c - '0');
      if (v >= kMaxQubits) throw std::invalid_argument("qubit index too large");
    }
    idx.push_back(v);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return QubitSet(idx);
}

bool operator<(const QubitSet& a, const QubitSet& b) {
  auto ia = a.indices();
  auto ib = b.indices();
  return std::lexicographical_compare(ia.begin(), ia.end(), ib.begin(), ib.end());
}

Pauli::Pauli(int n, uint64_t x, uint64_t z, bool negative) : n_(n), x_(x), z_(z), negative_(negative) {
  check_qubit_count(n);
  if ((x | z) & ~low_mask(n)) throw std::invalid_argument("Pauli bits exceed register size");
}

Pauli Pauli::single(int n, int qubit, char letter) {
  if (qubit < 0 || qubit >= n) throw std::invalid_argument("qubit index out of range");
  uint64_t b = uint64_t{1} << qubit;
  switch (letter) {
    case 'I': return Pauli(n, 0, 0);
    case 'X': return Pauli(n, b, 0);
    case 'Y': return Pauli(n, b, b);
    case 'Z': return Pauli(n, 0, b);
    default: throw std::invalid_argument(std::string("bad Pauli letter '") + letter + "'");
  }
}

Pauli Pauli::from_label(std::string_view label) {
  bool neg = false;
  if (!label.empty() && (label.front() == '-' || label.front() == '+')) {
    neg = label.front() == '-';
    label.remove_prefix(1);
  }
  int n = static_cast<int>(label.size());
  check_qubit_count(n);
  uint64_t x = 0, z = 0;
  for (int q = 0; q < n; ++q) {
    Pauli s = single(n, q, label[q]);
    x |= s.x_bits();
    z |= s.z_bits();
  }
  return Pauli(n, x, z, neg);
}

Pauli Pauli::parse(std::string_view text, int n) {
  text = trim(text);
  size_t at = text.find('@');
  if (at == std::string_view::npos) {
    throw std::invalid_argument("Pauli must look like ZXX@{0,2,5}: '" + std::string(text) + "'");
  }
  std::string_view label = trim(text.substr(0, at));
  bool neg = false;
  if (!label.empty() && (label.front() == '-' || label.front() == '+')) {
    neg = label.front() == '-';
    label.remove_prefix(1);
  }
  Pauli p = pauli_parse(label, QubitSet::parse(text.substr(at + 1)), n);
  return p.with_sign(neg ? -1 : 1);
}

char Pauli::letter(int qubit) const {
  static constexpr char kLetters[4] = {'I', 'X', 'Y', 'Z'};
  return kLetters[letter_code(qubit)];
}

int Pauli::letter_code(int qubit) const {
  bool x = (x_ >> qubit) & 1;
  bool z = (z_ >> qubit) & 1;
  if (x) return z ? 2 : 1;
  return z ? 3 : 0;
}

std::string Pauli::label() const {
  std::string s(n_, 'I');
  for (int q = 0; q < n_; ++q) s[q] = letter(q);
  return s;
}

std::string Pauli::label_on(const QubitSet& a) const {
  std::string s;
  for (int q : a.indices()) s += letter(q);
  return s;
}

std::string Pauli::to_string() const {
  std::string prefix = negative_ ? "-" : "";
  if (is_identity()) return prefix + "I@{0}";
  return prefix + label_on(support()) + "@" + support().to_string();
}

bool operator<(const Pauli& a, const Pauli& b) {
  if (a.n_ != b.n_) return a.n_ < b.n_;
  uint64_t d = (a.x_ ^ b.x_) | (a.z_ ^ b.z_);
  if (!d) return false;
  int q = std::countr_zero(d);
  return a.letter_code(q) < b.letter_code(q);
}

Pauli pauli_parse(std::string_view label, const QubitSet& support, int n) {
  check_qubit_count(n);
  support.validate(n);
  auto idx = support.indices();
  if (label.size() != idx.size()) {
    throw std::invalid_argument("label '" + std::string(label) + "' length " +
                                std::to_string(label.size()) + " does not match support " +
                                support.to_string());
  }
  uint64_t x = 0, z = 0;
  for (size_t i = 0; i < idx.size(); ++i) {
    Pauli s = Pauli::single(n, idx[i], label[i]);
    x |= s.x_bits();
    z |= s.z_bits();
  }
  return Pauli(n, x, z);
}

int chi(const Pauli& p, const Pauli& q) {
  check_same_n(p, q);
  int parity = std::popcount((p.x_bits() & q.z_bits()) ^ (p.z_bits() & q.x_bits())) & 1;
  return parity ? -1 : 1;
}

Pauli multiply(const Pauli& p, const Pauli& q) {
  check_same_n(p, q);
  PhasedPauli a = PhasedPauli::from(p);
  a *= PhasedPauli::from(q);
  int k = (a.phase - std::popcount(a.x & a.z)) & 3;
  return Pauli(p.num_qubits(), a.x, a.z, (k & 2) != 0);
}

std::vector<Pauli> enumerate_subgroup(const QubitSet& a, int n) {
  check_qubit_count(n);
  a.validate(n);
  int k = a.size();
  if (k > kMaxEnumeratedSupport) {
    throw std::invalid_argument("support of size " + std::to_string(k) +
                                " exceeds the enumeration cap of " +
                                std::to_string(kMaxEnumeratedSupport));
  }
  auto idx = a.indices();
  size_t total = size_t{1} << (2 * k);
  std::vector<Pauli> out;
  out.reserve(total);
  for (size_t c = 0; c < total; ++c) {
    uint64_t x = 0, z = 0;
    for (int j = 0; j < k; ++j) {
      // first index is the most significant base-4 digit
      int code = static_cast<int>((c >> (2 * (k - 1 - j))) & 3);
      uint64_t b = uint64_t{1} << idx[j];
      if (code == 1 || code == 2) x |= b;
      if (code == 2 || code == 3) z |= b;
    }
    out.emplace_back(n, x, z);
  }
  return out;
}

PhasedPauli PhasedPauli::from(const Pauli& p) {
  PhasedPauli r;
  r.x = p.x_bits();
  r.z = p.z_bits();
  r.phase = ((p.negative() ? 2 : 0) + std::popcount(r.x & r.z)) & 3;
  return r;
}

Pauli PhasedPauli::to_pauli(int n) const {
  int k = (phase - std::popcount(x & z)) & 3;
  if (k & 1) throw std::logic_error("non-Hermitian Pauli phase");
  return Pauli(n, x, z, k == 2);
}

PhasedPauli& PhasedPauli::operator*=(const PhasedPauli& rhs) {
  // Z^z1 X^x2 = (-1)^{|z1 & x2|} X^x2 Z^z1
  phase = (phase + rhs.phase + 2 * std::popcount(z & rhs.x)) & 3;
  x ^= rhs.x;
  z ^= rhs.z;
  return *this;
}

}  // namespace cyclerec
