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

#include <bit>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cyclerec {

inline constexpr int kMaxQubits = 64;

/// Largest support accepted by enumerate_subgroup (4^12 elements).
inline constexpr int kMaxEnumeratedSupport = 12;

inline uint64_t low_mask(int n) {
  return n >= 64 ? ~uint64_t{0} : ((uint64_t{1} << n) - 1);
}

/// Sorted set of qubit indices, stored as a bit mask.
class QubitSet {
 public:
  QubitSet() = default;
  QubitSet(std::initializer_list<int> indices);
  explicit QubitSet(const std::vector<int>& indices);
  static QubitSet from_mask(uint64_t mask) {
    QubitSet s;
    s.mask_ = mask;
    return s;
  }
  static QubitSet range(int n) { return from_mask(low_mask(n)); }

  uint64_t mask() const { return mask_; }
  int size() const { return std::popcount(mask_); }
  bool empty() const { return mask_ == 0; }
  bool contains(int q) const { return q >= 0 && q < 64 && ((mask_ >> q) & 1); }
  bool subset_of(const QubitSet& other) const { return (mask_ & ~other.mask_) == 0; }
  int max_index() const { return mask_ ? 63 - std::countl_zero(mask_) : -1; }
  std::vector<int> indices() const;
  QubitSet complement(int n) const { return from_mask(low_mask(n) & ~mask_); }
  QubitSet operator|(const QubitSet& o) const { return from_mask(mask_ | o.mask_); }
  QubitSet operator&(const QubitSet& o) const { return from_mask(mask_ & o.mask_); }

  /// Throws if any index is >= n.
  void validate(int n) const;

  /// "{0,2,5}"
  std::string to_string() const;
  static QubitSet parse(std::string_view text);

  friend bool operator==(const QubitSet&, const QubitSet&) = default;
  /// Orders by ascending index sequence ({0,1} < {0,1,2} < {0,2} < {1}).
  friend bool operator<(const QubitSet& a, const QubitSet& b);

 private:
  uint64_t mask_ = 0;
};

/// n-qubit Pauli operator in binary-symplectic form with a +/-1 sign.
///
/// Per qubit the encoding is I=(0,0), X=(1,0), Z=(0,1), Y=(1,1). The Hermitian
/// operator represented is sign * prod_q sigma(x_q, z_q). Equality and
/// ordering ignore the sign: distributions and fidelity tables key on the
/// phaseless part.
class Pauli {
 public:
  Pauli() = default;
  Pauli(int n, uint64_t x, uint64_t z, bool negative = false);

  static Pauli identity(int n) { return Pauli(n, 0, 0); }
  static Pauli single(int n, int qubit, char letter);
  /// Full-register label such as "IXYZ" (qubit 0 first), optional leading '-'.
  static Pauli from_label(std::string_view label);
  /// Canonical "ZXX@{0,2,5}" form.
  static Pauli parse(std::string_view text, int n);

  int num_qubits() const { return n_; }
  uint64_t x_bits() const { return x_; }
  uint64_t z_bits() const { return z_; }
  bool negative() const { return negative_; }
  int sign() const { return negative_ ? -1 : 1; }
  uint64_t support_mask() const { return x_ | z_; }
  QubitSet support() const { return QubitSet::from_mask(x_ | z_); }
  int weight() const { return std::popcount(x_ | z_); }
  bool is_identity() const { return (x_ | z_) == 0; }

  /// One of 'I', 'X', 'Y', 'Z'.
  char letter(int qubit) const;
  /// Letter order code I=0, X=1, Y=2, Z=3.
  int letter_code(int qubit) const;

  Pauli phaseless() const { return Pauli(n_, x_, z_, false); }
  Pauli negated() const { return Pauli(n_, x_, z_, !negative_); }
  Pauli with_sign(int s) const { return Pauli(n_, x_, z_, s < 0); }

  /// Restriction to the qubits of `a` (identity elsewhere).
  Pauli restricted(const QubitSet& a) const { return Pauli(n_, x_ & a.mask(), z_ & a.mask()); }

  /// "IXIZ" over the whole register, no sign.
  std::string label() const;
  /// Letters on the qubits of `a` in ascending order, e.g. "IZ".
  std::string label_on(const QubitSet& a) const;
  /// "ZXX@{0,2,5}"; identity renders as "I@{0}".
  std::string to_string() const;

  /// Phaseless equality.
  friend bool operator==(const Pauli& a, const Pauli& b) {
    return a.n_ == b.n_ && a.x_ == b.x_ && a.z_ == b.z_;
  }
  /// Lexicographic on the full-register label with I<X<Y<Z, qubit 0 most
  /// significant.
  friend bool operator<(const Pauli& a, const Pauli& b);

  bool identical(const Pauli& o) const { return *this == o && negative_ == o.negative_; }

 private:
  int n_ = 1;
  uint64_t x_ = 0;
  uint64_t z_ = 0;
  bool negative_ = false;
};

/// pauli_parse: label acts on the listed support, identity elsewhere.
Pauli pauli_parse(std::string_view label, const QubitSet& support, int n);

/// Commutation character: +1 iff P and Q commute.
int chi(const Pauli& p, const Pauli& q);

inline bool commutes(const Pauli& p, const Pauli& q) { return chi(p, q) == 1; }

/// Product P*Q. The phaseless part is the XOR of symplectic vectors. When the
/// product carries a factor of +/-i (anticommuting factors) the i is dropped
/// and only the real sign bit is kept.
Pauli multiply(const Pauli& p, const Pauli& q);

/// All 4^|A| Paulis supported inside A, identity first, lexicographic order.
std::vector<Pauli> enumerate_subgroup(const QubitSet& a, int n);

/// Pauli with a full mod-4 phase: i^phase * prod_q X_q^{x_q} Z_q^{z_q}.
/// Used where conjugation needs exact phases.
struct PhasedPauli {
  uint64_t x = 0;
  uint64_t z = 0;
  int phase = 0;  // exponent of i, mod 4

  static PhasedPauli from(const Pauli& p);
  /// Converts back to a Hermitian signed Pauli; throws if the phase is +/-i.
  Pauli to_pauli(int n) const;
  PhasedPauli& operator*=(const PhasedPauli& rhs);
};

struct PauliHash {
  size_t operator()(const Pauli& p) const noexcept {
    uint64_t h = p.x_bits() * 0x9E3779B97F4A7C15ULL ^ (p.z_bits() + 0xBF58476D1CE4E5B9ULL);
    h ^= h >> 31;
    return static_cast<size_t>(h ^ static_cast<uint64_t>(p.num_qubits()));
  }
};

}  // namespace cyclerec
