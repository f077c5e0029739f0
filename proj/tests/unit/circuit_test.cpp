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

#include <vector>

#include "gtest/gtest.h"

using namespace cyclerec;

namespace {

Pauli L(const char* s) { return Pauli::from_label(s); }

Cycle hard(std::vector<Gate> gates, std::string id = "h") {
  Cycle c;
  c.id = std::move(id);
  c.kind = Cycle::Kind::kHard;
  c.gates = std::move(gates);
  return c;
}

CliffordOp pauli_op(const Pauli& p) {
  EasyLayer l{p, {}, Pauli::identity(p.num_qubits())};
  return l.clifford(p.num_qubits());
}

Cycle random_hard(int n, RngStream& rng) {
  static const char* kOne[] = {"I", "H", "S", "Sdg", "H_YZ", "X"};
  static const char* kTwo[] = {"CX", "CZ", "SWAP"};
  Cycle c;
  c.id = "r";
  int q = 0;
  while (q < n) {
    if (q + 1 < n && rng.bits(1)) {
      c.gates.push_back({kTwo[rng.below(3)], {q, q + 1}});
      q += 2;
    } else {
      c.gates.push_back({kOne[rng.below(6)], {q}});
      ++q;
    }
  }
  return c;
}

std::vector<Gate> random_basis(int n, RngStream& rng) {
  static const char* kOne[] = {"I", "H", "H_YZ", "S"};
  std::vector<Gate> g;
  for (int q = 0; q < n; ++q) g.push_back({kOne[rng.below(4)], {q}});
  return g;
}

}  // namespace

TEST(CorrectionGate, Examples) {
  CliffordOp cz = clifford_from_cycle({{"CZ", {0, 1}}}, 2);
  EXPECT_EQ(correction_gate(cz, L("XI")), L("XZ"));
  EXPECT_TRUE(correction_gate(cz, L("II")).is_identity());
  CliffordOp cx = clifford_from_cycle({{"CX", {0, 1}}}, 2);
  EXPECT_EQ(correction_gate(cx, L("IX")), L("IX"));
}

TEST(CorrectionGate, TwirlAfterHardEqualsHardAfterCorrection) {
  RngStream rng(1, StreamDomain::kTest, 1);
  for (int t = 0; t < 200; ++t) {
    int n = 1 + static_cast<int>(rng.below(5));
    CliffordOp h = random_hard(n, rng).clifford(n);
    Pauli tw = random_pauli(n, rng);
    Pauli tc = correction_gate(h, tw);
    // T H = H T^c as channels: conjugation actions agree exactly
    CliffordOp lhs = CliffordOp::compose(pauli_op(tw), h);
    CliffordOp rhs = CliffordOp::compose(h, pauli_op(tc));
    EXPECT_EQ(lhs, rhs);
  }
}

TEST(RandomizedCompile, PreservesIdealActionUpToFrame) {
  RngStream rng(2, StreamDomain::kTest, 2);
  for (int t = 0; t < 1000; ++t) {
    int n = 1 + static_cast<int>(rng.below(5));
    int m = 1 + static_cast<int>(rng.below(8));
    CbCircuit base = CbCircuit::make(n, random_hard(n, rng), random_basis(n, rng),
                                     random_basis(n, rng), m);
    CompiledInstance inst = randomized_compile(base, rng);
    ASSERT_EQ(inst.easy.size(), static_cast<size_t>(m + 1));
    ASSERT_EQ(inst.record.twirls.size(), static_cast<size_t>(m));
    CliffordOp undo = pauli_op(inst.record.frame);
    CliffordOp lhs = CliffordOp::compose(undo, inst.ideal(base.h));
    ASSERT_EQ(lhs, base.ideal());
  }
}

TEST(RandomizedCompile, SlotStructure) {
  int n = 1;
  Cycle s = hard({{"S", {0}}});
  CbCircuit base = CbCircuit::make(n, s, {}, {}, 2);
  RngStream rng(3, StreamDomain::kTest, 3);
  CompiledInstance inst = randomized_compile(base, rng);
  const auto& tw = inst.record.twirls;
  EXPECT_TRUE(inst.easy[0].before.is_identity());
  EXPECT_EQ(inst.easy[0].after, correction_gate(base.h, tw[0]));
  EXPECT_EQ(inst.easy[1].before, tw[0]);
  EXPECT_EQ(inst.easy[1].after, correction_gate(base.h, tw[1]));
  EXPECT_EQ(inst.easy[2].before, tw[1]);
  EXPECT_EQ(inst.easy[2].after, inst.record.frame);
  EXPECT_TRUE(inst.easy[1].is_pauli());
}

TEST(RandomizedCompile, DegenerateIdentityTwirlsReproduceBase) {
  int n = 2;
  CbCircuit base = CbCircuit::make(n, hard({{"CX", {0, 1}}}), {{"H", {0}}}, {{"H", {1}}}, 1);
  CompiledInstance inst;
  inst.n = n;
  inst.easy = {EasyLayer{Pauli::identity(n), base.e0, Pauli::identity(n)},
               EasyLayer{Pauli::identity(n), base.em, Pauli::identity(n)}};
  inst.record = {{Pauli::identity(n)}, Pauli::identity(n)};
  EXPECT_EQ(inst.ideal(base.h), base.ideal());
}

TEST(RandomizedCompile, TwirlsUniform) {
  int n = 2;
  CbCircuit base = CbCircuit::make(n, hard({{"CX", {0, 1}}}), {}, {}, 3);
  std::vector<int> slot0(16, 0), frame(16, 0);
  const int kSamples = 100000;
  for (int t = 0; t < kSamples; ++t) {
    RngStream rng(4, StreamDomain::kTwirl, static_cast<uint32_t>(t));
    CompiledInstance inst = randomized_compile(base, rng);
    auto code = [](const Pauli& p) { return static_cast<int>(p.x_bits() | (p.z_bits() << 2)); };
    ++slot0[code(inst.record.twirls[0])];
    ++frame[code(inst.record.frame)];
  }
  for (const auto* counts : {&slot0, &frame}) {
    double chi2 = 0.0, expect = kSamples / 16.0;
    for (int c : *counts) chi2 += (c - expect) * (c - expect) / expect;
    EXPECT_LT(chi2, 37.7);  // df = 15, p = 0.001
  }
}

TEST(ParallelSupports, Examples) {
  auto s = parallel_supports(hard({{"CX", {0, 1}}, {"I", {2}}, {"CX", {3, 4}}}), 5);
  EXPECT_EQ(s, (std::vector<QubitSet>{QubitSet{0, 1}, QubitSet{2}, QubitSet{3, 4}}));
  auto id = parallel_supports(hard({{"I", {0, 1, 2}}}), 3);
  EXPECT_EQ(id, (std::vector<QubitSet>{QubitSet{0}, QubitSet{1}, QubitSet{2}}));
  auto b = parallel_supports(hard({{"CX", {1, 3}}}), 5);
  EXPECT_EQ(b, (std::vector<QubitSet>{QubitSet{0}, QubitSet{1, 3}, QubitSet{2}, QubitSet{4}}));
}

TEST(ParallelSupports, InvariantUnderCycle) {
  Cycle c = hard({{"CZ", {0, 3}}, {"S", {1}}, {"SWAP", {2, 4}}});
  CliffordOp h = c.clifford(5);
  for (const auto& a : parallel_supports(c, 5)) EXPECT_TRUE(invariance_check(a, h));
}

TEST(SupportUnions, Examples) {
  std::vector<QubitSet> s = {QubitSet{0, 1}, QubitSet{2}, QubitSet{3, 4}};
  EXPECT_EQ(support_unions(s, 1), s);
  EXPECT_EQ(support_unions(s, 2),
            (std::vector<QubitSet>{QubitSet{0, 1, 2}, QubitSet{0, 1, 3, 4}, QubitSet{2, 3, 4}}));
  EXPECT_EQ(support_unions(s, 3), (std::vector<QubitSet>{QubitSet::range(5)}));
  EXPECT_THROW(support_unions(s, 0), std::invalid_argument);
  EXPECT_THROW(support_unions(s, 4), std::invalid_argument);
}

TEST(SupportLabels, Format) {
  Cycle c = hard({{"CX", {1, 3}}});
  EXPECT_EQ(support_label(c, QubitSet{1, 3}, 5), "(1,3): CX");
  EXPECT_EQ(support_label(c, QubitSet{2}, 5), "2: I");
  EXPECT_EQ(support_label(c, QubitSet{0, 1, 3}, 5), "0: I; (1,3): CX");
  EXPECT_EQ(describe_cycle(c, 5), "{(1,3): CX; (0,2,4): I}");
  Cycle d = hard({{"CX", {3, 1}}});
  EXPECT_EQ(support_label(d, QubitSet{1, 3}, 5), "(3,1): CX");
}

TEST(CbCircuit, Validation) {
  EXPECT_THROW(CbCircuit::make(2, hard({{"CX", {0, 1}}}), {}, {}, 0), std::invalid_argument);
  EXPECT_THROW(CbCircuit::make(2, hard({{"CX", {0, 1}}}), {{"CX", {0, 1}}}, {}, 1),
               std::invalid_argument);
  Cycle e = hard({{"H", {0}}});
  e.kind = Cycle::Kind::kEasy;
  EXPECT_THROW(CbCircuit::make(1, e, {}, {}, 1), std::invalid_argument);
}
