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

#include "cyclerec/random_models.hpp"

#include <cmath>

namespace cyclerec {

PauliDistribution random_dense_distribution(int n, RngStream& rng) {
  auto all = enumerate_subgroup(QubitSet::range(n), n);
  std::vector<double> w;
  double total = 0.0;
  for (size_t i = 0; i < all.size(); ++i) {
    double v = -std::log(1.0 - rng.uniform());
    w.push_back(v);
    total += v;
  }
  PauliDistribution d(n);
  for (size_t i = 0; i < all.size(); ++i) d.add(all[i], w[i] / total);
  return d;
}

PauliDistribution random_sparse_distribution(int n, double infidelity, int terms, RngStream& rng) {
  PauliDistribution d(n);
  d.add(Pauli::identity(n), 1.0 - infidelity);
  std::vector<double> w;
  double total = 0.0;
  for (int i = 0; i < terms; ++i) {
    double v = -std::log(1.0 - rng.uniform());
    w.push_back(v);
    total += v;
  }
  for (int i = 0; i < terms; ++i) {
    Pauli p;
    do {
      p = Pauli(n, rng.bits(n), rng.bits(n));
    } while (p.is_identity());
    d.add(p, infidelity * w[i] / total);
  }
  return d;
}

std::vector<Gate> random_clifford_cycle(int n, RngStream& rng) {
  static const char* kOne[] = {"I", "H", "S", "Sdg", "H_YZ", "X", "Y", "Z"};
  static const char* kTwo[] = {"CX", "CZ", "SWAP"};
  std::vector<Gate> gates;
  int q = 0;
  while (q < n) {
    if (q + 1 < n && rng.bits(1)) {
      const char* g = kTwo[rng.below(3)];
      if (rng.bits(1)) {
        gates.push_back({g, {q, q + 1}});
      } else {
        gates.push_back({g, {q + 1, q}});
      }
      q += 2;
    } else {
      gates.push_back({kOne[rng.below(8)], {q}});
      ++q;
    }
  }
  return gates;
}

}  // namespace cyclerec
