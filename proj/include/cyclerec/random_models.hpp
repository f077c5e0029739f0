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

#include <vector>

#include "cyclerec/channel.hpp"
#include "cyclerec/clifford.hpp"
#include "cyclerec/rng.hpp"

namespace cyclerec {

/// Exponential weights over all of P_n.
PauliDistribution random_dense_distribution(int n, RngStream& rng);

/// Identity mass 1 - infidelity; the rest spread over `terms` random
/// non-identity Paulis.
PauliDistribution random_sparse_distribution(int n, double infidelity, int terms, RngStream& rng);

/// Random layer of named Clifford gates on neighbouring qubit pairs.
std::vector<Gate> random_clifford_cycle(int n, RngStream& rng);

}  // namespace cyclerec
