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

#include <array>
#include <cstdint>
#include <limits>

namespace cyclerec {

using Philox4x32Counter = std::array<uint32_t, 4>;
using Philox4x32Key = std::array<uint32_t, 2>;

/// Philox4x32 with 10 rounds.
Philox4x32Counter philox4x32_10(Philox4x32Counter ctr, Philox4x32Key key);

/// Substream domains; each protocol stage draws from its own domain.
enum class StreamDomain : uint32_t {
  kTwirl = 1,
  kShot = 2,
  kBootstrap = 3,
  kModel = 4,
  kTest = 5,
};

/// Counter-based random stream. The key is the master seed; the upper three
/// counter words are (domain, a, b) and the lowest word is the block index,
/// so a stream depends only on (seed, domain, a, b), never on scheduling.
class RngStream {
 public:
  using result_type = uint32_t;

  RngStream(uint64_t seed, StreamDomain domain, uint32_t a, uint32_t b = 0);
  RngStream(uint64_t seed, uint32_t domain, uint32_t a, uint32_t b);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<uint32_t>::max(); }
  result_type operator()() { return next_u32(); }

  uint32_t next_u32();
  uint64_t next_u64();
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform integer in [0, bound), bound >= 1, unbiased.
  uint64_t below(uint64_t bound);
  /// n independent fair bits packed into the low bits.
  uint64_t bits(int n);

 private:
  Philox4x32Key key_;
  Philox4x32Counter counter_;
  Philox4x32Counter block_{};
  int used_ = 4;
};

/// 32-bit mixing hash used to fold labels into stream ids.
uint32_t hash_label(const char* s);

}  // namespace cyclerec
