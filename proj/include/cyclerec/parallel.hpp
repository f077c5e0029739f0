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

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace cyclerec {

/// Process-wide worker count used by parallel_for; 0 means hardware default.
void set_thread_count(int threads);
int thread_count();

/// True while the calling thread is running a parallel_for body.
bool& in_parallel_region();

/// Runs body(i) for i in [0, count). Each index writes only its own output
/// slot, so results do not depend on the thread count. The first exception
/// thrown by any body is rethrown after all workers join.
template <typename Body>
void parallel_for(size_t count, Body&& body) {
  int threads = thread_count();
  if (threads <= 1 || count <= 1 || in_parallel_region()) {
    for (size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto worker = [&] {
    bool& flag = in_parallel_region();
    flag = true;
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= count) {
        flag = false;
        return;
      }
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
        next.store(count);
      }
    }
  };
  size_t spawn = std::min<size_t>(static_cast<size_t>(threads), count);
  std::vector<std::thread> pool;
  pool.reserve(spawn - 1);
  for (size_t t = 1; t < spawn; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace cyclerec
