// Copyright 2026 The stablemodes Authors.
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

#ifndef STABLEMODES_PARALLEL_HPP_
#define STABLEMODES_PARALLEL_HPP_

// Thread pool free helpers: a static-partition parallel_for whose results
// never depend on the worker count, and a memo table keyed by α.

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace stablemodes::parallel {

inline constexpr const char* kThreadsEnv = "STABLEMODES_THREADS";

// Worker count: $STABLEMODES_THREADS if set to a positive integer,
// otherwise the hardware concurrency.
inline unsigned default_threads() {
  if (const char* env = std::getenv(kThreadsEnv)) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1u : hw;
}

// Calls body(i) for i in [0, n). Index i always goes to worker i % threads;
// the first exception thrown by any worker is rethrown after all joined.
template <class F>
void parallel_for(std::size_t n, F&& body, unsigned threads = default_threads()) {
  if (threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  const std::size_t workers = std::min<std::size_t>(threads, n);
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < n; i += workers) body(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

// Immutable values computed at most once per α (up to benign races: two
// threads may both compute, the first insertion wins and both see it).
template <class T>
class AlphaCache {
 public:
  template <class Factory>
  std::shared_ptr<const T> get(double alpha, Factory&& make) {
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = table_.find(alpha);
      if (it != table_.end()) return it->second;
    }
    auto fresh = std::make_shared<const T>(make());
    std::lock_guard<std::mutex> lock(mu_);
    return table_.emplace(alpha, std::move(fresh)).first->second;
  }

 private:
  std::mutex mu_;
  std::map<double, std::shared_ptr<const T>> table_;
};

}  // namespace stablemodes::parallel

#endif  // STABLEMODES_PARALLEL_HPP_
