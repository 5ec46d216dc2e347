// Copyright 2026 The grammeval Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GRAMMEVAL_SRC_PARALLEL_HPP_
#define GRAMMEVAL_SRC_PARALLEL_HPP_

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace grammeval::detail {

// Splits [0, n) into at most `jobs` contiguous shards and runs
// fn(shard, begin, end) for each, one thread per shard. Shard k always
// covers the same range for a given (n, jobs). The first exception thrown
// by any shard is rethrown.
template <typename Fn>
void ForEachShard(std::size_t n, int jobs, Fn&& fn) {
  const std::size_t shards =
      std::max<std::size_t>(1, std::min<std::size_t>(n, std::max(jobs, 1)));
  if (shards == 1) {
    fn(std::size_t{0}, std::size_t{0}, n);
    return;
  }
  std::vector<std::exception_ptr> errors(shards);
  std::vector<std::thread> threads;
  threads.reserve(shards);
  for (std::size_t k = 0; k < shards; ++k) {
    const std::size_t begin = n * k / shards;
    const std::size_t end = n * (k + 1) / shards;
    threads.emplace_back([&, k, begin, end] {
      try {
        fn(k, begin, end);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

inline std::size_t ShardCount(std::size_t n, int jobs) {
  return std::max<std::size_t>(1, std::min<std::size_t>(n, std::max(jobs, 1)));
}

}  // namespace grammeval::detail

#endif  // GRAMMEVAL_SRC_PARALLEL_HPP_
