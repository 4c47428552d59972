// Copyright 2026 The gapforge Authors
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

#ifndef GAPFORGE_SRC_PARALLEL_HPP
#define GAPFORGE_SRC_PARALLEL_HPP

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace gapforge::detail {

// Calls fn(chunk, begin, end) over [0, n) split into contiguous chunks, one
// per thread. Chunk boundaries depend only on n and threads.
template <typename Fn>
void parallel_chunks(std::size_t n, unsigned threads, Fn&& fn) {
  threads = std::max(1u, threads);
  const std::size_t chunks = std::min<std::size_t>(threads, std::max<std::size_t>(n, 1));
  if (chunks <= 1) {
    fn(std::size_t{0}, std::size_t{0}, n);
    return;
  }
  const std::size_t per = (n + chunks - 1) / chunks;
  std::vector<std::thread> pool;
  pool.reserve(chunks);
  for (std::size_t c = 0; c < chunks; ++c) {
    const std::size_t begin = std::min(n, c * per);
    const std::size_t end = std::min(n, begin + per);
    pool.emplace_back([&fn, c, begin, end] { fn(c, begin, end); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace gapforge::detail

#endif  // GAPFORGE_SRC_PARALLEL_HPP
