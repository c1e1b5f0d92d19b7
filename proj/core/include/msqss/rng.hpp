// Copyright 2026 The msqss Authors
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

#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace msqss {

// Deterministic random stream addressed by (seed, stream id).  Streams with
// the same seed and id produce bit-identical draw sequences on every
// platform; streams with distinct ids are statistically independent.  All
// bounded draws are implemented here instead of via <random> distributions,
// whose output is implementation defined.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::string_view stream_id)
      : seed_(seed), id_(stream_id) {
    std::uint64_t x = seed ^ fnv1a(stream_id);
    for (auto& word : state_) {
      word = split_mix(x);
    }
    // xoshiro256** must not start from the all-zero state.
    if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) {
      state_[0] = 0x9e3779b97f4a7c15ull;
    }
  }

  // Child stream with an id derived from this stream's id.  The child is
  // independent of the parent and of siblings with different labels.
  RngStream derive(std::string_view label) const {
    std::string child = id_;
    child += '/';
    child += label;
    return RngStream(seed_, child);
  }

  RngStream derive(std::string_view label, std::uint64_t index) const {
    std::string child = id_;
    child += '/';
    child += label;
    child += '.';
    child += std::to_string(index);
    return RngStream(seed_, child);
  }

  std::uint64_t seed() const { return seed_; }
  const std::string& stream_id() const { return id_; }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform double in [0, 1) with 53 significant bits.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, bound).  Rejection keeps the draw unbiased.
  std::uint64_t next_below(std::uint64_t bound) {
    if (bound == 0) {
      throw std::invalid_argument("RngStream::next_below: bound must be positive");
    }
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = next_u64();
      if (r >= threshold) {
        return r % bound;
      }
    }
  }

  bool bernoulli(double p) { return next_double() < p; }

  // Sorted k-subset of {1, ..., n}, drawn uniformly (partial Fisher-Yates).
  std::vector<int> sample_positions(int n, int k);

  // Uniform shuffle of the argument.
  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(next_below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  static std::uint64_t split_mix(std::uint64_t& x) {
    x += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  static std::uint64_t fnv1a(std::string_view text) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : text) {
      h ^= c;
      h *= 0x100000001b3ull;
    }
    return h;
  }

  std::uint64_t seed_;
  std::string id_;
  std::uint64_t state_[4];
};

inline std::vector<int> RngStream::sample_positions(int n, int k) {
  if (n < 0 || k < 0 || k > n) {
    throw std::invalid_argument("RngStream::sample_positions: need 0 <= k <= n");
  }
  std::vector<int> pool(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    pool[static_cast<std::size_t>(i)] = i + 1;
  }
  std::vector<int> picked;
  picked.reserve(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    const std::size_t j =
        static_cast<std::size_t>(i) +
        static_cast<std::size_t>(next_below(static_cast<std::uint64_t>(n - i)));
    std::swap(pool[static_cast<std::size_t>(i)], pool[j]);
    picked.push_back(pool[static_cast<std::size_t>(i)]);
  }
  std::sort(picked.begin(), picked.end());
  return picked;
}

}  // namespace msqss
