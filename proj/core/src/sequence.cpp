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

#include "msqss/sequence.hpp"

#include <algorithm>
#include <stdexcept>

namespace msqss {

Permutation::Permutation(std::vector<int> dest) : dest_(std::move(dest)) {
  const int n = static_cast<int>(dest_.size());
  if (n == 0) {
    throw std::invalid_argument("Permutation: table must not be empty");
  }
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int d : dest_) {
    if (d < 1 || d > n || seen[static_cast<std::size_t>(d - 1)]) {
      throw std::invalid_argument("Permutation: table is not a bijection on 1..n");
    }
    seen[static_cast<std::size_t>(d - 1)] = true;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> dest(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    dest[static_cast<std::size_t>(i)] = i + 1;
  }
  return Permutation(std::move(dest));
}

Permutation Permutation::random(int n, RngStream& rng) {
  std::vector<int> dest(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    dest[static_cast<std::size_t>(i)] = i + 1;
  }
  rng.shuffle(dest);
  return Permutation(std::move(dest));
}

Permutation Permutation::inverted() const {
  std::vector<int> inv(dest_.size());
  for (int src = 1; src <= size(); ++src) {
    inv[static_cast<std::size_t>(dest(src) - 1)] = src;
  }
  return Permutation(std::move(inv));
}

QubitSequence apply_permutation(QubitSequence seq, const Permutation& p) {
  if (seq.size() != p.size()) {
    throw std::invalid_argument("apply_permutation: length mismatch");
  }
  std::vector<TravelItem> out(static_cast<std::size_t>(seq.size()));
  for (int src = 1; src <= seq.size(); ++src) {
    out[static_cast<std::size_t>(p.dest(src) - 1)] = std::move(seq.at(src));
  }
  return QubitSequence(std::move(out));
}

DiscardMap::DiscardMap(std::vector<int> discarded_positions)
    : discards_(std::move(discarded_positions)) {
  std::sort(discards_.begin(), discards_.end());
  for (std::size_t i = 0; i < discards_.size(); ++i) {
    if (discards_[i] < 1 || (i > 0 && discards_[i] == discards_[i - 1])) {
      throw std::invalid_argument("DiscardMap: positions must be distinct and positive");
    }
  }
}

int DiscardMap::to_pre(int post) const {
  if (post < 1) {
    throw std::invalid_argument("DiscardMap::to_pre: position must be positive");
  }
  // Each removed position at or below the running result shifts it up by one;
  // the discards are sorted, so a single pass settles the count.
  int pre = post;
  for (int d : discards_) {
    if (d <= pre) {
      ++pre;
    } else {
      break;
    }
  }
  return pre;
}

std::optional<int> DiscardMap::to_post(int pre) const {
  int removed_before = 0;
  for (int d : discards_) {
    if (d == pre) {
      return std::nullopt;
    }
    if (d < pre) {
      ++removed_before;
    } else {
      break;
    }
  }
  return pre - removed_before;
}

std::pair<QubitSequence, DiscardMap> remove_positions(QubitSequence seq,
                                                      std::vector<int> positions) {
  DiscardMap map(std::move(positions));
  for (int d : map.discards()) {
    if (d > seq.size()) {
      throw std::invalid_argument("remove_positions: position beyond sequence length");
    }
  }
  std::vector<TravelItem> kept;
  kept.reserve(static_cast<std::size_t>(seq.size() - map.discard_count()));
  std::size_t next_discard = 0;
  for (int pos = 1; pos <= seq.size(); ++pos) {
    if (next_discard < map.discards().size() &&
        map.discards()[next_discard] == pos) {
      ++next_discard;
      continue;
    }
    kept.push_back(std::move(seq.at(pos)));
  }
  return {QubitSequence(std::move(kept)), std::move(map)};
}

int trace_to_upstream(int position, const HopRecord& hop) {
  if (position < 1 || position > hop.perm.size()) {
    throw std::invalid_argument("trace_to_upstream: position out of range");
  }
  const int before_perm = hop.perm.inverted().dest(position);
  return hop.discard_map().to_pre(before_perm);
}

int trace_to_alice(int position, std::span<const HopRecord> hops_last_first,
                   const Permutation& alice_perm) {
  int pos = position;
  for (const HopRecord& hop : hops_last_first) {
    pos = trace_to_upstream(pos, hop);
  }
  return alice_perm.inverted().dest(pos);
}

std::optional<int> trace_through_hop(int incoming_position, const HopRecord& hop) {
  const auto post = hop.discard_map().to_post(incoming_position);
  if (!post.has_value()) {
    return std::nullopt;
  }
  return hop.perm.dest(*post);
}

}  // namespace msqss
