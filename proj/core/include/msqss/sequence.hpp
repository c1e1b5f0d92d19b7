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

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "msqss/quantum.hpp"

namespace msqss {

// All positions in this module are 1-based, matching the protocol's public
// announcements.  Vectors are indexed internally with the usual offset.

// Role a qubit plays from the dealer's point of view.  The tag is bookkeeping
// for test oracles; party-facing operations never read it.
enum class QubitKind : std::uint8_t { Sift, Ctrl, Foreign };

// Stand-in for an n-level basis state used by one of the substitution
// attacks.  Reading the label back is noiseless; a two-level measurement of
// it has no faithful outcome and is completed by the attack model.
struct QuditFake {
  int label = 0;
};

// One item of a traveling sequence: either a pure state (possibly a joint
// qubit x probe state whose first factor is the traveling qubit) or a fake
// qudit label.
struct TravelItem {
  int origin = 0;  // position in the dealer's sequence; 0 for foreign items
  QubitKind kind = QubitKind::Foreign;
  std::variant<QuditFake, PureState> payload;
};

class QubitSequence {
 public:
  QubitSequence() = default;
  explicit QubitSequence(std::vector<TravelItem> items) : items_(std::move(items)) {}

  int size() const { return static_cast<int>(items_.size()); }
  TravelItem& at(int position) { return items_[static_cast<std::size_t>(position - 1)]; }
  const TravelItem& at(int position) const {
    return items_[static_cast<std::size_t>(position - 1)];
  }
  std::vector<TravelItem>& items() { return items_; }
  const std::vector<TravelItem>& items() const { return items_; }

 private:
  std::vector<TravelItem> items_;
};

// A rearrangement announced as a destination table: dest(j) is the position
// the j-th incoming item is moved to.  "The first qubit was displaced to
// position 22" reads as dest(1) == 22.
class Permutation {
 public:
  Permutation() = default;  // the empty rearrangement
  explicit Permutation(std::vector<int> dest);
  static Permutation identity(int n);
  static Permutation random(int n, RngStream& rng);

  int size() const { return static_cast<int>(dest_.size()); }
  int dest(int src) const { return dest_[static_cast<std::size_t>(src - 1)]; }
  const std::vector<int>& dest_table() const { return dest_; }

  // Table of the inverse rearrangement: inverted().dest(p) is the source that
  // was displaced to position p.
  Permutation inverted() const;

  bool operator==(const Permutation& other) const { return dest_ == other.dest_; }

 private:
  std::vector<int> dest_;
};

template <typename T>
std::vector<T> apply_permutation(const std::vector<T>& in, const Permutation& p) {
  std::vector<T> out(in.size());
  for (int src = 1; src <= p.size(); ++src) {
    out[static_cast<std::size_t>(p.dest(src) - 1)] = in[static_cast<std::size_t>(src - 1)];
  }
  return out;
}

QubitSequence apply_permutation(QubitSequence seq, const Permutation& p);

// Position translation across a removal: maps positions in the shortened
// sequence back to positions before the removal, and forward again.
class DiscardMap {
 public:
  explicit DiscardMap(std::vector<int> discarded_positions);

  int discard_count() const { return static_cast<int>(discards_.size()); }
  const std::vector<int>& discards() const { return discards_; }

  // Pre-removal position of the item now sitting at `post`.
  int to_pre(int post) const;

  // Post-removal position of the item that sat at `pre`; nullopt if removed.
  std::optional<int> to_post(int pre) const;

 private:
  std::vector<int> discards_;  // sorted
};

// Removes the given (1-based) positions from the sequence, preserving the
// order of the survivors.
std::pair<QubitSequence, DiscardMap> remove_positions(QubitSequence seq,
                                                      std::vector<int> positions);

// Everything one participant did to the sequence passing through their hands:
// which incoming positions they measured (with outcomes), which they removed,
// and how they rearranged the rest.
struct HopRecord {
  std::string party;
  std::vector<std::pair<int, int>> measured;  // (incoming position, outcome)
  std::vector<int> discards;                  // sorted incoming positions
  Permutation perm;                           // over the post-removal length

  DiscardMap discard_map() const { return DiscardMap(discards); }
};

// Position in the hop's incoming sequence of the item that left the hop at
// `position` (undoes the rearrangement, then the removal).
int trace_to_upstream(int position, const HopRecord& hop);

// Chains trace_to_upstream over the hops (ordered last participant first),
// then undoes the dealer's rearrangement, yielding a position in the dealer's
// original sequence.
int trace_to_alice(int position, std::span<const HopRecord> hops_last_first,
                   const Permutation& alice_perm);

// Forward direction: where an incoming position emerges after one hop, or
// nullopt if the hop removed that item.
std::optional<int> trace_through_hop(int incoming_position, const HopRecord& hop);

}  // namespace msqss
