/*
 * Copyright 2026 The dbtree Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef DBTREE_NODE_HPP
#define DBTREE_NODE_HPP

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dbtree/aggregation.hpp"
#include "dbtree/key.hpp"

namespace dbtree {

using Level = std::uint32_t;
/// Level of the root; greater than every drawn level.
inline constexpr Level kRootLevel = std::numeric_limits<Level>::max();

/// Identity of a node. Ordered by (min, max, level).
struct NodeId {
  Level level = 0;
  KeyBound min;
  KeyBound max;

  friend bool operator==(const NodeId&, const NodeId&) = default;
  friend std::strong_ordering operator<=>(const NodeId& a, const NodeId& b)
  {
    if (auto c = a.min <=> b.min; c != 0) return c;
    if (auto c = a.max <=> b.max; c != 0) return c;
    return a.level <=> b.level;
  }
};

/**
 * @brief A tree node: a level, an open key range and an aggregate sequence.
 *
 * The aggregate sequence a0, p1, a1, ..., pm, am is stored as m pairs and
 * m + 1 optional aggregate slots; aggs[i] lies between pairs[i - 1] and
 * pairs[i]. Position 2i of the sequence is aggs[i], position 2i + 1 is
 * pairs[i].
 */
struct Node {
  Level level = kRootLevel;
  KeyBound min = KeyBound::neg_inf();
  KeyBound max = KeyBound::pos_inf();
  std::vector<Pair> pairs;
  std::vector<std::optional<AggValue>> aggs{std::nullopt};

  static Node empty_root() { return Node{}; }

  [[nodiscard]] NodeId id() const { return NodeId{level, min, max}; }
  [[nodiscard]] bool is_root() const { return level == kRootLevel; }
  [[nodiscard]] std::size_t m() const { return pairs.size(); }
  /// min < k < max.
  [[nodiscard]] bool in_range(const Key& k) const { return min < k && max > k; }
  /// min <= k <= max.
  [[nodiscard]] bool touches(const Key& k) const { return min <= k && max >= k; }
  [[nodiscard]] std::optional<std::size_t> find(const Key& k) const;
  [[nodiscard]] bool contains(const Key& k) const { return find(k).has_value(); }
  /// Number of pairs with key < k, which is the slot k falls into.
  [[nodiscard]] std::size_t slot_of(const Key& k) const;
  /// Lower bound of slot i: the preceding key, or min.
  [[nodiscard]] KeyBound slot_lower(std::size_t i) const;
  /// Upper bound of slot i: the following key, or max.
  [[nodiscard]] KeyBound slot_upper(std::size_t i) const;

  friend bool operator==(const Node&, const Node&) = default;
};

std::string to_string(const Node& n);

/// Folds positions [first, last] of the aggregate sequence, skipping missing slots.
AggValue fold_positions(const Node& n, const Aggregation& agg, std::size_t first,
                        std::size_t last);
/// Folds the whole aggregate sequence.
AggValue node_fold(const Node& n, const Aggregation& agg);

/**
 * @brief Splits a node at a key it does not contain.
 *
 * The left part keeps the keys below k, the right part the keys above. The
 * slot that held k becomes missing on both sides, and the shared bound is k.
 */
std::pair<Node, Node> split_aseq(const Node& n, const Key& k);

/// Concatenates two same-level nodes; the junction slot becomes missing.
Node merge_aseq(const Node& left, const Node& right, KeyBound new_min, KeyBound new_max);

/// Replaces the slot that k falls into.
Node set_adjacent_agg(Node n, const Key& k, std::optional<AggValue> a);

/// Persisted form of a node.
struct Record {
  Level level = 0;
  Bytes min;
  Bytes max;
  Bytes payload;

  friend bool operator==(const Record&, const Record&) = default;
  [[nodiscard]] std::size_t byte_size() const
  {
    return 4 + min.size() + max.size() + payload.size();
  }
};

struct RecordId {
  Level level = 0;
  Bytes min;
  Bytes max;

  friend bool operator==(const RecordId&, const RecordId&) = default;
  friend auto operator<=>(const RecordId&, const RecordId&) = default;
};

/**
 * @brief Payload codec.
 *
 * Version byte, varint m, then m + 1 slots interleaved with m pairs. A slot
 * is a presence byte followed by the aggregate codec when present. A pair is
 * the varint-prefixed key followed by the varint-prefixed value.
 */
Bytes encode_payload(const Node& n);
/// Fills pairs and aggs of n. Throws CorruptRecord.
void decode_payload(BytesView payload, Node& n);

Record to_record(const Node& n);
/// Throws CorruptRecord if any part fails to decode or the keys are out of order.
Node from_record(const Record& r);
RecordId record_id(const NodeId& id);

}  // namespace dbtree

#endif  // DBTREE_NODE_HPP
