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

#ifndef DBTREE_NODE_STORE_HPP
#define DBTREE_NODE_STORE_HPP

#include <atomic>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "dbtree/node.hpp"

namespace dbtree {

/// min < k < max. Result ascending by level.
struct PathTo {
  Key key;
};
/// min <= k <= max.
struct TouchingKey {
  Key key;
};
/// min < lo < max <= hi.
struct LeftFringe {
  Key lo;
  Key hi;
};
/// lo <= min < hi < max.
struct RightFringe {
  Key lo;
  Key hi;
};
/// The lowest node with min < lo and hi < max.
struct MinLevelEnclosing {
  Key lo;
  Key hi;
};
/// Composite keys: y_lo < max.y <= y_hi and (min.y < y_lo or min.x != max.x).
struct GroupLeftFringe {
  Bytes y_lo;
  Bytes y_hi;
};
/// Composite keys: y_lo <= min.y < y_hi and (y_hi < max.y or min.x != max.x).
struct GroupRightFringe {
  Bytes y_lo;
  Bytes y_hi;
};
/**
 * Composite keys: per group x, the lowest node with min < (x, y_lo) and
 * (x, y_hi) < max. Without xs the groups are discovered from the keys of
 * nodes whose bounds lie in different groups or are infinite.
 */
struct GroupEnclosing {
  std::optional<std::vector<Bytes>> xs;
  Bytes y_lo;
  Bytes y_hi;
};

using Selection = std::variant<PathTo, TouchingKey, LeftFringe, RightFringe, MinLevelEnclosing,
                               GroupLeftFringe, GroupRightFringe, GroupEnclosing>;

std::string selection_name(const Selection& s);

/// Nodes ascending by level. For GroupEnclosing, xs[i] is the group of nodes[i].
struct SelectionResult {
  std::vector<Node> nodes;
  std::vector<Bytes> xs;
};

struct WriteSet {
  std::vector<NodeId> deletes;
  std::vector<Node> upserts;
  [[nodiscard]] bool empty() const { return deletes.empty() && upserts.empty(); }
};

struct RoundStats {
  std::uint64_t read_rounds = 0;
  std::uint64_t write_rounds = 0;
  std::uint64_t statements = 0;
  std::uint64_t nodes_read = 0;
  std::uint64_t bytes_read = 0;
  std::uint64_t nodes_written = 0;
  std::uint64_t bytes_written = 0;

  friend bool operator==(const RoundStats&, const RoundStats&) = default;
};
RoundStats operator-(const RoundStats& a, const RoundStats& b);

/// Undecoded result of one selection.
struct RawSelectionResult {
  std::vector<Record> records;
  std::vector<Bytes> xs;
};

/**
 * @brief Storage of tree nodes, accessed in rounds.
 *
 * A read round evaluates a batch of independent selections against one
 * consistent state. A write round applies deletes and upserts atomically.
 * A new store holds the empty root.
 */
class NodeStore
{
 public:
  virtual ~NodeStore() = default;

  /// Throws CorruptRecord if a stored record fails to decode.
  std::vector<SelectionResult> read_round(std::span<const Selection> selections);
  /// Rolls back and throws StoreError on backend failure.
  void write_round(const WriteSet& ws);

  [[nodiscard]] RoundStats stats() const;
  void reset_stats();

  /// All records ordered by (min, max, level).
  [[nodiscard]] virtual std::vector<Record> dump() const = 0;
  /// Replaces the whole content with the given records.
  virtual void restore(std::span<const Record> records) = 0;
  /// dump(), decoded.
  [[nodiscard]] std::vector<Node> snapshot() const;
  /// True when the store maintains the composite (x, y) columns.
  [[nodiscard]] virtual bool composite() const = 0;

 protected:
  virtual std::vector<RawSelectionResult> read_records(std::span<const Selection> selections) = 0;
  virtual void write_records(std::span<const RecordId> deletes,
                             std::span<const Record> upserts) = 0;

 private:
  std::atomic<std::uint64_t> read_rounds_{0};
  std::atomic<std::uint64_t> write_rounds_{0};
  std::atomic<std::uint64_t> statements_{0};
  std::atomic<std::uint64_t> nodes_read_{0};
  std::atomic<std::uint64_t> bytes_read_{0};
  std::atomic<std::uint64_t> nodes_written_{0};
  std::atomic<std::uint64_t> bytes_written_{0};
};

/// Per-node predicate of the non-minimizing selections. Composite selections
/// treat infinite bounds as belonging to no group.
bool selection_matches(const Selection& s, const Record& r);

/// min.x != max.x, or either bound infinite.
bool spans_groups(const KeyBound& min, const KeyBound& max);

/// Reference evaluation of one selection by scanning every record.
RawSelectionResult scan_selection(const Selection& s, std::span<const Record> records);

}  // namespace dbtree

#endif  // DBTREE_NODE_STORE_HPP
