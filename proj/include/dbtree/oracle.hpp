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

#ifndef DBTREE_ORACLE_HPP
#define DBTREE_ORACLE_HPP

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "dbtree/aggregation.hpp"
#include "dbtree/group_by.hpp"
#include "dbtree/node.hpp"

namespace dbtree::oracle {

/// Flat sorted key-value table used as ground truth.
class FlatTable
{
 public:
  /// Returns false if the key exists.
  bool insert(const Key& k, Bytes v) { return rows_.emplace(k, std::move(v)).second; }
  bool update(const Key& k, Bytes v);
  bool erase(const Key& k) { return rows_.erase(k) > 0; }
  [[nodiscard]] std::optional<Bytes> get(const Key& k) const;
  [[nodiscard]] std::size_t size() const { return rows_.size(); }
  [[nodiscard]] const std::map<Key, Bytes>& rows() const { return rows_; }

 private:
  std::map<Key, Bytes> rows_;
};

struct ScanResult {
  ResultValue value;
  std::size_t rows_scanned = 0;
};

/// Linear fold of lift over rows with lo <= key <= hi.
ScanResult scan_aggregate(const FlatTable& t, const Aggregation& agg, const Key& lo, const Key& hi);

/// Per group x, the fold over rows with composite key (x, y), y_lo <= y <= y_hi.
GroupByResult scan_group_by(const FlatTable& t, const Aggregation& agg, const Bytes& y_lo,
                            const Bytes& y_hi,
                            const std::optional<std::vector<Bytes>>& xs = std::nullopt,
                            bool emit_empty = false);

/**
 * @brief Builds the expected node set from sorted pairs and their levels.
 *
 * A range holding keys is one node at the highest level among its keys;
 * that node holds all keys of that level, and the gaps between them are
 * built recursively. Independent of the incremental algorithms.
 */
std::vector<Node> rebuild_reference_tree(std::span<const Pair> sorted_pairs,
                                         const std::function<Level(const Key&)>& level_of,
                                         const Aggregation& agg);

}  // namespace dbtree::oracle

#endif  // DBTREE_ORACLE_HPP
