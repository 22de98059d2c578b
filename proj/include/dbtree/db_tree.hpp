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

#ifndef DBTREE_DB_TREE_HPP
#define DBTREE_DB_TREE_HPP

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "dbtree/aggregation.hpp"
#include "dbtree/level_source.hpp"
#include "dbtree/node.hpp"
#include "dbtree/node_store.hpp"

namespace dbtree {

enum class Operation { kInsert, kUpdate, kDelete };

/**
 * @brief Aggregate index over a node store.
 *
 * Reads take one read round. Mutations take one read round and one write
 * round; errors are raised between the two, before anything is written.
 */
class DbTree
{
 public:
  /// Sees the read round of a mutation before any change is computed.
  using ReadValidator =
      std::function<void(Operation, const Key&, std::span<const SelectionResult>)>;

  DbTree(NodeStore& store, Aggregation agg, LevelSource levels);

  [[nodiscard]] const Aggregation& aggregation() const { return agg_; }
  [[nodiscard]] NodeStore& store() { return store_; }

  /// Aggregate of all values with lo <= key <= hi, finished.
  ResultValue query(const Key& lo, const Key& hi);
  /// Same, before finish.
  AggValue query_aggregate(const Key& lo, const Key& hi);
  std::optional<Bytes> get(const Key& k);

  /// Throws DuplicateKey.
  void insert(const Key& k, Bytes value);
  /// Throws KeyNotFound.
  void update(const Key& k, Bytes value);
  /// Throws KeyNotFound.
  void erase(const Key& k);

  /// Loads pairs into an empty tree in one read round and one write round.
  void bulk_build(std::vector<Pair> pairs);
  /// Inserts several pairs in one read round and one write round.
  void batch_insert(std::vector<Pair> pairs);

  void set_read_validator(ReadValidator v) { validator_ = std::move(v); }
  /// Root as written by the most recent mutation of this handle.
  [[nodiscard]] const std::optional<Node>& last_written_root() const { return last_root_; }

 private:
  std::vector<SelectionResult> read(std::vector<Selection> sels);
  void write(const WriteSet& ws);

  NodeStore& store_;
  Aggregation agg_;
  LevelSource levels_;
  ReadValidator validator_;
  std::optional<Node> last_root_;
};

}  // namespace dbtree

#endif  // DBTREE_DB_TREE_HPP
