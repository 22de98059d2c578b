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

#ifndef DBTREE_SRC_NODE_POOL_HPP
#define DBTREE_SRC_NODE_POOL_HPP

#include <functional>
#include <map>
#include <set>
#include <vector>

#include "dbtree/node.hpp"
#include "dbtree/node_store.hpp"

namespace dbtree::detail {

/**
 * @brief Working copy of the nodes touched by one mutation round.
 *
 * Tracks which loaded nodes disappeared and which nodes changed, so that the
 * whole edit can be emitted as a single write set.
 */
class NodePool
{
 public:
  /// Adds read nodes; duplicates by id are ignored.
  void load(std::vector<Node> nodes);
  /// Nodes with min < k < max, ascending by level.
  std::vector<Node*> path_to(const Key& k);
  /// Nodes with min <= k <= max, ascending by level.
  std::vector<Node*> touching(const Key& k);
  /// Inserts or replaces a node and marks it for writing.
  Node* put(Node n);
  void erase(Node* n);
  void mark(Node* n);
  /// Every node currently held.
  [[nodiscard]] std::vector<const Node*> all() const;

  [[nodiscard]] WriteSet write_set() const;

 private:
  using LevelMap = std::map<KeyBound, Node, std::less<>>;
  std::map<Level, LevelMap> levels_;
  std::set<NodeId> loaded_;
  std::set<NodeId> dirty_;
};

/// Recomputes slots bottom-up along a chain of nested nodes.
void propagate(std::span<Node* const> chain, const Key& k, const Aggregation& agg);

/// Inserts a pair at a given level. Throws DuplicateKey.
void insert_into(NodePool& pool, const Aggregation& agg, const Key& k, Bytes value, Level level);
/// Removes a key. Throws KeyNotFound.
void erase_from(NodePool& pool, const Aggregation& agg, const Key& k);
/// Replaces the value of an existing key. Throws KeyNotFound.
void update_in(NodePool& pool, const Aggregation& agg, const Key& k, Bytes value);

}  // namespace dbtree::detail

#endif  // DBTREE_SRC_NODE_POOL_HPP
