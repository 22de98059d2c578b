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

#ifndef DBTREE_GROUP_BY_HPP
#define DBTREE_GROUP_BY_HPP

#include <map>
#include <optional>
#include <vector>

#include "dbtree/db_tree.hpp"

namespace dbtree {

/// Finished aggregate per group, keyed by the x component.
using GroupByResult = std::map<Bytes, ResultValue>;

struct GroupByOptions {
  /// Report groups without keys in range as the finished identity.
  bool emit_empty = false;
  /// Compare whole composite keys. Disabling compares y only; kept for tests.
  bool cross_group_filter = true;
};

/**
 * @brief Aggregates over y_lo <= y <= y_hi for every group x, in one read round.
 *
 * The tree's keys must be composite (x, y) encodings and the store must be
 * composite. Without xs, groups are discovered during the same round.
 */
GroupByResult group_by_range(DbTree& tree, const Bytes& y_lo, const Bytes& y_hi,
                             std::optional<std::vector<Bytes>> xs = std::nullopt,
                             GroupByOptions options = {});

}  // namespace dbtree

#endif  // DBTREE_GROUP_BY_HPP
