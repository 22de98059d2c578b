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

#ifndef DBTREE_SRC_RANGE_COMPUTE_HPP
#define DBTREE_SRC_RANGE_COMPUTE_HPP

#include <functional>
#include <span>

#include "dbtree/aggregation.hpp"
#include "dbtree/node.hpp"

namespace dbtree::detail {

struct RangeBounds {
  std::function<bool(const Key&)> ge_lo;
  std::function<bool(const Key&)> le_hi;
};

struct RangeAggregate {
  AggValue value;
  /// True if at least one pair or slot fell inside the range.
  bool nonempty = false;
};

/**
 * Combines the left fringe tails, the middle slice of the enclosing node and
 * the right fringe heads. Both fringes are ascending by level.
 */
RangeAggregate compute_range(const Aggregation& agg, std::span<const Node> left,
                             std::span<const Node> right, const Node* enclosing,
                             const RangeBounds& b);

}  // namespace dbtree::detail

#endif  // DBTREE_SRC_RANGE_COMPUTE_HPP
