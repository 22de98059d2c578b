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

#ifndef DBTREE_INVARIANTS_HPP
#define DBTREE_INVARIANTS_HPP

#include <span>
#include <string>
#include <vector>

#include "dbtree/aggregation.hpp"
#include "dbtree/node.hpp"

namespace dbtree {

struct Violation {
  enum class Kind {
    kRoot,          ///< missing, duplicated or malformed root
    kShape,         ///< slot count, key order or empty non-root node
    kSlotChild,     ///< a present slot without a child, or a child without a slot
    kAggregate,     ///< slot value differs from the fold of its child
    kOrphan,        ///< node not reachable through exactly one parent slot
    kDuplicateKey,  ///< a key stored in more than one node
  };
  Kind kind;
  std::string detail;
};

struct InvariantReport {
  std::vector<Violation> violations;
  [[nodiscard]] bool ok() const { return violations.empty(); }
  [[nodiscard]] std::size_t count(Violation::Kind k) const;
};

/**
 * @brief Checks a full node set for structural and aggregate consistency.
 *
 * Parent and child are related only through ranges: a child fills the slot
 * whose flanking keys equal its bounds. Each present slot is compared with
 * its subtree's aggregate recomputed from the stored pairs.
 */
InvariantReport check_invariants(std::span<const Node> nodes, const Aggregation& agg);

}  // namespace dbtree

#endif  // DBTREE_INVARIANTS_HPP
