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

#include "dbtree/invariants.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>

namespace dbtree {

std::size_t InvariantReport::count(Violation::Kind k) const
{
  return static_cast<std::size_t>(std::count_if(violations.begin(), violations.end(),
                                                [k](const Violation& v) { return v.kind == k; }));
}

InvariantReport check_invariants(std::span<const Node> nodes, const Aggregation& agg)
{
  InvariantReport report;
  auto fail = [&report](Violation::Kind kind, std::string detail) {
    report.violations.push_back(Violation{kind, std::move(detail)});
  };

  std::map<std::pair<KeyBound, KeyBound>, std::vector<std::size_t>> by_range;
  std::size_t roots = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const Node& n = nodes[i];
    if (n.aggs.size() != n.m() + 1) {
      fail(Violation::Kind::kShape, "slot count mismatch in " + to_string(n));
      continue;
    }
    if (!(n.min < n.max)) fail(Violation::Kind::kShape, "empty range in " + to_string(n));
    for (std::size_t j = 0; j < n.m(); ++j) {
      if (!(n.slot_lower(j) < n.pairs[j].key) || !(n.slot_upper(j + 1) > n.pairs[j].key)) {
        fail(Violation::Kind::kShape, "key order in " + to_string(n));
        break;
      }
    }
    if (n.is_root()) {
      ++roots;
      if (n.m() != 0 || n.min != KeyBound::neg_inf() || n.max != KeyBound::pos_inf()) {
        fail(Violation::Kind::kRoot, "malformed root " + to_string(n));
      }
    } else if (n.m() == 0) {
      fail(Violation::Kind::kShape, "non-root node without keys " + to_string(n));
    }
    by_range[{n.min, n.max}].push_back(i);
  }
  if (roots != 1) fail(Violation::Kind::kRoot, "expected one root, found " + std::to_string(roots));

  // child[i][s]: index of the node filling slot s of node i.
  std::vector<std::vector<std::optional<std::size_t>>> child(nodes.size());
  std::vector<std::size_t> claimed(nodes.size(), 0);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const Node& parent = nodes[i];
    if (parent.aggs.size() != parent.m() + 1) continue;
    child[i].resize(parent.aggs.size());
    for (std::size_t s = 0; s <= parent.m(); ++s) {
      auto it = by_range.find({parent.slot_lower(s), parent.slot_upper(s)});
      std::vector<std::size_t> children;
      if (it != by_range.end()) {
        for (auto c : it->second) {
          if (nodes[c].level < parent.level) children.push_back(c);
        }
      }
      if (children.size() > 1) {
        fail(Violation::Kind::kSlotChild, "several children for one slot of " + to_string(parent));
      }
      for (auto c : children) ++claimed[c];
      if (!children.empty()) child[i][s] = children.front();
    }
  }

  // Aggregate of each subtree recomputed from its pairs, ignoring stored slots.
  std::vector<std::optional<AggValue>> truth(nodes.size());
  auto recompute = [&](auto&& self, std::size_t i) -> const AggValue& {
    if (!truth[i]) {
      Node copy = nodes[i];
      if (copy.aggs.size() == copy.m() + 1) {
        for (std::size_t s = 0; s < copy.aggs.size(); ++s) {
          copy.aggs[s].reset();
          if (child[i][s]) copy.aggs[s] = self(self, *child[i][s]);
        }
      }
      truth[i] = node_fold(copy, agg);
    }
    return *truth[i];
  };

  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const Node& parent = nodes[i];
    if (parent.aggs.size() != parent.m() + 1) continue;
    for (std::size_t s = 0; s <= parent.m(); ++s) {
      const auto& slot = parent.aggs[s];
      if (!child[i][s]) {
        if (slot) fail(Violation::Kind::kSlotChild, "present slot without child in " + to_string(parent));
        continue;
      }
      const Node& c = nodes[*child[i][s]];
      if (!slot) {
        fail(Violation::Kind::kSlotChild, "missing slot above " + to_string(c));
      } else if (!(*slot == recompute(recompute, *child[i][s]))) {
        fail(Violation::Kind::kAggregate, "stale aggregate above " + to_string(c));
      }
    }
  }
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].is_root()) continue;
    if (claimed[i] != 1) {
      fail(Violation::Kind::kOrphan, "node claimed " + std::to_string(claimed[i]) +
                                         " times: " + to_string(nodes[i]));
    }
  }

  std::set<Key> keys;
  for (const Node& n : nodes) {
    for (const auto& p : n.pairs) {
      if (!keys.insert(p.key).second) {
        fail(Violation::Kind::kDuplicateKey, "key stored twice: " + to_hex(p.key.bytes()));
      }
    }
  }
  return report;
}

}  // namespace dbtree
