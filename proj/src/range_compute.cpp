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

#include "range_compute.hpp"

#include <optional>

namespace dbtree::detail {

namespace {

std::optional<std::size_t> first_at_or_above(const Node& n, const RangeBounds& b)
{
  for (std::size_t i = 0; i < n.m(); ++i) {
    if (b.ge_lo(n.pairs[i].key)) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> last_at_or_below(const Node& n, const RangeBounds& b)
{
  for (std::size_t i = n.m(); i-- > 0;) {
    if (b.le_hi(n.pairs[i].key)) return i;
  }
  return std::nullopt;
}

}  // namespace

RangeAggregate compute_range(const Aggregation& agg, std::span<const Node> left,
                             std::span<const Node> right, const Node* enclosing,
                             const RangeBounds& b)
{
  RangeAggregate out;
  AggValue acc_left = agg.identity();
  for (const Node& n : left) {
    if (auto i = first_at_or_above(n, b)) {
      acc_left = agg.combine(acc_left, fold_positions(n, agg, 2 * *i + 1, 2 * n.m()));
      out.nonempty = true;
    }
  }
  AggValue acc_right = agg.identity();
  for (const Node& n : right) {
    if (auto j = last_at_or_below(n, b)) {
      acc_right = agg.combine(fold_positions(n, agg, 0, 2 * *j + 1), acc_right);
      out.nonempty = true;
    }
  }
  AggValue middle = agg.identity();
  if (enclosing) {
    auto i = first_at_or_above(*enclosing, b);
    auto j = last_at_or_below(*enclosing, b);
    if (i && j && *i <= *j) {
      middle = fold_positions(*enclosing, agg, 2 * *i + 1, 2 * *j + 1);
      out.nonempty = true;
    }
  }
  out.value = agg.combine(agg.combine(acc_left, middle), acc_right);
  return out;
}

}  // namespace dbtree::detail
