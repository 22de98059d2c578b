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

#include "dbtree/group_by.hpp"

#include <stdexcept>

#include "range_compute.hpp"

namespace dbtree {

namespace {

bool bound_in_group(const KeyBound& b, const Bytes& x)
{
  auto xy = CompositeCodec::split_bound(b);
  return xy && xy->first == x;
}

}  // namespace

GroupByResult group_by_range(DbTree& tree, const Bytes& y_lo, const Bytes& y_hi,
                             std::optional<std::vector<Bytes>> xs, GroupByOptions options)
{
  if (!tree.store().composite()) throw std::logic_error{"group-by requires composite keys"};
  const Aggregation& agg = tree.aggregation();
  if (!agg.range_queryable()) {
    throw std::logic_error{"group-by on a non-associative aggregation"};
  }
  if (y_hi < y_lo) throw std::invalid_argument{"range lower bound exceeds upper bound"};

  std::vector<Selection> sels{GroupLeftFringe{y_lo, y_hi}, GroupRightFringe{y_lo, y_hi},
                              GroupEnclosing{xs, y_lo, y_hi}};
  auto res = tree.store().read_round(sels);
  const auto& left_all = res[0].nodes;
  const auto& right_all = res[1].nodes;
  const auto& enclosing = res[2].nodes;
  const auto& found_xs = res[2].xs;

  GroupByResult out;
  const ResultValue empty = agg.finish(agg.identity());
  for (std::size_t g = 0; g < found_xs.size(); ++g) {
    const Bytes& x = found_xs[g];
    std::vector<Node> left;
    std::vector<Node> right;
    for (const auto& n : left_all) {
      if (bound_in_group(n.max, x)) left.push_back(n);
    }
    for (const auto& n : right_all) {
      if (bound_in_group(n.min, x)) right.push_back(n);
    }
    detail::RangeBounds b;
    if (options.cross_group_filter) {
      Key lo = CompositeCodec::key(x, y_lo);
      Key hi = CompositeCodec::key(x, y_hi);
      b.ge_lo = [lo](const Key& k) { return !(k < lo); };
      b.le_hi = [hi](const Key& k) { return !(hi < k); };
    } else {
      b.ge_lo = [&y_lo](const Key& k) { return !(CompositeCodec::y_of(k.bytes()) < y_lo); };
      b.le_hi = [&y_hi](const Key& k) { return !(y_hi < CompositeCodec::y_of(k.bytes())); };
    }
    auto r = detail::compute_range(agg, left, right, &enclosing[g], b);
    if (r.nonempty) {
      out.emplace(x, agg.finish(r.value));
    } else if (options.emit_empty) {
      out.emplace(x, empty);
    }
  }
  if (options.emit_empty && xs) {
    for (const auto& x : *xs) out.emplace(x, empty);
  }
  return out;
}

}  // namespace dbtree
