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

#include "dbtree/oracle.hpp"

#include <algorithm>
#include <set>

namespace dbtree::oracle {

bool FlatTable::update(const Key& k, Bytes v)
{
  auto it = rows_.find(k);
  if (it == rows_.end()) return false;
  it->second = std::move(v);
  return true;
}

std::optional<Bytes> FlatTable::get(const Key& k) const
{
  auto it = rows_.find(k);
  if (it == rows_.end()) return std::nullopt;
  return it->second;
}

ScanResult scan_aggregate(const FlatTable& t, const Aggregation& agg, const Key& lo, const Key& hi)
{
  ScanResult out;
  AggValue acc = agg.identity();
  for (auto it = t.rows().lower_bound(lo); it != t.rows().end() && !(hi < it->first); ++it) {
    acc = agg.combine(acc, agg.lift(it->second));
    ++out.rows_scanned;
  }
  out.value = agg.finish(acc);
  return out;
}

GroupByResult scan_group_by(const FlatTable& t, const Aggregation& agg, const Bytes& y_lo,
                            const Bytes& y_hi, const std::optional<std::vector<Bytes>>& xs,
                            bool emit_empty)
{
  std::map<Bytes, AggValue> acc;
  std::set<Bytes> all_xs;
  for (const auto& [k, v] : t.rows()) {
    auto [x, y] = CompositeCodec::split(k.bytes());
    all_xs.insert(x);
    if (xs && std::find(xs->begin(), xs->end(), x) == xs->end()) continue;
    if (y < y_lo || y_hi < y) continue;
    auto it = acc.find(x);
    if (it == acc.end()) {
      acc.emplace(x, agg.lift(v));
    } else {
      it->second = agg.combine(it->second, agg.lift(v));
    }
  }
  GroupByResult out;
  for (const auto& [x, a] : acc) out.emplace(x, agg.finish(a));
  if (emit_empty) {
    const ResultValue empty = agg.finish(agg.identity());
    if (xs) {
      for (const auto& x : *xs) out.emplace(x, empty);
    } else {
      for (const auto& x : all_xs) out.emplace(x, empty);
    }
  }
  return out;
}

namespace {

struct Builder {
  std::span<const Pair> pairs;
  std::vector<Level> levels;
  const Aggregation& agg;
  std::vector<Node> out;

  // Builds the node spanning pairs [lo, hi) with the given bounds; returns its fold.
  std::optional<AggValue> build(std::size_t lo, std::size_t hi, const KeyBound& min,
                                const KeyBound& max)
  {
    if (lo == hi) return std::nullopt;
    Level top = *std::max_element(levels.begin() + static_cast<std::ptrdiff_t>(lo),
                                  levels.begin() + static_cast<std::ptrdiff_t>(hi));
    Node n;
    n.level = top;
    n.min = min;
    n.max = max;
    n.aggs.clear();
    std::size_t start = lo;
    KeyBound left = min;
    for (std::size_t i = lo; i < hi; ++i) {
      if (levels[i] != top) continue;
      KeyBound right = KeyBound::of(pairs[i].key);
      n.aggs.push_back(build(start, i, left, right));
      n.pairs.push_back(pairs[i]);
      left = right;
      start = i + 1;
    }
    n.aggs.push_back(build(start, hi, left, max));
    AggValue folded = node_fold(n, agg);
    out.push_back(std::move(n));
    return folded;
  }
};

}  // namespace

std::vector<Node> rebuild_reference_tree(std::span<const Pair> sorted_pairs,
                                         const std::function<Level(const Key&)>& level_of,
                                         const Aggregation& agg)
{
  Builder b{sorted_pairs, {}, agg, {}};
  b.levels.reserve(sorted_pairs.size());
  for (const auto& p : sorted_pairs) b.levels.push_back(level_of(p.key));
  Node root = Node::empty_root();
  root.aggs[0] = b.build(0, sorted_pairs.size(), KeyBound::neg_inf(), KeyBound::pos_inf());
  b.out.push_back(std::move(root));
  std::sort(b.out.begin(), b.out.end(),
            [](const Node& x, const Node& y) { return x.id() < y.id(); });
  return std::move(b.out);
}

}  // namespace dbtree::oracle
