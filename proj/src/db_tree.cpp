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

#include "dbtree/db_tree.hpp"

#include <set>
#include <stdexcept>

#include "dbtree/errors.hpp"
#include "node_pool.hpp"
#include "range_compute.hpp"

namespace dbtree {

DbTree::DbTree(NodeStore& store, Aggregation agg, LevelSource levels)
    : store_{store}, agg_{std::move(agg)}, levels_{std::move(levels)}
{
}

std::vector<SelectionResult> DbTree::read(std::vector<Selection> sels)
{
  return store_.read_round(sels);
}

void DbTree::write(const WriteSet& ws)
{
  store_.write_round(ws);
  for (const auto& n : ws.upserts) {
    if (n.is_root()) last_root_ = n;
  }
}

ResultValue DbTree::query(const Key& lo, const Key& hi) { return agg_.finish(query_aggregate(lo, hi)); }

AggValue DbTree::query_aggregate(const Key& lo, const Key& hi)
{
  if (!agg_.range_queryable()) {
    throw std::logic_error{"range query on a non-associative aggregation"};
  }
  if (hi < lo) throw std::invalid_argument{"range lower bound exceeds upper bound"};
  if (lo == hi) {
    auto v = get(lo);
    return v ? agg_.lift(*v) : agg_.identity();
  }
  auto res = read({LeftFringe{lo, hi}, RightFringe{lo, hi}, MinLevelEnclosing{lo, hi}});
  const Node* enclosing = res[2].nodes.empty() ? nullptr : &res[2].nodes.front();
  detail::RangeBounds b{[&lo](const Key& k) { return !(k < lo); },
                        [&hi](const Key& k) { return !(hi < k); }};
  return detail::compute_range(agg_, res[0].nodes, res[1].nodes, enclosing, b).value;
}

std::optional<Bytes> DbTree::get(const Key& k)
{
  auto res = read({PathTo{k}});
  for (const auto& n : res[0].nodes) {
    if (auto i = n.find(k)) return n.pairs[*i].value;
  }
  return std::nullopt;
}

void DbTree::insert(const Key& k, Bytes value)
{
  auto res = read({PathTo{k}});
  if (validator_) validator_(Operation::kInsert, k, res);
  detail::NodePool pool;
  pool.load(std::move(res[0].nodes));
  for (const Node* n : pool.path_to(k)) {
    if (n->contains(k)) throw DuplicateKey{"key already present"};
  }
  detail::insert_into(pool, agg_, k, std::move(value), levels_.next(k));
  write(pool.write_set());
}

void DbTree::update(const Key& k, Bytes value)
{
  auto res = read({PathTo{k}});
  if (validator_) validator_(Operation::kUpdate, k, res);
  detail::NodePool pool;
  pool.load(std::move(res[0].nodes));
  detail::update_in(pool, agg_, k, std::move(value));
  write(pool.write_set());
}

void DbTree::erase(const Key& k)
{
  auto res = read({TouchingKey{k}});
  if (validator_) validator_(Operation::kDelete, k, res);
  detail::NodePool pool;
  pool.load(std::move(res[0].nodes));
  detail::erase_from(pool, agg_, k);
  write(pool.write_set());
}

void DbTree::bulk_build(std::vector<Pair> pairs)
{
  Key probe = pairs.empty() ? Key{} : pairs.front().key;
  auto res = read({PathTo{probe}});
  const auto& nodes = res[0].nodes;
  if (nodes.size() != 1 || !nodes.front().is_root() || nodes.front().aggs.front().has_value()) {
    throw std::logic_error{"bulk build requires an empty tree"};
  }
  detail::NodePool pool;
  pool.load(std::move(res[0].nodes));
  for (auto& p : pairs) {
    Level l = levels_.next(p.key);
    detail::insert_into(pool, agg_, p.key, std::move(p.value), l);
  }
  write(pool.write_set());
}

void DbTree::batch_insert(std::vector<Pair> pairs)
{
  std::vector<Selection> sels;
  sels.reserve(pairs.size());
  for (const auto& p : pairs) sels.push_back(PathTo{p.key});
  auto res = read(std::move(sels));
  detail::NodePool pool;
  for (auto& r : res) pool.load(std::move(r.nodes));
  std::set<Key> seen;
  for (const auto& p : pairs) {
    if (!seen.insert(p.key).second) throw DuplicateKey{"key repeated in batch"};
    for (const Node* n : pool.path_to(p.key)) {
      if (n->contains(p.key)) throw DuplicateKey{"key already present"};
    }
  }
  for (auto& p : pairs) {
    Level l = levels_.next(p.key);
    detail::insert_into(pool, agg_, p.key, std::move(p.value), l);
  }
  write(pool.write_set());
}

}  // namespace dbtree
