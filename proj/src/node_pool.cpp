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

#include "node_pool.hpp"

#include <algorithm>

#include "dbtree/errors.hpp"

namespace dbtree::detail {

void NodePool::load(std::vector<Node> nodes)
{
  for (auto& n : nodes) {
    auto id = n.id();
    if (!loaded_.insert(id).second) continue;
    auto& lm = levels_[n.level];
    KeyBound key = n.min;
    lm.insert_or_assign(std::move(key), std::move(n));
  }
}

std::vector<Node*> NodePool::path_to(const Key& k)
{
  std::vector<Node*> out;
  for (auto& [level, lm] : levels_) {
    auto it = lm.lower_bound(k);
    if (it == lm.begin()) continue;
    --it;
    if (it->second.max > k) out.push_back(&it->second);
  }
  return out;
}

std::vector<Node*> NodePool::touching(const Key& k)
{
  std::vector<Node*> out;
  for (auto& [level, lm] : levels_) {
    auto it = lm.lower_bound(k);
    if (it != lm.begin()) {
      auto prev = std::prev(it);
      if (prev->second.max >= k) out.push_back(&prev->second);
    }
    if (it != lm.end() && it->second.min == k) out.push_back(&it->second);
  }
  return out;
}

Node* NodePool::put(Node n)
{
  auto& lm = levels_[n.level];
  dirty_.insert(n.id());
  KeyBound key = n.min;
  auto [it, inserted] = lm.insert_or_assign(std::move(key), std::move(n));
  return &it->second;
}

void NodePool::erase(Node* n)
{
  auto id = n->id();
  dirty_.erase(id);
  auto lvl = levels_.find(id.level);
  if (lvl == levels_.end()) return;
  lvl->second.erase(id.min);
  if (lvl->second.empty()) levels_.erase(lvl);
}

void NodePool::mark(Node* n) { dirty_.insert(n->id()); }

std::vector<const Node*> NodePool::all() const
{
  std::vector<const Node*> out;
  for (const auto& [level, lm] : levels_) {
    for (const auto& [key, n] : lm) out.push_back(&n);
  }
  return out;
}

WriteSet NodePool::write_set() const
{
  auto present = [this](const NodeId& id) -> const Node* {
    auto lvl = levels_.find(id.level);
    if (lvl == levels_.end()) return nullptr;
    auto it = lvl->second.find(id.min);
    if (it == lvl->second.end() || it->second.max != id.max) return nullptr;
    return &it->second;
  };
  WriteSet ws;
  for (const auto& id : loaded_) {
    if (!present(id)) ws.deletes.push_back(id);
  }
  for (const auto& id : dirty_) {
    if (const Node* n = present(id)) ws.upserts.push_back(*n);
  }
  return ws;
}

void propagate(std::span<Node* const> chain, const Key& k, const Aggregation& agg)
{
  if (chain.empty()) return;
  AggValue a = node_fold(*chain[0], agg);
  for (std::size_t i = 1; i < chain.size(); ++i) {
    chain[i]->aggs[chain[i]->slot_of(k)] = std::move(a);
    a = node_fold(*chain[i], agg);
  }
}

namespace {

KeyBound prev_bound(const Node& n, const Key& k)
{
  std::size_t s = n.slot_of(k);
  return s == 0 ? n.min : KeyBound::of(n.pairs[s - 1].key);
}

KeyBound next_bound(const Node& n, const Key& k)
{
  std::size_t s = n.slot_of(k);
  if (s < n.m() && n.pairs[s].key == k) ++s;
  return s == n.m() ? n.max : KeyBound::of(n.pairs[s].key);
}

}  // namespace

void insert_into(NodePool& pool, const Aggregation& agg, const Key& k, Bytes value, Level level)
{
  auto path = pool.path_to(k);
  for (const Node* n : path) {
    if (n->contains(k)) throw DuplicateKey{"key already present"};
  }
  std::vector<Node*> down;  // levels below the new pair's level, ascending
  Node* target = nullptr;
  std::vector<Node*> up;
  for (Node* n : path) {
    if (n->level < level) {
      down.push_back(n);
    } else if (n->level == level) {
      target = n;
    } else {
      up.push_back(n);
    }
  }
  if (up.empty()) throw std::logic_error{"path does not reach the root"};
  if (!target) {
    const Node& parent = *up.front();
    Node fresh;
    fresh.level = level;
    fresh.min = prev_bound(parent, k);
    fresh.max = next_bound(parent, k);
    target = pool.put(std::move(fresh));
  }
  std::size_t s = target->slot_of(k);
  target->pairs.insert(target->pairs.begin() + static_cast<std::ptrdiff_t>(s), Pair{k, std::move(value)});
  target->aggs[s].reset();
  target->aggs.insert(target->aggs.begin() + static_cast<std::ptrdiff_t>(s) + 1, std::nullopt);
  pool.mark(target);

  std::vector<Node*> left;
  std::vector<Node*> right;
  for (auto it = down.rbegin(); it != down.rend(); ++it) {
    auto [l, r] = split_aseq(**it, k);
    pool.erase(*it);
    if (l.m() > 0) left.push_back(pool.put(std::move(l)));
    if (r.m() > 0) right.push_back(pool.put(std::move(r)));
  }
  std::reverse(left.begin(), left.end());
  std::reverse(right.begin(), right.end());
  if (!left.empty()) {
    Key probe = left.front()->pairs.front().key;
    left.push_back(target);
    propagate(left, probe, agg);
  }
  if (!right.empty()) {
    Key probe = right.front()->pairs.front().key;
    right.push_back(target);
    propagate(right, probe, agg);
  }
  std::vector<Node*> chain{target};
  chain.insert(chain.end(), up.begin(), up.end());
  for (Node* n : up) pool.mark(n);
  propagate(chain, k, agg);
}

void erase_from(NodePool& pool, const Aggregation& agg, const Key& k)
{
  auto nodes = pool.touching(k);
  Node* holder = nullptr;
  for (Node* n : nodes) {
    if (n->contains(k)) holder = n;
  }
  if (!holder) throw KeyNotFound{"key not present"};
  const Level level = holder->level;
  std::map<Level, Node*> left;
  std::map<Level, Node*> right;
  std::vector<Node*> up;
  for (Node* n : nodes) {
    if (n == holder) continue;
    if (n->level > level) {
      if (!n->in_range(k)) throw CorruptRecord{"ancestor does not enclose the key"};
      up.push_back(n);
    } else if (n->max == k) {
      left[n->level] = n;
    } else if (n->min == k) {
      right[n->level] = n;
    } else {
      throw CorruptRecord{"node below the key holder encloses the key"};
    }
  }

  std::size_t j = *holder->find(k);
  holder->pairs.erase(holder->pairs.begin() + static_cast<std::ptrdiff_t>(j));
  holder->aggs.erase(holder->aggs.begin() + static_cast<std::ptrdiff_t>(j) + 1);
  holder->aggs[j].reset();
  pool.mark(holder);

  std::set<Level, std::greater<>> below;
  for (const auto& [l, n] : left) below.insert(l);
  for (const auto& [l, n] : right) below.insert(l);

  std::vector<Node*> down;  // descending while built
  const Node* prev = holder;
  for (Level l : below) {
    KeyBound kmin = prev_bound(*prev, k);
    KeyBound kmax = next_bound(*prev, k);
    auto li = left.find(l);
    auto ri = right.find(l);
    Node merged;
    if (li != left.end() && ri != right.end()) {
      merged = merge_aseq(*li->second, *ri->second, kmin, kmax);
      pool.erase(li->second);
      pool.erase(ri->second);
    } else if (li != left.end()) {
      merged = *li->second;
      merged.max = kmax;
      pool.erase(li->second);
    } else {
      merged = *ri->second;
      merged.min = kmin;
      pool.erase(ri->second);
    }
    Node* placed = pool.put(std::move(merged));
    down.push_back(placed);
    prev = placed;
  }
  std::reverse(down.begin(), down.end());

  std::vector<Node*> chain = down;
  if (holder->m() > 0) {
    chain.push_back(holder);
  } else {
    pool.erase(holder);
  }
  if (chain.empty()) {
    if (up.empty()) throw std::logic_error{"key holder has no ancestors"};
    up.front()->aggs[up.front()->slot_of(k)].reset();
  }
  for (Node* n : up) pool.mark(n);
  chain.insert(chain.end(), up.begin(), up.end());
  propagate(chain, k, agg);
}

void update_in(NodePool& pool, const Aggregation& agg, const Key& k, Bytes value)
{
  auto path = pool.path_to(k);
  if (path.empty() || !path.front()->contains(k)) throw KeyNotFound{"key not present"};
  Node* n = path.front();
  n->pairs[*n->find(k)].value = std::move(value);
  for (Node* p : path) pool.mark(p);
  propagate(path, k, agg);
}

}  // namespace dbtree::detail
