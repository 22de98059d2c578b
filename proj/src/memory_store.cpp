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

#include "dbtree/memory_store.hpp"

#include <algorithm>
#include <mutex>
#include <set>
#include <tuple>

#include "dbtree/errors.hpp"

namespace dbtree {

namespace {

Bytes enc_key(const Key& k) { return KeyBound::of(k).encode(); }

RecordId id_of(const Record& r) { return RecordId{r.level, r.min, r.max}; }

void sort_canonical(std::vector<Record>& rs)
{
  std::sort(rs.begin(), rs.end(), [](const Record& a, const Record& b) {
    return std::tie(a.level, a.min, a.max) < std::tie(b.level, b.min, b.max);
  });
}

}  // namespace

MemoryNodeStore::MemoryNodeStore(bool composite) : composite_{composite}
{
  insert_unlocked(to_record(Node::empty_root()));
}

std::size_t MemoryNodeStore::size() const
{
  std::shared_lock lock{mu_};
  std::size_t n = 0;
  for (const auto& [level, m] : levels_) n += m.size();
  return n;
}

std::vector<Record> MemoryNodeStore::dump() const
{
  std::shared_lock lock{mu_};
  std::vector<Record> out;
  for (const auto& [level, m] : levels_) {
    for (const auto& [key, r] : m) out.push_back(r);
  }
  std::sort(out.begin(), out.end(), [](const Record& a, const Record& b) {
    return std::tie(a.min, a.max, a.level) < std::tie(b.min, b.max, b.level);
  });
  return out;
}

void MemoryNodeStore::restore(std::span<const Record> records)
{
  std::unique_lock lock{mu_};
  levels_.clear();
  by_min_y_.clear();
  by_max_y_.clear();
  spanning_.clear();
  for (const auto& r : records) insert_unlocked(r);
}

void MemoryNodeStore::fail_next_write_after(std::size_t ops)
{
  std::unique_lock lock{mu_};
  fail_after_ = ops;
}

std::optional<Record> MemoryNodeStore::raw_get(const RecordId& id) const
{
  std::shared_lock lock{mu_};
  return get_unlocked(id);
}

void MemoryNodeStore::raw_put(Record r)
{
  std::unique_lock lock{mu_};
  erase_unlocked(id_of(r));
  insert_unlocked(std::move(r));
}

bool MemoryNodeStore::raw_erase(const RecordId& id)
{
  std::unique_lock lock{mu_};
  return erase_unlocked(id);
}

MemoryNodeStore::GroupIndexEntry MemoryNodeStore::group_entry(const Record& r)
{
  GroupIndexEntry e;
  try {
    auto min = CompositeCodec::split_bound(KeyBound::decode(r.min));
    auto max = CompositeCodec::split_bound(KeyBound::decode(r.max));
    if (min) e.min_y = min->second;
    if (max) e.max_y = max->second;
    e.f = !min || !max || min->first != max->first;
  } catch (const CorruptRecord&) {
    e = GroupIndexEntry{std::nullopt, std::nullopt, true};
  }
  return e;
}

void MemoryNodeStore::insert_unlocked(Record r)
{
  if (composite_) {
    auto e = group_entry(r);
    auto id = id_of(r);
    if (e.min_y) by_min_y_.emplace(*e.min_y, id);
    if (e.max_y) by_max_y_.emplace(*e.max_y, id);
    if (e.f) spanning_.insert(id);
  }
  auto key = std::make_pair(r.min, r.max);
  levels_[r.level].insert_or_assign(std::move(key), std::move(r));
}

bool MemoryNodeStore::erase_unlocked(const RecordId& id)
{
  auto lvl = levels_.find(id.level);
  if (lvl == levels_.end()) return false;
  auto it = lvl->second.find({id.min, id.max});
  if (it == lvl->second.end()) return false;
  if (composite_) {
    auto e = group_entry(it->second);
    if (e.min_y) by_min_y_.erase({*e.min_y, id});
    if (e.max_y) by_max_y_.erase({*e.max_y, id});
    spanning_.erase(id);
  }
  lvl->second.erase(it);
  if (lvl->second.empty()) levels_.erase(lvl);
  return true;
}

std::optional<Record> MemoryNodeStore::get_unlocked(const RecordId& id) const
{
  auto lvl = levels_.find(id.level);
  if (lvl == levels_.end()) return std::nullopt;
  auto it = lvl->second.find({id.min, id.max});
  if (it == lvl->second.end()) return std::nullopt;
  return it->second;
}

const Record* MemoryNodeStore::find_in_range(const LevelMap& m, const Bytes& k) const
{
  auto it = m.lower_bound({k, Bytes{}});
  if (it == m.begin()) return nullptr;
  --it;
  return k < it->second.max ? &it->second : nullptr;
}

const Record* MemoryNodeStore::enclosing_at(const LevelMap& m, const Bytes& lo,
                                            const Bytes& hi) const
{
  const Record* r = find_in_range(m, lo);
  return r && hi < r->max ? r : nullptr;
}

RawSelectionResult MemoryNodeStore::evaluate(const Selection& s) const
{
  RawSelectionResult out;
  auto& recs = out.records;
  if (const auto* p = std::get_if<PathTo>(&s)) {
    auto k = enc_key(p->key);
    for (const auto& [level, m] : levels_) {
      if (const auto* r = find_in_range(m, k)) recs.push_back(*r);
    }
  } else if (const auto* t = std::get_if<TouchingKey>(&s)) {
    auto k = enc_key(t->key);
    for (const auto& [level, m] : levels_) {
      auto it = m.lower_bound({k, Bytes{}});
      if (it != m.begin()) {
        const auto& prev = std::prev(it)->second;
        if (k <= prev.max) recs.push_back(prev);
      }
      for (; it != m.end() && it->first.first == k; ++it) recs.push_back(it->second);
    }
  } else if (const auto* lf = std::get_if<LeftFringe>(&s)) {
    auto lo = enc_key(lf->lo);
    auto hi = enc_key(lf->hi);
    for (const auto& [level, m] : levels_) {
      const auto* r = find_in_range(m, lo);
      if (r && r->max <= hi) recs.push_back(*r);
    }
  } else if (const auto* rf = std::get_if<RightFringe>(&s)) {
    auto lo = enc_key(rf->lo);
    auto hi = enc_key(rf->hi);
    for (const auto& [level, m] : levels_) {
      const auto* r = find_in_range(m, hi);
      if (r && lo <= r->min) recs.push_back(*r);
    }
  } else if (const auto* e = std::get_if<MinLevelEnclosing>(&s)) {
    auto lo = enc_key(e->lo);
    auto hi = enc_key(e->hi);
    for (const auto& [level, m] : levels_) {
      if (const auto* r = enclosing_at(m, lo, hi)) {
        recs.push_back(*r);
        break;
      }
    }
  } else if (std::holds_alternative<GroupLeftFringe>(s) ||
             std::holds_alternative<GroupRightFringe>(s)) {
    if (!composite_) throw std::logic_error{"group selection on a non-composite store"};
    const bool left = std::holds_alternative<GroupLeftFringe>(s);
    const Bytes& y_lo = left ? std::get<GroupLeftFringe>(s).y_lo : std::get<GroupRightFringe>(s).y_lo;
    const Bytes& y_hi = left ? std::get<GroupLeftFringe>(s).y_hi : std::get<GroupRightFringe>(s).y_hi;
    const auto& index = left ? by_max_y_ : by_min_y_;
    if (y_lo <= y_hi) {
      auto it = index.lower_bound({y_lo, RecordId{}});
      for (; it != index.end() && it->first <= y_hi; ++it) {
        auto r = get_unlocked(it->second);
        if (r && selection_matches(s, *r)) recs.push_back(std::move(*r));
      }
    }
    sort_canonical(recs);
  } else if (const auto* g = std::get_if<GroupEnclosing>(&s)) {
    if (!composite_) throw std::logic_error{"group selection on a non-composite store"};
    std::vector<Bytes> xs;
    if (g->xs) {
      xs = *g->xs;
    } else {
      std::set<Bytes> found;
      for (const auto& id : spanning_) {
        auto r = get_unlocked(id);
        if (!r) continue;
        Node n = from_record(*r);
        for (const auto& pr : n.pairs) found.insert(CompositeCodec::x_of(pr.key.bytes()));
      }
      xs.assign(found.begin(), found.end());
    }
    for (const auto& x : xs) {
      auto lo = enc_key(CompositeCodec::key(x, g->y_lo));
      auto hi = enc_key(CompositeCodec::key(x, g->y_hi));
      for (const auto& [level, m] : levels_) {
        if (const auto* r = enclosing_at(m, lo, hi)) {
          recs.push_back(*r);
          out.xs.push_back(x);
          break;
        }
      }
    }
  }
  return out;
}

std::vector<RawSelectionResult> MemoryNodeStore::read_records(std::span<const Selection> selections)
{
  std::shared_lock lock{mu_};
  std::vector<RawSelectionResult> out;
  out.reserve(selections.size());
  for (const auto& s : selections) out.push_back(evaluate(s));
  return out;
}

void MemoryNodeStore::write_records(std::span<const RecordId> deletes,
                                    std::span<const Record> upserts)
{
  std::unique_lock lock{mu_};
  if (composite_) {
    for (const auto& r : upserts) {
      for (const auto* b : {&r.min, &r.max}) {
        auto kb = KeyBound::decode(*b);
        if (kb.finite()) CompositeCodec::split(kb.key().bytes());
      }
    }
  }
  auto fail_after = std::exchange(fail_after_, std::nullopt);

  // Each entry restores the prior state of one record id.
  std::vector<std::pair<RecordId, std::optional<Record>>> undo;
  auto rollback = [&] {
    for (auto it = undo.rbegin(); it != undo.rend(); ++it) {
      erase_unlocked(it->first);
      if (it->second) insert_unlocked(*it->second);
    }
  };
  auto step = [&] {
    if (fail_after && undo.size() >= *fail_after) {
      rollback();
      throw StoreError{"injected write failure"};
    }
  };
  for (const auto& id : deletes) {
    step();
    undo.emplace_back(id, get_unlocked(id));
    erase_unlocked(id);
  }
  for (const auto& r : upserts) {
    step();
    auto id = id_of(r);
    undo.emplace_back(id, get_unlocked(id));
    erase_unlocked(id);
    insert_unlocked(r);
  }
  step();
}

}  // namespace dbtree
