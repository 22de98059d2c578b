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

#include "dbtree/node_store.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "dbtree/errors.hpp"

namespace dbtree {

std::string selection_name(const Selection& s)
{
  static const char* const kNames[] = {"PathTo",           "TouchingKey",     "LeftFringe",
                                       "RightFringe",      "MinLevelEnclosing", "GroupLeftFringe",
                                       "GroupRightFringe", "GroupEnclosing"};
  return kNames[s.index()];
}

RoundStats operator-(const RoundStats& a, const RoundStats& b)
{
  return RoundStats{a.read_rounds - b.read_rounds,     a.write_rounds - b.write_rounds,
                    a.statements - b.statements,       a.nodes_read - b.nodes_read,
                    a.bytes_read - b.bytes_read,       a.nodes_written - b.nodes_written,
                    a.bytes_written - b.bytes_written};
}

std::vector<SelectionResult> NodeStore::read_round(std::span<const Selection> selections)
{
  auto raw = read_records(selections);
  if (raw.size() != selections.size()) throw StoreError{"backend returned wrong result count"};
  std::uint64_t nodes = 0;
  std::uint64_t bytes = 0;
  std::vector<SelectionResult> out;
  out.reserve(raw.size());
  for (auto& r : raw) {
    SelectionResult res;
    res.nodes.reserve(r.records.size());
    for (const auto& rec : r.records) {
      ++nodes;
      bytes += rec.byte_size();
      res.nodes.push_back(from_record(rec));
    }
    res.xs = std::move(r.xs);
    out.push_back(std::move(res));
  }
  ++read_rounds_;
  statements_ += selections.size();
  nodes_read_ += nodes;
  bytes_read_ += bytes;
  return out;
}

void NodeStore::write_round(const WriteSet& ws)
{
  if (ws.empty()) {
    ++write_rounds_;
    return;
  }
  std::vector<RecordId> deletes;
  deletes.reserve(ws.deletes.size());
  for (const auto& id : ws.deletes) deletes.push_back(record_id(id));
  std::vector<Record> upserts;
  upserts.reserve(ws.upserts.size());
  std::uint64_t bytes = 0;
  for (const auto& n : ws.upserts) {
    upserts.push_back(to_record(n));
    bytes += upserts.back().byte_size();
  }
  write_records(deletes, upserts);
  ++write_rounds_;
  nodes_written_ += deletes.size() + upserts.size();
  bytes_written_ += bytes;
}

RoundStats NodeStore::stats() const
{
  return RoundStats{read_rounds_.load(), write_rounds_.load(), statements_.load(),
                    nodes_read_.load(),  bytes_read_.load(),   nodes_written_.load(),
                    bytes_written_.load()};
}

void NodeStore::reset_stats()
{
  read_rounds_ = 0;
  write_rounds_ = 0;
  statements_ = 0;
  nodes_read_ = 0;
  bytes_read_ = 0;
  nodes_written_ = 0;
  bytes_written_ = 0;
}

std::vector<Node> NodeStore::snapshot() const
{
  std::vector<Node> out;
  for (const auto& r : dump()) out.push_back(from_record(r));
  return out;
}

bool spans_groups(const KeyBound& min, const KeyBound& max)
{
  auto a = CompositeCodec::split_bound(min);
  auto b = CompositeCodec::split_bound(max);
  return !a || !b || a->first != b->first;
}

namespace {

struct Bounds {
  KeyBound min;
  KeyBound max;
  std::optional<std::pair<Bytes, Bytes>> min_xy;
  std::optional<std::pair<Bytes, Bytes>> max_xy;
  bool f = false;
};

Bounds composite_bounds(const Record& r)
{
  Bounds b;
  b.min = KeyBound::decode(r.min);
  b.max = KeyBound::decode(r.max);
  b.min_xy = CompositeCodec::split_bound(b.min);
  b.max_xy = CompositeCodec::split_bound(b.max);
  b.f = !b.min_xy || !b.max_xy || b.min_xy->first != b.max_xy->first;
  return b;
}

Bytes enc_key(const Key& k) { return KeyBound::of(k).encode(); }

}  // namespace

bool selection_matches(const Selection& s, const Record& r)
{
  return std::visit(
      [&r](const auto& sel) -> bool {
        using T = std::decay_t<decltype(sel)>;
        if constexpr (std::is_same_v<T, PathTo>) {
          auto k = enc_key(sel.key);
          return r.min < k && k < r.max;
        } else if constexpr (std::is_same_v<T, TouchingKey>) {
          auto k = enc_key(sel.key);
          return r.min <= k && k <= r.max;
        } else if constexpr (std::is_same_v<T, LeftFringe>) {
          auto lo = enc_key(sel.lo);
          auto hi = enc_key(sel.hi);
          return r.min < lo && lo < r.max && r.max <= hi;
        } else if constexpr (std::is_same_v<T, RightFringe>) {
          auto lo = enc_key(sel.lo);
          auto hi = enc_key(sel.hi);
          return lo <= r.min && r.min < hi && hi < r.max;
        } else if constexpr (std::is_same_v<T, GroupLeftFringe>) {
          auto b = composite_bounds(r);
          if (!b.max_xy) return false;
          const auto& max_y = b.max_xy->second;
          bool min_below = b.min_xy && b.min_xy->second < sel.y_lo;
          return sel.y_lo < max_y && max_y <= sel.y_hi && (min_below || b.f);
        } else if constexpr (std::is_same_v<T, GroupRightFringe>) {
          auto b = composite_bounds(r);
          if (!b.min_xy) return false;
          const auto& min_y = b.min_xy->second;
          bool max_above = b.max_xy && sel.y_hi < b.max_xy->second;
          return sel.y_lo <= min_y && min_y < sel.y_hi && (max_above || b.f);
        } else {
          throw std::logic_error{"selection has no per-node predicate"};
        }
      },
      s);
}

namespace {

std::vector<Bytes> discover_groups(std::span<const Record> records)
{
  std::set<Bytes> xs;
  for (const auto& r : records) {
    auto b = composite_bounds(r);
    if (!b.f) continue;
    Node n = from_record(r);
    for (const auto& p : n.pairs) xs.insert(CompositeCodec::x_of(p.key.bytes()));
  }
  return {xs.begin(), xs.end()};
}

void sort_by_level(std::vector<Record>& rs)
{
  std::sort(rs.begin(), rs.end(), [](const Record& a, const Record& b) {
    return std::tie(a.level, a.min, a.max) < std::tie(b.level, b.min, b.max);
  });
}

}  // namespace

RawSelectionResult scan_selection(const Selection& s, std::span<const Record> records)
{
  RawSelectionResult out;
  if (const auto* enc = std::get_if<MinLevelEnclosing>(&s)) {
    auto lo = enc_key(enc->lo);
    auto hi = enc_key(enc->hi);
    const Record* best = nullptr;
    for (const auto& r : records) {
      if (r.min < lo && hi < r.max && (!best || r.level < best->level)) best = &r;
    }
    if (best) out.records.push_back(*best);
    return out;
  }
  if (const auto* g = std::get_if<GroupEnclosing>(&s)) {
    std::vector<Bytes> xs = g->xs ? *g->xs : discover_groups(records);
    for (const auto& x : xs) {
      auto lo = enc_key(CompositeCodec::key(x, g->y_lo));
      auto hi = enc_key(CompositeCodec::key(x, g->y_hi));
      const Record* best = nullptr;
      for (const auto& r : records) {
        if (r.min < lo && hi < r.max && (!best || r.level < best->level)) best = &r;
      }
      if (best) {
        out.records.push_back(*best);
        out.xs.push_back(x);
      }
    }
    return out;
  }
  for (const auto& r : records) {
    if (selection_matches(s, r)) out.records.push_back(r);
  }
  sort_by_level(out.records);
  return out;
}

}  // namespace dbtree
