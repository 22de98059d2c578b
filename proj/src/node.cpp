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

#include "dbtree/node.hpp"

#include <algorithm>

#include "dbtree/errors.hpp"

namespace dbtree {

namespace {
constexpr std::uint8_t kPayloadVersion = 1;

auto key_less = [](const Pair& p, const Key& k) { return p.key < k; };
}  // namespace

std::optional<std::size_t> Node::find(const Key& k) const
{
  auto it = std::lower_bound(pairs.begin(), pairs.end(), k, key_less);
  if (it != pairs.end() && it->key == k) return static_cast<std::size_t>(it - pairs.begin());
  return std::nullopt;
}

std::size_t Node::slot_of(const Key& k) const
{
  return static_cast<std::size_t>(std::lower_bound(pairs.begin(), pairs.end(), k, key_less) -
                                  pairs.begin());
}

KeyBound Node::slot_lower(std::size_t i) const
{
  return i == 0 ? min : KeyBound::of(pairs[i - 1].key);
}

KeyBound Node::slot_upper(std::size_t i) const
{
  return i == pairs.size() ? max : KeyBound::of(pairs[i].key);
}

std::string to_string(const Node& n)
{
  std::string s = "node(level=";
  s += n.is_root() ? std::string{"root"} : std::to_string(n.level);
  s += ", " + to_string(n.min) + ", " + to_string(n.max) + ", [";
  for (std::size_t i = 0; i <= n.m(); ++i) {
    s += n.aggs[i] ? to_string(*n.aggs[i]) : std::string{"-"};
    if (i < n.m()) s += " | " + to_hex(n.pairs[i].key.bytes()) + " | ";
  }
  return s + "])";
}

AggValue fold_positions(const Node& n, const Aggregation& agg, std::size_t first,
                        std::size_t last)
{
  std::vector<SequenceItem> items;
  if (first <= last) {
    last = std::min(last, 2 * n.m());
    items.reserve(last - first + 1);
    for (std::size_t p = first; p <= last; ++p) {
      if (p % 2 == 0) {
        const auto& slot = n.aggs[p / 2];
        if (slot) items.push_back(SequenceItem{&*slot, nullptr});
      } else {
        items.push_back(SequenceItem{nullptr, &n.pairs[p / 2]});
      }
    }
  }
  return agg.fold(items);
}

AggValue node_fold(const Node& n, const Aggregation& agg)
{
  return fold_positions(n, agg, 0, 2 * n.m());
}

std::pair<Node, Node> split_aseq(const Node& n, const Key& k)
{
  if (n.contains(k)) throw std::logic_error{"split key is contained in the node"};
  std::size_t s = n.slot_of(k);
  Node left;
  left.level = n.level;
  left.min = n.min;
  left.max = KeyBound::of(k);
  left.pairs.assign(n.pairs.begin(), n.pairs.begin() + static_cast<std::ptrdiff_t>(s));
  left.aggs.assign(n.aggs.begin(), n.aggs.begin() + static_cast<std::ptrdiff_t>(s + 1));
  left.aggs.back().reset();

  Node right;
  right.level = n.level;
  right.min = KeyBound::of(k);
  right.max = n.max;
  right.pairs.assign(n.pairs.begin() + static_cast<std::ptrdiff_t>(s), n.pairs.end());
  right.aggs.assign(n.aggs.begin() + static_cast<std::ptrdiff_t>(s), n.aggs.end());
  right.aggs.front().reset();
  return {std::move(left), std::move(right)};
}

Node merge_aseq(const Node& left, const Node& right, KeyBound new_min, KeyBound new_max)
{
  if (left.level != right.level) throw std::logic_error{"merging nodes of different levels"};
  Node out;
  out.level = left.level;
  out.min = std::move(new_min);
  out.max = std::move(new_max);
  out.pairs = left.pairs;
  out.pairs.insert(out.pairs.end(), right.pairs.begin(), right.pairs.end());
  out.aggs = left.aggs;
  out.aggs.back().reset();
  out.aggs.insert(out.aggs.end(), right.aggs.begin() + 1, right.aggs.end());
  return out;
}

Node set_adjacent_agg(Node n, const Key& k, std::optional<AggValue> a)
{
  n.aggs[n.slot_of(k)] = std::move(a);
  return n;
}

Bytes encode_payload(const Node& n)
{
  Bytes out;
  out.push_back(static_cast<char>(kPayloadVersion));
  put_varint(out, n.m());
  for (std::size_t i = 0; i <= n.m(); ++i) {
    const auto& slot = n.aggs[i];
    out.push_back(static_cast<char>(slot ? 1 : 0));
    if (slot) slot->encode_to(out);
    if (i < n.m()) {
      put_bytes(out, n.pairs[i].key.bytes());
      put_bytes(out, n.pairs[i].value);
    }
  }
  return out;
}

void decode_payload(BytesView payload, Node& n)
{
  Reader in{payload};
  if (in.u8() != kPayloadVersion) throw CorruptRecord{"unknown payload version"};
  auto m = in.varint();
  if (m > in.remaining()) throw CorruptRecord{"pair count exceeds payload"};
  n.pairs.clear();
  n.aggs.clear();
  n.pairs.reserve(static_cast<std::size_t>(m));
  n.aggs.reserve(static_cast<std::size_t>(m) + 1);
  for (std::uint64_t i = 0; i <= m; ++i) {
    auto present = in.u8();
    if (present > 1) throw CorruptRecord{"bad slot presence byte"};
    if (present) {
      n.aggs.emplace_back(AggValue::decode_from(in));
    } else {
      n.aggs.emplace_back(std::nullopt);
    }
    if (i < m) {
      Key k{Bytes{in.bytes()}};
      Bytes v{in.bytes()};
      n.pairs.push_back(Pair{std::move(k), std::move(v)});
    }
  }
  in.expect_done();
}

Record to_record(const Node& n)
{
  return Record{n.level, n.min.encode(), n.max.encode(), encode_payload(n)};
}

Node from_record(const Record& r)
{
  Node n;
  n.level = r.level;
  n.min = KeyBound::decode(r.min);
  n.max = KeyBound::decode(r.max);
  decode_payload(r.payload, n);
  if (!(n.min < n.max)) throw CorruptRecord{"node range is empty"};
  for (std::size_t i = 0; i < n.m(); ++i) {
    if (!(n.slot_lower(i) < n.pairs[i].key) || !(n.slot_upper(i + 1) > n.pairs[i].key)) {
      throw CorruptRecord{"node keys out of order or out of range"};
    }
  }
  return n;
}

RecordId record_id(const NodeId& id)
{
  return RecordId{id.level, id.min.encode(), id.max.encode()};
}

}  // namespace dbtree
