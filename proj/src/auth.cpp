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

#include "dbtree/auth.hpp"

#include <algorithm>
#include <map>

#include "dbtree/errors.hpp"

namespace dbtree {

namespace {

constexpr std::uint8_t kProofVersion = 1;

struct Rejected {
  std::string reason;
};

std::optional<Bytes> slot_digest(const std::optional<AggValue>& slot, const DigestLayout& layout)
{
  if (!slot) return std::nullopt;
  const AggValue* v = &*slot;
  if (layout.component) {
    if (!v->is_tuple() || v->as_tuple().size() <= *layout.component) {
      throw Rejected{"slot is not a product aggregate"};
    }
    v = &v->as_tuple()[*layout.component];
  }
  if (!v->is_digest() || v->as_digest().size() != layout.hash.digest_size) {
    throw Rejected{"slot does not hold a digest"};
  }
  return v->as_digest();
}

Bytes digest_of(const Node& n, const DigestLayout& layout)
{
  if (!layout.component) {
    for (const auto& s : n.aggs) slot_digest(s, layout);
    return node_digest(n, layout.hash);
  }
  Node projected = n;
  for (auto& s : projected.aggs) {
    if (auto d = slot_digest(s, layout)) s = AggValue{Digest{*d}};
  }
  return node_digest(projected, layout.hash);
}

void check_shape(const Node& n, const DigestLayout& layout)
{
  if (n.aggs.size() != n.m() + 1) throw Rejected{"slot count mismatch"};
  if (!(n.min < n.max)) throw Rejected{"empty node range"};
  for (std::size_t i = 0; i < n.m(); ++i) {
    if (!(n.slot_lower(i) < n.pairs[i].key) || !(n.slot_upper(i + 1) > n.pairs[i].key)) {
      throw Rejected{"keys out of order"};
    }
  }
  if (n.is_root()) return;
  if (n.m() == 0) throw Rejected{"non-root node without keys"};
  for (const auto& p : n.pairs) {
    if (derandomized_level(p.key, layout.hash) != n.level) {
      throw Rejected{"node level disagrees with its keys"};
    }
  }
}

void check_child(const Node& parent, std::size_t slot, const Node& child, const DigestLayout& layout)
{
  if (!(child.level < parent.level)) throw Rejected{"levels do not ascend"};
  if (child.min != parent.slot_lower(slot) || child.max != parent.slot_upper(slot)) {
    throw Rejected{"node does not fill the parent slot"};
  }
  auto stored = slot_digest(parent.aggs[slot], layout);
  if (!stored) throw Rejected{"parent slot is missing"};
  if (*stored != digest_of(child, layout)) throw Rejected{"digest mismatch"};
}

VerifyResult verify_or_throw(const Proof& proof, const Key& k, BytesView trusted_root,
                             const DigestLayout& layout)
{
  const auto& nodes = proof.nodes;
  if (nodes.empty()) throw Rejected{"empty proof"};
  const Node& root = nodes.back();
  if (!root.is_root() || root.m() != 0 || root.min != KeyBound::neg_inf() ||
      root.max != KeyBound::pos_inf()) {
    throw Rejected{"proof does not end at the root"};
  }
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    check_shape(nodes[i], layout);
    if (!nodes[i].in_range(k)) throw Rejected{"node range does not cover the key"};
    if (i > 0 && nodes[i].contains(k)) throw Rejected{"key held above the lowest node"};
    if (i + 1 < nodes.size() && !(nodes[i].level < nodes[i + 1].level)) {
      throw Rejected{"levels do not ascend"};
    }
  }

  VerifyResult out;
  const Node& first = nodes.front();
  if (auto i = first.find(k)) {
    out.status = VerifyResult::Status::kValue;
    out.value = first.pairs[*i].value;
  } else {
    if (first.aggs[first.slot_of(k)]) throw Rejected{"proof stops above the key"};
    out.status = VerifyResult::Status::kAbsent;
  }
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    check_child(nodes[i], nodes[i].slot_of(k), nodes[i - 1], layout);
  }
  Bytes root_hash = root_digest(root, layout);
  if (root_hash != trusted_root) throw Rejected{"root digest mismatch"};
  return out;
}

}  // namespace

Bytes serialize_proof(const Proof& p)
{
  Bytes out;
  out.push_back(static_cast<char>(kProofVersion));
  put_varint(out, p.nodes.size());
  for (const auto& n : p.nodes) {
    Record r = to_record(n);
    put_u32_le(out, r.level);
    put_bytes(out, r.min);
    put_bytes(out, r.max);
    put_bytes(out, r.payload);
  }
  return out;
}

Proof parse_proof(BytesView b)
{
  Reader in{b};
  if (in.u8() != kProofVersion) throw CorruptRecord{"unknown proof version"};
  auto count = in.varint();
  if (count > in.remaining()) throw CorruptRecord{"node count exceeds input"};
  Proof p;
  for (std::uint64_t i = 0; i < count; ++i) {
    Record r;
    r.level = in.u32_le();
    r.min = Bytes{in.bytes()};
    r.max = Bytes{in.bytes()};
    r.payload = Bytes{in.bytes()};
    p.nodes.push_back(from_record(r));
  }
  in.expect_done();
  return p;
}

Bytes root_digest(const Node& root, const DigestLayout& layout)
{
  if (root.aggs.empty()) throw CorruptRecord{"root without slots"};
  try {
    auto d = slot_digest(root.aggs.front(), layout);
    return d ? *d : empty_tree_digest(layout.hash);
  } catch (const Rejected& r) {
    throw CorruptRecord{r.reason};
  }
}

VerifyResult verify(const Proof& proof, const Key& k, BytesView trusted_root,
                    const DigestLayout& layout)
{
  try {
    return verify_or_throw(proof, k, trusted_root, layout);
  } catch (const Rejected& r) {
    return VerifyResult{VerifyResult::Status::kInvalid, std::nullopt, r.reason};
  } catch (const CorruptRecord& e) {
    return VerifyResult{VerifyResult::Status::kInvalid, std::nullopt, e.what()};
  } catch (const std::bad_variant_access&) {
    return VerifyResult{VerifyResult::Status::kInvalid, std::nullopt, "malformed aggregate"};
  }
}

std::optional<std::size_t> hash_component(const Aggregation& agg)
{
  const auto& parts = agg.parts();
  std::optional<std::size_t> found;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (!parts[i].associative()) {
      if (found) return std::nullopt;
      found = i;
    }
  }
  return found;
}

namespace {

// Authenticates the fringe nodes touching k on one side of the key holder.
void check_fringe(const Node& holder, std::size_t slot, bool left, std::vector<const Node*> side,
                  const DigestLayout& layout)
{
  std::sort(side.begin(), side.end(),
            [](const Node* a, const Node* b) { return a->level > b->level; });
  const Node* parent = &holder;
  for (const Node* n : side) {
    check_shape(*n, layout);
    check_child(*parent, slot, *n, layout);
    parent = n;
    slot = left ? n->m() : 0;
  }
  if (parent->aggs[slot]) throw Rejected{"fringe node withheld"};
}

}  // namespace

AuthenticatedDbTree::AuthenticatedDbTree(NodeStore& store, HashFunction h)
    : layout_{h, std::nullopt},
      tree_{store, make_hash_aggregation(h), LevelSource::derandomized(h)}
{
  tree_.set_read_validator([this](Operation op, const Key& k, std::span<const SelectionResult> res) {
    const auto& nodes = res.front().nodes;
    Proof proof;
    std::vector<const Node*> left;
    std::vector<const Node*> right;
    for (const auto& n : nodes) {
      if (op != Operation::kDelete || n.in_range(k)) {
        proof.nodes.push_back(n);
      } else if (n.max == k) {
        left.push_back(&n);
      } else if (n.min == k) {
        right.push_back(&n);
      }
    }
    auto r = verify(proof, k, trusted_, layout_);
    if (!r.valid()) throw ProofRejected{"read round failed verification: " + r.reason};
    if (op != Operation::kDelete) return;
    if (r.status != VerifyResult::Status::kValue) throw KeyNotFound{"key not present"};
    const Node& holder = proof.nodes.front();
    std::size_t j = *holder.find(k);
    try {
      check_fringe(holder, j, true, left, layout_);
      check_fringe(holder, j + 1, false, right, layout_);
    } catch (const Rejected& e) {
      throw ProofRejected{"read round failed verification: " + e.reason};
    }
  });
}

Bytes AuthenticatedDbTree::root_hash()
{
  std::vector<Selection> sels{PathTo{Key{}}};
  auto res = tree_.store().read_round(sels);
  if (res[0].nodes.empty()) throw CorruptRecord{"root not found"};
  return root_digest(res[0].nodes.back(), layout_);
}

std::pair<std::optional<Bytes>, Proof> AuthenticatedDbTree::get(const Key& k)
{
  std::vector<Selection> sels{PathTo{k}};
  Proof p;
  try {
    auto res = tree_.store().read_round(sels);
    p.nodes = std::move(res[0].nodes);
  } catch (const CorruptRecord&) {
    return {std::nullopt, Proof{}};
  }
  std::optional<Bytes> value;
  if (!p.nodes.empty()) {
    if (auto i = p.nodes.front().find(k)) value = p.nodes.front().pairs[*i].value;
  }
  return {std::move(value), std::move(p)};
}

VerifyResult AuthenticatedDbTree::verified_get(const Key& k, BytesView trusted_root)
{
  return verify(get(k).second, k, trusted_root, layout_);
}

Bytes AuthenticatedDbTree::new_root() const
{
  const auto& root = tree_.last_written_root();
  if (!root) throw std::logic_error{"mutation did not write the root"};
  return root_digest(*root, layout_);
}

Bytes AuthenticatedDbTree::insert(const Key& k, Bytes value, BytesView trusted_root)
{
  trusted_ = Bytes{trusted_root};
  tree_.insert(k, std::move(value));
  return new_root();
}

Bytes AuthenticatedDbTree::update(const Key& k, Bytes value, BytesView trusted_root)
{
  trusted_ = Bytes{trusted_root};
  tree_.update(k, std::move(value));
  return new_root();
}

Bytes AuthenticatedDbTree::erase(const Key& k, BytesView trusted_root)
{
  trusted_ = Bytes{trusted_root};
  tree_.erase(k);
  return new_root();
}

Bytes AuthenticatedDbTree::bulk_build(std::vector<Pair> pairs)
{
  if (pairs.empty()) return root_hash();
  tree_.bulk_build(std::move(pairs));
  return new_root();
}

}  // namespace dbtree
