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

#ifndef DBTREE_AUTH_HPP
#define DBTREE_AUTH_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dbtree/db_tree.hpp"
#include "dbtree/hash.hpp"
#include "dbtree/node_store.hpp"

namespace dbtree {

/// The nodes read by PathTo(k), ascending by level and ending at the root.
struct Proof {
  std::vector<Node> nodes;
};

/// Version byte, varint node count, then per node its level (u32 LE), the
/// varint-prefixed encoded bounds and the varint-prefixed payload.
Bytes serialize_proof(const Proof& p);
/// Throws CorruptRecord.
Proof parse_proof(BytesView b);

struct VerifyResult {
  enum class Status { kValue, kAbsent, kInvalid };
  Status status = Status::kInvalid;
  std::optional<Bytes> value;
  std::string reason;

  [[nodiscard]] bool valid() const { return status != Status::kInvalid; }
};

/// Where the digest lives in each slot.
struct DigestLayout {
  HashFunction hash = sha256();
  /// Component of a product aggregate; nullopt when slots are digests.
  std::optional<std::size_t> component;
};

/**
 * @brief Checks a proof for key k against a trusted root digest.
 *
 * Rejects proofs whose levels do not ascend to the root, whose node levels
 * disagree with the derandomized level of their keys, whose nodes do not
 * nest in the slot that covers k, or whose digests do not chain up to the
 * trusted root.
 */
VerifyResult verify(const Proof& proof, const Key& k, BytesView trusted_root,
                    const DigestLayout& layout = {});

/// Root digest held by a root node.
Bytes root_digest(const Node& root, const DigestLayout& layout = {});

/// Index of the single non-associative component of a product, if any.
std::optional<std::size_t> hash_component(const Aggregation& agg);

/**
 * @brief A tree whose slots hold digests, with client-side verification.
 *
 * Levels are derandomized. Every mutation first verifies the read round
 * against the caller's trusted root and aborts without writing if it fails.
 * Mutations return the new root digest.
 */
class AuthenticatedDbTree
{
 public:
  explicit AuthenticatedDbTree(NodeStore& store, HashFunction h = sha256());

  [[nodiscard]] Bytes root_hash();
  /// Value (if any) and the proof read for it. Undecodable records yield an empty proof.
  std::pair<std::optional<Bytes>, Proof> get(const Key& k);
  /// Reads the proof and verifies it in one call.
  VerifyResult verified_get(const Key& k, BytesView trusted_root);

  Bytes insert(const Key& k, Bytes value, BytesView trusted_root);
  Bytes update(const Key& k, Bytes value, BytesView trusted_root);
  Bytes erase(const Key& k, BytesView trusted_root);
  Bytes bulk_build(std::vector<Pair> pairs);

  [[nodiscard]] DbTree& tree() { return tree_; }
  [[nodiscard]] const DigestLayout& layout() const { return layout_; }

 private:
  Bytes new_root() const;

  DigestLayout layout_;
  DbTree tree_;
  Bytes trusted_;
};

}  // namespace dbtree

#endif  // DBTREE_AUTH_HPP
