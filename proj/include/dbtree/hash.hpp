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

#ifndef DBTREE_HASH_HPP
#define DBTREE_HASH_HPP

#include <cstddef>
#include <functional>
#include <string>

#include "dbtree/aggregation.hpp"
#include "dbtree/key.hpp"
#include "dbtree/node.hpp"

namespace dbtree {

/// A collision-resistant hash with a fixed digest size.
struct HashFunction {
  std::string name;
  std::size_t digest_size = 0;
  std::function<Bytes(BytesView)> digest;

  Bytes operator()(BytesView in) const { return digest(in); }
};

/// SHA-256 through OpenSSL EVP.
HashFunction sha256();

/// Index of the first zero bit of H(key), most significant bit of byte 0 first.
Level derandomized_level(const Key& k, const HashFunction& h);

/// Root digest of the empty tree.
Bytes empty_tree_digest(const HashFunction& h);

/**
 * @brief Digest of an aggregate sequence.
 *
 * Hashes the tag 'N' followed by one item per present slot (0x01, digest)
 * and per pair (0x02, varint-prefixed key, varint-prefixed value). Missing
 * slots contribute nothing.
 */
Bytes sequence_digest(std::span<const SequenceItem> items, const HashFunction& h);

/// sequence_digest over a node whose slots hold digests.
Bytes node_digest(const Node& n, const HashFunction& h);

/**
 * @brief The hash aggregation.
 *
 * Not associative: fold hashes the canonical encoding of the whole sequence,
 * and combine yields bottom.
 */
Aggregation make_hash_aggregation(HashFunction h = sha256());

}  // namespace dbtree

#endif  // DBTREE_HASH_HPP
