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

#include "dbtree/hash.hpp"

#include <openssl/evp.h>

#include <memory>

#include "dbtree/errors.hpp"

namespace dbtree {

HashFunction sha256()
{
  HashFunction h;
  h.name = "sha256";
  h.digest_size = 32;
  h.digest = [](BytesView in) {
    Bytes out(32, '\0');
    unsigned int len = 0;
    if (EVP_Digest(in.data(), in.size(), reinterpret_cast<unsigned char*>(out.data()), &len,
                   EVP_sha256(), nullptr) != 1 ||
        len != 32) {
      throw std::runtime_error{"SHA-256 digest failed"};
    }
    return out;
  };
  return h;
}

Level derandomized_level(const Key& k, const HashFunction& h)
{
  Bytes d = h(k.bytes());
  Level level = 0;
  for (unsigned char byte : d) {
    for (int bit = 7; bit >= 0; --bit) {
      if (((byte >> bit) & 1) == 0) return level;
      ++level;
    }
  }
  return level;
}

Bytes empty_tree_digest(const HashFunction& h) { return h("E"); }

Bytes sequence_digest(std::span<const SequenceItem> items, const HashFunction& h)
{
  Bytes buf;
  buf.push_back('N');
  for (const auto& it : items) {
    if (it.agg) {
      if (!it.agg->is_digest()) throw CorruptRecord{"hash slot does not hold a digest"};
      buf.push_back('\x01');
      buf.append(it.agg->as_digest());
    } else {
      buf.push_back('\x02');
      put_bytes(buf, it.pair->key.bytes());
      put_bytes(buf, it.pair->value);
    }
  }
  return h(buf);
}

Bytes node_digest(const Node& n, const HashFunction& h)
{
  std::vector<SequenceItem> items;
  items.reserve(2 * n.m() + 1);
  for (std::size_t i = 0; i <= n.m(); ++i) {
    if (n.aggs[i]) items.push_back(SequenceItem{&*n.aggs[i], nullptr});
    if (i < n.m()) items.push_back(SequenceItem{nullptr, &n.pairs[i]});
  }
  return sequence_digest(items, h);
}

namespace {

class HashAggregation final : public AggregationFunction
{
 public:
  explicit HashAggregation(HashFunction h) : h_{std::move(h)} {}
  std::string name() const override { return "hash"; }
  AggValue identity() const override { return AggValue{Bottom{}}; }
  AggValue lift(BytesView) const override { return AggValue{Bottom{}}; }
  AggValue combine(const AggValue&, const AggValue&) const override { return AggValue{Bottom{}}; }
  ResultValue finish(const AggValue& a) const override
  {
    if (a.is_digest()) return ResultValue{a.as_digest()};
    return ResultValue{Empty{}};
  }
  bool associative() const override { return false; }
  AggValue fold(std::span<const SequenceItem> items) const override
  {
    return AggValue{Digest{sequence_digest(items, h_)}};
  }

 private:
  HashFunction h_;
};

}  // namespace

Aggregation make_hash_aggregation(HashFunction h)
{
  return Aggregation{std::make_shared<HashAggregation>(std::move(h))};
}

}  // namespace dbtree
