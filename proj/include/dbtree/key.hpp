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

#ifndef DBTREE_KEY_HPP
#define DBTREE_KEY_HPP

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include "dbtree/bytes.hpp"

namespace dbtree {

/**
 * @brief An opaque, totally ordered key.
 *
 * Keys compare by unsigned lexicographic order of their encoded bytes. Typed
 * keys are mapped to bytes with one of the order-preserving codecs below.
 */
class Key
{
 public:
  Key() = default;
  explicit Key(Bytes bytes) : bytes_{std::move(bytes)} {}

  [[nodiscard]] const Bytes& bytes() const { return bytes_; }

  friend bool operator==(const Key&, const Key&) = default;
  friend std::strong_ordering operator<=>(const Key& a, const Key& b)
  {
    return a.bytes_.compare(b.bytes_) <=> 0;
  }

 private:
  Bytes bytes_;
};

struct Pair {
  Key key;
  Bytes value;

  friend bool operator==(const Pair&, const Pair&) = default;
};

/**
 * @brief A key extended with the two infinite sentinels.
 */
class KeyBound
{
 public:
  enum class Kind : std::uint8_t { kNegInf = 0, kFinite = 1, kPosInf = 2 };

  KeyBound() = default;
  static KeyBound neg_inf() { return KeyBound{Kind::kNegInf, Key{}}; }
  static KeyBound pos_inf() { return KeyBound{Kind::kPosInf, Key{}}; }
  static KeyBound of(Key k) { return KeyBound{Kind::kFinite, std::move(k)}; }

  [[nodiscard]] Kind kind() const { return kind_; }
  [[nodiscard]] bool finite() const { return kind_ == Kind::kFinite; }
  /// Only meaningful when finite().
  [[nodiscard]] const Key& key() const { return key_; }

  /// One tag byte, followed by the key bytes when finite.
  [[nodiscard]] Bytes encode() const;
  /// Throws CorruptRecord on malformed input.
  static KeyBound decode(BytesView b);

  friend bool operator==(const KeyBound&, const KeyBound&) = default;
  friend std::strong_ordering operator<=>(const KeyBound& a, const KeyBound& b)
  {
    if (a.kind_ != b.kind_) return a.kind_ <=> b.kind_;
    return a.key_ <=> b.key_;
  }

  friend std::strong_ordering operator<=>(const KeyBound& a, const Key& k)
  {
    if (a.kind_ == Kind::kNegInf) return std::strong_ordering::less;
    if (a.kind_ == Kind::kPosInf) return std::strong_ordering::greater;
    return a.key_ <=> k;
  }
  friend bool operator==(const KeyBound& a, const Key& k) { return a.finite() && a.key_ == k; }

 private:
  KeyBound(Kind kind, Key key) : kind_{kind}, key_{std::move(key)} {}

  Kind kind_ = Kind::kNegInf;
  Key key_;
};

std::string to_string(const KeyBound& b);

/// Order-preserving codecs for typed keys.
namespace codec {

Bytes encode_u64(std::uint64_t v);
std::uint64_t decode_u64(BytesView b);
/// Big-endian with the sign bit flipped.
Bytes encode_i64(std::int64_t v);
std::int64_t decode_i64(BytesView b);

inline Key u64_key(std::uint64_t v) { return Key{encode_u64(v)}; }
inline Key i64_key(std::int64_t v) { return Key{encode_i64(v)}; }
inline Key text_key(std::string_view s) { return Key{Bytes{s}}; }

/// Values stored by the numeric aggregations are 8-byte little-endian int64.
Bytes int_value(std::int64_t v);
std::int64_t parse_int_value(BytesView b);

}  // namespace codec

/**
 * @brief Order-preserving encoding of (x, y) pairs.
 *
 * Each component has 0x00 escaped as 0x00 0xFF and is terminated by
 * 0x00 0x00, so the encoding sorts by x first and then by y.
 */
struct CompositeCodec {
  static Bytes compose(BytesView x, BytesView y);
  static Key key(BytesView x, BytesView y) { return Key{compose(x, y)}; }
  /// Throws CorruptRecord if the input is not a composite encoding.
  static std::pair<Bytes, Bytes> split(BytesView encoded);
  static Bytes x_of(BytesView encoded) { return split(encoded).first; }
  static Bytes y_of(BytesView encoded) { return split(encoded).second; }
  /// Parts of a bound; nullopt for the infinite sentinels.
  static std::optional<std::pair<Bytes, Bytes>> split_bound(const KeyBound& b);
};

}  // namespace dbtree

#endif  // DBTREE_KEY_HPP
