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

#ifndef DBTREE_AGG_VALUE_HPP
#define DBTREE_AGG_VALUE_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "dbtree/bytes.hpp"

namespace dbtree {

/// Absorbing-free sentinel used by MIN, MAX and top-n, and as a placeholder.
struct Bottom {
  friend bool operator==(const Bottom&, const Bottom&) { return true; }
};

struct Digest {
  Bytes bytes;
  friend bool operator==(const Digest&, const Digest&) = default;
};

/**
 * @brief Value of an aggregation's carrier set.
 *
 * The codec is self-describing: one tag byte, then
 *  - 0x00 bottom
 *  - 0x01 int64, 8 bytes LE
 *  - 0x02 big integer, sign byte, varint length, LE magnitude
 *  - 0x03 tuple, varint count, elements
 *  - 0x04 digest, varint length, bytes
 */
class AggValue
{
 public:
  using Tuple = std::vector<AggValue>;
  using Repr = std::variant<Bottom, std::int64_t, mpz_class, Tuple, Digest>;

  AggValue() = default;
  AggValue(Bottom b) : repr_{b} {}
  AggValue(std::int64_t v) : repr_{v} {}
  AggValue(mpz_class v) : repr_{std::move(v)} {}
  AggValue(Tuple t) : repr_{std::move(t)} {}
  AggValue(Digest d) : repr_{std::move(d)} {}

  [[nodiscard]] bool is_bottom() const { return std::holds_alternative<Bottom>(repr_); }
  [[nodiscard]] bool is_int() const { return std::holds_alternative<std::int64_t>(repr_); }
  [[nodiscard]] bool is_big() const { return std::holds_alternative<mpz_class>(repr_); }
  [[nodiscard]] bool is_tuple() const { return std::holds_alternative<Tuple>(repr_); }
  [[nodiscard]] bool is_digest() const { return std::holds_alternative<Digest>(repr_); }

  /// Accessors throw std::bad_variant_access on a type mismatch.
  [[nodiscard]] std::int64_t as_int() const { return std::get<std::int64_t>(repr_); }
  [[nodiscard]] const mpz_class& as_big() const { return std::get<mpz_class>(repr_); }
  [[nodiscard]] const Tuple& as_tuple() const { return std::get<Tuple>(repr_); }
  [[nodiscard]] Tuple& as_tuple() { return std::get<Tuple>(repr_); }
  [[nodiscard]] const Bytes& as_digest() const { return std::get<Digest>(repr_).bytes; }
  /// Integer view of an int64 or a big integer.
  [[nodiscard]] mpz_class to_big() const;

  [[nodiscard]] const Repr& repr() const { return repr_; }

  void encode_to(Bytes& out) const;
  [[nodiscard]] Bytes encode() const;
  static AggValue decode_from(Reader& in, int depth = 0);
  static AggValue decode(BytesView b);

  friend bool operator==(const AggValue& a, const AggValue& b) { return a.repr_ == b.repr_; }

 private:
  Repr repr_;
};

std::string to_string(const AggValue& v);

mpz_class mpz_from_int64(std::int64_t v);

}  // namespace dbtree

#endif  // DBTREE_AGG_VALUE_HPP
