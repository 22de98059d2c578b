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

#ifndef DBTREE_BYTES_HPP
#define DBTREE_BYTES_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

namespace dbtree {

/// Owned byte string. Ordering is unsigned lexicographic.
using Bytes = std::string;
using BytesView = std::string_view;

void put_varint(Bytes& out, std::uint64_t v);
void put_u32_le(Bytes& out, std::uint32_t v);
void put_u64_le(Bytes& out, std::uint64_t v);
void put_u64_be(Bytes& out, std::uint64_t v);
/// Varint length followed by the bytes.
void put_bytes(Bytes& out, BytesView b);

/**
 * @brief Cursor over an encoded buffer.
 *
 * Every getter throws CorruptRecord on truncation or malformed input.
 */
class Reader
{
 public:
  explicit Reader(BytesView in) : rest_{in} {}

  std::uint8_t u8();
  std::uint32_t u32_le();
  std::uint64_t u64_le();
  std::uint64_t varint();
  BytesView take(std::size_t n);
  BytesView bytes();

  [[nodiscard]] bool done() const { return rest_.empty(); }
  [[nodiscard]] std::size_t remaining() const { return rest_.size(); }
  /// Throws CorruptRecord unless the buffer is fully consumed.
  void expect_done() const;

 private:
  BytesView rest_;
};

std::string to_hex(BytesView b);
/// Throws std::invalid_argument on odd length or non-hex characters.
Bytes from_hex(std::string_view hex);

}  // namespace dbtree

#endif  // DBTREE_BYTES_HPP
