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

#include "dbtree/bytes.hpp"

#include <stdexcept>

#include "dbtree/errors.hpp"

namespace dbtree {

void put_varint(Bytes& out, std::uint64_t v)
{
  while (v >= 0x80) {
    out.push_back(static_cast<char>((v & 0x7F) | 0x80));
    v >>= 7;
  }
  out.push_back(static_cast<char>(v));
}

void put_u32_le(Bytes& out, std::uint32_t v)
{
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void put_u64_le(Bytes& out, std::uint64_t v)
{
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void put_u64_be(Bytes& out, std::uint64_t v)
{
  for (int i = 7; i >= 0; --i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void put_bytes(Bytes& out, BytesView b)
{
  put_varint(out, b.size());
  out.append(b);
}

std::uint8_t Reader::u8()
{
  if (rest_.empty()) throw CorruptRecord{"truncated input"};
  auto v = static_cast<std::uint8_t>(rest_.front());
  rest_.remove_prefix(1);
  return v;
}

std::uint32_t Reader::u32_le()
{
  auto b = take(4);
  std::uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | static_cast<std::uint8_t>(b[i]);
  return v;
}

std::uint64_t Reader::u64_le()
{
  auto b = take(8);
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | static_cast<std::uint8_t>(b[i]);
  return v;
}

std::uint64_t Reader::varint()
{
  std::uint64_t v = 0;
  for (int shift = 0; shift < 64; shift += 7) {
    auto byte = u8();
    if (shift == 63 && (byte & 0xFE) != 0) throw CorruptRecord{"varint overflow"};
    v |= static_cast<std::uint64_t>(byte & 0x7F) << shift;
    if ((byte & 0x80) == 0) return v;
  }
  throw CorruptRecord{"varint too long"};
}

BytesView Reader::take(std::size_t n)
{
  if (rest_.size() < n) throw CorruptRecord{"truncated input"};
  auto v = rest_.substr(0, n);
  rest_.remove_prefix(n);
  return v;
}

BytesView Reader::bytes()
{
  auto n = varint();
  if (n > rest_.size()) throw CorruptRecord{"length prefix exceeds input"};
  return take(static_cast<std::size_t>(n));
}

void Reader::expect_done() const
{
  if (!rest_.empty()) throw CorruptRecord{"trailing bytes"};
}

std::string to_hex(BytesView b)
{
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string s;
  s.reserve(b.size() * 2);
  for (unsigned char c : b) {
    s.push_back(kDigits[c >> 4]);
    s.push_back(kDigits[c & 0xF]);
  }
  return s;
}

namespace {
int hex_value(char c)
{
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}
}  // namespace

Bytes from_hex(std::string_view hex)
{
  if (hex.size() % 2 != 0) throw std::invalid_argument{"odd-length hex string"};
  Bytes out;
  out.reserve(hex.size() / 2);
  for (std::size_t i = 0; i < hex.size(); i += 2) {
    int hi = hex_value(hex[i]);
    int lo = hex_value(hex[i + 1]);
    if (hi < 0 || lo < 0) throw std::invalid_argument{"invalid hex digit"};
    out.push_back(static_cast<char>((hi << 4) | lo));
  }
  return out;
}

}  // namespace dbtree
