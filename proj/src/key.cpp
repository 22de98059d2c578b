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

#include "dbtree/key.hpp"

#include "dbtree/errors.hpp"

namespace dbtree {

Bytes KeyBound::encode() const
{
  Bytes out;
  out.reserve(1 + key_.bytes().size());
  out.push_back(static_cast<char>(kind_));
  if (finite()) out.append(key_.bytes());
  return out;
}

KeyBound KeyBound::decode(BytesView b)
{
  if (b.empty()) throw CorruptRecord{"empty key bound"};
  switch (static_cast<std::uint8_t>(b[0])) {
    case 0x00:
      if (b.size() != 1) throw CorruptRecord{"trailing bytes after -inf"};
      return neg_inf();
    case 0x01:
      return of(Key{Bytes{b.substr(1)}});
    case 0x02:
      if (b.size() != 1) throw CorruptRecord{"trailing bytes after +inf"};
      return pos_inf();
    default:
      throw CorruptRecord{"unknown key bound tag"};
  }
}

std::string to_string(const KeyBound& b)
{
  switch (b.kind()) {
    case KeyBound::Kind::kNegInf:
      return "-inf";
    case KeyBound::Kind::kPosInf:
      return "+inf";
    default:
      return to_hex(b.key().bytes());
  }
}

namespace codec {

Bytes encode_u64(std::uint64_t v)
{
  Bytes out;
  put_u64_be(out, v);
  return out;
}

std::uint64_t decode_u64(BytesView b)
{
  if (b.size() != 8) throw CorruptRecord{"u64 key must be 8 bytes"};
  std::uint64_t v = 0;
  for (unsigned char c : b) v = (v << 8) | c;
  return v;
}

Bytes encode_i64(std::int64_t v)
{
  return encode_u64(static_cast<std::uint64_t>(v) ^ (std::uint64_t{1} << 63));
}

std::int64_t decode_i64(BytesView b)
{
  return static_cast<std::int64_t>(decode_u64(b) ^ (std::uint64_t{1} << 63));
}

Bytes int_value(std::int64_t v)
{
  Bytes out;
  put_u64_le(out, static_cast<std::uint64_t>(v));
  return out;
}

std::int64_t parse_int_value(BytesView b)
{
  if (b.size() != 8) throw CorruptRecord{"integer value must be 8 bytes"};
  Reader r{b};
  return static_cast<std::int64_t>(r.u64_le());
}

}  // namespace codec

namespace {

void append_escaped(Bytes& out, BytesView part)
{
  for (char c : part) {
    out.push_back(c);
    if (c == '\0') out.push_back('\xFF');
  }
  out.push_back('\0');
  out.push_back('\0');
}

// Decodes one escaped component starting at pos; advances pos past it.
Bytes read_escaped(BytesView in, std::size_t& pos)
{
  Bytes part;
  while (true) {
    if (pos >= in.size()) throw CorruptRecord{"unterminated composite component"};
    char c = in[pos++];
    if (c != '\0') {
      part.push_back(c);
      continue;
    }
    if (pos >= in.size()) throw CorruptRecord{"unterminated composite component"};
    char next = in[pos++];
    if (next == '\0') return part;
    if (next != '\xFF') throw CorruptRecord{"bad composite escape"};
    part.push_back('\0');
  }
}

}  // namespace

Bytes CompositeCodec::compose(BytesView x, BytesView y)
{
  Bytes out;
  out.reserve(x.size() + y.size() + 4);
  append_escaped(out, x);
  append_escaped(out, y);
  return out;
}

std::pair<Bytes, Bytes> CompositeCodec::split(BytesView encoded)
{
  std::size_t pos = 0;
  Bytes x = read_escaped(encoded, pos);
  Bytes y = read_escaped(encoded, pos);
  if (pos != encoded.size()) throw CorruptRecord{"trailing bytes after composite key"};
  return {std::move(x), std::move(y)};
}

std::optional<std::pair<Bytes, Bytes>> CompositeCodec::split_bound(const KeyBound& b)
{
  if (!b.finite()) return std::nullopt;
  return split(b.key().bytes());
}

}  // namespace dbtree
