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

#include "dbtree/agg_value.hpp"

#include <sstream>

#include "dbtree/errors.hpp"

namespace dbtree {

namespace {
constexpr int kMaxDepth = 64;

enum Tag : std::uint8_t { kBottom = 0, kInt = 1, kBig = 2, kTuple = 3, kDigest = 4 };
}  // namespace

mpz_class mpz_from_int64(std::int64_t v)
{
  static_assert(sizeof(long) == 8, "LP64 required");
  return mpz_class{static_cast<long>(v)};
}

mpz_class AggValue::to_big() const
{
  if (is_int()) return mpz_from_int64(as_int());
  return as_big();
}

void AggValue::encode_to(Bytes& out) const
{
  std::visit(
      [&out](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Bottom>) {
          out.push_back(static_cast<char>(kBottom));
        } else if constexpr (std::is_same_v<T, std::int64_t>) {
          out.push_back(static_cast<char>(kInt));
          put_u64_le(out, static_cast<std::uint64_t>(v));
        } else if constexpr (std::is_same_v<T, mpz_class>) {
          out.push_back(static_cast<char>(kBig));
          out.push_back(static_cast<char>(sgn(v) < 0 ? 1 : 0));
          std::size_t count = 0;
          std::size_t bytes = (mpz_sizeinbase(v.get_mpz_t(), 2) + 7) / 8;
          Bytes mag(sgn(v) == 0 ? 0 : bytes, '\0');
          if (!mag.empty()) mpz_export(mag.data(), &count, -1, 1, 0, 0, v.get_mpz_t());
          mag.resize(count);
          put_bytes(out, mag);
        } else if constexpr (std::is_same_v<T, Tuple>) {
          out.push_back(static_cast<char>(kTuple));
          put_varint(out, v.size());
          for (const auto& e : v) e.encode_to(out);
        } else {
          out.push_back(static_cast<char>(kDigest));
          put_bytes(out, v.bytes);
        }
      },
      repr_);
}

Bytes AggValue::encode() const
{
  Bytes out;
  encode_to(out);
  return out;
}

AggValue AggValue::decode_from(Reader& in, int depth)
{
  if (depth > kMaxDepth) throw CorruptRecord{"aggregate nesting too deep"};
  switch (in.u8()) {
    case kBottom:
      return AggValue{Bottom{}};
    case kInt:
      return AggValue{static_cast<std::int64_t>(in.u64_le())};
    case kBig: {
      auto sign = in.u8();
      if (sign > 1) throw CorruptRecord{"bad big integer sign"};
      auto mag = in.bytes();
      if (!mag.empty() && mag.back() == '\0') throw CorruptRecord{"non-canonical big integer"};
      if (mag.empty() && sign == 1) throw CorruptRecord{"negative zero"};
      mpz_class v;
      if (!mag.empty()) mpz_import(v.get_mpz_t(), mag.size(), -1, 1, 0, 0, mag.data());
      if (sign == 1) v = -v;
      return AggValue{std::move(v)};
    }
    case kTuple: {
      auto n = in.varint();
      if (n > in.remaining()) throw CorruptRecord{"tuple count exceeds input"};
      Tuple t;
      t.reserve(static_cast<std::size_t>(n));
      for (std::uint64_t i = 0; i < n; ++i) t.push_back(decode_from(in, depth + 1));
      return AggValue{std::move(t)};
    }
    case kDigest:
      return AggValue{Digest{Bytes{in.bytes()}}};
    default:
      throw CorruptRecord{"unknown aggregate tag"};
  }
}

AggValue AggValue::decode(BytesView b)
{
  Reader in{b};
  auto v = decode_from(in);
  in.expect_done();
  return v;
}

std::string to_string(const AggValue& v)
{
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Bottom>) {
          return "_";
        } else if constexpr (std::is_same_v<T, std::int64_t>) {
          return std::to_string(x);
        } else if constexpr (std::is_same_v<T, mpz_class>) {
          return x.get_str();
        } else if constexpr (std::is_same_v<T, AggValue::Tuple>) {
          std::string s = "(";
          for (std::size_t i = 0; i < x.size(); ++i) {
            if (i) s += ",";
            s += to_string(x[i]);
          }
          return s + ")";
        } else {
          return "#" + to_hex(x.bytes);
        }
      },
      v.repr());
}

}  // namespace dbtree
