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

#ifndef DBTREE_TESTS_FIXTURES_HPP
#define DBTREE_TESTS_FIXTURES_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <ostream>
#include <random>
#include <set>
#include <vector>

#include "dbtree/dbtree.hpp"

namespace dbtree {

inline void PrintTo(const Node& n, std::ostream* os) { *os << to_string(n); }
inline void PrintTo(const ResultValue& r, std::ostream* os) { *os << to_string(r); }
inline void PrintTo(const AggValue& a, std::ostream* os) { *os << to_string(a); }
inline void PrintTo(const Record& r, std::ostream* os)
{
  *os << "{" << r.level << " " << to_hex(r.min) << " " << to_hex(r.max) << " " << to_hex(r.payload)
      << "}";
}

}  // namespace dbtree

namespace dbtree::testing {

inline Key k(std::uint64_t v) { return codec::u64_key(v); }
inline Bytes v(std::int64_t x) { return codec::int_value(x); }

/// Keys and levels of the thirteen-key sample tree; each value is ten times its key.
inline const std::map<std::uint64_t, Level>& sample_levels()
{
  static const std::map<std::uint64_t, Level> levels{
      {1, 1},  {3, 0},  {4, 3},  {10, 0}, {11, 3}, {12, 0}, {15, 5},
      {20, 0}, {21, 1}, {22, 0}, {25, 2}, {30, 2}, {33, 0},
  };
  return levels;
}

/// Level function over a fixed table; unknown keys get level 0.
inline LevelSource table_levels(std::map<std::uint64_t, Level> table)
{
  return LevelSource::from_function([table = std::move(table)](const Key& key) {
    auto it = table.find(codec::decode_u64(key.bytes()));
    return it == table.end() ? Level{0} : it->second;
  });
}

inline std::vector<Pair> sample_pairs()
{
  std::vector<Pair> out;
  for (const auto& [key, level] : sample_levels()) {
    out.push_back(Pair{k(key), v(static_cast<std::int64_t>(key * 10))});
  }
  return out;
}

/// Distinct random keys below `universe`, sorted.
inline std::vector<std::uint64_t> random_keys(std::mt19937_64& rng, std::size_t n,
                                              std::uint64_t universe)
{
  std::set<std::uint64_t> keys;
  std::uniform_int_distribution<std::uint64_t> pick(0, universe - 1);
  while (keys.size() < n) keys.insert(pick(rng));
  return {keys.begin(), keys.end()};
}

inline std::int64_t random_value(std::mt19937_64& rng)
{
  return std::uniform_int_distribution<std::int64_t>(-1'000'000, 1'000'000)(rng);
}

/// Random pairs with keys below `universe`, sorted by key.
inline std::vector<Pair> random_pairs(std::mt19937_64& rng, std::size_t n, std::uint64_t universe)
{
  std::vector<Pair> out;
  for (auto key : random_keys(rng, n, universe)) out.push_back(Pair{k(key), v(random_value(rng))});
  return out;
}

inline oracle::FlatTable table_of(const std::vector<Pair>& pairs)
{
  oracle::FlatTable t;
  for (const auto& p : pairs) t.insert(p.key, p.value);
  return t;
}

/// SUM, COUNT, MIN, MAX, AVG and top-2 and their product.
inline std::vector<Aggregation> standard_aggregations()
{
  return {make_sum(), make_count(), make_min(), make_max(), make_avg(), make_top_n(2)};
}

inline Aggregation standard_product() { return make_product(standard_aggregations()); }

}  // namespace dbtree::testing

#endif  // DBTREE_TESTS_FIXTURES_HPP
