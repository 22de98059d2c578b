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

#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"

namespace dbtree {
namespace {

using testing::k;
using testing::v;

Bytes y_of(std::uint64_t y) { return codec::encode_u64(y); }
Bytes x_of(std::uint64_t x) { return codec::encode_u64(x); }

std::vector<Pair> composite_pairs(std::mt19937_64& rng, std::size_t groups, std::size_t per_group)
{
  std::vector<Pair> out;
  for (std::size_t g = 0; g < groups; ++g) {
    for (auto y : testing::random_keys(rng, per_group, 200)) {
      out.push_back(Pair{CompositeCodec::key(x_of(g), y_of(y)), v(testing::random_value(rng))});
    }
  }
  return out;
}

std::vector<Selection> random_selections(std::mt19937_64& rng, const std::vector<Pair>& pairs)
{
  std::uniform_int_distribution<std::size_t> pick(0, pairs.size() - 1);
  std::uniform_int_distribution<std::uint64_t> y(0, 210);
  std::vector<Selection> out;
  for (int i = 0; i < 50; ++i) {
    Key a = pairs[pick(rng)].key;
    Key b = pairs[pick(rng)].key;
    if (b < a) std::swap(a, b);
    Key mid = Key{a.bytes() + "\x01"};
    auto y1 = y(rng);
    auto y2 = y(rng);
    if (y2 < y1) std::swap(y1, y2);
    out.push_back(PathTo{a});
    out.push_back(PathTo{mid});
    out.push_back(TouchingKey{a});
    out.push_back(LeftFringe{a, b});
    out.push_back(RightFringe{a, b});
    out.push_back(LeftFringe{mid, b});
    out.push_back(MinLevelEnclosing{a, b});
    out.push_back(MinLevelEnclosing{mid, mid});
    out.push_back(GroupLeftFringe{y_of(y1), y_of(y2)});
    out.push_back(GroupRightFringe{y_of(y1), y_of(y2)});
    out.push_back(GroupEnclosing{std::nullopt, y_of(y1), y_of(y2)});
    out.push_back(GroupEnclosing{std::vector<Bytes>{x_of(0), x_of(3), x_of(99)}, y_of(y1), y_of(y2)});
  }
  return out;
}

TEST(MemoryStore, IndexedSelectionsMatchFullScan)
{
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    std::mt19937_64 rng{seed};
    MemoryNodeStore store{true};
    DbTree tree{store, make_sum(), LevelSource::seeded(seed)};
    auto pairs = composite_pairs(rng, 6, 40);
    tree.bulk_build(pairs);
    auto records = store.dump();
    auto sels = random_selections(rng, pairs);
    auto got = store.read_round(sels);
    for (std::size_t i = 0; i < sels.size(); ++i) {
      auto expected = scan_selection(sels[i], records);
      std::vector<Record> got_records;
      for (const auto& n : got[i].nodes) got_records.push_back(to_record(n));
      ASSERT_EQ(got_records, expected.records) << selection_name(sels[i]) << " #" << i;
      ASSERT_EQ(got[i].xs, expected.xs) << selection_name(sels[i]);
    }
  }
}

TEST(MemoryStore, PathToFindsOneNodePerLevelUpToTheRoot)
{
  MemoryNodeStore store;
  DbTree tree{store, make_sum(), testing::table_levels(testing::sample_levels())};
  tree.bulk_build(testing::sample_pairs());
  std::vector<Selection> sels{PathTo{k(21)}, PathTo{k(26)}};
  auto res = store.read_round(sels);
  std::vector<Level> levels;
  for (const auto& n : res[0].nodes) levels.push_back(n.level);
  EXPECT_EQ(levels, (std::vector<Level>{1, 2, 5, kRootLevel}));
  EXPECT_TRUE(res[0].nodes.front().contains(k(21)));
  levels.clear();
  for (const auto& n : res[1].nodes) levels.push_back(n.level);
  EXPECT_EQ(levels, (std::vector<Level>{2, 5, kRootLevel}));
}

TEST(MemoryStore, CountsRoundsAndBytes)
{
  MemoryNodeStore store;
  std::vector<Selection> sels{PathTo{k(1)}, TouchingKey{k(1)}};
  auto res = store.read_round(sels);
  auto s = store.stats();
  EXPECT_EQ(s.read_rounds, 1u);
  EXPECT_EQ(s.statements, 2u);
  EXPECT_EQ(s.nodes_read, 2u);
  EXPECT_EQ(s.bytes_read, 2 * to_record(Node::empty_root()).byte_size());
  store.reset_stats();
  EXPECT_EQ(store.stats(), RoundStats{});
}

TEST(MemoryStore, InjectedFailureRollsBack)
{
  MemoryNodeStore store;
  DbTree tree{store, make_sum(), testing::table_levels(testing::sample_levels())};
  tree.bulk_build(testing::sample_pairs());
  auto before = store.dump();
  for (std::size_t ops = 0; ops < 6; ++ops) {
    store.fail_next_write_after(ops);
    EXPECT_THROW(tree.erase(k(11)), StoreError);
    EXPECT_EQ(store.dump(), before);
  }
  tree.erase(k(11));
  EXPECT_NE(store.dump(), before);
}

TEST(MemoryStore, RejectsNonCompositeBoundsWhenComposite)
{
  MemoryNodeStore store{true};
  auto before = store.dump();
  Node n;
  n.level = 0;
  n.min = KeyBound::of(k(5));
  n.max = KeyBound::pos_inf();
  n.pairs = {Pair{k(6), v(1)}};
  n.aggs = {std::nullopt, std::nullopt};
  EXPECT_THROW(store.write_round(WriteSet{{}, {n}}), CorruptRecord);
  EXPECT_EQ(store.dump(), before);
}

TEST(MemoryStore, DumpRestoreRoundTrip)
{
  MemoryNodeStore a;
  DbTree tree{a, make_count(), LevelSource::seeded(8)};
  for (std::uint64_t i = 0; i < 100; ++i) tree.insert(k(i * 7), v(0));
  MemoryNodeStore b;
  b.restore(a.dump());
  EXPECT_EQ(b.dump(), a.dump());
  EXPECT_EQ(b.size(), a.size());
  DbTree again{b, make_count(), LevelSource::seeded(8)};
  EXPECT_EQ(again.query(k(0), k(700)), ResultValue{mpz_class{100}});
}

TEST(MemoryStore, CorruptRecordSurfacesOnRead)
{
  MemoryNodeStore store;
  auto root = store.dump().front();
  root.payload = "\x07";
  store.raw_put(root);
  std::vector<Selection> sels{PathTo{k(1)}};
  EXPECT_THROW(store.read_round(sels), CorruptRecord);
}

}  // namespace
}  // namespace dbtree
