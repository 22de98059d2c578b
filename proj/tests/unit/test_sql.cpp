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

TEST(SqlCompile, PointAndRangeSelections)
{
  sql::TableSchema schema;
  auto d = sql::sqlite_dialect();
  auto path = sql::compile_selection(PathTo{k(1)}, schema, d);
  EXPECT_EQ(path.statement.sql,
            "SELECT level, min_key, max_key, payload FROM dbtree_nodes WHERE min_key < ?1 AND ?1 < "
            "max_key ORDER BY level, min_key, max_key");
  ASSERT_EQ(path.statement.params.size(), 1u);
  EXPECT_EQ(std::get<sql::Blob>(path.statement.params[0]).bytes, KeyBound::of(k(1)).encode());
  EXPECT_FALSE(path.post_filter);

  auto enc = sql::compile_selection(MinLevelEnclosing{k(1), k(2)}, schema, sql::postgres_dialect());
  EXPECT_EQ(enc.statement.sql,
            "SELECT level, min_key, max_key, payload FROM dbtree_nodes WHERE min_key < $1 AND $2 < "
            "max_key ORDER BY level, min_key, max_key LIMIT 1");
  auto right = sql::compile_selection(RightFringe{k(1), k(2)}, schema, d);
  EXPECT_EQ(right.statement.sql,
            "SELECT level, min_key, max_key, payload FROM dbtree_nodes WHERE ?1 <= min_key AND "
            "min_key < ?2 AND ?2 < max_key ORDER BY level, min_key, max_key");
}

TEST(SqlCompile, GroupSelectionsNeedCompositeSchema)
{
  sql::TableSchema plain;
  EXPECT_THROW(sql::compile_selection(GroupLeftFringe{"a", "b"}, plain, sql::sqlite_dialect()),
               std::logic_error);
  sql::TableSchema comp{"t", true};
  auto enc = sql::compile_selection(GroupEnclosing{std::nullopt, "a", "b"}, comp, sql::sqlite_dialect());
  EXPECT_TRUE(enc.post_filter);
  EXPECT_EQ(enc.statement.sql,
            "SELECT level, min_key, max_key, payload FROM t WHERE min_y < ?1 AND max_y > ?2 UNION "
            "SELECT level, min_key, max_key, payload FROM t WHERE f = 't' ORDER BY level, min_key, "
            "max_key");
}

TEST(SqlCompile, DdlAndUpsert)
{
  sql::TableSchema comp{"t", true};
  auto ddl = comp.ddl(sql::postgres_dialect());
  ASSERT_EQ(ddl.size(), 4u);
  EXPECT_EQ(ddl[0],
            "CREATE TABLE IF NOT EXISTS t (level BIGINT NOT NULL, min_key BYTEA NOT NULL, max_key "
            "BYTEA NOT NULL, payload BYTEA NOT NULL, min_x BYTEA, min_y BYTEA, max_x BYTEA, max_y "
            "BYTEA, f TEXT NOT NULL, PRIMARY KEY (min_key, max_key, level))");
  auto up = sql::compile_upsert(to_record(Node::empty_root()), comp, sql::sqlite_dialect());
  EXPECT_EQ(up.params.size(), 9u);
  EXPECT_EQ(up.params[4], sql::Value{sql::Null{}});
  EXPECT_EQ(up.params[8], sql::Value{sql::Text{"t"}});
  EXPECT_EQ(std::get<std::int64_t>(up.params[0]), 4294967295);
}

TEST(SqlStore, MatchesMemoryStoreOnRandomWorkload)
{
  std::mt19937_64 rng{31};
  MemoryNodeStore mem;
  sql::SqlNodeStore db{std::make_shared<sql::SqliteDriver>(), sql::TableSchema{}};
  auto agg = testing::standard_product();
  DbTree a{mem, agg, LevelSource::seeded(12)};
  DbTree b{db, agg, LevelSource::seeded(12)};
  std::uniform_int_distribution<std::uint64_t> key(0, 300);
  std::set<std::uint64_t> present;
  for (int step = 0; step < 400; ++step) {
    auto kk = key(rng);
    if (!present.count(kk)) {
      auto val = v(testing::random_value(rng));
      a.insert(k(kk), val);
      b.insert(k(kk), val);
      present.insert(kk);
    } else if (step % 3 == 0) {
      a.erase(k(kk));
      b.erase(k(kk));
      present.erase(kk);
    } else {
      auto other = key(rng);
      Key lo = k(std::min(kk, other));
      Key hi = k(std::max(kk, other));
      ASSERT_EQ(a.query(lo, hi), b.query(lo, hi));
    }
  }
  EXPECT_EQ(mem.dump(), db.dump());
  EXPECT_EQ(mem.stats(), db.stats());
}

TEST(SqlStore, GroupByMatchesMemoryStore)
{
  std::mt19937_64 rng{8};
  std::vector<Pair> pairs;
  for (std::uint64_t x = 0; x < 10; ++x) {
    for (auto y : testing::random_keys(rng, 30, 500)) {
      pairs.push_back(Pair{CompositeCodec::key(codec::encode_u64(x), codec::encode_u64(y)),
                           v(testing::random_value(rng))});
    }
  }
  MemoryNodeStore mem{true};
  sql::SqlNodeStore db{std::make_shared<sql::SqliteDriver>(), sql::TableSchema{"g", true}};
  DbTree a{mem, make_sum(), LevelSource::seeded(2)};
  DbTree b{db, make_sum(), LevelSource::seeded(2)};
  a.bulk_build(pairs);
  b.bulk_build(pairs);
  for (std::uint64_t lo = 0; lo < 500; lo += 61) {
    auto ylo = codec::encode_u64(lo);
    auto yhi = codec::encode_u64(lo + 150);
    ASSERT_EQ(group_by_range(a, ylo, yhi), group_by_range(b, ylo, yhi));
  }
  EXPECT_EQ(mem.stats(), db.stats());
}

TEST(SqlStore, FailedWriteRollsBack)
{
  auto driver = std::make_shared<sql::SqliteDriver>();
  sql::SqlNodeStore db{driver, sql::TableSchema{}};
  DbTree tree{db, make_sum(), testing::table_levels(testing::sample_levels())};
  tree.bulk_build(testing::sample_pairs());
  auto before = db.dump();
  for (std::size_t n = 0; n < 5; ++n) {
    driver->fail_next_write_after(n);
    EXPECT_THROW(tree.erase(k(11)), StoreError);
    EXPECT_EQ(db.dump(), before);
  }
  EXPECT_EQ(tree.query(k(10), k(25)), ResultValue{mpz_class{1360}});
}

TEST(SqlStore, PersistsAcrossConnections)
{
  std::string path = ::testing::TempDir() + "dbtree_sql_test.sqlite";
  std::remove(path.c_str());
  {
    sql::SqlNodeStore db{std::make_shared<sql::SqliteDriver>(path), sql::TableSchema{}};
    DbTree tree{db, make_sum(), LevelSource::seeded(1)};
    for (std::uint64_t i = 0; i < 50; ++i) tree.insert(k(i), v(2));
  }
  sql::SqlNodeStore db{std::make_shared<sql::SqliteDriver>(path), sql::TableSchema{}};
  DbTree tree{db, make_sum(), LevelSource::seeded(1)};
  EXPECT_EQ(tree.query(k(0), k(49)), ResultValue{mpz_class{100}});
  std::remove(path.c_str());
}

TEST(SqlStore, EmptyValuesRoundTrip)
{
  sql::SqlNodeStore db{std::make_shared<sql::SqliteDriver>(), sql::TableSchema{}};
  DbTree tree{db, make_count(), LevelSource::seeded(1)};
  tree.insert(Key{}, "");
  tree.insert(k(1), "");
  EXPECT_EQ(tree.get(Key{}), Bytes{});
  EXPECT_EQ(tree.query(Key{}, k(1)), ResultValue{mpz_class{2}});
}

}  // namespace
}  // namespace dbtree
