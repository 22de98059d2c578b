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

#include <sqlite3.h>

#include "dbtree/errors.hpp"
#include "dbtree/sql_store.hpp"

namespace dbtree::sql {

namespace {

[[noreturn]] void fail(sqlite3* db, const std::string& what)
{
  throw StoreError{what + ": " + (db ? sqlite3_errmsg(db) : "no database")};
}

}  // namespace

SqliteDriver::SqliteDriver(const std::string& path) : dialect_{sqlite_dialect()}
{
  int flags = SQLITE_OPEN_READWRITE | SQLITE_OPEN_CREATE | SQLITE_OPEN_NOMUTEX;
  if (sqlite3_open_v2(path.c_str(), &db_, flags, nullptr) != SQLITE_OK) {
    std::string msg = db_ ? sqlite3_errmsg(db_) : "out of memory";
    sqlite3_close(db_);
    db_ = nullptr;
    throw StoreError{"cannot open " + path + ": " + msg};
  }
  sqlite3_busy_timeout(db_, 5000);
}

SqliteDriver::~SqliteDriver()
{
  for (auto& [sql, stmt] : cache_) sqlite3_finalize(stmt);
  sqlite3_close(db_);
}

void SqliteDriver::execute(const std::string& sql)
{
  char* err = nullptr;
  if (sqlite3_exec(db_, sql.c_str(), nullptr, nullptr, &err) != SQLITE_OK) {
    std::string msg = err ? err : "unknown error";
    sqlite3_free(err);
    throw StoreError{"statement failed: " + msg};
  }
}

sqlite3_stmt* SqliteDriver::prepare(const std::string& sql)
{
  for (auto& [text, stmt] : cache_) {
    if (text == sql) {
      sqlite3_reset(stmt);
      sqlite3_clear_bindings(stmt);
      return stmt;
    }
  }
  sqlite3_stmt* stmt = nullptr;
  if (sqlite3_prepare_v2(db_, sql.c_str(), -1, &stmt, nullptr) != SQLITE_OK) {
    fail(db_, "prepare failed");
  }
  if (cache_.size() >= 64) {
    sqlite3_finalize(cache_.front().second);
    cache_.erase(cache_.begin());
  }
  cache_.emplace_back(sql, stmt);
  return stmt;
}

std::vector<Row> SqliteDriver::run(const Statement& s)
{
  sqlite3_stmt* stmt = prepare(s.sql);
  for (std::size_t i = 0; i < s.params.size(); ++i) {
    int idx = static_cast<int>(i + 1);
    int rc = std::visit(
        [&](const auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, Null>) {
            return sqlite3_bind_null(stmt, idx);
          } else if constexpr (std::is_same_v<T, std::int64_t>) {
            return sqlite3_bind_int64(stmt, idx, v);
          } else if constexpr (std::is_same_v<T, Blob>) {
            if (v.bytes.empty()) return sqlite3_bind_zeroblob(stmt, idx, 0);
            return sqlite3_bind_blob(stmt, idx, v.bytes.data(), static_cast<int>(v.bytes.size()),
                                     SQLITE_TRANSIENT);
          } else {
            return sqlite3_bind_text(stmt, idx, v.text.data(), static_cast<int>(v.text.size()),
                                     SQLITE_TRANSIENT);
          }
        },
        s.params[i]);
    if (rc != SQLITE_OK) fail(db_, "bind failed");
  }
  std::vector<Row> rows;
  while (true) {
    int rc = sqlite3_step(stmt);
    if (rc == SQLITE_DONE) break;
    if (rc != SQLITE_ROW) {
      sqlite3_reset(stmt);
      fail(db_, "step failed");
    }
    Row row;
    int cols = sqlite3_column_count(stmt);
    for (int c = 0; c < cols; ++c) {
      switch (sqlite3_column_type(stmt, c)) {
        case SQLITE_NULL:
          row.emplace_back(Null{});
          break;
        case SQLITE_INTEGER:
          row.emplace_back(static_cast<std::int64_t>(sqlite3_column_int64(stmt, c)));
          break;
        case SQLITE_TEXT: {
          const auto* p = reinterpret_cast<const char*>(sqlite3_column_text(stmt, c));
          row.emplace_back(Text{std::string(p, static_cast<std::size_t>(sqlite3_column_bytes(stmt, c)))});
          break;
        }
        default: {
          const auto* p = static_cast<const char*>(sqlite3_column_blob(stmt, c));
          auto n = static_cast<std::size_t>(sqlite3_column_bytes(stmt, c));
          row.emplace_back(Blob{p ? Bytes(p, n) : Bytes{}});
          break;
        }
      }
    }
    rows.push_back(std::move(row));
  }
  sqlite3_reset(stmt);
  return rows;
}

std::vector<std::vector<Row>> SqliteDriver::read_batch(std::span<const Statement> stmts)
{
  execute("BEGIN");
  std::vector<std::vector<Row>> out;
  try {
    out.reserve(stmts.size());
    for (const auto& s : stmts) out.push_back(run(s));
  } catch (...) {
    sqlite3_exec(db_, "ROLLBACK", nullptr, nullptr, nullptr);
    throw;
  }
  execute("COMMIT");
  return out;
}

void SqliteDriver::write_batch(std::span<const Statement> stmts)
{
  auto fail_after = std::exchange(fail_after_, std::nullopt);
  execute("BEGIN IMMEDIATE");
  try {
    std::size_t done = 0;
    for (const auto& s : stmts) {
      if (fail_after && done >= *fail_after) throw StoreError{"injected write failure"};
      run(s);
      ++done;
    }
    if (fail_after && done >= *fail_after) throw StoreError{"injected write failure"};
    execute("COMMIT");
  } catch (...) {
    sqlite3_exec(db_, "ROLLBACK", nullptr, nullptr, nullptr);
    throw;
  }
}

}  // namespace dbtree::sql
