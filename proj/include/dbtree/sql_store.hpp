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

#ifndef DBTREE_SQL_STORE_HPP
#define DBTREE_SQL_STORE_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "dbtree/node_store.hpp"

struct sqlite3;
struct sqlite3_stmt;

namespace dbtree::sql {

struct Null {
  friend bool operator==(const Null&, const Null&) { return true; }
};
struct Blob {
  Bytes bytes;
  friend bool operator==(const Blob&, const Blob&) = default;
};
struct Text {
  std::string text;
  friend bool operator==(const Text&, const Text&) = default;
};
using Value = std::variant<Null, std::int64_t, Blob, Text>;
using Row = std::vector<Value>;

struct Statement {
  std::string sql;
  std::vector<Value> params;
};

struct Dialect {
  std::string name;
  std::string blob_type;
  std::string integer_type;
  std::string text_type;
  /// Placeholder for the 1-based parameter i.
  std::string (*param)(int i);
};

Dialect sqlite_dialect();
Dialect postgres_dialect();

/**
 * @brief Node table layout.
 *
 * Columns level, min_key, max_key, payload; composite tables add min_x,
 * min_y, max_x, max_y (NULL for infinite bounds) and f ('t' when the bounds
 * lie in different groups or are infinite).
 */
struct TableSchema {
  std::string table = "dbtree_nodes";
  bool composite = false;

  [[nodiscard]] std::vector<std::string> ddl(const Dialect& d) const;
};

/// Stored value of the level column; the root level maps to 4294967295.
std::int64_t level_column(Level l);

/// One SELECT per selection. GroupEnclosing also needs post_filter.
struct CompiledSelection {
  Statement statement;
  /// Minimum-level choice per group after the rows are fetched.
  bool post_filter = false;
};
CompiledSelection compile_selection(const Selection& s, const TableSchema& schema,
                                    const Dialect& d);

Statement compile_delete(const RecordId& id, const TableSchema& schema, const Dialect& d);
Statement compile_upsert(const Record& r, const TableSchema& schema, const Dialect& d);

/// Executes statement batches; each batch is one transaction.
class Driver
{
 public:
  virtual ~Driver() = default;
  virtual void execute(const std::string& sql) = 0;
  /// Results per statement, from one consistent snapshot.
  virtual std::vector<std::vector<Row>> read_batch(std::span<const Statement> stmts) = 0;
  /// All or nothing. Throws StoreError after rolling back.
  virtual void write_batch(std::span<const Statement> stmts) = 0;
  [[nodiscard]] virtual const Dialect& dialect() const = 0;
};

class SqliteDriver final : public Driver
{
 public:
  /// ":memory:" opens a private in-memory database.
  explicit SqliteDriver(const std::string& path = ":memory:");
  ~SqliteDriver() override;
  SqliteDriver(const SqliteDriver&) = delete;
  SqliteDriver& operator=(const SqliteDriver&) = delete;

  void execute(const std::string& sql) override;
  std::vector<std::vector<Row>> read_batch(std::span<const Statement> stmts) override;
  void write_batch(std::span<const Statement> stmts) override;
  [[nodiscard]] const Dialect& dialect() const override { return dialect_; }

  /// The next write batch fails after `n` statements and rolls back.
  void fail_next_write_after(std::size_t n) { fail_after_ = n; }

 private:
  sqlite3_stmt* prepare(const std::string& sql);
  std::vector<Row> run(const Statement& s);

  sqlite3* db_ = nullptr;
  Dialect dialect_;
  std::vector<std::pair<std::string, sqlite3_stmt*>> cache_;
  std::optional<std::size_t> fail_after_;
};

/**
 * @brief Node store on a relational table.
 *
 * A read round runs one SELECT per selection inside one transaction; a
 * write round runs all deletes and upserts inside one transaction.
 */
class SqlNodeStore final : public NodeStore
{
 public:
  SqlNodeStore(std::shared_ptr<Driver> driver, TableSchema schema);

  [[nodiscard]] std::vector<Record> dump() const override;
  void restore(std::span<const Record> records) override;
  [[nodiscard]] bool composite() const override { return schema_.composite; }
  [[nodiscard]] Driver& driver() { return *driver_; }
  [[nodiscard]] const TableSchema& schema() const { return schema_; }

 protected:
  std::vector<RawSelectionResult> read_records(std::span<const Selection> selections) override;
  void write_records(std::span<const RecordId> deletes, std::span<const Record> upserts) override;

 private:
  std::shared_ptr<Driver> driver_;
  TableSchema schema_;
};

}  // namespace dbtree::sql

#endif  // DBTREE_SQL_STORE_HPP
