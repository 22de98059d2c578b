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

#include "dbtree/sql_store.hpp"

#include "dbtree/errors.hpp"

namespace dbtree::sql {

namespace {

std::string question_param(int i) { return "?" + std::to_string(i); }
std::string dollar_param(int i) { return "$" + std::to_string(i); }

const char* const kColumns = "level, min_key, max_key, payload";

Value blob(Bytes b) { return Value{Blob{std::move(b)}}; }
Value key_blob(const Key& k) { return blob(KeyBound::of(k).encode()); }

std::string order_clause() { return " ORDER BY level, min_key, max_key"; }

}  // namespace

Dialect sqlite_dialect() { return Dialect{"sqlite", "BLOB", "INTEGER", "TEXT", &question_param}; }
Dialect postgres_dialect() { return Dialect{"postgres", "BYTEA", "BIGINT", "TEXT", &dollar_param}; }

std::int64_t level_column(Level l) { return static_cast<std::int64_t>(l); }

std::vector<std::string> TableSchema::ddl(const Dialect& d) const
{
  std::string create = "CREATE TABLE IF NOT EXISTS " + table + " (level " + d.integer_type +
                       " NOT NULL, min_key " + d.blob_type + " NOT NULL, max_key " + d.blob_type +
                       " NOT NULL, payload " + d.blob_type + " NOT NULL";
  if (composite) {
    create += ", min_x " + d.blob_type + ", min_y " + d.blob_type + ", max_x " + d.blob_type +
              ", max_y " + d.blob_type + ", f " + d.text_type + " NOT NULL";
  }
  create += ", PRIMARY KEY (min_key, max_key, level))";
  std::vector<std::string> out{create, "CREATE INDEX IF NOT EXISTS " + table + "_max ON " + table +
                                           " (max_key, min_key, level)"};
  if (composite) {
    out.push_back("CREATE INDEX IF NOT EXISTS " + table + "_f ON " + table + " (f)");
    out.push_back("CREATE INDEX IF NOT EXISTS " + table + "_y ON " + table + " (min_y, max_y)");
  }
  return out;
}

CompiledSelection compile_selection(const Selection& s, const TableSchema& schema, const Dialect& d)
{
  const std::string head = std::string{"SELECT "} + kColumns + " FROM " + schema.table + " WHERE ";
  const std::string p1 = d.param(1);
  const std::string p2 = d.param(2);
  auto need_composite = [&schema] {
    if (!schema.composite) throw std::logic_error{"group selection on a non-composite table"};
  };
  CompiledSelection out;
  auto& st = out.statement;
  std::visit(
      [&](const auto& sel) {
        using T = std::decay_t<decltype(sel)>;
        if constexpr (std::is_same_v<T, PathTo>) {
          st.sql = head + "min_key < " + p1 + " AND " + p1 + " < max_key" + order_clause();
          st.params = {key_blob(sel.key)};
        } else if constexpr (std::is_same_v<T, TouchingKey>) {
          st.sql = head + "min_key <= " + p1 + " AND " + p1 + " <= max_key" + order_clause();
          st.params = {key_blob(sel.key)};
        } else if constexpr (std::is_same_v<T, LeftFringe>) {
          st.sql = head + "min_key < " + p1 + " AND " + p1 + " < max_key AND max_key <= " + p2 +
                   order_clause();
          st.params = {key_blob(sel.lo), key_blob(sel.hi)};
        } else if constexpr (std::is_same_v<T, RightFringe>) {
          st.sql = head + p1 + " <= min_key AND min_key < " + p2 + " AND " + p2 + " < max_key" +
                   order_clause();
          st.params = {key_blob(sel.lo), key_blob(sel.hi)};
        } else if constexpr (std::is_same_v<T, MinLevelEnclosing>) {
          st.sql = head + "min_key < " + p1 + " AND " + p2 + " < max_key" + order_clause() +
                   " LIMIT 1";
          st.params = {key_blob(sel.lo), key_blob(sel.hi)};
        } else if constexpr (std::is_same_v<T, GroupLeftFringe>) {
          need_composite();
          st.sql = head + p1 + " < max_y AND max_y <= " + p2 + " AND (min_y < " + p1 +
                   " OR f = 't')" + order_clause();
          st.params = {blob(sel.y_lo), blob(sel.y_hi)};
        } else if constexpr (std::is_same_v<T, GroupRightFringe>) {
          need_composite();
          st.sql = head + p1 + " <= min_y AND min_y < " + p2 + " AND (" + p2 +
                   " < max_y OR f = 't')" + order_clause();
          st.params = {blob(sel.y_lo), blob(sel.y_hi)};
        } else {
          need_composite();
          st.sql = head + "min_y < " + p1 + " AND max_y > " + p2 + " UNION " + "SELECT " +
                   kColumns + " FROM " + schema.table + " WHERE f = 't'" + order_clause();
          st.params = {blob(sel.y_lo), blob(sel.y_hi)};
          out.post_filter = true;
        }
      },
      s);
  return out;
}

Statement compile_delete(const RecordId& id, const TableSchema& schema, const Dialect& d)
{
  return Statement{"DELETE FROM " + schema.table + " WHERE level = " + d.param(1) +
                       " AND min_key = " + d.param(2) + " AND max_key = " + d.param(3),
                   {Value{level_column(id.level)}, blob(id.min), blob(id.max)}};
}

Statement compile_upsert(const Record& r, const TableSchema& schema, const Dialect& d)
{
  Statement st;
  st.params = {Value{level_column(r.level)}, blob(r.min), blob(r.max), blob(r.payload)};
  std::string cols = kColumns;
  std::string update = "payload = excluded.payload";
  if (schema.composite) {
    auto min = CompositeCodec::split_bound(KeyBound::decode(r.min));
    auto max = CompositeCodec::split_bound(KeyBound::decode(r.max));
    auto part = [](const auto& xy, bool x) {
      return xy ? blob(x ? xy->first : xy->second) : Value{Null{}};
    };
    bool f = !min || !max || min->first != max->first;
    st.params.push_back(part(min, true));
    st.params.push_back(part(min, false));
    st.params.push_back(part(max, true));
    st.params.push_back(part(max, false));
    st.params.push_back(Value{Text{f ? "t" : "f"}});
    cols += ", min_x, min_y, max_x, max_y, f";
    update += ", min_x = excluded.min_x, min_y = excluded.min_y, max_x = excluded.max_x, "
              "max_y = excluded.max_y, f = excluded.f";
  }
  std::string values;
  for (std::size_t i = 0; i < st.params.size(); ++i) {
    if (i) values += ", ";
    values += d.param(static_cast<int>(i + 1));
  }
  st.sql = "INSERT INTO " + schema.table + " (" + cols + ") VALUES (" + values +
           ") ON CONFLICT (min_key, max_key, level) DO UPDATE SET " + update;
  return st;
}

namespace {

Record to_record_row(const Row& row)
{
  if (row.size() != 4) throw StoreError{"unexpected column count"};
  const auto* level = std::get_if<std::int64_t>(&row[0]);
  const auto* min = std::get_if<Blob>(&row[1]);
  const auto* max = std::get_if<Blob>(&row[2]);
  const auto* payload = std::get_if<Blob>(&row[3]);
  if (!level || !min || !max || !payload || *level < 0 || *level > level_column(kRootLevel)) {
    throw CorruptRecord{"malformed node row"};
  }
  return Record{static_cast<Level>(*level), min->bytes, max->bytes, payload->bytes};
}

}  // namespace

SqlNodeStore::SqlNodeStore(std::shared_ptr<Driver> driver, TableSchema schema)
    : driver_{std::move(driver)}, schema_{std::move(schema)}
{
  if (!driver_) throw std::invalid_argument{"null SQL driver"};
  for (const auto& stmt : schema_.ddl(driver_->dialect())) driver_->execute(stmt);
  std::vector<Statement> probe{
      Statement{"SELECT COUNT(*) FROM " + schema_.table, {}}};
  auto rows = driver_->read_batch(probe);
  if (rows.at(0).at(0).at(0) == Value{std::int64_t{0}}) {
    std::vector<Statement> seed{compile_upsert(to_record(Node::empty_root()), schema_, driver_->dialect())};
    driver_->write_batch(seed);
  }
}

std::vector<Record> SqlNodeStore::dump() const
{
  std::vector<Statement> q{Statement{std::string{"SELECT "} + kColumns + " FROM " + schema_.table +
                                         " ORDER BY min_key, max_key, level",
                                     {}}};
  auto rows = driver_->read_batch(q);
  std::vector<Record> out;
  out.reserve(rows[0].size());
  for (const auto& r : rows[0]) out.push_back(to_record_row(r));
  return out;
}

void SqlNodeStore::restore(std::span<const Record> records)
{
  std::vector<Statement> stmts{Statement{"DELETE FROM " + schema_.table, {}}};
  for (const auto& r : records) stmts.push_back(compile_upsert(r, schema_, driver_->dialect()));
  driver_->write_batch(stmts);
}

std::vector<RawSelectionResult> SqlNodeStore::read_records(std::span<const Selection> selections)
{
  std::vector<CompiledSelection> compiled;
  std::vector<Statement> stmts;
  compiled.reserve(selections.size());
  for (const auto& s : selections) {
    compiled.push_back(compile_selection(s, schema_, driver_->dialect()));
    stmts.push_back(compiled.back().statement);
  }
  auto rows = driver_->read_batch(stmts);
  std::vector<RawSelectionResult> out;
  out.reserve(selections.size());
  for (std::size_t i = 0; i < selections.size(); ++i) {
    RawSelectionResult r;
    for (const auto& row : rows.at(i)) r.records.push_back(to_record_row(row));
    if (compiled[i].post_filter) r = scan_selection(selections[i], r.records);
    out.push_back(std::move(r));
  }
  return out;
}

void SqlNodeStore::write_records(std::span<const RecordId> deletes, std::span<const Record> upserts)
{
  std::vector<Statement> stmts;
  stmts.reserve(deletes.size() + upserts.size());
  for (const auto& id : deletes) stmts.push_back(compile_delete(id, schema_, driver_->dialect()));
  for (const auto& r : upserts) stmts.push_back(compile_upsert(r, schema_, driver_->dialect()));
  driver_->write_batch(stmts);
}

}  // namespace dbtree::sql
