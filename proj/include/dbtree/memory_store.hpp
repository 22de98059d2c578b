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

#ifndef DBTREE_MEMORY_STORE_HPP
#define DBTREE_MEMORY_STORE_HPP

#include <map>
#include <optional>
#include <set>
#include <shared_mutex>
#include <utility>

#include "dbtree/node_store.hpp"

namespace dbtree {

/**
 * @brief In-memory node store with per-level ordered indexes.
 *
 * Point and fringe selections use one ordered lookup per level. With
 * composite keys enabled, secondary indexes on min.y, max.y and on nodes that
 * span groups serve the group selections.
 */
class MemoryNodeStore final : public NodeStore
{
 public:
  explicit MemoryNodeStore(bool composite = false);

  [[nodiscard]] std::vector<Record> dump() const override;
  void restore(std::span<const Record> records) override;
  [[nodiscard]] bool composite() const override { return composite_; }
  [[nodiscard]] std::size_t size() const;

  /// The next write round throws StoreError after applying `ops` operations.
  void fail_next_write_after(std::size_t ops);

  /// Raw record access that bypasses rounds, statistics and validation.
  [[nodiscard]] std::optional<Record> raw_get(const RecordId& id) const;
  void raw_put(Record r);
  bool raw_erase(const RecordId& id);

 protected:
  std::vector<RawSelectionResult> read_records(std::span<const Selection> selections) override;
  void write_records(std::span<const RecordId> deletes, std::span<const Record> upserts) override;

 private:
  using LevelMap = std::map<std::pair<Bytes, Bytes>, Record>;
  struct GroupIndexEntry {
    std::optional<Bytes> min_y;
    std::optional<Bytes> max_y;
    bool f = false;
  };

  RawSelectionResult evaluate(const Selection& s) const;
  const Record* find_in_range(const LevelMap& m, const Bytes& k) const;
  const Record* enclosing_at(const LevelMap& m, const Bytes& lo, const Bytes& hi) const;
  static GroupIndexEntry group_entry(const Record& r);
  void insert_unlocked(Record r);
  bool erase_unlocked(const RecordId& id);
  std::optional<Record> get_unlocked(const RecordId& id) const;

  bool composite_;
  std::map<Level, LevelMap> levels_;
  std::set<std::pair<Bytes, RecordId>> by_min_y_;
  std::set<std::pair<Bytes, RecordId>> by_max_y_;
  std::set<RecordId> spanning_;
  std::optional<std::size_t> fail_after_;
  mutable std::shared_mutex mu_;
};

}  // namespace dbtree

#endif  // DBTREE_MEMORY_STORE_HPP
