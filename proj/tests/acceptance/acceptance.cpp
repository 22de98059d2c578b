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

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "fixtures.hpp"

namespace dbtree {
namespace {

using testing::k;
using testing::v;

struct Outcome {
  bool pass = true;
  std::string detail;
};

/// Checks the read/write round counts of every audited operation.
class RoundAudit
{
 public:
  template <class F>
  decltype(auto) run(NodeStore& s, std::uint64_t reads, std::uint64_t writes, F&& f)
  {
    auto before = s.stats();
    struct Guard {
      RoundAudit& audit;
      NodeStore& s;
      RoundStats before;
      std::uint64_t reads, writes;
      ~Guard()
      {
        auto d = s.stats() - before;
        ++audit.checked_;
        if (d.read_rounds != reads || d.write_rounds != writes) {
          if (audit.violations_++ == 0) {
            audit.first_ = std::to_string(d.read_rounds) + "r/" + std::to_string(d.write_rounds) +
                           "w where " + std::to_string(reads) + "r/" + std::to_string(writes) +
                           "w expected";
          }
        }
      }
    } guard{*this, s, before, reads, writes};
    return f();
  }

  template <class F>
  decltype(auto) read(NodeStore& s, F&& f)
  {
    return run(s, 1, 0, std::forward<F>(f));
  }
  template <class F>
  decltype(auto) mutate(NodeStore& s, F&& f)
  {
    return run(s, 1, 1, std::forward<F>(f));
  }

  [[nodiscard]] std::uint64_t checked() const { return checked_; }
  [[nodiscard]] std::uint64_t violations() const { return violations_; }
  [[nodiscard]] const std::string& first() const { return first_; }

 private:
  std::uint64_t checked_ = 0;
  std::uint64_t violations_ = 0;
  std::string first_;
};

RoundAudit audit;

std::pair<Key, Key> random_range(std::mt19937_64& rng, std::uint64_t universe)
{
  std::uniform_int_distribution<std::uint64_t> pick(0, universe);
  auto a = pick(rng);
  auto b = pick(rng);
  if (b < a) std::swap(a, b);
  return {k(a), k(b)};
}

Outcome oracle_equivalence()
{
  const std::uint64_t base_seed = 1000;
  const std::size_t sizes[] = {100, 1000, 10000};
  auto product = testing::standard_product();
  auto singles = testing::standard_aggregations();
  std::size_t queries = 0;
  for (std::uint64_t t = 0; t < 200; ++t) {
    std::uint64_t seed = base_seed + t;
    std::mt19937_64 rng{seed};
    std::size_t n = sizes[t % 3];
    std::uint64_t universe = n * 4;
    auto pairs = testing::random_pairs(rng, n, universe);
    auto table = testing::table_of(pairs);
    const Aggregation& single = singles[t % singles.size()];

    MemoryNodeStore ps;
    DbTree ptree{ps, product, LevelSource::seeded(seed)};
    audit.mutate(ps, [&] { ptree.bulk_build(pairs); });
    MemoryNodeStore ss;
    DbTree stree{ss, single, LevelSource::seeded(seed ^ 0x5555)};
    audit.mutate(ss, [&] { stree.batch_insert(pairs); });

    for (int q = 0; q < 100; ++q) {
      auto [lo, hi] = random_range(rng, universe);
      auto got = audit.read(ps, [&] { return ptree.query(lo, hi); });
      auto want = oracle::scan_aggregate(table, product, lo, hi).value;
      if (!(got == want)) {
        return {false, "seed " + std::to_string(seed) + " product mismatch: " + to_string(got) +
                           " vs " + to_string(want)};
      }
      auto got1 = audit.read(ss, [&] { return stree.query(lo, hi); });
      auto want1 = oracle::scan_aggregate(table, single, lo, hi).value;
      if (!(got1 == want1)) {
        return {false, "seed " + std::to_string(seed) + " " + single.name() + " mismatch"};
      }
      queries += 2;
    }
  }
  return {true, "200 trees, seeds " + std::to_string(base_seed) + ".." +
                    std::to_string(base_seed + 199) + ", " + std::to_string(queries) +
                    " exact range results"};
}

Outcome invariant_preservation()
{
  std::mt19937_64 rng{2};
  auto agg = make_product({make_sum(), make_min(), make_top_n(2)});
  MemoryNodeStore store;
  DbTree tree{store, agg, LevelSource::seeded(2)};
  oracle::FlatTable table;
  std::uniform_int_distribution<std::uint64_t> key(0, 1'000'000);
  std::uniform_int_distribution<int> op(0, 9);
  std::size_t inserts = 0, updates = 0, deletes = 0;
  for (int step = 0; step < 10'000; ++step) {
    Key kk = k(key(rng));
    int o = op(rng);
    while (table.get(kk) && (o < 5 || table.size() < 10)) kk = k(key(rng));
    if (o < 5 || table.size() < 10) {
      Bytes val = v(testing::random_value(rng));
      table.insert(kk, val);
      audit.mutate(store, [&] { tree.insert(kk, val); });
      ++inserts;
    } else if (o < 7) {
      auto it = table.rows().lower_bound(kk);
      if (it == table.rows().end()) it = table.rows().begin();
      Key victim = it->first;
      table.erase(victim);
      audit.mutate(store, [&] { tree.erase(victim); });
      ++deletes;
    } else {
      auto it = table.rows().lower_bound(kk);
      if (it == table.rows().end()) it = table.rows().begin();
      Key target = it->first;
      Bytes val = v(testing::random_value(rng));
      table.update(target, val);
      audit.mutate(store, [&] { tree.update(target, val); });
      ++updates;
    }
    auto report = check_invariants(store.snapshot(), agg);
    if (!report.ok()) {
      return {false, "step " + std::to_string(step) + ": " + report.violations.front().detail};
    }
    if (step % 100 == 0) {
      auto [lo, hi] = random_range(rng, 1'000'000);
      if (!(audit.read(store, [&] { return tree.query(lo, hi); }) ==
            oracle::scan_aggregate(table, agg, lo, hi).value)) {
        return {false, "oracle mismatch at step " + std::to_string(step)};
      }
    }
  }
  return {true, std::to_string(inserts) + " inserts, " + std::to_string(updates) + " updates, " +
                    std::to_string(deletes) + " deletes, zero violations"};
}

Outcome logarithmic_transfer()
{
  const std::size_t n = 100'000;
  std::mt19937_64 rng{4};
  auto pairs = testing::random_pairs(rng, n, std::uint64_t{1} << 40);
  auto table = testing::table_of(pairs);
  MemoryNodeStore store;
  DbTree tree{store, make_sum(), LevelSource::seeded(4)};
  audit.mutate(store, [&] { tree.bulk_build(pairs); });

  // Monotone trend: no step falls by more than two combined standard errors,
  // and the least-squares slope of the means against log2 r is positive.
  std::ostringstream detail;
  detail << std::fixed;
  detail.precision(1);
  std::vector<double> means;
  std::vector<double> errors;
  bool pass = true;
  for (int e = 4; e <= 16; ++e) {
    std::size_t r = std::size_t{1} << e;
    std::uniform_int_distribution<std::size_t> start(0, n - r);
    double sum = 0;
    double sq = 0;
    std::uint64_t rows = 0;
    for (int q = 0; q < 200; ++q) {
      std::size_t i = start(rng);
      const Key& lo = pairs[i].key;
      const Key& hi = pairs[i + r - 1].key;
      auto s0 = store.stats();
      auto got = audit.read(store, [&] { return tree.query(lo, hi); });
      auto x = static_cast<double>((store.stats() - s0).nodes_read);
      sum += x;
      sq += x * x;
      auto scan = oracle::scan_aggregate(table, make_sum(), lo, hi);
      rows += scan.rows_scanned;
      if (!(got == scan.value)) return {false, "range result mismatch"};
    }
    double mean = sum / 200.0;
    double var = (sq - 200.0 * mean * mean) / 199.0;
    double se = std::sqrt(std::max(var, 0.0) / 200.0);
    double mean_rows = static_cast<double>(rows) / 200.0;
    if (mean > 4.0 * e + 8.0) pass = false;
    if (std::abs(mean_rows - static_cast<double>(r)) > 0.01 * static_cast<double>(r)) pass = false;
    if (!means.empty()) {
      double tol = 2.0 * std::sqrt(se * se + errors.back() * errors.back());
      if (mean < means.back() - tol) pass = false;
    }
    means.push_back(mean);
    errors.push_back(se);
    detail << (e > 4 ? " " : "") << "2^" << e << ":" << mean;
  }
  double xbar = 10.0;
  double ybar = 0;
  for (double m : means) ybar += m / static_cast<double>(means.size());
  double num = 0;
  double den = 0;
  for (std::size_t i = 0; i < means.size(); ++i) {
    double x = 4.0 + static_cast<double>(i) - xbar;
    num += x * (means[i] - ybar);
    den += x * x;
  }
  double slope = num / den;
  if (!(slope > 0)) pass = false;
  detail.precision(2);
  detail << ", slope " << slope << " per doubling";
  return {pass, detail.str()};
}

Outcome node_size()
{
  const std::size_t n = 100'000;
  double total = 0;
  std::ostringstream detail;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    std::mt19937_64 rng{500 + seed};
    auto pairs = testing::random_pairs(rng, n, std::uint64_t{1} << 40);
    MemoryNodeStore store;
    DbTree tree{store, make_count(), LevelSource::seeded(500 + seed, 0.5)};
    audit.mutate(store, [&] { tree.bulk_build(pairs); });
    std::size_t nodes = store.size() - 1;
    total += static_cast<double>(n) / static_cast<double>(nodes);
  }
  double mean = total / 20.0;
  detail.precision(4);
  detail << "mean keys per node " << mean << " over 20 seeds";
  return {mean >= 1.9 && mean <= 2.1, detail.str()};
}

Outcome max_level()
{
  const std::size_t n = 100'000;
  // Independent simulation of the maximum of n geometric draws.
  std::mt19937_64 sim{6};
  std::geometric_distribution<int> geo(0.5);
  int in_bracket = 0;
  const int sims = 2000;
  for (int t = 0; t < sims; ++t) {
    int mx = 0;
    for (std::size_t i = 0; i < n; ++i) mx = std::max(mx, geo(sim));
    in_bracket += mx >= 14 && mx <= 23;
  }
  double sim_rate = static_cast<double>(in_bracket) / sims;

  int hits = 0;
  Level lo = kRootLevel;
  Level hi = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    std::mt19937_64 rng{700 + seed};
    auto pairs = testing::random_pairs(rng, n, std::uint64_t{1} << 40);
    MemoryNodeStore store;
    DbTree tree{store, make_count(), LevelSource::seeded(700 + seed)};
    audit.mutate(store, [&] { tree.bulk_build(pairs); });
    Level top = 0;
    for (const auto& r : store.dump()) {
      if (r.level != kRootLevel) top = std::max(top, r.level);
    }
    lo = std::min(lo, top);
    hi = std::max(hi, top);
    hits += top >= 14 && top <= 23;
  }
  std::ostringstream detail;
  detail.precision(4);
  detail << "simulated bracket rate " << sim_rate << "; " << hits << "/100 trees in [14, 23]"
         << ", observed " << lo << ".." << hi;
  return {sim_rate >= 0.95 && hits >= 95, detail.str()};
}

Outcome determinism()
{
  std::mt19937_64 rng{7};
  auto keys = testing::random_keys(rng, 1500, 1'000'000);
  std::vector<Pair> keep;
  std::vector<Pair> scratch;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    Pair p{k(keys[i]), v(static_cast<std::int64_t>(keys[i] % 977))};
    (i % 3 == 2 ? scratch : keep).push_back(std::move(p));
  }
  keep.resize(1000);
  std::optional<std::vector<Record>> ref_dump;
  std::optional<std::vector<Record>> ref_sum_dump;
  std::optional<Bytes> ref_root;
  for (int perm = 0; perm < 20; ++perm) {
    std::vector<std::pair<bool, Pair>> ops;
    for (const auto& p : keep) ops.emplace_back(true, p);
    for (const auto& p : scratch) ops.emplace_back(true, p);
    std::shuffle(ops.begin(), ops.end(), rng);
    // Each scratch key is deleted at a random point after its insertion.
    std::vector<std::pair<bool, Pair>> seq;
    std::vector<Pair> pending;
    std::uniform_int_distribution<int> coin(0, 3);
    for (auto& op : ops) {
      seq.push_back(op);
      bool is_scratch = std::find(scratch.begin(), scratch.end(), op.second) != scratch.end();
      if (is_scratch) pending.push_back(op.second);
      while (!pending.empty() && coin(rng) == 0) {
        seq.emplace_back(false, pending.back());
        pending.pop_back();
      }
    }
    for (auto& p : pending) seq.emplace_back(false, p);

    MemoryNodeStore auth_store;
    AuthenticatedDbTree auth{auth_store};
    MemoryNodeStore sum_store;
    DbTree sum{sum_store, make_sum(), LevelSource::derandomized()};
    Bytes root = auth.root_hash();
    for (const auto& [insert, p] : seq) {
      if (insert) {
        root = audit.mutate(auth_store, [&] { return auth.insert(p.key, p.value, root); });
        audit.mutate(sum_store, [&] { sum.insert(p.key, p.value); });
      } else {
        root = audit.mutate(auth_store, [&] { return auth.erase(p.key, root); });
        audit.mutate(sum_store, [&] { sum.erase(p.key); });
      }
    }
    auto d = auth_store.dump();
    auto sd = sum_store.dump();
    if (!ref_dump) {
      ref_dump = d;
      ref_sum_dump = sd;
      ref_root = root;
    } else if (d != *ref_dump || sd != *ref_sum_dump || root != *ref_root) {
      return {false, "permutation " + std::to_string(perm) + " differs"};
    }
  }
  return {true, "20 permutations, " + std::to_string(ref_dump->size()) +
                    " identical node records, root " + to_hex(*ref_root).substr(0, 16)};
}

Outcome authenticated_soundness()
{
  std::mt19937_64 rng{8};
  auto pairs = testing::random_pairs(rng, 100, 100'000);
  MemoryNodeStore store;
  AuthenticatedDbTree tree{store};
  Bytes root = tree.bulk_build(pairs);

  std::vector<Key> probe;
  for (const auto& p : pairs) probe.push_back(p.key);
  for (std::uint64_t i = 0; i < 100'000; i += 997) probe.push_back(k(i));

  std::map<Key, Proof> honest;
  for (const auto& key : probe) {
    auto [value, proof] = tree.get(key);
    auto r = verify(proof, key, root);
    if (!r.valid()) return {false, "honest proof rejected: " + r.reason};
    honest[key] = proof;
  }

  auto serialize = [](const Record& r) {
    Bytes out;
    put_u32_le(out, r.level);
    return out + r.min + r.max + r.payload;
  };
  auto deserialize = [](const Record& shape, const Bytes& b) {
    Reader in{b};
    Record r;
    r.level = in.u32_le();
    r.min = Bytes{in.take(shape.min.size())};
    r.max = Bytes{in.take(shape.max.size())};
    r.payload = Bytes{in.take(shape.payload.size())};
    return r;
  };

  std::uint64_t flips = 0;
  std::uint64_t checks = 0;
  auto records = store.dump();
  for (const auto& rec : records) {
    Node node = from_record(rec);
    std::vector<Key> affected;
    for (const auto& [key, proof] : honest) {
      for (const auto& pn : proof.nodes) {
        if (pn.id() == node.id()) {
          affected.push_back(key);
          break;
        }
      }
    }
    Bytes bytes = serialize(rec);
    RecordId id{rec.level, rec.min, rec.max};
    for (std::size_t bit = 0; bit < bytes.size() * 8; ++bit) {
      Bytes flipped = bytes;
      flipped[bit / 8] = static_cast<char>(flipped[bit / 8] ^ (1 << (bit % 8)));
      Record bad = deserialize(rec, flipped);
      store.raw_erase(id);
      store.raw_put(bad);
      for (const auto& key : affected) {
        auto r = tree.verified_get(key, root);
        ++checks;
        if (r.valid()) {
          store.raw_erase(RecordId{bad.level, bad.min, bad.max});
          store.raw_put(rec);
          return {false, "bit " + std::to_string(bit) + " of " + to_string(node) +
                             " accepted for key " + to_hex(key.bytes())};
        }
      }
      store.raw_erase(RecordId{bad.level, bad.min, bad.max});
      store.raw_put(rec);
      ++flips;
    }
  }
  if (store.dump() != records) return {false, "store not restored"};
  return {true, std::to_string(records.size()) + " nodes, " + std::to_string(flips) +
                    " single-bit corruptions, " + std::to_string(checks) +
                    " proofs rejected, " + std::to_string(honest.size()) + " honest proofs valid"};
}

Outcome groupby_equivalence()
{
  auto enc = [](std::uint64_t x) { return codec::encode_u64(x); };
  auto agg = make_product({make_sum(), make_count(), make_max(), make_avg()});
  std::size_t queries = 0;
  std::size_t flag_only = 0;
  for (std::uint64_t d = 0; d < 100; ++d) {
    std::mt19937_64 rng{900 + d};
    std::uniform_int_distribution<std::size_t> rows(1, 200);
    std::vector<Pair> pairs;
    std::map<Key, Level> forced;
    for (std::uint64_t g = 0; g < 20; ++g) {
      for (auto y : testing::random_keys(rng, rows(rng), 10'000)) {
        pairs.push_back(Pair{CompositeCodec::key(enc(g), enc(y)), v(testing::random_value(rng))});
      }
    }
    // Every fifth dataset forces a low node spanning each group boundary.
    if (d % 5 == 0) {
      for (std::size_t i = 0; i + 1 < pairs.size(); ++i) {
        if (CompositeCodec::x_of(pairs[i].key.bytes()) != CompositeCodec::x_of(pairs[i + 1].key.bytes())) {
          forced[pairs[i].key] = 0;
          forced[pairs[i + 1].key] = 0;
          if (i > 0) forced[pairs[i - 1].key] = 6;
          if (i + 2 < pairs.size()) forced[pairs[i + 2].key] = 5;
        }
      }
    }
    auto seeded = std::make_shared<LevelSource>(LevelSource::seeded(900 + d));
    LevelSource levels = LevelSource::from_function([forced, seeded](const Key& key) {
      auto it = forced.find(key);
      Level drawn = seeded->next(key);
      return it == forced.end() ? drawn : it->second;
    });
    MemoryNodeStore store{true};
    DbTree tree{store, agg, levels};
    audit.mutate(store, [&] { tree.bulk_build(pairs); });
    auto table = testing::table_of(pairs);
    std::uniform_int_distribution<std::uint64_t> y(0, 10'000);
    for (int q = 0; q < 20; ++q) {
      auto a = y(rng);
      auto b = y(rng);
      if (b < a) std::swap(a, b);
      std::vector<Selection> sels{GroupLeftFringe{enc(a), enc(b)}};
      auto fringe = store.read_round(sels);
      for (const auto& n : fringe[0].nodes) {
        auto min = CompositeCodec::split_bound(n.min);
        if (min && !(min->second < enc(a))) ++flag_only;
      }
      auto got = audit.read(store, [&] { return group_by_range(tree, enc(a), enc(b)); });
      if (got != oracle::scan_group_by(table, agg, enc(a), enc(b))) {
        return {false, "dataset " + std::to_string(d) + " range " + std::to_string(a) + ".." +
                           std::to_string(b)};
      }
      ++queries;
    }
  }
  return {flag_only > 0, "100 datasets x 20 groups, " + std::to_string(queries) +
                             " group-by queries exact, " + std::to_string(flag_only) +
                             " fringe nodes selected only by the group flag"};
}

struct Backends {
  MemoryNodeStore mem;
  sql::SqlNodeStore db;
  DbTree a;
  DbTree b;

  Backends(bool composite, const Aggregation& agg, std::uint64_t seed)
      : mem{composite},
        db{std::make_shared<sql::SqliteDriver>(), sql::TableSchema{"dbtree_nodes", composite}},
        a{mem, agg, LevelSource::seeded(seed)},
        b{db, agg, LevelSource::seeded(seed)}
  {
  }
};

Outcome backend_parity()
{
  auto agg = testing::standard_product();
  std::size_t ops_total = 0;
  for (std::uint64_t w = 0; w < 4; ++w) {
    bool composite = w % 2 == 1;
    Backends be{composite, agg, 40 + w};
    std::mt19937_64 rng{40 + w};
    auto make_key = [&](std::uint64_t raw) {
      return composite ? CompositeCodec::key(codec::encode_u64(raw % 7), codec::encode_u64(raw / 7))
                       : k(raw);
    };
    std::uniform_int_distribution<std::uint64_t> key(0, 2000);
    std::uniform_int_distribution<int> op(0, 9);
    std::set<std::uint64_t> present;
    std::vector<Pair> initial;
    for (auto raw : testing::random_keys(rng, 200, 2001)) {
      initial.push_back(Pair{make_key(raw), v(testing::random_value(rng))});
      present.insert(raw);
    }
    audit.mutate(be.mem, [&] { be.a.bulk_build(initial); });
    audit.mutate(be.db, [&] { be.b.bulk_build(initial); });
    for (int step = 1; step < 1000; ++step) {
      auto raw = key(rng);
      Key kk = make_key(raw);
      int o = op(rng);
      bool same = true;
      if (o < 4 && !present.count(raw)) {
        auto val = v(testing::random_value(rng));
        audit.mutate(be.mem, [&] { be.a.insert(kk, val); });
        audit.mutate(be.db, [&] { be.b.insert(kk, val); });
        present.insert(raw);
      } else if (o < 6 && present.count(raw)) {
        audit.mutate(be.mem, [&] { be.a.erase(kk); });
        audit.mutate(be.db, [&] { be.b.erase(kk); });
        present.erase(raw);
      } else if (o < 7 && present.count(raw)) {
        auto val = v(testing::random_value(rng));
        audit.mutate(be.mem, [&] { be.a.update(kk, val); });
        audit.mutate(be.db, [&] { be.b.update(kk, val); });
      } else if (o < 8 && composite) {
        auto lo = codec::encode_u64(key(rng) / 7);
        auto hi = codec::encode_u64(std::max<std::uint64_t>(key(rng) / 7, codec::decode_u64(lo)));
        same = audit.read(be.mem, [&] { return group_by_range(be.a, lo, hi); }) ==
               audit.read(be.db, [&] { return group_by_range(be.b, lo, hi); });
      } else if (o < 9) {
        Key other = make_key(key(rng));
        Key lo = std::min(kk, other);
        Key hi = std::max(kk, other);
        same = audit.read(be.mem, [&] { return be.a.query(lo, hi); }) ==
               audit.read(be.db, [&] { return be.b.query(lo, hi); });
      } else {
        same = audit.read(be.mem, [&] { return be.a.get(kk); }) ==
               audit.read(be.db, [&] { return be.b.get(kk); });
      }
      if (!same) return {false, "workload " + std::to_string(w) + " step " + std::to_string(step)};
      ++ops_total;
    }
    if (be.mem.dump() != be.db.dump()) return {false, "snapshots differ in workload " + std::to_string(w)};
    if (!(be.mem.stats() == be.db.stats())) return {false, "round counts differ in workload " + std::to_string(w)};
  }
  return {true, "4 workloads of 1000 operations, identical snapshots, results and round counts"};
}

Outcome round_contract()
{
  return {audit.violations() == 0 && audit.checked() > 0,
          std::to_string(audit.checked()) + " audited operations, " +
              std::to_string(audit.violations()) + " violations" +
              (audit.first().empty() ? "" : " (" + audit.first() + ")")};
}

}  // namespace
}  // namespace dbtree

int main(int argc, char** argv)
{
  using namespace dbtree;
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  // Round contract last: it reports on the operations of every other criterion.
  std::vector<Criterion> criteria{
      {1, "oracle equivalence", oracle_equivalence},
      {2, "invariant preservation", invariant_preservation},
      {4, "logarithmic transfer", logarithmic_transfer},
      {5, "expected node size", node_size},
      {6, "max-level scaling", max_level},
      {7, "determinism and order independence", determinism},
      {8, "authenticated soundness", authenticated_soundness},
      {9, "group-by equivalence", groupby_equivalence},
      {10, "backend parity", backend_parity},
      {3, "round contract", round_contract},
  };
  std::map<int, std::string> lines;
  bool all = true;
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  for (const auto& c : criteria) {
    if (!only.empty() && !only.count(c.id)) continue;
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = Outcome{false, std::string{"exception: "} + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    char buf[32];
    std::snprintf(buf, sizeof buf, " (%.1fs)", secs);
    std::string line = std::string{o.pass ? "[PASS] " : "[FAIL] "} + std::to_string(c.id) + " " +
                       c.name + ": " + o.detail + buf;
    lines[c.id] = line;
    all = all && o.pass;
  }
  for (const auto& [id, line] : lines) std::cout << line << "\n";
  return all ? 0 : 1;
}
