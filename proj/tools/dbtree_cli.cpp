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
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dbtree/dbtree.hpp"

namespace {

using namespace dbtree;

enum Exit : int {
  kOk = 0,
  kUsage = 2,
  kData = 3,
  kVerification = 4,
  kBackend = 5,
};

struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct VerificationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const char* const kMetaDdl =
    "CREATE TABLE IF NOT EXISTS dbtree_meta (name TEXT PRIMARY KEY, value TEXT NOT NULL)";

std::int64_t parse_int(const std::string& s, const std::string& what)
{
  try {
    std::size_t used = 0;
    long long v = std::stoll(s, &used);
    if (used != s.size()) throw std::invalid_argument{s};
    return v;
  } catch (const std::exception&) {
    throw DataError{"invalid " + what + ": '" + s + "'"};
  }
}

std::vector<std::string> split(const std::string& s, char sep)
{
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in{s};
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

std::string trim(std::string s)
{
  auto b = s.find_first_not_of(" \t\r");
  auto e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
}

/// Tree settings persisted beside the node table.
struct Meta {
  std::string aggs = "sum";
  std::string codec = "u64";
  bool composite = false;
  bool auth = false;
  std::uint64_t seed = 1;
  std::uint64_t epoch = 0;
  std::string trusted_root;
};

class Database
{
 public:
  explicit Database(const std::string& path) : driver_{std::make_shared<sql::SqliteDriver>(path)}
  {
    driver_->execute(kMetaDdl);
  }

  Meta load()
  {
    auto m = read_meta();
    if (m.empty()) throw DataError{"database holds no tree; run build first"};
    Meta out;
    out.aggs = m["aggs"];
    out.codec = m["codec"];
    out.composite = m["composite"] == "1";
    out.auth = m["auth"] == "1";
    out.seed = std::stoull(m["seed"]);
    out.epoch = std::stoull(m["epoch"]);
    out.trusted_root = m["trusted_root"];
    return out;
  }

  void save(const Meta& m)
  {
    std::map<std::string, std::string> kv{
        {"aggs", m.aggs},
        {"codec", m.codec},
        {"composite", m.composite ? "1" : "0"},
        {"auth", m.auth ? "1" : "0"},
        {"seed", std::to_string(m.seed)},
        {"epoch", std::to_string(m.epoch)},
        {"trusted_root", m.trusted_root},
    };
    std::vector<sql::Statement> stmts;
    for (const auto& [k, v] : kv) {
      stmts.push_back(sql::Statement{
          "INSERT INTO dbtree_meta (name, value) VALUES (?1, ?2) ON CONFLICT (name) DO UPDATE "
          "SET value = excluded.value",
          {sql::Value{sql::Text{k}}, sql::Value{sql::Text{v}}}});
    }
    driver_->write_batch(stmts);
  }

  void reset()
  {
    std::vector<sql::Statement> stmts{sql::Statement{"DROP TABLE IF EXISTS dbtree_nodes", {}},
                                      sql::Statement{"DELETE FROM dbtree_meta", {}}};
    driver_->write_batch(stmts);
  }

  std::shared_ptr<sql::Driver> driver() { return driver_; }

 private:
  std::map<std::string, std::string> read_meta()
  {
    std::vector<sql::Statement> q{sql::Statement{"SELECT name, value FROM dbtree_meta", {}}};
    std::map<std::string, std::string> out;
    auto rows = driver_->read_batch(q);
    for (const auto& row : rows[0]) {
      out[std::get<sql::Text>(row.at(0)).text] = std::get<sql::Text>(row.at(1)).text;
    }
    return out;
  }

  std::shared_ptr<sql::SqliteDriver> driver_;
};

Aggregation aggregation_of(const std::string& list)
{
  std::vector<Aggregation> parts;
  for (const auto& name : split(list, ',')) {
    try {
      parts.push_back(parse_aggregation(trim(name)));
    } catch (const std::invalid_argument& e) {
      throw DataError{e.what()};
    }
  }
  if (parts.empty()) throw DataError{"no aggregation given"};
  return parts.size() == 1 ? parts.front() : make_product(std::move(parts));
}

Bytes encode_int(const std::string& codec, std::int64_t v)
{
  if (codec == "i64") return codec::encode_i64(v);
  if (v < 0) throw DataError{"negative value for the u64 key codec"};
  return codec::encode_u64(static_cast<std::uint64_t>(v));
}

std::string decode_int(const std::string& codec, BytesView b)
{
  return codec == "i64" ? std::to_string(codec::decode_i64(b)) : std::to_string(codec::decode_u64(b));
}

/// Opened tree with its settings.
class Session
{
 public:
  Session(Database& db, Meta meta)
      : db_{db},
        meta_{std::move(meta)},
        store_{db.driver(), sql::TableSchema{"dbtree_nodes", meta_.composite}}
  {
    if (meta_.auth) {
      auth_ = std::make_unique<AuthenticatedDbTree>(store_);
    } else {
      // Each invocation continues the level stream on a fresh seed.
      tree_ = std::make_unique<DbTree>(store_, aggregation_of(meta_.aggs),
                                       LevelSource::seeded(meta_.seed * 0x9e3779b97f4a7c15ULL + meta_.epoch));
    }
  }

  DbTree& tree() { return auth_ ? auth_->tree() : *tree_; }
  AuthenticatedDbTree& auth()
  {
    if (!auth_) throw DataError{"tree is not authenticated; build with --auth"};
    return *auth_;
  }
  Meta& meta() { return meta_; }
  [[nodiscard]] const Meta& meta() const { return meta_; }
  sql::SqlNodeStore& store() { return store_; }

  void commit()
  {
    ++meta_.epoch;
    db_.save(meta_);
  }

  Key key_of(const std::string& key, const std::string& x, const std::string& y) const
  {
    if (meta_.composite) {
      if (x.empty() || y.empty()) throw DataError{"composite trees need x and y"};
      return CompositeCodec::key(encode_int(meta_.codec, parse_int(x, "x")),
                                 encode_int(meta_.codec, parse_int(y, "y")));
    }
    if (key.empty()) throw DataError{"missing key"};
    return Key{encode_int(meta_.codec, parse_int(key, "key"))};
  }

  std::string show_key(const Key& k) const
  {
    if (!meta_.composite) return decode_int(meta_.codec, k.bytes());
    auto [x, y] = CompositeCodec::split(k.bytes());
    return decode_int(meta_.codec, x) + "," + decode_int(meta_.codec, y);
  }

  Bytes encode_part(const std::string& s) const { return encode_int(meta_.codec, parse_int(s, "component")); }
  std::string show_part(BytesView b) const { return decode_int(meta_.codec, b); }

 private:
  Database& db_;
  Meta meta_;
  sql::SqlNodeStore store_;
  std::unique_ptr<DbTree> tree_;
  std::unique_ptr<AuthenticatedDbTree> auth_;
};

/// Reads key,value or key,value,x,y rows; a non-numeric first row is a header.
std::vector<Pair> read_csv(std::istream& in, const Session& s)
{
  std::map<Key, Bytes> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    auto cols = split(line, ',');
    for (auto& c : cols) c = trim(c);
    if (lineno == 1 && !cols.empty() && !cols[0].empty() &&
        cols[0].find_first_not_of("+-0123456789") != std::string::npos) {
      continue;
    }
    std::size_t want = s.meta().composite ? 4 : 2;
    try {
      if (cols.size() != want) throw DataError{"expected " + std::to_string(want) + " columns"};
      Key k = s.key_of(cols[0], want == 4 ? cols[2] : "", want == 4 ? cols[3] : "");
      Bytes v = codec::int_value(parse_int(cols[1], "value"));
      if (!rows.emplace(std::move(k), std::move(v)).second) throw DataError{"duplicate key"};
    } catch (const DataError& e) {
      throw DataError{"line " + std::to_string(lineno) + ": " + e.what()};
    }
  }
  std::vector<Pair> out;
  out.reserve(rows.size());
  for (auto& [k, v] : rows) out.push_back(Pair{k, std::move(v)});
  return out;
}

std::string show_value(const std::optional<Bytes>& v)
{
  if (!v) return "absent";
  if (v->size() == 8) return std::to_string(codec::parse_int_value(*v));
  return to_hex(*v);
}

Bytes read_file(const std::string& path)
{
  std::ifstream in{path, std::ios::binary};
  if (!in) throw DataError{"cannot read " + path};
  std::ostringstream buf;
  buf << in.rdbuf();
  return Bytes{buf.str()};
}

Bytes parse_root(const std::string& hex)
{
  try {
    Bytes b = from_hex(hex);
    if (b.size() != sha256().digest_size) throw std::invalid_argument{"size"};
    return b;
  } catch (const std::exception&) {
    throw DataError{"invalid root hash"};
  }
}

/// Options shared by key-addressed commands.
struct KeyArgs {
  std::string key;
  std::string x;
  std::string y;

  void add(CLI::App* cmd)
  {
    cmd->add_option("--key", key, "Key (decimal integer)");
    cmd->add_option("-x", x, "Group component of a composite key");
    cmd->add_option("-y", y, "Ordered component of a composite key");
  }
};

struct BenchRow {
  std::string op;
  std::size_t n;
  std::size_t r;
  RoundStats stats;
  std::int64_t wall_us;
  std::string backend;
  std::uint64_t seed;
};

void print_row(std::ostream& out, const BenchRow& b)
{
  out << b.op << ',' << b.n << ',' << b.r << ',' << b.stats.read_rounds << ','
      << b.stats.write_rounds << ',' << b.stats.nodes_read << ',' << b.stats.bytes_read << ','
      << b.wall_us << ',' << b.backend << ',' << b.seed << '\n';
}

struct BenchArgs {
  std::vector<std::size_t> sizes{100'000};
  std::vector<std::size_t> ranges;
  std::size_t trials = 200;
  std::uint64_t seed = 1;
  std::string backend = "memory";
  std::string agg = "sum";
  bool no_timing = false;
  std::string out;
};

int run_bench(const BenchArgs& a)
{
  std::ofstream file;
  if (!a.out.empty()) {
    file.open(a.out);
    if (!file) throw DataError{"cannot write " + a.out};
  }
  std::ostream& out = a.out.empty() ? std::cout : file;
  out << "op,N,r,read_rounds,write_rounds,nodes_read,bytes_read,wall_us,backend,seed\n";
  auto agg = aggregation_of(a.agg);
  std::vector<std::size_t> ranges = a.ranges;
  if (ranges.empty()) {
    for (int e = 4; e <= 16; ++e) ranges.push_back(std::size_t{1} << e);
  }
  using clock = std::chrono::steady_clock;
  auto elapsed = [&](clock::time_point t0) -> std::int64_t {
    if (a.no_timing) return 0;
    return std::chrono::duration_cast<std::chrono::microseconds>(clock::now() - t0).count();
  };
  for (std::size_t n : a.sizes) {
    if (n == 0) throw DataError{"sizes must be positive"};
    std::mt19937_64 rng{a.seed ^ (n * 0x9e3779b97f4a7c15ULL)};
    std::vector<Pair> pairs;
    pairs.reserve(n);
    std::uniform_int_distribution<std::int64_t> value(-1'000'000, 1'000'000);
    for (std::size_t i = 0; i < n; ++i) {
      pairs.push_back(Pair{codec::u64_key(i + 1), codec::int_value(value(rng))});
    }
    oracle::FlatTable table;
    for (const auto& p : pairs) table.insert(p.key, p.value);

    std::unique_ptr<NodeStore> store;
    if (a.backend == "memory") {
      store = std::make_unique<MemoryNodeStore>();
    } else if (a.backend == "sqlite") {
      store = std::make_unique<sql::SqlNodeStore>(std::make_shared<sql::SqliteDriver>(),
                                                   sql::TableSchema{});
    } else {
      throw DataError{"unknown backend " + a.backend};
    }
    DbTree tree{*store, agg, LevelSource::seeded(a.seed)};
    auto s0 = store->stats();
    auto t0 = clock::now();
    tree.bulk_build(pairs);
    print_row(out, BenchRow{"build", n, 0, store->stats() - s0, elapsed(t0), a.backend, a.seed});

    for (std::size_t r : ranges) {
      if (r == 0 || r > n) continue;
      std::uniform_int_distribution<std::size_t> start(0, n - r);
      for (std::size_t t = 0; t < a.trials; ++t) {
        std::size_t i = start(rng);
        const Key& lo = pairs[i].key;
        const Key& hi = pairs[i + r - 1].key;
        s0 = store->stats();
        t0 = clock::now();
        auto got = tree.query(lo, hi);
        print_row(out, BenchRow{"query", n, r, store->stats() - s0, elapsed(t0), a.backend, a.seed});
        t0 = clock::now();
        auto scan = oracle::scan_aggregate(table, agg, lo, hi);
        RoundStats scanned;
        scanned.read_rounds = 1;
        scanned.nodes_read = scan.rows_scanned;
        for (std::size_t j = i; j < i + r; ++j) {
          scanned.bytes_read += pairs[j].key.bytes().size() + pairs[j].value.size();
        }
        print_row(out, BenchRow{"scan", n, r, scanned, elapsed(t0), "oracle", a.seed});
        if (!(got == scan.value)) throw VerificationFailure{"query disagrees with the scan"};
      }
    }
  }
  return kOk;
}

std::string default_db()
{
  const char* env = std::getenv("DBTREE_DB");
  return env && *env ? env : "dbtree.db";
}

}  // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Aggregate range trees stored in a relational table"};
  app.require_subcommand(1);
  std::string db_path = default_db();
  app.add_option("--db", db_path, "SQLite database file (default: $DBTREE_DB or dbtree.db)");

  std::string build_input = "-";
  std::string build_aggs = "sum";
  std::string build_codec = "u64";
  bool build_composite = false;
  bool build_auth = false;
  std::uint64_t build_seed = 1;
  auto* build = app.add_subcommand("build", "Bulk-load a CSV of key,value[,x,y] rows");
  build->add_option("input", build_input, "CSV file, or - for stdin");
  build->add_option("--agg", build_aggs, "Aggregations, comma separated (sum,count,min,max,avg,topN,bigsum)");
  build->add_option("--key-codec", build_codec, "Integer key codec")->check(CLI::IsMember({"u64", "i64"}));
  build->add_flag("--composite", build_composite, "Keys are (x, y) pairs taken from columns 3 and 4");
  build->add_flag("--auth", build_auth, "Authenticated tree with derandomized levels");
  build->add_option("--seed", build_seed, "Level seed");

  std::string q_from;
  std::string q_to;
  std::string q_agg;
  auto* query = app.add_subcommand("query", "Aggregate over keys in [from, to]");
  query->add_option("--from", q_from, "Lower key")->required();
  query->add_option("--to", q_to, "Upper key")->required();
  query->add_option("--agg", q_agg, "Report only this aggregation of the tree");

  KeyArgs get_key;
  auto* get = app.add_subcommand("get", "Print the value stored at a key");
  get_key.add(get);

  KeyArgs ins_key;
  std::string ins_value;
  std::string mut_root;
  auto* insert = app.add_subcommand("insert", "Insert a key");
  ins_key.add(insert);
  insert->add_option("--value", ins_value, "Integer value")->required();
  insert->add_option("--root", mut_root, "Trusted root hash (authenticated trees)");

  KeyArgs upd_key;
  std::string upd_value;
  auto* update = app.add_subcommand("update", "Replace the value of a key");
  upd_key.add(update);
  update->add_option("--value", upd_value, "Integer value")->required();
  update->add_option("--root", mut_root, "Trusted root hash (authenticated trees)");

  KeyArgs del_key;
  auto* erase = app.add_subcommand("delete", "Delete a key");
  del_key.add(erase);
  erase->add_option("--root", mut_root, "Trusted root hash (authenticated trees)");

  std::string g_from;
  std::string g_to;
  std::vector<std::string> g_xs;
  bool g_empty = false;
  auto* groupby = app.add_subcommand("groupby", "Aggregate y in [from, to] for every group x");
  groupby->add_option("--from", g_from, "Lower y")->required();
  groupby->add_option("--to", g_to, "Upper y")->required();
  groupby->add_option("--groups", g_xs, "Restrict to these groups")->delimiter(',');
  groupby->add_flag("--emit-empty", g_empty, "Report listed groups without keys in range");

  auto* verify_cmd = app.add_subcommand("verify", "Check the structural invariants of the stored tree");

  auto* auth_root = app.add_subcommand("auth-root", "Print the root hash of an authenticated tree");

  KeyArgs prove_key;
  std::string prove_out;
  auto* auth_prove = app.add_subcommand("auth-prove", "Write the proof for a key");
  prove_key.add(auth_prove);
  auth_prove->add_option("--out", prove_out, "Proof file")->required();

  KeyArgs check_key;
  std::string check_proof;
  std::string check_root;
  auto* auth_verify = app.add_subcommand("auth-verify", "Verify a proof against a trusted root");
  check_key.add(auth_verify);
  auth_verify->add_option("--proof", check_proof, "Proof file")->required();
  auth_verify->add_option("--root", check_root, "Trusted root hash")->required();
  auth_verify->add_flag("--composite", build_composite, "The key is composite");
  auth_verify->add_option("--key-codec", build_codec, "Integer key codec")->check(CLI::IsMember({"u64", "i64"}));

  BenchArgs bench_args;
  auto* bench = app.add_subcommand("bench", "Emit per-operation round and transfer counts as CSV");
  bench->add_option("--sizes", bench_args.sizes, "Tree sizes")->delimiter(',');
  bench->add_option("--ranges", bench_args.ranges, "Range sizes (default 2^4..2^16)")->delimiter(',');
  bench->add_option("--trials", bench_args.trials, "Queries per range size");
  bench->add_option("--seed", bench_args.seed, "Seed for keys, values, levels and ranges");
  bench->add_option("--backend", bench_args.backend, "memory or sqlite")->check(CLI::IsMember({"memory", "sqlite"}));
  bench->add_option("--agg", bench_args.agg, "Aggregations");
  bench->add_flag("--no-timing", bench_args.no_timing, "Write 0 for wall_us");
  bench->add_option("--out", bench_args.out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (bench->parsed()) return run_bench(bench_args);

    if (auth_verify->parsed()) {
      Meta m;
      m.codec = build_codec;
      m.composite = build_composite;
      Proof proof;
      try {
        proof = parse_proof(read_file(check_proof));
      } catch (const CorruptRecord& e) {
        throw VerificationFailure{std::string{"malformed proof: "} + e.what()};
      }
      // Key encoding without opening any database.
      Key k = m.composite
                  ? CompositeCodec::key(encode_int(m.codec, parse_int(check_key.x, "x")),
                                        encode_int(m.codec, parse_int(check_key.y, "y")))
                  : Key{encode_int(m.codec, parse_int(check_key.key, "key"))};
      auto r = verify(proof, k, parse_root(check_root));
      if (!r.valid()) throw VerificationFailure{"invalid proof: " + r.reason};
      std::cout << (r.status == VerifyResult::Status::kValue ? show_value(r.value) : "absent") << "\n";
      return kOk;
    }

    Database db{db_path};
    if (build->parsed()) {
      Meta m;
      m.aggs = build_auth ? "hash" : build_aggs;
      m.codec = build_codec;
      m.composite = build_composite;
      m.auth = build_auth;
      m.seed = build_seed;
      if (!build_auth) aggregation_of(m.aggs);
      db.reset();
      db.save(m);
      Session s{db, m};
      std::vector<Pair> pairs;
      if (build_input == "-") {
        pairs = read_csv(std::cin, s);
      } else {
        std::ifstream in{build_input};
        if (!in) throw DataError{"cannot read " + build_input};
        pairs = read_csv(in, s);
      }
      std::size_t n = pairs.size();
      if (m.auth) {
        s.meta().trusted_root = to_hex(s.auth().bulk_build(std::move(pairs)));
      } else {
        s.tree().bulk_build(std::move(pairs));
      }
      s.commit();
      std::cout << "built " << n << " keys" << (m.auth ? ", root " + s.meta().trusted_root : "") << "\n";
      return kOk;
    }

    Session s{db, db.load()};
    auto mutate = [&](auto&& plain, auto&& authed) {
      if (s.meta().auth) {
        Bytes trusted = parse_root(mut_root.empty() ? s.meta().trusted_root : mut_root);
        Bytes root = authed(trusted);
        s.meta().trusted_root = to_hex(root);
        s.commit();
        std::cout << s.meta().trusted_root << "\n";
      } else {
        plain();
        s.commit();
      }
      return kOk;
    };

    if (query->parsed()) {
      if (s.meta().composite) throw DataError{"use groupby on composite trees"};
      auto result = s.tree().query(s.key_of(q_from, "", ""), s.key_of(q_to, "", ""));
      if (!q_agg.empty()) {
        auto names = split(s.meta().aggs, ',');
        std::size_t i = 0;
        while (i < names.size() && trim(names[i]) != q_agg) ++i;
        if (i == names.size()) throw DataError{"tree does not maintain " + q_agg};
        if (names.size() > 1) result = result.list().at(i);
      }
      std::cout << to_string(result) << "\n";
      return kOk;
    }
    if (get->parsed()) {
      std::cout << show_value(s.tree().get(s.key_of(get_key.key, get_key.x, get_key.y))) << "\n";
      return kOk;
    }
    if (insert->parsed()) {
      Key k = s.key_of(ins_key.key, ins_key.x, ins_key.y);
      Bytes v = codec::int_value(parse_int(ins_value, "value"));
      return mutate([&] { s.tree().insert(k, v); },
                    [&](const Bytes& root) { return s.auth().insert(k, v, root); });
    }
    if (update->parsed()) {
      Key k = s.key_of(upd_key.key, upd_key.x, upd_key.y);
      Bytes v = codec::int_value(parse_int(upd_value, "value"));
      return mutate([&] { s.tree().update(k, v); },
                    [&](const Bytes& root) { return s.auth().update(k, v, root); });
    }
    if (erase->parsed()) {
      Key k = s.key_of(del_key.key, del_key.x, del_key.y);
      return mutate([&] { s.tree().erase(k); },
                    [&](const Bytes& root) { return s.auth().erase(k, root); });
    }
    if (groupby->parsed()) {
      if (!s.meta().composite) throw DataError{"groupby needs a composite tree"};
      std::optional<std::vector<Bytes>> xs;
      if (!g_xs.empty()) {
        xs.emplace();
        for (const auto& x : g_xs) xs->push_back(s.encode_part(x));
      }
      try {
        auto groups = group_by_range(s.tree(), s.encode_part(g_from), s.encode_part(g_to), xs,
                                     GroupByOptions{g_empty, true});
        for (const auto& [x, v] : groups) std::cout << s.show_part(x) << "," << to_string(v) << "\n";
      } catch (const std::invalid_argument& e) {
        throw DataError{e.what()};
      }
      return kOk;
    }
    if (verify_cmd->parsed()) {
      std::vector<Node> nodes;
      try {
        nodes = s.store().snapshot();
      } catch (const CorruptRecord& e) {
        throw VerificationFailure{std::string{"corrupt node: "} + e.what()};
      }
      auto report = check_invariants(nodes, s.tree().aggregation());
      for (const auto& v : report.violations) std::cerr << "violation: " << v.detail << "\n";
      if (!report.ok()) {
        throw VerificationFailure{std::to_string(report.violations.size()) + " violations"};
      }
      if (s.meta().auth && to_hex(s.auth().root_hash()) != s.meta().trusted_root) {
        throw VerificationFailure{"root hash differs from the trusted root"};
      }
      std::cout << "ok: " << nodes.size() << " nodes\n";
      return kOk;
    }
    if (auth_root->parsed()) {
      std::cout << to_hex(s.auth().root_hash()) << "\n";
      return kOk;
    }
    if (auth_prove->parsed()) {
      Key k = s.key_of(prove_key.key, prove_key.x, prove_key.y);
      auto [value, proof] = s.auth().get(k);
      std::ofstream out{prove_out, std::ios::binary};
      Bytes bytes = serialize_proof(proof);
      out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
      if (!out) throw DataError{"cannot write " + prove_out};
      std::cout << show_value(value) << "\n";
      return kOk;
    }
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kData;
  } catch (const VerificationFailure& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    return kVerification;
  } catch (const ProofRejected& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    return kVerification;
  } catch (const StoreError& e) {
    std::cerr << "backend error: " << e.what() << "\n";
    return kBackend;
  } catch (const CorruptRecord& e) {
    std::cerr << "corrupt data: " << e.what() << "\n";
    return kVerification;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kData;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kData;
  }
  return kUsage;
}
