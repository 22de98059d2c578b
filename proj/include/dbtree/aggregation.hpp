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

#ifndef DBTREE_AGGREGATION_HPP
#define DBTREE_AGGREGATION_HPP

#include <gmpxx.h>

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "dbtree/agg_value.hpp"
#include "dbtree/key.hpp"

namespace dbtree {

struct Empty {
  friend bool operator==(const Empty&, const Empty&) { return true; }
};

/**
 * @brief Finished, reported value of an aggregation.
 *
 * Integers are always reported as big integers so that fixed-width and
 * arbitrary-precision carriers compare equal.
 */
class ResultValue
{
 public:
  using List = std::vector<ResultValue>;
  using Repr = std::variant<Empty, mpz_class, mpq_class, Bytes, List>;

  ResultValue() = default;
  ResultValue(Empty e) : repr_{e} {}
  ResultValue(mpz_class v) : repr_{std::move(v)} {}
  /// Stored canonicalized.
  ResultValue(mpq_class v);
  ResultValue(Bytes b) : repr_{std::move(b)} {}
  ResultValue(List l) : repr_{std::move(l)} {}

  [[nodiscard]] bool is_empty() const { return std::holds_alternative<Empty>(repr_); }
  [[nodiscard]] bool is_integer() const { return std::holds_alternative<mpz_class>(repr_); }
  [[nodiscard]] bool is_rational() const { return std::holds_alternative<mpq_class>(repr_); }
  [[nodiscard]] bool is_bytes() const { return std::holds_alternative<Bytes>(repr_); }
  [[nodiscard]] bool is_list() const { return std::holds_alternative<List>(repr_); }
  [[nodiscard]] const mpz_class& integer() const { return std::get<mpz_class>(repr_); }
  [[nodiscard]] const mpq_class& rational() const { return std::get<mpq_class>(repr_); }
  [[nodiscard]] const Bytes& bytes() const { return std::get<Bytes>(repr_); }
  [[nodiscard]] const List& list() const { return std::get<List>(repr_); }
  [[nodiscard]] const Repr& repr() const { return repr_; }

  friend bool operator==(const ResultValue& a, const ResultValue& b) { return a.repr_ == b.repr_; }

 private:
  Repr repr_;
};

/// Integers print in decimal, rationals as p/q, bytes as hex, lists in brackets.
std::string to_string(const ResultValue& v);

/// One element of an aggregate sequence: either an aggregate slot or a pair.
struct SequenceItem {
  const AggValue* agg = nullptr;
  const Pair* pair = nullptr;
};

class AggregationFunction;

/**
 * @brief Handle to an aggregation function (identity, lift, combine, finish).
 *
 * Copies share the underlying function object.
 */
class Aggregation
{
 public:
  explicit Aggregation(std::shared_ptr<const AggregationFunction> fn);

  [[nodiscard]] std::string name() const;
  [[nodiscard]] AggValue identity() const;
  [[nodiscard]] AggValue lift(BytesView value) const;
  [[nodiscard]] AggValue combine(const AggValue& a, const AggValue& b) const;
  [[nodiscard]] ResultValue finish(const AggValue& a) const;
  [[nodiscard]] bool associative() const;
  /// A non-associative aggregation may still have associative components.
  [[nodiscard]] bool range_queryable() const;
  /// Folds an aggregate sequence. Associative functions fold left to right.
  [[nodiscard]] AggValue fold(std::span<const SequenceItem> items) const;
  /// Components of a product aggregation; empty otherwise.
  [[nodiscard]] const std::vector<Aggregation>& parts() const;

  [[nodiscard]] const AggregationFunction& function() const { return *fn_; }

 private:
  std::shared_ptr<const AggregationFunction> fn_;
};

class AggregationFunction
{
 public:
  virtual ~AggregationFunction() = default;

  [[nodiscard]] virtual std::string name() const = 0;
  [[nodiscard]] virtual AggValue identity() const = 0;
  [[nodiscard]] virtual AggValue lift(BytesView value) const = 0;
  [[nodiscard]] virtual AggValue combine(const AggValue& a, const AggValue& b) const = 0;
  [[nodiscard]] virtual ResultValue finish(const AggValue& a) const = 0;
  [[nodiscard]] virtual bool associative() const { return true; }
  [[nodiscard]] virtual AggValue fold(std::span<const SequenceItem> items) const;
  [[nodiscard]] virtual const std::vector<Aggregation>& parts() const;
};

enum class Arithmetic {
  /// int64 with overflow detection.
  kChecked64,
  /// Unbounded integers.
  kArbitrary,
};

Aggregation make_sum(Arithmetic mode = Arithmetic::kChecked64);
Aggregation make_count(Arithmetic mode = Arithmetic::kChecked64);
Aggregation make_min();
Aggregation make_max();
/// Carrier is (sum, count); finishes to an exact rational.
Aggregation make_avg(Arithmetic mode = Arithmetic::kChecked64);
/// The n largest values with multiplicity, descending, padded with bottom.
Aggregation make_top_n(std::size_t n);
/// Component-wise product of aggregations.
Aggregation make_product(std::vector<Aggregation> parts);

/// Accepts sum, bigsum, count, min, max, avg and topN (e.g. top2).
Aggregation parse_aggregation(std::string_view name);

}  // namespace dbtree

#endif  // DBTREE_AGGREGATION_HPP
