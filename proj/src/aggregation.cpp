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

#include "dbtree/aggregation.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

#include "dbtree/errors.hpp"

namespace dbtree {

ResultValue::ResultValue(mpq_class v)
{
  v.canonicalize();
  repr_ = std::move(v);
}

std::string to_string(const ResultValue& v)
{
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Empty>) {
          return "empty";
        } else if constexpr (std::is_same_v<T, mpz_class>) {
          return x.get_str();
        } else if constexpr (std::is_same_v<T, mpq_class>) {
          return x.get_str();
        } else if constexpr (std::is_same_v<T, Bytes>) {
          return to_hex(x);
        } else {
          std::string s = "[";
          for (std::size_t i = 0; i < x.size(); ++i) {
            if (i) s += ",";
            s += to_string(x[i]);
          }
          return s + "]";
        }
      },
      v.repr());
}

Aggregation::Aggregation(std::shared_ptr<const AggregationFunction> fn) : fn_{std::move(fn)}
{
  if (!fn_) throw std::invalid_argument{"null aggregation"};
}

std::string Aggregation::name() const { return fn_->name(); }
AggValue Aggregation::identity() const { return fn_->identity(); }
AggValue Aggregation::lift(BytesView value) const { return fn_->lift(value); }
AggValue Aggregation::combine(const AggValue& a, const AggValue& b) const
{
  return fn_->combine(a, b);
}
ResultValue Aggregation::finish(const AggValue& a) const { return fn_->finish(a); }
bool Aggregation::associative() const { return fn_->associative(); }
AggValue Aggregation::fold(std::span<const SequenceItem> items) const { return fn_->fold(items); }
const std::vector<Aggregation>& Aggregation::parts() const { return fn_->parts(); }

bool Aggregation::range_queryable() const
{
  if (associative()) return true;
  return std::any_of(parts().begin(), parts().end(),
                     [](const Aggregation& p) { return p.range_queryable(); });
}

AggValue AggregationFunction::fold(std::span<const SequenceItem> items) const
{
  if (items.empty()) return identity();
  auto value_of = [this](const SequenceItem& it) {
    return it.agg ? *it.agg : lift(it.pair->value);
  };
  AggValue acc = value_of(items.front());
  for (std::size_t i = 1; i < items.size(); ++i) acc = combine(acc, value_of(items[i]));
  return acc;
}

const std::vector<Aggregation>& AggregationFunction::parts() const
{
  static const std::vector<Aggregation> kNone;
  return kNone;
}

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b)
{
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError{"int64 aggregate overflow"};
  return r;
}

AggValue add(const AggValue& a, const AggValue& b, Arithmetic mode)
{
  if (mode == Arithmetic::kChecked64) return AggValue{checked_add(a.as_int(), b.as_int())};
  return AggValue{mpz_class{a.to_big() + b.to_big()}};
}

AggValue zero(Arithmetic mode)
{
  if (mode == Arithmetic::kChecked64) return AggValue{std::int64_t{0}};
  return AggValue{mpz_class{0}};
}

AggValue int_of(std::int64_t v, Arithmetic mode)
{
  if (mode == Arithmetic::kChecked64) return AggValue{v};
  return AggValue{mpz_from_int64(v)};
}

class Sum final : public AggregationFunction
{
 public:
  explicit Sum(Arithmetic mode) : mode_{mode} {}
  std::string name() const override { return mode_ == Arithmetic::kChecked64 ? "sum" : "bigsum"; }
  AggValue identity() const override { return zero(mode_); }
  AggValue lift(BytesView v) const override { return int_of(codec::parse_int_value(v), mode_); }
  AggValue combine(const AggValue& a, const AggValue& b) const override { return add(a, b, mode_); }
  ResultValue finish(const AggValue& a) const override { return ResultValue{a.to_big()}; }

 private:
  Arithmetic mode_;
};

class Count final : public AggregationFunction
{
 public:
  explicit Count(Arithmetic mode) : mode_{mode} {}
  std::string name() const override { return "count"; }
  AggValue identity() const override { return zero(mode_); }
  AggValue lift(BytesView) const override { return int_of(1, mode_); }
  AggValue combine(const AggValue& a, const AggValue& b) const override { return add(a, b, mode_); }
  ResultValue finish(const AggValue& a) const override { return ResultValue{a.to_big()}; }

 private:
  Arithmetic mode_;
};

class Extremum final : public AggregationFunction
{
 public:
  explicit Extremum(bool is_min) : is_min_{is_min} {}
  std::string name() const override { return is_min_ ? "min" : "max"; }
  AggValue identity() const override { return AggValue{Bottom{}}; }
  AggValue lift(BytesView v) const override { return AggValue{codec::parse_int_value(v)}; }
  AggValue combine(const AggValue& a, const AggValue& b) const override
  {
    if (a.is_bottom()) return b;
    if (b.is_bottom()) return a;
    bool take_a = is_min_ ? a.as_int() <= b.as_int() : a.as_int() >= b.as_int();
    return take_a ? a : b;
  }
  ResultValue finish(const AggValue& a) const override
  {
    if (a.is_bottom()) return ResultValue{Empty{}};
    return ResultValue{a.to_big()};
  }

 private:
  bool is_min_;
};

class Avg final : public AggregationFunction
{
 public:
  explicit Avg(Arithmetic mode) : mode_{mode} {}
  std::string name() const override { return "avg"; }
  AggValue identity() const override { return AggValue{AggValue::Tuple{zero(mode_), zero(mode_)}}; }
  AggValue lift(BytesView v) const override
  {
    return AggValue{AggValue::Tuple{int_of(codec::parse_int_value(v), mode_), int_of(1, mode_)}};
  }
  AggValue combine(const AggValue& a, const AggValue& b) const override
  {
    const auto& x = a.as_tuple();
    const auto& y = b.as_tuple();
    return AggValue{AggValue::Tuple{add(x.at(0), y.at(0), mode_), add(x.at(1), y.at(1), mode_)}};
  }
  ResultValue finish(const AggValue& a) const override
  {
    const auto& t = a.as_tuple();
    mpz_class count = t.at(1).to_big();
    if (count == 0) return ResultValue{Empty{}};
    return ResultValue{mpq_class{t.at(0).to_big(), count}};
  }

 private:
  Arithmetic mode_;
};

class TopN final : public AggregationFunction
{
 public:
  explicit TopN(std::size_t n) : n_{n}
  {
    if (n == 0) throw std::invalid_argument{"top-n requires n >= 1"};
  }
  std::string name() const override { return "top" + std::to_string(n_); }
  AggValue identity() const override { return AggValue{AggValue::Tuple(n_, AggValue{Bottom{}})}; }
  AggValue lift(BytesView v) const override
  {
    AggValue::Tuple t(n_, AggValue{Bottom{}});
    t[0] = AggValue{codec::parse_int_value(v)};
    return AggValue{std::move(t)};
  }
  AggValue combine(const AggValue& a, const AggValue& b) const override
  {
    const auto& x = a.as_tuple();
    const auto& y = b.as_tuple();
    AggValue::Tuple out;
    out.reserve(n_);
    std::size_t i = 0;
    std::size_t j = 0;
    auto valid = [](const AggValue::Tuple& t, std::size_t k) {
      return k < t.size() && !t[k].is_bottom();
    };
    while (out.size() < n_ && (valid(x, i) || valid(y, j))) {
      if (!valid(y, j) || (valid(x, i) && x[i].as_int() >= y[j].as_int())) {
        out.push_back(x[i++]);
      } else {
        out.push_back(y[j++]);
      }
    }
    out.resize(n_, AggValue{Bottom{}});
    return AggValue{std::move(out)};
  }
  ResultValue finish(const AggValue& a) const override
  {
    ResultValue::List out;
    for (const auto& e : a.as_tuple()) {
      out.push_back(e.is_bottom() ? ResultValue{Empty{}} : ResultValue{e.to_big()});
    }
    return ResultValue{std::move(out)};
  }

 private:
  std::size_t n_;
};

class Product final : public AggregationFunction
{
 public:
  explicit Product(std::vector<Aggregation> parts) : parts_{std::move(parts)}
  {
    if (parts_.empty()) throw std::invalid_argument{"product of zero aggregations"};
    for (const auto& p : parts_) associative_ = associative_ && p.associative();
  }

  std::string name() const override
  {
    std::string s = "product(";
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (i) s += ",";
      s += parts_[i].name();
    }
    return s + ")";
  }

  AggValue identity() const override
  {
    AggValue::Tuple t;
    for (const auto& p : parts_) t.push_back(p.identity());
    return AggValue{std::move(t)};
  }

  AggValue lift(BytesView v) const override
  {
    AggValue::Tuple t;
    for (const auto& p : parts_) t.push_back(p.associative() ? p.lift(v) : AggValue{Bottom{}});
    return AggValue{std::move(t)};
  }

  // Non-associative components collapse to bottom under combine.
  AggValue combine(const AggValue& a, const AggValue& b) const override
  {
    const auto& x = a.as_tuple();
    const auto& y = b.as_tuple();
    check_arity(x);
    check_arity(y);
    AggValue::Tuple t;
    t.reserve(parts_.size());
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      t.push_back(parts_[i].associative() ? parts_[i].combine(x[i], y[i]) : AggValue{Bottom{}});
    }
    return AggValue{std::move(t)};
  }

  ResultValue finish(const AggValue& a) const override
  {
    const auto& x = a.as_tuple();
    check_arity(x);
    ResultValue::List out;
    for (std::size_t i = 0; i < parts_.size(); ++i) out.push_back(parts_[i].finish(x[i]));
    return ResultValue{std::move(out)};
  }

  bool associative() const override { return associative_; }

  AggValue fold(std::span<const SequenceItem> items) const override
  {
    AggValue::Tuple acc;
    acc.reserve(parts_.size());
    for (const auto& p : parts_) acc.push_back(p.associative() ? p.identity() : AggValue{Bottom{}});
    std::vector<bool> started(parts_.size(), false);
    for (const auto& it : items) {
      if (it.agg) check_arity(it.agg->as_tuple());
      for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (!parts_[i].associative()) continue;
        AggValue v = it.agg ? it.agg->as_tuple()[i] : parts_[i].lift(it.pair->value);
        acc[i] = started[i] ? parts_[i].combine(acc[i], v) : std::move(v);
        started[i] = true;
      }
    }
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (parts_[i].associative()) continue;
      std::vector<SequenceItem> projected;
      projected.reserve(items.size());
      for (const auto& it : items) {
        if (it.agg) {
          projected.push_back(SequenceItem{&it.agg->as_tuple()[i], nullptr});
        } else {
          projected.push_back(it);
        }
      }
      acc[i] = parts_[i].fold(projected);
    }
    return AggValue{std::move(acc)};
  }

  const std::vector<Aggregation>& parts() const override { return parts_; }

 private:
  void check_arity(const AggValue::Tuple& t) const
  {
    if (t.size() != parts_.size()) throw CorruptRecord{"product aggregate arity mismatch"};
  }

  std::vector<Aggregation> parts_;
  bool associative_ = true;
};

}  // namespace

Aggregation make_sum(Arithmetic mode) { return Aggregation{std::make_shared<Sum>(mode)}; }
Aggregation make_count(Arithmetic mode) { return Aggregation{std::make_shared<Count>(mode)}; }
Aggregation make_min() { return Aggregation{std::make_shared<Extremum>(true)}; }
Aggregation make_max() { return Aggregation{std::make_shared<Extremum>(false)}; }
Aggregation make_avg(Arithmetic mode) { return Aggregation{std::make_shared<Avg>(mode)}; }
Aggregation make_top_n(std::size_t n) { return Aggregation{std::make_shared<TopN>(n)}; }
Aggregation make_product(std::vector<Aggregation> parts)
{
  return Aggregation{std::make_shared<Product>(std::move(parts))};
}

Aggregation parse_aggregation(std::string_view name)
{
  if (name == "sum") return make_sum();
  if (name == "bigsum") return make_sum(Arithmetic::kArbitrary);
  if (name == "count") return make_count();
  if (name == "min") return make_min();
  if (name == "max") return make_max();
  if (name == "avg") return make_avg();
  if (name.size() > 3 && name.substr(0, 3) == "top") {
    std::size_t n = 0;
    auto digits = name.substr(3);
    auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
    if (ec == std::errc{} && p == digits.data() + digits.size() && n > 0) return make_top_n(n);
  }
  throw std::invalid_argument{"unknown aggregation: " + std::string{name}};
}

}  // namespace dbtree
