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

#ifndef DBTREE_LEVEL_SOURCE_HPP
#define DBTREE_LEVEL_SOURCE_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <random>

#include "dbtree/hash.hpp"
#include "dbtree/node.hpp"

namespace dbtree {

/**
 * @brief Supplies the level of each inserted key.
 *
 * Seeded sources draw from a geometric distribution with
 * Pr[level >= l] = p^l. Derandomized sources derive the level from the key.
 */
class LevelSource
{
 public:
  static LevelSource seeded(std::uint64_t seed, double p = 0.5);
  static LevelSource derandomized(HashFunction h = sha256());
  static LevelSource from_function(std::function<Level(const Key&)> fn);

  Level next(const Key& k);
  [[nodiscard]] bool deterministic() const { return !rng_; }

 private:
  std::function<Level(const Key&)> fn_;
  std::shared_ptr<std::mt19937_64> rng_;
  double p_ = 0.5;
};

}  // namespace dbtree

#endif  // DBTREE_LEVEL_SOURCE_HPP
