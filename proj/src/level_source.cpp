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

#include "dbtree/level_source.hpp"

#include <stdexcept>

namespace dbtree {

namespace {
constexpr Level kMaxDrawnLevel = 255;
}

LevelSource LevelSource::seeded(std::uint64_t seed, double p)
{
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument{"level probability must be in (0, 1)"};
  LevelSource s;
  s.rng_ = std::make_shared<std::mt19937_64>(seed);
  s.p_ = p;
  return s;
}

LevelSource LevelSource::derandomized(HashFunction h)
{
  return from_function([h = std::move(h)](const Key& k) { return derandomized_level(k, h); });
}

LevelSource LevelSource::from_function(std::function<Level(const Key&)> fn)
{
  if (!fn) throw std::invalid_argument{"null level function"};
  LevelSource s;
  s.fn_ = std::move(fn);
  return s;
}

Level LevelSource::next(const Key& k)
{
  if (!rng_) {
    Level l = fn_(k);
    if (l >= kRootLevel) throw std::out_of_range{"level collides with the root level"};
    return l;
  }
  std::bernoulli_distribution up{p_};
  Level l = 0;
  while (l < kMaxDrawnLevel && up(*rng_)) ++l;
  return l;
}

}  // namespace dbtree
