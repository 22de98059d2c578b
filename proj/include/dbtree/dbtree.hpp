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

#ifndef DBTREE_DBTREE_HPP
#define DBTREE_DBTREE_HPP

#include "dbtree/agg_value.hpp"
#include "dbtree/aggregation.hpp"
#include "dbtree/auth.hpp"
#include "dbtree/bytes.hpp"
#include "dbtree/db_tree.hpp"
#include "dbtree/errors.hpp"
#include "dbtree/group_by.hpp"
#include "dbtree/hash.hpp"
#include "dbtree/invariants.hpp"
#include "dbtree/key.hpp"
#include "dbtree/level_source.hpp"
#include "dbtree/memory_store.hpp"
#include "dbtree/node.hpp"
#include "dbtree/node_store.hpp"
#include "dbtree/oracle.hpp"
#include "dbtree/sql_store.hpp"

#endif  // DBTREE_DBTREE_HPP
