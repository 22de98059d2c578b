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

#ifndef DBTREE_ERRORS_HPP
#define DBTREE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dbtree {

class Error : public std::runtime_error
{
 public:
  using std::runtime_error::runtime_error;
};

class KeyNotFound : public Error
{
 public:
  using Error::Error;
};

class DuplicateKey : public Error
{
 public:
  using Error::Error;
};

/// Fixed-width aggregate arithmetic left its range.
class OverflowError : public Error
{
 public:
  using Error::Error;
};

/// A stored record or serialized object failed to decode.
class CorruptRecord : public Error
{
 public:
  using Error::Error;
};

/// Backend failure. Writes that raise it leave the store unchanged.
class StoreError : public Error
{
 public:
  using Error::Error;
};

/// An authenticated operation saw a proof that did not verify.
class ProofRejected : public Error
{
 public:
  using Error::Error;
};

}  // namespace dbtree

#endif  // DBTREE_ERRORS_HPP
