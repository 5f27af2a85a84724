// Copyright 2026 The sciarray Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// SQL surface over an embedded SQLite connection.
//
// Function names follow <Prefix>[Max]_<Op>[_<n>], one prefix per element type:
//   TinyIntArray i8, SmallIntArray i16, IntArray i32, BigIntArray i64,
//   RealArray f32, FloatArray f64, RealComplexArray c64, FloatComplexArray c128.
// Array arguments and results are blob bytes, identical to .ablob files.
// Functions check the element type of every array argument against their
// prefix. Both prefixes accept arrays of either storage class; constructors
// under the Max prefix always build Max arrays, the others classify.
//
// Table-valued expansion is the eponymous virtual table ArrayToTable:
//   SELECT ix, i0, i1, value FROM ArrayToTable(blob)

#pragma once

#include <string>
#include <vector>

#include "sciarray/element_type.hpp"

struct sqlite3;

namespace sciarray::sql {

struct FunctionInfo {
  std::string name;
  std::string op;   // operation family, e.g. "Item"
  int arity;        // SQL argument count
  bool aggregate;
  std::string summary;
};

/// Function-name prefix for an element type, e.g. "FloatArray" for f64.
std::string sql_prefix(ElementType elem, bool max = false);

/// Every binding register_all() creates, in registration order.
const std::vector<FunctionInfo>& function_catalog();

/// Registers all scalar and aggregate functions and the ArrayToTable module.
/// Returns the number of bindings. Throws kSql with SQLite's message if a
/// registration fails.
int register_all(sqlite3* db);

}  // namespace sciarray::sql
