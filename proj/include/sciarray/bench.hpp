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

// Desk-scale benchmark of per-row function call overhead. Two twin tables
// hold the same random vectors: Tscalar with one REAL column per component
// and Tvector with one array blob per row, each in its own database file.
//
//   query 1  SELECT COUNT(c0) FROM Tscalar                     baseline
//   query 2  SELECT COUNT(v) FROM Tvector                      baseline
//   query 3  SELECT SUM(c0) FROM Tscalar
//   query 4  SELECT SUM(<P>_Item_1(v, 0)) FROM Tvector
//   query 5  SELECT SUM(<P>_EmptyFunction(v)) FROM Tvector
//
// per_call_us = (wall - baseline wall) / rows, with query 1 as the baseline
// for query 3 and query 2 for queries 4 and 5. Timings are the minimum over
// warm repetitions on one connection; the first run on a fresh connection is
// reported separately as the cold time.

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "sciarray/element_type.hpp"

namespace sciarray {

struct BenchConfig {
  std::uint64_t rows = 1'000'000;
  std::uint32_t vector_dim = 5;
  ElementType elem = ElementType::kFloat64;  // real float types only
  int repetitions = 3;
  std::uint64_t seed = 1;
  std::uint64_t concat_cells = 100'000;
  std::filesystem::path work_dir;  // empty: a fresh temporary directory
  bool keep_files = false;
};

struct BenchRow {
  std::string query_id;
  std::string description;
  std::uint64_t rows = 0;
  double wall_s = 0;
  double cold_wall_s = 0;
  double per_call_us = 0;
  std::uint64_t bytes_read = 0;
};

struct BenchReport {
  BenchConfig config;
  std::vector<BenchRow> rows;

  std::uint64_t scalar_count = 0;
  std::uint64_t vector_count = 0;
  double scalar_sum = 0;  // query 3
  double vector_sum = 0;  // query 4
  double sum_relative_diff = 0;

  std::uint64_t tscalar_file_bytes = 0;
  std::uint64_t tvector_file_bytes = 0;
  double scalar_value_bytes_per_row = 0;  // stored column values only
  double vector_value_bytes_per_row = 0;

  bool concat_paths_identical = false;
  std::uint64_t subarray_header_bytes = 0;
  std::uint64_t subarray_payload_bytes = 0;
  std::uint64_t subarray_streamed_bytes = 0;

  const BenchRow& row(const std::string& query_id) const;
};

/// Builds the tables, runs every query and checks result correctness:
/// equal row counts, query 3 and 4 sums within 1e-6 relative, identical
/// Concat results from the aggregate and cursor paths. A failed check
/// throws kNumerical.
BenchReport run_bench(const BenchConfig& config);

/// CSV with header query_id,rows,wall_s,per_call_us,bytes_read.
void write_bench_csv(const BenchReport& report, std::ostream& out);
void write_bench_text(const BenchReport& report, std::ostream& out);

}  // namespace sciarray
