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

// Conversions between one-row-per-element tables and arrays.
//
// Arrays are assembled either through the three-phase aggregate
// (concat_init / concat_accumulate / concat_finish) or in one call from a
// row cursor. Both paths share ConcatState and give byte-identical results.
// A coordinate seen twice is always an error; under the strict policy every
// cell must be written exactly once, under zero_fill unseen cells hold zero.

#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "sciarray/array_blob.hpp"

namespace sciarray {

struct IndexedValue {
  std::vector<std::int64_t> indices;
  Scalar value;
};

enum class MissingCellPolicy { kStrict, kZeroFill };

class ConcatState {
 public:
  ConcatState(ElementType elem, Dims dims, MissingCellPolicy policy);

  void accumulate(std::span<const std::int64_t> indices, const Scalar& value);
  void accumulate(const IndexedValue& row) { accumulate(row.indices, row.value); }

  /// Builds the array. The state is left unchanged and may be finished again.
  ArrayBlob finish() const;

  ElementType elem() const noexcept { return elem_; }
  const Dims& dims() const noexcept { return dims_; }
  MissingCellPolicy policy() const noexcept { return policy_; }
  std::uint64_t cells() const noexcept { return cells_; }
  std::uint64_t seen() const noexcept { return seen_count_; }

 private:
  ElementType elem_;
  Dims dims_;
  MissingCellPolicy policy_;
  std::uint64_t cells_ = 0;
  std::uint64_t seen_count_ = 0;
  Bytes payload_;
  std::vector<std::uint64_t> seen_;  // one bit per cell
};

/// Reads target dimensions from a rank-1 integer array (e.g. Vector(100, 200)).
Dims dims_from_blob(const ArrayView& dims_blob);

/// Reads coordinates from a rank-1 integer array.
std::vector<std::int64_t> indices_from_blob(const ArrayView& index_blob);

ConcatState concat_init(ElementType elem, const ArrayView& dims_blob,
                        MissingCellPolicy policy);
void concat_accumulate(ConcatState& state, const IndexedValue& row);
ArrayBlob concat_finish(const ConcatState& state);

/// Pull-style row source. Returns nullopt at end of input.
using RowCursor = std::function<std::optional<IndexedValue>()>;

ArrayBlob concat_from_cursor(ElementType elem, const ArrayView& dims_blob,
                             const RowCursor& cursor, MissingCellPolicy policy);

/// Streams an array as rows in ascending column-major order.
class TableRows {
 public:
  explicit TableRows(const ArrayView& array) : array_(array) {}

  /// Fills `row` with the next element; false once all rows were produced.
  bool next(IndexedValue& row);
  std::uint64_t size() const noexcept { return array_.count(); }

 private:
  ArrayView array_;
  std::uint64_t linear_ = 0;
};

std::vector<IndexedValue> to_table(const ArrayView& array);

// CSV row format: header row "i_0,...,i_{r-1},value", then one row per cell.

void write_csv(const ArrayView& array, std::ostream& out);

/// Builds an array from CSV rows. When `dims` is empty the shape is inferred
/// as one past the largest coordinate seen in each column.
ArrayBlob read_csv(std::istream& in, ElementType elem, const Dims& dims,
                   MissingCellPolicy policy);

}  // namespace sciarray
