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

#include "sciarray/table_bridge.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "sciarray/array_ops.hpp"
#include "sciarray/error.hpp"
#include "sciarray/text_codec.hpp"

namespace sciarray {

namespace {

std::string coords_string(std::span<const std::int64_t> idx) {
  std::string s = "[";
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(idx[i]);
  }
  return s + "]";
}

}  // namespace

ConcatState::ConcatState(ElementType elem, Dims dims, MissingCellPolicy policy)
    : elem_(elem), dims_(std::move(dims)), policy_(policy) {
  // Validates rank and extents for the eventual blob.
  const ArrayHeader h = classified_header(elem_, dims_);
  cells_ = h.total_count();
  payload_.assign(h.payload_size(), std::byte{0});
  seen_.assign((cells_ + 63) / 64, 0);
}

void ConcatState::accumulate(std::span<const std::int64_t> indices, const Scalar& value) {
  const std::uint64_t linear = linearize(dims_, indices);
  std::uint64_t& word = seen_[linear / 64];
  const std::uint64_t bit = std::uint64_t{1} << (linear % 64);
  if (word & bit) {
    fail(ErrorCode::kConflict, "duplicate cell " + coords_string(indices));
  }
  const std::size_t w = byte_width(elem_);
  store_element(elem_, value, std::span<std::byte>(payload_).subspan(linear * w, w));
  word |= bit;
  ++seen_count_;
}

ArrayBlob ConcatState::finish() const {
  if (policy_ == MissingCellPolicy::kStrict && seen_count_ != cells_) {
    fail(ErrorCode::kCoverage, std::to_string(cells_ - seen_count_) + " of " +
                                   std::to_string(cells_) + " cells missing");
  }
  return ArrayBlob::assemble(classified_header(elem_, dims_), payload_);
}

Dims dims_from_blob(const ArrayView& dims_blob) {
  if (!is_integer(dims_blob.elem()) || dims_blob.rank() != 1) {
    fail(ErrorCode::kShape, "shape must be a rank-1 integer array");
  }
  if (dims_blob.count() == 0) fail(ErrorCode::kShape, "shape must list at least one size");
  std::vector<std::int64_t> extents(dims_blob.count());
  for (std::uint64_t i = 0; i < dims_blob.count(); ++i) {
    extents[i] = std::get<std::int64_t>(dims_blob.load(i));
  }
  return to_dims(extents);
}

std::vector<std::int64_t> indices_from_blob(const ArrayView& index_blob) {
  if (!is_integer(index_blob.elem()) || index_blob.rank() != 1) {
    fail(ErrorCode::kShape, "index must be a rank-1 integer array");
  }
  std::vector<std::int64_t> idx(index_blob.count());
  for (std::uint64_t i = 0; i < index_blob.count(); ++i) {
    idx[i] = std::get<std::int64_t>(index_blob.load(i));
  }
  return idx;
}

ConcatState concat_init(ElementType elem, const ArrayView& dims_blob,
                        MissingCellPolicy policy) {
  return ConcatState(elem, dims_from_blob(dims_blob), policy);
}

void concat_accumulate(ConcatState& state, const IndexedValue& row) {
  state.accumulate(row);
}

ArrayBlob concat_finish(const ConcatState& state) { return state.finish(); }

ArrayBlob concat_from_cursor(ElementType elem, const ArrayView& dims_blob,
                             const RowCursor& cursor, MissingCellPolicy policy) {
  ConcatState state = concat_init(elem, dims_blob, policy);
  while (auto row = cursor()) state.accumulate(*row);
  return state.finish();
}

bool TableRows::next(IndexedValue& row) {
  if (linear_ >= array_.count()) return false;
  row.indices = delinearize(array_.dims(), linear_);
  row.value = array_.load(linear_);
  ++linear_;
  return true;
}

std::vector<IndexedValue> to_table(const ArrayView& array) {
  std::vector<IndexedValue> rows;
  rows.reserve(array.count());
  TableRows stream(array);
  IndexedValue row;
  while (stream.next(row)) rows.push_back(row);
  return rows;
}

void write_csv(const ArrayView& array, std::ostream& out) {
  for (std::size_t d = 0; d < array.rank(); ++d) out << "i_" << d << ',';
  out << "value\n";
  const std::size_t w = byte_width(array.elem());
  for (std::uint64_t linear = 0; linear < array.count(); ++linear) {
    for (std::int64_t i : delinearize(array.dims(), linear)) out << i << ',';
    const std::string cell = format_element(array.elem(), array.payload().subspan(linear * w, w));
    // Complex cells contain a comma and are quoted.
    if (is_complex(array.elem())) {
      out << '"' << cell << '"';
    } else {
      out << cell;
    }
    out << '\n';
  }
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (char c : line) {
    if (c == '"') {
      quoted = !quoted;
    } else if (c == ',' && !quoted) {
      fields.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  fields.push_back(cur);
  return fields;
}

std::int64_t parse_index(const std::string& field, std::size_t line_no) {
  std::int64_t v = 0;
  const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
  if (res.ec != std::errc() || res.ptr != field.data() + field.size()) {
    fail(ErrorCode::kParse, "line " + std::to_string(line_no) + ": invalid index '" +
                                field + "'");
  }
  return v;
}

}  // namespace

ArrayBlob read_csv(std::istream& in, ElementType elem, const Dims& dims,
                   MissingCellPolicy policy) {
  std::string line;
  if (!std::getline(in, line)) fail(ErrorCode::kParse, "missing CSV header row");
  const auto header = split_csv_line(line);
  if (header.size() < 2 || header.back() != "value") {
    fail(ErrorCode::kParse, "CSV header must be i_0,...,i_{r-1},value");
  }
  const std::size_t rank = header.size() - 1;
  if (!dims.empty() && dims.size() != rank) {
    fail(ErrorCode::kShape, "CSV has " + std::to_string(rank) +
                                " index columns but dims has rank " +
                                std::to_string(dims.size()));
  }

  std::vector<IndexedValue> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != rank + 1) {
      fail(ErrorCode::kParse, "line " + std::to_string(line_no) + ": expected " +
                                  std::to_string(rank + 1) + " fields");
    }
    IndexedValue row;
    row.indices.resize(rank);
    for (std::size_t d = 0; d < rank; ++d) row.indices[d] = parse_index(fields[d], line_no);
    // Reuse the text codec for the value so every spelling it accepts works here.
    const ArrayBlob cell = from_text(elem, "{" + fields[rank] + "}");
    if (cell.count() != 1) {
      fail(ErrorCode::kParse, "line " + std::to_string(line_no) + ": invalid value");
    }
    row.value = cell.load(0);
    rows.push_back(std::move(row));
  }

  Dims target = dims;
  if (target.empty()) {
    std::vector<std::int64_t> extent(rank, 0);
    for (const auto& row : rows) {
      for (std::size_t d = 0; d < rank; ++d) {
        if (row.indices[d] < 0) {
          fail(ErrorCode::kBounds, "negative index in dimension " + std::to_string(d));
        }
        extent[d] = std::max(extent[d], row.indices[d] + 1);
      }
    }
    target = to_dims(extent);
  }

  ConcatState state(elem, target, policy);
  for (const auto& row : rows) state.accumulate(row);
  return state.finish();
}

}  // namespace sciarray
