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

// Array manipulation. Every operation is a pure function: inputs are never
// modified and results are fresh blobs. Values passed to constructors are
// taken in storage (column-major) order, so make_matrix(2, 2, {a, b, c, d})
// yields m[0,0]=a, m[1,0]=b, m[0,1]=c, m[1,1]=d.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sciarray/array_blob.hpp"
#include "sciarray/block_reader.hpp"

namespace sciarray {

struct SubarrayRange {
  std::vector<std::int64_t> offset;
  std::vector<std::int64_t> length;
};

enum class ConversionPolicy { kStrict, kSaturate };

// Construction

ArrayBlob make_array(ElementType elem, std::span<const std::uint32_t> dims,
                     std::span<const Scalar> values);
ArrayBlob make_vector(ElementType elem, std::span<const Scalar> values);
ArrayBlob make_matrix(ElementType elem, std::uint32_t rows, std::uint32_t cols,
                      std::span<const Scalar> values);
ArrayBlob make_filled(ElementType elem, std::span<const std::uint32_t> dims,
                      const Scalar& fill);

/// Typed convenience for in-memory buffers, e.g. make_vector<double>(v).
template <typename T>
ArrayBlob make_vector(ElementType elem, std::span<const T> values) {
  std::vector<Scalar> scalars;
  scalars.reserve(values.size());
  for (const T& v : values) scalars.emplace_back(v);
  return make_vector(elem, std::span<const Scalar>(scalars));
}

/// Header for a freshly built array; storage from classify().
ArrayHeader classified_header(ElementType elem, std::span<const std::uint32_t> dims);

/// Converts signed extents from callers into validated Dims.
Dims to_dims(std::span<const std::int64_t> extents);

// Element access

Scalar item(const ArrayView& array, std::span<const std::int64_t> indices);
/// Reads one element through the reader: the header plus one element width.
Scalar item_streamed(BlockReader& reader, std::span<const std::int64_t> indices);
ArrayBlob update_item(const ArrayView& array, std::span<const std::int64_t> indices,
                      const Scalar& value);

// Slicing and shape

ArrayBlob subarray(const ArrayView& array, const SubarrayRange& range, bool squeeze);
/// Same result as subarray() on the materialized blob, issuing one read per
/// maximal run of consecutive payload elements.
ArrayBlob subarray_streamed(BlockReader& reader, const SubarrayRange& range,
                            bool squeeze);
ArrayBlob reshape(const ArrayView& array, std::span<const std::uint32_t> new_dims);

// Raw payload and conversions

ArrayBlob cast_raw(ElementType elem, std::span<const std::uint32_t> dims,
                   std::span<const std::byte> raw);
std::span<const std::byte> raw(const ArrayView& array);

ArrayBlob convert_elem(const ArrayView& array, ElementType target,
                       ConversionPolicy policy);
ArrayBlob convert_storage(const ArrayView& array, StorageClass target);

/// Number of contiguous payload runs a streamed subarray read issues.
std::uint64_t subarray_run_count(std::span<const std::uint32_t> dims,
                                 const SubarrayRange& range);

}  // namespace sciarray
