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

// Blob header layout.
//
// Short (fixed 24 bytes):
//   [0]      flags, bit0 = 0
//   [1]      element code
//   [2]      rank (1..6)
//   [3]      reserved, 0
//   [4..7]   element count, u32 LE
//   [8..19]  six u16 LE dimension sizes, unused trailing slots 0
//   [20..23] reserved, 0
//
// Max (16 + 4 * rank bytes):
//   [0]      flags, bit0 = 1
//   [1]      element code
//   [2..3]   reserved, 0
//   [4..7]   rank, u32 LE (1..32)
//   [8..15]  element count, u64 LE
//   [16..]   rank u32 LE dimension sizes
//
// The payload follows immediately, elements in column-major order. Reserved
// bytes are written as zero and ignored when decoding.

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sciarray/element_type.hpp"

namespace sciarray {

class BlockReader;

enum class StorageClass : std::uint8_t { kShort = 0, kMax = 1 };

using Dims = std::vector<std::uint32_t>;
using Bytes = std::vector<std::byte>;

inline constexpr std::size_t kShortHeaderSize = 24;
inline constexpr std::size_t kMaxHeaderFixedSize = 16;
inline constexpr std::size_t kShortBlobLimit = 8000;
inline constexpr std::size_t kShortMaxRank = 6;
inline constexpr std::uint32_t kShortMaxDim = 32767;
inline constexpr std::size_t kMaxMaxRank = 32;
inline constexpr std::uint32_t kMaxMaxDim = 2147483647u;

struct ArrayHeader {
  StorageClass storage = StorageClass::kShort;
  ElementType elem = ElementType::kFloat64;
  Dims dims;

  std::size_t rank() const noexcept { return dims.size(); }
  /// Product of dims. Callers must have validated the header (see validate()).
  std::uint64_t total_count() const noexcept;
  std::uint64_t payload_size() const noexcept {
    return total_count() * byte_width(elem);
  }
  std::size_t encoded_size() const noexcept {
    return encoded_header_size(storage, rank());
  }

  /// Throws Error if the header violates its storage-class rules.
  void validate() const;

  static std::size_t encoded_header_size(StorageClass storage,
                                         std::size_t rank) noexcept {
    return storage == StorageClass::kShort ? kShortHeaderSize
                                           : kMaxHeaderFixedSize + 4 * rank;
  }

  friend bool operator==(const ArrayHeader&, const ArrayHeader&) = default;
};

Bytes encode_header(const ArrayHeader& header);
void encode_header_into(const ArrayHeader& header, std::span<std::byte> out);

/// Decodes the header at the start of `bytes`. Only the header bytes are
/// inspected; `bytes` may extend past the header.
ArrayHeader decode_header(std::span<const std::byte> bytes);

/// Decodes the header through a reader, touching at most the header bytes.
ArrayHeader decode_header(BlockReader& reader);

/// Short when the whole blob fits the on-page limit and the short rank and
/// dimension limits hold; Max otherwise.
StorageClass classify(ElementType elem, std::span<const std::uint32_t> dims) noexcept;

/// Reason the short storage class cannot hold the shape, or nullptr if it can.
const char* short_class_violation(ElementType elem,
                                  std::span<const std::uint32_t> dims) noexcept;

/// Column-major strides: stride[0] = 1, stride[d] = prod(dims[0..d)).
std::vector<std::uint64_t> column_major_strides(std::span<const std::uint32_t> dims);

/// Column-major linear index. Throws kShape on rank mismatch and kBounds
/// naming the dimension for an index outside [0, dims[d]).
std::uint64_t linearize(std::span<const std::uint32_t> dims,
                        std::span<const std::int64_t> indices);

/// Inverse of linearize.
std::vector<std::int64_t> delinearize(std::span<const std::uint32_t> dims,
                                      std::uint64_t linear);

/// Product of dims with overflow detection; nullopt-like false on overflow.
bool checked_product(std::span<const std::uint32_t> dims, std::uint64_t& out) noexcept;

}  // namespace sciarray
