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

#include "sciarray/header.hpp"

#include <algorithm>
#include <array>
#include <string>

#include "sciarray/block_reader.hpp"
#include "sciarray/error.hpp"
#include "../internal/little_endian.hpp"

namespace sciarray {

using detail::load_le;
using detail::store_le;

namespace {

constexpr std::uint8_t kFlagMax = 0x01;

}  // namespace

bool checked_product(std::span<const std::uint32_t> dims, std::uint64_t& out) noexcept {
  std::uint64_t acc = 1;
  bool zero = false;
  bool overflow = false;
  for (std::uint32_t d : dims) {
    if (d == 0) zero = true;
    if (!overflow && d != 0 && acc > UINT64_MAX / d) overflow = true;
    if (!overflow) acc *= d;
  }
  // A zero extent makes the product exactly zero even if other factors are huge.
  if (zero) {
    out = 0;
    return true;
  }
  out = acc;
  return !overflow;
}

std::uint64_t ArrayHeader::total_count() const noexcept {
  std::uint64_t n = 0;
  checked_product(dims, n);
  return n;
}

const char* short_class_violation(ElementType elem,
                                  std::span<const std::uint32_t> dims) noexcept {
  if (dims.empty()) return "rank must be at least 1";
  if (dims.size() > kShortMaxRank) return "short arrays allow at most 6 dimensions";
  for (std::uint32_t d : dims) {
    if (d > kShortMaxDim) return "short array dimension exceeds 32767";
  }
  std::uint64_t count = 0;
  if (!checked_product(dims, count)) return "element count overflows";
  const std::uint64_t w = byte_width(elem);
  if (count > (kShortBlobLimit - kShortHeaderSize) / w) {
    return "short blob would exceed 8000 bytes";
  }
  return nullptr;
}

StorageClass classify(ElementType elem, std::span<const std::uint32_t> dims) noexcept {
  return short_class_violation(elem, dims) == nullptr ? StorageClass::kShort
                                                      : StorageClass::kMax;
}

void ArrayHeader::validate() const {
  if (!element_type_from_code(element_code(elem))) {
    fail(ErrorCode::kUnknownElementType,
         "unknown element type code " + std::to_string(element_code(elem)));
  }
  if (dims.empty()) fail(ErrorCode::kInvalidRank, "rank must be at least 1");
  if (storage == StorageClass::kShort) {
    if (dims.size() > kShortMaxRank) {
      fail(ErrorCode::kInvalidRank, "short array rank " + std::to_string(dims.size()) +
                                        " exceeds 6");
    }
    for (std::size_t d = 0; d < dims.size(); ++d) {
      if (dims[d] > kShortMaxDim) {
        fail(ErrorCode::kCapacity, "short array dimension " + std::to_string(d) +
                                       " size " + std::to_string(dims[d]) +
                                       " exceeds 32767");
      }
    }
    if (short_class_violation(elem, dims) != nullptr) {
      fail(ErrorCode::kCapacity, "short blob would exceed 8000 bytes");
    }
    return;
  }
  if (dims.size() > kMaxMaxRank) {
    fail(ErrorCode::kInvalidRank,
         "max array rank " + std::to_string(dims.size()) + " exceeds 32");
  }
  for (std::size_t d = 0; d < dims.size(); ++d) {
    if (dims[d] > kMaxMaxDim) {
      fail(ErrorCode::kCapacity, "max array dimension " + std::to_string(d) +
                                     " exceeds 2147483647");
    }
  }
  std::uint64_t count = 0;
  if (!checked_product(dims, count) || count > UINT64_MAX / byte_width(elem)) {
    fail(ErrorCode::kOverflow, "element count overflows 64 bits");
  }
}

void encode_header_into(const ArrayHeader& header, std::span<std::byte> out) {
  header.validate();
  const std::size_t size = header.encoded_size();
  if (out.size() < size) fail(ErrorCode::kInvalidArgument, "header buffer too small");
  std::fill(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(size), std::byte{0});
  std::byte* p = out.data();
  p[1] = std::byte{element_code(header.elem)};
  if (header.storage == StorageClass::kShort) {
    p[0] = std::byte{0};
    p[2] = std::byte{static_cast<std::uint8_t>(header.rank())};
    store_le<std::uint32_t>(p + 4, static_cast<std::uint32_t>(header.total_count()));
    for (std::size_t d = 0; d < header.rank(); ++d) {
      store_le<std::uint16_t>(p + 8 + 2 * d, static_cast<std::uint16_t>(header.dims[d]));
    }
  } else {
    p[0] = std::byte{kFlagMax};
    store_le<std::uint32_t>(p + 4, static_cast<std::uint32_t>(header.rank()));
    store_le<std::uint64_t>(p + 8, header.total_count());
    for (std::size_t d = 0; d < header.rank(); ++d) {
      store_le<std::uint32_t>(p + 16 + 4 * d, header.dims[d]);
    }
  }
}

Bytes encode_header(const ArrayHeader& header) {
  header.validate();
  Bytes out(header.encoded_size());
  encode_header_into(header, out);
  return out;
}

namespace {

// Decodes given the first 8 bytes and a callback fetching the remainder.
template <typename FetchRest>
ArrayHeader decode_with(std::span<const std::byte, 8> head, FetchRest&& fetch_rest) {
  ArrayHeader h;
  const auto flags = std::to_integer<std::uint8_t>(head[0]);
  const auto code = std::to_integer<std::uint8_t>(head[1]);
  const auto elem = element_type_from_code(code);
  if (!elem) {
    fail(ErrorCode::kUnknownElementType,
         "unknown element type code " + std::to_string(code));
  }
  h.elem = *elem;
  h.storage = (flags & kFlagMax) ? StorageClass::kMax : StorageClass::kShort;

  std::uint64_t stored_count = 0;
  if (h.storage == StorageClass::kShort) {
    const std::size_t rank = std::to_integer<std::uint8_t>(head[2]);
    if (rank == 0) fail(ErrorCode::kInvalidRank, "rank must be at least 1");
    if (rank > kShortMaxRank) {
      fail(ErrorCode::kInvalidRank,
           "short array rank " + std::to_string(rank) + " exceeds 6");
    }
    stored_count = load_le<std::uint32_t>(head.data() + 4);
    std::byte rest[kShortHeaderSize - 8];
    fetch_rest(std::span<std::byte>(rest));
    h.dims.resize(rank);
    for (std::size_t d = 0; d < rank; ++d) {
      h.dims[d] = load_le<std::uint16_t>(rest + 2 * d);
    }
  } else {
    const std::uint32_t rank = load_le<std::uint32_t>(head.data() + 4);
    if (rank == 0) fail(ErrorCode::kInvalidRank, "rank must be at least 1");
    if (rank > kMaxMaxRank) {
      fail(ErrorCode::kInvalidRank,
           "max array rank " + std::to_string(rank) + " exceeds 32");
    }
    Bytes rest(8 + 4 * static_cast<std::size_t>(rank));
    fetch_rest(std::span<std::byte>(rest));
    stored_count = load_le<std::uint64_t>(rest.data());
    h.dims.resize(rank);
    for (std::size_t d = 0; d < rank; ++d) {
      h.dims[d] = load_le<std::uint32_t>(rest.data() + 8 + 4 * d);
    }
  }

  std::uint64_t count = 0;
  if (!checked_product(h.dims, count) || count > UINT64_MAX / byte_width(h.elem)) {
    fail(ErrorCode::kOverflow, "element count overflows 64 bits");
  }
  if (count != stored_count) {
    fail(ErrorCode::kCountMismatch, "header element count " +
                                        std::to_string(stored_count) +
                                        " does not match dimension product " +
                                        std::to_string(count));
  }
  h.validate();
  return h;
}

}  // namespace

ArrayHeader decode_header(std::span<const std::byte> bytes) {
  if (bytes.size() < 8) fail(ErrorCode::kTruncated, "blob shorter than 8 bytes");
  return decode_with(bytes.first<8>(), [&](std::span<std::byte> rest) {
    if (bytes.size() < 8 + rest.size()) {
      fail(ErrorCode::kTruncated, "blob ends inside the header");
    }
    std::copy_n(bytes.begin() + 8, rest.size(), rest.begin());
  });
}

ArrayHeader decode_header(BlockReader& reader) {
  std::array<std::byte, 8> head;
  reader.read_at(0, head);
  return decode_with(std::span<const std::byte, 8>(head),
                     [&](std::span<std::byte> rest) { reader.read_at(8, rest); });
}

std::vector<std::uint64_t> column_major_strides(std::span<const std::uint32_t> dims) {
  std::vector<std::uint64_t> strides(dims.size());
  std::uint64_t s = 1;
  for (std::size_t d = 0; d < dims.size(); ++d) {
    strides[d] = s;
    s *= dims[d];
  }
  return strides;
}

std::uint64_t linearize(std::span<const std::uint32_t> dims,
                        std::span<const std::int64_t> indices) {
  if (indices.size() != dims.size()) {
    fail(ErrorCode::kShape, "expected " + std::to_string(dims.size()) +
                                " indices, got " + std::to_string(indices.size()));
  }
  std::uint64_t linear = 0;
  std::uint64_t stride = 1;
  for (std::size_t d = 0; d < dims.size(); ++d) {
    if (indices[d] < 0 || static_cast<std::uint64_t>(indices[d]) >= dims[d]) {
      fail(ErrorCode::kBounds, "index " + std::to_string(indices[d]) +
                                   " out of bounds for dimension " + std::to_string(d) +
                                   " of size " + std::to_string(dims[d]));
    }
    linear += static_cast<std::uint64_t>(indices[d]) * stride;
    stride *= dims[d];
  }
  return linear;
}

std::vector<std::int64_t> delinearize(std::span<const std::uint32_t> dims,
                                      std::uint64_t linear) {
  std::vector<std::int64_t> idx(dims.size());
  for (std::size_t d = 0; d < dims.size(); ++d) {
    idx[d] = static_cast<std::int64_t>(linear % dims[d]);
    linear /= dims[d];
  }
  return idx;
}

}  // namespace sciarray
