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

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <variant>

#include "sciarray/header.hpp"

namespace sciarray {

/// A single element value. Integers travel as int64, real floats as double
/// and complex values as complex<double> regardless of the stored width.
using Scalar = std::variant<std::int64_t, double, std::complex<double>>;

std::string scalar_to_string(const Scalar& value);

/// Non-owning, validated view of an encoded blob.
class ArrayView {
 public:
  ArrayView() = default;

  /// Validates the header and checks that `bytes` is exactly header + payload.
  static ArrayView parse(std::span<const std::byte> bytes);

  const ArrayHeader& header() const noexcept { return header_; }
  ElementType elem() const noexcept { return header_.elem; }
  StorageClass storage() const noexcept { return header_.storage; }
  const Dims& dims() const noexcept { return header_.dims; }
  std::size_t rank() const noexcept { return header_.dims.size(); }
  std::uint64_t count() const noexcept { return count_; }

  std::span<const std::byte> bytes() const noexcept { return bytes_; }
  std::span<const std::byte> payload() const noexcept {
    return bytes_.subspan(header_.encoded_size());
  }
  std::span<const std::byte> element_bytes(std::uint64_t linear) const noexcept {
    const auto w = byte_width(header_.elem);
    return payload().subspan(linear * w, w);
  }

  Scalar load(std::uint64_t linear) const;

 private:
  friend class ArrayBlob;

  ArrayHeader header_;
  std::uint64_t count_ = 0;
  std::span<const std::byte> bytes_;
};

/// Immutable, owning blob: header followed by the column-major payload.
class ArrayBlob {
 public:
  ArrayBlob() = default;
  ArrayBlob(const ArrayBlob& other);
  ArrayBlob(ArrayBlob&& other) noexcept;
  ArrayBlob& operator=(const ArrayBlob& other);
  ArrayBlob& operator=(ArrayBlob&& other) noexcept;
  ~ArrayBlob() = default;

  /// Adopts encoded bytes after validating them.
  static ArrayBlob from_bytes(Bytes bytes);
  static ArrayBlob from_bytes(std::span<const std::byte> bytes);
  /// Prefixes `payload` with the encoded header. Sizes must agree.
  static ArrayBlob assemble(const ArrayHeader& header,
                            std::span<const std::byte> payload);

  ArrayView view() const noexcept { return view_; }
  operator ArrayView() const noexcept { return view_; }  // NOLINT

  const ArrayHeader& header() const noexcept { return view_.header(); }
  ElementType elem() const noexcept { return view_.elem(); }
  StorageClass storage() const noexcept { return view_.storage(); }
  const Dims& dims() const noexcept { return view_.dims(); }
  std::size_t rank() const noexcept { return view_.rank(); }
  std::uint64_t count() const noexcept { return view_.count(); }
  std::span<const std::byte> bytes() const noexcept { return view_.bytes(); }
  std::span<const std::byte> payload() const noexcept { return view_.payload(); }

  Scalar load(std::uint64_t linear) const { return view_.load(linear); }

  friend bool operator==(const ArrayBlob& a, const ArrayBlob& b) noexcept {
    return a.bytes_ == b.bytes_;
  }

 private:
  explicit ArrayBlob(Bytes bytes);
  void rebind(const ArrayView& parsed) noexcept;

  Bytes bytes_;
  ArrayView view_;
};

// Element codec. Multi-byte values are little-endian.

Scalar load_element(ElementType elem, std::span<const std::byte> src);

/// Stores `value` into `dst` (byte_width(elem) bytes). Integers must fit
/// exactly; real floats accept any real value, rounding to nearest, but reject
/// finite values outside the target range. Complex into real is kTypeMismatch.
void store_element(ElementType elem, const Scalar& value, std::span<std::byte> dst);

/// Throws kTypeMismatch unless the blob holds `expected` elements.
void require_element_type(const ArrayView& view, ElementType expected);

Bytes read_file(const std::string& path);
void write_file(const std::string& path, std::span<const std::byte> bytes);

}  // namespace sciarray
