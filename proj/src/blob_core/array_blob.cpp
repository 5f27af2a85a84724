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

#include "sciarray/array_blob.hpp"

#include <cfloat>
#include <cmath>
#include <fstream>
#include <iterator>
#include <limits>
#include <sstream>

#include "sciarray/error.hpp"
#include "../internal/little_endian.hpp"

namespace sciarray {

using detail::load_le;
using detail::store_le;
using detail::narrow_float;
using detail::widen_float;

ArrayView ArrayView::parse(std::span<const std::byte> bytes) {
  ArrayView v;
  v.header_ = decode_header(bytes);
  v.count_ = v.header_.total_count();
  const std::uint64_t expected = v.header_.encoded_size() + v.header_.payload_size();
  if (bytes.size() < expected) {
    fail(ErrorCode::kTruncated, "blob has " + std::to_string(bytes.size()) +
                                    " bytes, header requires " + std::to_string(expected));
  }
  if (bytes.size() > expected) {
    fail(ErrorCode::kFormat, "blob has " + std::to_string(bytes.size() - expected) +
                                 " trailing bytes after the payload");
  }
  v.bytes_ = bytes;
  return v;
}

Scalar ArrayView::load(std::uint64_t linear) const {
  return load_element(header_.elem, element_bytes(linear));
}

ArrayBlob::ArrayBlob(Bytes bytes) : bytes_(std::move(bytes)) {
  view_ = ArrayView::parse(bytes_);
}

ArrayBlob::ArrayBlob(const ArrayBlob& other) : bytes_(other.bytes_) {
  rebind(other.view_);
}

ArrayBlob::ArrayBlob(ArrayBlob&& other) noexcept : bytes_(std::move(other.bytes_)) {
  rebind(other.view_);
  other.view_ = ArrayView();
}

ArrayBlob& ArrayBlob::operator=(const ArrayBlob& other) {
  if (this != &other) {
    bytes_ = other.bytes_;
    rebind(other.view_);
  }
  return *this;
}

ArrayBlob& ArrayBlob::operator=(ArrayBlob&& other) noexcept {
  if (this != &other) {
    bytes_ = std::move(other.bytes_);
    rebind(other.view_);
    other.view_ = ArrayView();
  }
  return *this;
}

void ArrayBlob::rebind(const ArrayView& parsed) noexcept {
  view_.header_ = parsed.header_;
  view_.count_ = parsed.count_;
  view_.bytes_ = bytes_;
}

ArrayBlob ArrayBlob::from_bytes(Bytes bytes) { return ArrayBlob(std::move(bytes)); }

ArrayBlob ArrayBlob::from_bytes(std::span<const std::byte> bytes) {
  return ArrayBlob(Bytes(bytes.begin(), bytes.end()));
}

ArrayBlob ArrayBlob::assemble(const ArrayHeader& header,
                              std::span<const std::byte> payload) {
  header.validate();
  if (payload.size() != header.payload_size()) {
    fail(ErrorCode::kFormat, "payload has " + std::to_string(payload.size()) +
                                 " bytes, header requires " +
                                 std::to_string(header.payload_size()));
  }
  Bytes bytes(header.encoded_size() + payload.size());
  encode_header_into(header, bytes);
  std::copy(payload.begin(), payload.end(),
            bytes.begin() + static_cast<std::ptrdiff_t>(header.encoded_size()));
  ArrayBlob blob;
  blob.bytes_ = std::move(bytes);
  ArrayView parsed;
  parsed.header_ = header;
  parsed.count_ = header.total_count();
  blob.rebind(parsed);
  return blob;
}

Scalar load_element(ElementType elem, std::span<const std::byte> src) {
  const std::byte* p = src.data();
  switch (elem) {
    case ElementType::kInt8: return std::int64_t{load_le<std::int8_t>(p)};
    case ElementType::kInt16: return std::int64_t{load_le<std::int16_t>(p)};
    case ElementType::kInt32: return std::int64_t{load_le<std::int32_t>(p)};
    case ElementType::kInt64: return load_le<std::int64_t>(p);
    case ElementType::kFloat32: return widen_float(load_le<float>(p));
    case ElementType::kFloat64: return load_le<double>(p);
    case ElementType::kComplexFloat32:
      return std::complex<double>(widen_float(load_le<float>(p)),
                                  widen_float(load_le<float>(p + 4)));
    case ElementType::kComplexFloat64:
      return std::complex<double>(load_le<double>(p), load_le<double>(p + 8));
  }
  fail(ErrorCode::kUnknownElementType, "unknown element type");
}

namespace {

std::int64_t exact_integer(const Scalar& value, std::int64_t lo, std::int64_t hi,
                           ElementType elem) {
  std::int64_t v = 0;
  if (const auto* i = std::get_if<std::int64_t>(&value)) {
    v = *i;
  } else if (const auto* d = std::get_if<double>(&value)) {
    // 2^63 is exactly representable; anything at or above it cannot fit.
    if (!std::isfinite(*d) || *d != std::trunc(*d) || *d < -9223372036854775808.0 ||
        *d >= 9223372036854775808.0) {
      fail(ErrorCode::kRange, "value " + scalar_to_string(value) +
                                  " is not representable as " +
                                  std::string(element_type_name(elem)));
    }
    v = static_cast<std::int64_t>(*d);
  } else {
    fail(ErrorCode::kTypeMismatch, "cannot store a complex value in an " +
                                       std::string(element_type_name(elem)) + " array");
  }
  if (v < lo || v > hi) {
    fail(ErrorCode::kRange, "value " + std::to_string(v) + " is not representable as " +
                                std::string(element_type_name(elem)));
  }
  return v;
}

double real_component(double x, ElementType component) {
  if (component == ElementType::kFloat32 && std::isfinite(x) &&
      std::fabs(x) > static_cast<double>(FLT_MAX)) {
    fail(ErrorCode::kRange, "value " + scalar_to_string(Scalar{x}) +
                                " overflows a 32-bit float");
  }
  return x;
}

double as_real(const Scalar& value, ElementType elem) {
  if (const auto* i = std::get_if<std::int64_t>(&value)) return static_cast<double>(*i);
  if (const auto* d = std::get_if<double>(&value)) return *d;
  fail(ErrorCode::kTypeMismatch, "cannot store a complex value in an " +
                                     std::string(element_type_name(elem)) + " array");
}

}  // namespace

void store_element(ElementType elem, const Scalar& value, std::span<std::byte> dst) {
  std::byte* p = dst.data();
  switch (elem) {
    case ElementType::kInt8:
      store_le<std::int8_t>(p, static_cast<std::int8_t>(
                                   exact_integer(value, INT8_MIN, INT8_MAX, elem)));
      return;
    case ElementType::kInt16:
      store_le<std::int16_t>(p, static_cast<std::int16_t>(
                                    exact_integer(value, INT16_MIN, INT16_MAX, elem)));
      return;
    case ElementType::kInt32:
      store_le<std::int32_t>(p, static_cast<std::int32_t>(
                                    exact_integer(value, INT32_MIN, INT32_MAX, elem)));
      return;
    case ElementType::kInt64:
      store_le<std::int64_t>(p, exact_integer(value, INT64_MIN, INT64_MAX, elem));
      return;
    case ElementType::kFloat32:
      store_le<float>(p, narrow_float(
                             real_component(as_real(value, elem), ElementType::kFloat32)));
      return;
    case ElementType::kFloat64:
      store_le<double>(p, as_real(value, elem));
      return;
    case ElementType::kComplexFloat32:
    case ElementType::kComplexFloat64: {
      std::complex<double> z;
      if (const auto* c = std::get_if<std::complex<double>>(&value)) {
        z = *c;
      } else {
        z = {as_real(value, elem), 0.0};
      }
      if (elem == ElementType::kComplexFloat32) {
        store_le<float>(p, narrow_float(real_component(z.real(), ElementType::kFloat32)));
        store_le<float>(p + 4,
                        narrow_float(real_component(z.imag(), ElementType::kFloat32)));
      } else {
        store_le<double>(p, z.real());
        store_le<double>(p + 8, z.imag());
      }
      return;
    }
  }
  fail(ErrorCode::kUnknownElementType, "unknown element type");
}

void require_element_type(const ArrayView& view, ElementType expected) {
  if (view.elem() != expected) {
    fail(ErrorCode::kTypeMismatch,
         "type mismatch: expected " + std::string(element_type_name(expected)) +
             " array, got " + std::string(element_type_name(view.elem())) + " array");
  }
}

std::string scalar_to_string(const Scalar& value) {
  std::ostringstream os;
  os.precision(std::numeric_limits<double>::max_digits10);
  if (const auto* i = std::get_if<std::int64_t>(&value)) {
    os << *i;
  } else if (const auto* d = std::get_if<double>(&value)) {
    os << *d;
  } else {
    const auto& z = std::get<std::complex<double>>(value);
    os << '(' << z.real() << ',' << z.imag() << ')';
  }
  return os.str();
}

Bytes read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kIo, "cannot open " + path + ": file not found or unreadable");
  Bytes out;
  in.seekg(0, std::ios::end);
  const auto size = in.tellg();
  in.seekg(0, std::ios::beg);
  out.resize(static_cast<std::size_t>(size));
  if (size > 0 && !in.read(reinterpret_cast<char*>(out.data()), size)) {
    fail(ErrorCode::kIo, "failed reading " + path);
  }
  return out;
}

void write_file(const std::string& path, std::span<const std::byte> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::kIo, "cannot create " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) fail(ErrorCode::kIo, "failed writing " + path);
}

}  // namespace sciarray
