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

#include "sciarray/text_codec.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "sciarray/array_ops.hpp"
#include "sciarray/error.hpp"
#include "../internal/little_endian.hpp"

namespace sciarray {

namespace {

constexpr std::uint32_t kCanonicalNan32 = 0x7fc00000u;
constexpr std::uint64_t kCanonicalNan64 = 0x7ff8000000000000ull;

template <typename F, typename Bits>
void append_real(std::string& out, F value, Bits canonical_nan) {
  if (std::isnan(value)) {
    const auto bits = std::bit_cast<Bits>(value);
    if (bits == canonical_nan) {
      out += "nan";
    } else {
      char buf[32];
      std::snprintf(buf, sizeof buf, "nan(0x%llx)", static_cast<unsigned long long>(bits));
      out += buf;
    }
    return;
  }
  if (std::isinf(value)) {
    out += value < 0 ? "-inf" : "inf";
    return;
  }
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  out.append(buf, res.ptr);
}

void append_element(std::string& out, ElementType elem, const std::byte* p) {
  using detail::load_le;
  switch (elem) {
    case ElementType::kInt8: out += std::to_string(load_le<std::int8_t>(p)); return;
    case ElementType::kInt16: out += std::to_string(load_le<std::int16_t>(p)); return;
    case ElementType::kInt32: out += std::to_string(load_le<std::int32_t>(p)); return;
    case ElementType::kInt64: out += std::to_string(load_le<std::int64_t>(p)); return;
    case ElementType::kFloat32: append_real(out, load_le<float>(p), kCanonicalNan32); return;
    case ElementType::kFloat64: append_real(out, load_le<double>(p), kCanonicalNan64); return;
    case ElementType::kComplexFloat32:
      out += '(';
      append_real(out, load_le<float>(p), kCanonicalNan32);
      out += ',';
      append_real(out, load_le<float>(p + 4), kCanonicalNan32);
      out += ')';
      return;
    case ElementType::kComplexFloat64:
      out += '(';
      append_real(out, load_le<double>(p), kCanonicalNan64);
      out += ',';
      append_real(out, load_le<double>(p + 8), kCanonicalNan64);
      out += ')';
      return;
  }
}

void emit(std::string& out, const ArrayView& a, const std::vector<std::uint64_t>& strides,
          std::size_t dim, std::uint64_t base) {
  const std::size_t w = byte_width(a.elem());
  const auto payload = a.payload();
  out += '{';
  for (std::uint32_t i = 0; i < a.dims()[dim]; ++i) {
    if (i) out += ',';
    if (dim == 0) {
      append_element(out, a.elem(), payload.data() + (base + i) * w);
    } else {
      emit(out, a, strides, dim - 1, base + i * strides[dim]);
    }
  }
  out += '}';
}

class Parser {
 public:
  Parser(ElementType elem, std::string_view text) : elem_(elem), text_(text) {}

  ArrayBlob run() {
    skip_ws();
    Dims shape = parse_list(0);
    skip_ws();
    if (pos_ != text_.size()) error("unexpected trailing characters");
    const ArrayHeader h = classified_header(elem_, shape);
    return ArrayBlob::assemble(h, payload_);
  }

 private:
  [[noreturn]] void error(const std::string& what) const {
    fail(ErrorCode::kParse, "parse error at offset " + std::to_string(pos_) + ": " + what);
  }

  void skip_ws() {
    while (pos_ < text_.size() &&
           (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' ||
            text_[pos_] == '\r')) {
      ++pos_;
    }
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  void expect(char c) {
    if (!peek(c)) error(std::string("expected '") + c + "'");
    ++pos_;
  }

  // Returns dims with dims[0] the innermost extent.
  Dims parse_list(std::size_t depth) {
    if (depth >= kMaxMaxRank) {
      fail(ErrorCode::kInvalidRank, "nesting deeper than 32 dimensions");
    }
    expect('{');
    if (peek('}')) {
      ++pos_;
      return Dims{0};
    }
    if (peek('{')) {
      std::optional<Dims> child_shape;
      std::uint64_t n = 0;
      while (true) {
        const std::size_t at = pos_;
        Dims s = parse_list(depth + 1);
        if (child_shape && s != *child_shape) {
          fail(ErrorCode::kShape, "ragged nesting at offset " + std::to_string(at));
        }
        child_shape = std::move(s);
        ++n;
        if (peek(',')) {
          ++pos_;
          if (!peek('{')) {
            fail(ErrorCode::kShape, "mixed scalars and lists at offset " +
                                        std::to_string(pos_));
          }
          continue;
        }
        expect('}');
        break;
      }
      Dims shape = *child_shape;
      shape.push_back(static_cast<std::uint32_t>(n));
      return shape;
    }
    std::uint64_t n = 0;
    while (true) {
      if (peek('{')) {
        fail(ErrorCode::kShape, "mixed scalars and lists at offset " + std::to_string(pos_));
      }
      parse_scalar();
      ++n;
      if (peek(',')) {
        ++pos_;
        continue;
      }
      expect('}');
      break;
    }
    if (n > kMaxMaxDim) fail(ErrorCode::kCapacity, "list longer than 2147483647");
    return Dims{static_cast<std::uint32_t>(n)};
  }

  std::string_view token() {
    skip_ws();
    const std::size_t start = pos_;
    int paren = 0;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '(') ++paren;
      if (c == ')') {
        if (paren == 0) break;
        --paren;
      }
      if (paren == 0 && (c == ',' || c == '}' || c == ' ' || c == '\t' || c == '\n' ||
                         c == '\r')) {
        break;
      }
      ++pos_;
    }
    if (start == pos_) error("expected a number");
    return text_.substr(start, pos_ - start);
  }

  template <typename F, typename Bits>
  F parse_real(std::size_t at, std::string_view tok) {
    if (tok == "nan") return std::bit_cast<F>(static_cast<Bits>(
        sizeof(F) == 4 ? kCanonicalNan32 : kCanonicalNan64));
    if (tok == "inf" || tok == "+inf") return std::numeric_limits<F>::infinity();
    if (tok == "-inf") return -std::numeric_limits<F>::infinity();
    if (tok.starts_with("nan(0x") && tok.ends_with(")")) {
      const auto hex = tok.substr(6, tok.size() - 7);
      Bits bits = 0;
      const auto res = std::from_chars(hex.data(), hex.data() + hex.size(), bits, 16);
      if (res.ec != std::errc() || res.ptr != hex.data() + hex.size()) {
        pos_ = at;
        error("malformed NaN payload");
      }
      const F v = std::bit_cast<F>(bits);
      if (!std::isnan(v)) {
        pos_ = at;
        error("NaN payload does not encode a NaN");
      }
      return v;
    }
    F v{};
    const char* first = tok.data();
    if (!tok.empty() && tok.front() == '+') ++first;
    const auto res = std::from_chars(first, tok.data() + tok.size(), v,
                                     std::chars_format::general);
    if (res.ec == std::errc::result_out_of_range) {
      fail(ErrorCode::kRange, "value " + std::string(tok) + " at offset " +
                                  std::to_string(at) + " overflows " +
                                  std::string(element_type_name(elem_)));
    }
    if (res.ec != std::errc() || res.ptr != tok.data() + tok.size()) {
      pos_ = at;
      error("invalid number '" + std::string(tok) + "'");
    }
    return v;
  }

  template <typename F, typename Bits>
  void parse_complex_into(std::byte* p) {
    using detail::store_le;
    skip_ws();
    if (peek('(')) {
      ++pos_;
      skip_ws();
      std::size_t at = pos_;
      const F re = parse_real<F, Bits>(at, component_token());
      expect(',');
      skip_ws();
      at = pos_;
      const F im = parse_real<F, Bits>(at, component_token());
      expect(')');
      store_le<F>(p, re);
      store_le<F>(p + sizeof(F), im);
      return;
    }
    const std::size_t at = pos_;
    store_le<F>(p, parse_real<F, Bits>(at, token()));
    store_le<F>(p + sizeof(F), F{0});
  }

  std::string_view component_token() {
    const std::size_t start = pos_;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == ',' || (c == ')' && !within_nan_payload(start))) break;
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r') break;
      ++pos_;
    }
    if (start == pos_) error("expected a number");
    return text_.substr(start, pos_ - start);
  }

  bool within_nan_payload(std::size_t start) const {
    const auto so_far = text_.substr(start, pos_ - start);
    return so_far.starts_with("nan(") && so_far.find(')') == std::string_view::npos;
  }

  void parse_scalar() {
    using detail::store_le;
    const std::size_t w = byte_width(elem_);
    const std::size_t off = payload_.size();
    payload_.resize(off + w);
    std::byte* p = payload_.data() + off;
    skip_ws();
    const std::size_t at = pos_;
    switch (elem_) {
      case ElementType::kFloat32:
        store_le<float>(p, parse_real<float, std::uint32_t>(at, token()));
        return;
      case ElementType::kFloat64:
        store_le<double>(p, parse_real<double, std::uint64_t>(at, token()));
        return;
      case ElementType::kComplexFloat32:
        parse_complex_into<float, std::uint32_t>(p);
        return;
      case ElementType::kComplexFloat64:
        parse_complex_into<double, std::uint64_t>(p);
        return;
      default:
        break;
    }
    const auto tok = token();
    std::int64_t v = 0;
    const char* first = tok.data();
    if (!tok.empty() && tok.front() == '+') ++first;
    const auto res = std::from_chars(first, tok.data() + tok.size(), v);
    if (res.ec == std::errc::result_out_of_range) {
      fail(ErrorCode::kRange, "value " + std::string(tok) + " at offset " +
                                  std::to_string(at) + " overflows " +
                                  std::string(element_type_name(elem_)));
    }
    if (res.ec != std::errc() || res.ptr != tok.data() + tok.size()) {
      pos_ = at;
      error("invalid integer '" + std::string(tok) + "'");
    }
    store_element(elem_, Scalar{v}, std::span<std::byte>(p, w));
  }

  ElementType elem_;
  std::string_view text_;
  std::size_t pos_ = 0;
  Bytes payload_;
};

}  // namespace

std::string to_text(const ArrayView& array) {
  std::string out;
  emit(out, array, column_major_strides(array.dims()), array.rank() - 1, 0);
  return out;
}

ArrayBlob from_text(ElementType elem, std::string_view text) {
  return Parser(elem, text).run();
}

std::string format_element(ElementType elem, std::span<const std::byte> cell) {
  std::string out;
  append_element(out, elem, cell.data());
  return out;
}

}  // namespace sciarray
