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

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

namespace sciarray {

/// Element kinds. The enumerator value is the code stored in byte 1 of every
/// blob header.
enum class ElementType : std::uint8_t {
  kInt8 = 1,
  kInt16 = 2,
  kInt32 = 3,
  kInt64 = 4,
  kFloat32 = 5,
  kFloat64 = 6,
  kComplexFloat32 = 7,  // interleaved (re, im) float pairs
  kComplexFloat64 = 8,  // interleaved (re, im) double pairs
};

inline constexpr std::array<ElementType, 8> kAllElementTypes = {
    ElementType::kInt8,           ElementType::kInt16,
    ElementType::kInt32,          ElementType::kInt64,
    ElementType::kFloat32,        ElementType::kFloat64,
    ElementType::kComplexFloat32, ElementType::kComplexFloat64,
};

constexpr std::size_t byte_width(ElementType t) noexcept {
  switch (t) {
    case ElementType::kInt8: return 1;
    case ElementType::kInt16: return 2;
    case ElementType::kInt32: return 4;
    case ElementType::kInt64: return 8;
    case ElementType::kFloat32: return 4;
    case ElementType::kFloat64: return 8;
    case ElementType::kComplexFloat32: return 8;
    case ElementType::kComplexFloat64: return 16;
  }
  return 0;
}

constexpr bool is_integer(ElementType t) noexcept {
  return t == ElementType::kInt8 || t == ElementType::kInt16 ||
         t == ElementType::kInt32 || t == ElementType::kInt64;
}

constexpr bool is_complex(ElementType t) noexcept {
  return t == ElementType::kComplexFloat32 || t == ElementType::kComplexFloat64;
}

/// Real floating point (Float32 or Float64).
constexpr bool is_real_float(ElementType t) noexcept {
  return t == ElementType::kFloat32 || t == ElementType::kFloat64;
}

constexpr std::uint8_t element_code(ElementType t) noexcept {
  return static_cast<std::uint8_t>(t);
}

std::optional<ElementType> element_type_from_code(std::uint8_t code) noexcept;

/// Short names used on the command line: i8 i16 i32 i64 f32 f64 c64 c128.
std::string_view element_type_name(ElementType t) noexcept;
std::optional<ElementType> parse_element_type(std::string_view name) noexcept;

/// Width of one real component: the element width for real types, half of it
/// for complex ones.
constexpr std::size_t component_width(ElementType t) noexcept {
  return is_complex(t) ? byte_width(t) / 2 : byte_width(t);
}

/// Complex type with the same component width, or the input if already complex.
constexpr ElementType complex_counterpart(ElementType t) noexcept {
  switch (t) {
    case ElementType::kFloat32:
    case ElementType::kComplexFloat32:
      return ElementType::kComplexFloat32;
    default:
      return ElementType::kComplexFloat64;
  }
}

}  // namespace sciarray
