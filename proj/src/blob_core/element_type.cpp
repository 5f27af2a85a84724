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

#include "sciarray/element_type.hpp"

#include "sciarray/error.hpp"

namespace sciarray {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kOk: return "ok";
    case ErrorCode::kFormat: return "format error";
    case ErrorCode::kUnknownElementType: return "unknown element type";
    case ErrorCode::kInvalidRank: return "invalid rank";
    case ErrorCode::kOverflow: return "size overflow";
    case ErrorCode::kTruncated: return "truncated input";
    case ErrorCode::kCountMismatch: return "element count mismatch";
    case ErrorCode::kCapacity: return "capacity exceeded";
    case ErrorCode::kBounds: return "index out of bounds";
    case ErrorCode::kShape: return "shape error";
    case ErrorCode::kRange: return "value out of range";
    case ErrorCode::kTypeMismatch: return "type mismatch";
    case ErrorCode::kConflict: return "duplicate cell";
    case ErrorCode::kCoverage: return "incomplete coverage";
    case ErrorCode::kParse: return "parse error";
    case ErrorCode::kNumerical: return "numerical failure";
    case ErrorCode::kLookup: return "lookup failure";
    case ErrorCode::kUnsupported: return "unsupported operation";
    case ErrorCode::kBackendRejected: return "backend rejected";
    case ErrorCode::kIo: return "i/o error";
    case ErrorCode::kSql: return "sql error";
    case ErrorCode::kInvalidArgument: return "invalid argument";
  }
  return "unknown error";
}

std::optional<ElementType> element_type_from_code(std::uint8_t code) noexcept {
  if (code < 1 || code > 8) return std::nullopt;
  return static_cast<ElementType>(code);
}

std::string_view element_type_name(ElementType t) noexcept {
  switch (t) {
    case ElementType::kInt8: return "i8";
    case ElementType::kInt16: return "i16";
    case ElementType::kInt32: return "i32";
    case ElementType::kInt64: return "i64";
    case ElementType::kFloat32: return "f32";
    case ElementType::kFloat64: return "f64";
    case ElementType::kComplexFloat32: return "c64";
    case ElementType::kComplexFloat64: return "c128";
  }
  return "?";
}

std::optional<ElementType> parse_element_type(std::string_view name) noexcept {
  for (ElementType t : kAllElementTypes) {
    if (element_type_name(t) == name) return t;
  }
  return std::nullopt;
}

}  // namespace sciarray
