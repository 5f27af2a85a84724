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

// Text form of arrays: nested braces, one nesting level per dimension. The
// innermost braces run along dimension 0 and the outermost list is indexed by
// the last dimension, so the listing order is the column-major storage order.
//
//   array   := '{' [ scalars | arrays ] '}'
//   scalars := scalar (',' scalar)*
//   arrays  := array (',' array)*        siblings must share one shape
//   scalar  := integer | real | '(' real ',' real ')'
//   real    := decimal | 'inf' | '-inf' | 'nan' | 'nan(0x' hex ')'
//
// Reals are written in the shortest form that parses back to the same bits.
// The canonical quiet NaN is spelled "nan"; any other NaN carries its bit
// pattern, so every value round-trips bit-exactly. Whitespace between tokens
// is ignored when parsing.

#pragma once

#include <string>
#include <string_view>

#include "sciarray/array_blob.hpp"

namespace sciarray {

std::string to_text(const ArrayView& array);

/// Parses text into an array of `elem` elements with classified storage.
/// Errors: kParse (with byte offset), kShape for ragged nesting, kRange for
/// values the element type cannot hold.
ArrayBlob from_text(ElementType elem, std::string_view text);

/// Formats one element the way to_text does.
std::string format_element(ElementType elem, std::span<const std::byte> cell);

}  // namespace sciarray
