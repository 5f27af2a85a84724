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

#include <stdexcept>
#include <string>
#include <string_view>

namespace sciarray {

/// Error categories. The numeric values are shared with the C API status
/// codes in sciarray.h and must not be reordered.
enum class ErrorCode : int {
  kOk = 0,
  kFormat = 1,              // malformed blob or header
  kUnknownElementType = 2,  // element code outside 1..8
  kInvalidRank = 3,         // rank 0 or above the storage-class cap
  kOverflow = 4,            // element count or byte size overflows
  kTruncated = 5,           // source shorter than the encoded blob
  kCountMismatch = 6,       // stored element count disagrees with dims
  kCapacity = 7,            // short storage-class limits violated
  kBounds = 8,
  kShape = 9,
  kRange = 10,              // value not representable in element type
  kTypeMismatch = 11,
  kConflict = 12,           // duplicate cell during concat
  kCoverage = 13,           // strict concat finished with missing cells
  kParse = 14,
  kNumerical = 15,
  kLookup = 16,
  kUnsupported = 17,
  kBackendRejected = 18,
  kIo = 19,
  kSql = 20,
  kInvalidArgument = 21,
};

std::string_view error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace sciarray
