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

#include <bit>
#include <cstddef>
#include <cstdint>
#include <cstring>
#include <type_traits>

namespace sciarray::detail {

template <typename T>
T byteswap_if_big(T value) noexcept {
  if constexpr (std::endian::native == std::endian::big && sizeof(T) > 1) {
    unsigned char raw[sizeof(T)];
    std::memcpy(raw, &value, sizeof(T));
    for (std::size_t i = 0; i < sizeof(T) / 2; ++i) {
      const unsigned char tmp = raw[i];
      raw[i] = raw[sizeof(T) - 1 - i];
      raw[sizeof(T) - 1 - i] = tmp;
    }
    std::memcpy(&value, raw, sizeof(T));
  }
  return value;
}

template <typename T>
T load_le(const std::byte* src) noexcept {
  static_assert(std::is_trivially_copyable_v<T>);
  T value;
  std::memcpy(&value, src, sizeof(T));
  return byteswap_if_big(value);
}

template <typename T>
void store_le(std::byte* dst, T value) noexcept {
  static_assert(std::is_trivially_copyable_v<T>);
  value = byteswap_if_big(value);
  std::memcpy(dst, &value, sizeof(T));
}

// float <-> double conversions that keep NaN sign and payload bits. Hardware
// conversion would set the quiet bit of a signalling NaN.
inline double widen_float(float f) noexcept {
  const auto bits = std::bit_cast<std::uint32_t>(f);
  if ((bits & 0x7f800000u) != 0x7f800000u || (bits & 0x007fffffu) == 0) {
    return static_cast<double>(f);
  }
  const std::uint64_t sign = static_cast<std::uint64_t>(bits >> 31) << 63;
  const std::uint64_t mantissa = static_cast<std::uint64_t>(bits & 0x007fffffu) << 29;
  return std::bit_cast<double>(sign | 0x7ff0000000000000ull | mantissa);
}

inline float narrow_float(double d) noexcept {
  const auto bits = std::bit_cast<std::uint64_t>(d);
  const std::uint64_t mantissa = bits & 0x000fffffffffffffull;
  if ((bits & 0x7ff0000000000000ull) != 0x7ff0000000000000ull || mantissa == 0) {
    return static_cast<float>(d);
  }
  std::uint32_t m32 = static_cast<std::uint32_t>(mantissa >> 29);
  if (m32 == 0) m32 = 0x00400000u;  // payload only in dropped bits: quiet NaN
  return std::bit_cast<float>(static_cast<std::uint32_t>(bits >> 63) << 31 | 0x7f800000u | m32);
}

}  // namespace sciarray::detail
