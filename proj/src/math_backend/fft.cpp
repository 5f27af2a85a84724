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

#include <cmath>
#include <numbers>
#include <vector>

#include "sciarray/error.hpp"
#include "sciarray/math_backend.hpp"

namespace sciarray::kernels {

namespace {

using cd = std::complex<double>;

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// exp(-2 pi i k / n) for k in [0, n/2).
std::vector<cd> forward_twiddles(std::size_t n) {
  std::vector<cd> w(n / 2);
  for (std::size_t k = 0; k < w.size(); ++k) {
    const double angle = -2.0 * std::numbers::pi * static_cast<double>(k) /
                         static_cast<double>(n);
    w[k] = {std::cos(angle), std::sin(angle)};
  }
  return w;
}

// Iterative radix-2 forward transform; n must be a power of two.
void radix2_forward(std::span<cd> a, const std::vector<cd>& twiddles) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    const std::size_t step = n / len;
    for (std::size_t start = 0; start < n; start += len) {
      for (std::size_t k = 0; k < half; ++k) {
        const cd t = a[start + k + half] * twiddles[k * step];
        a[start + k + half] = a[start + k] - t;
        a[start + k] += t;
      }
    }
  }
}

// Bluestein's chirp-z transform for arbitrary n, forward direction.
void bluestein_forward(std::span<cd> a) {
  const std::size_t n = a.size();
  std::size_t m = 1;
  while (m < 2 * n - 1) m <<= 1;

  // chirp[k] = exp(-i pi k^2 / n); k^2 is reduced mod 2n in integers so the
  // phase stays exact for large k.
  std::vector<cd> chirp(n);
  const std::uint64_t two_n = 2 * static_cast<std::uint64_t>(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::uint64_t k2 = (static_cast<std::uint64_t>(k) * k) % two_n;
    const double angle = -std::numbers::pi * static_cast<double>(k2) /
                         static_cast<double>(n);
    chirp[k] = {std::cos(angle), std::sin(angle)};
  }

  std::vector<cd> x(m, cd{});
  std::vector<cd> y(m, cd{});
  for (std::size_t k = 0; k < n; ++k) x[k] = a[k] * chirp[k];
  y[0] = std::conj(chirp[0]);
  for (std::size_t k = 1; k < n; ++k) {
    y[k] = std::conj(chirp[k]);
    y[m - k] = std::conj(chirp[k]);
  }

  const auto tw = forward_twiddles(m);
  radix2_forward(x, tw);
  radix2_forward(y, tw);
  for (std::size_t i = 0; i < m; ++i) x[i] = std::conj(x[i] * y[i]);
  radix2_forward(x, tw);  // conj(F(conj z)) / m is the inverse transform
  const double scale = 1.0 / static_cast<double>(m);
  for (std::size_t k = 0; k < n; ++k) a[k] = std::conj(x[k]) * scale * chirp[k];
}

void forward_any(std::span<cd> a) {
  const std::size_t n = a.size();
  if (n <= 1) return;
  if (is_power_of_two(n)) {
    radix2_forward(a, forward_twiddles(n));
  } else {
    bluestein_forward(a);
  }
}

}  // namespace

void fft_1d(std::span<cd> data, FftDirection direction) {
  if (direction == FftDirection::kForward) {
    forward_any(data);
    return;
  }
  // The inverse kernel is conj(F(conj x)).
  for (auto& v : data) v = std::conj(v);
  forward_any(data);
  for (auto& v : data) v = std::conj(v);
}

void dft_1d_direct(std::span<cd> data, FftDirection direction) {
  const std::size_t n = data.size();
  if (n <= 1) return;
  const double sign = direction == FftDirection::kForward ? -1.0 : 1.0;
  std::vector<cd> roots(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double angle = sign * 2.0 * std::numbers::pi * static_cast<double>(k) /
                         static_cast<double>(n);
    roots[k] = {std::cos(angle), std::sin(angle)};
  }
  std::vector<cd> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    cd acc{};
    std::uint64_t phase = 0;
    for (std::size_t j = 0; j < n; ++j) {
      acc += data[j] * roots[phase];
      phase += k;
      if (phase >= n) phase %= n;
    }
    out[k] = acc;
  }
  std::copy(out.begin(), out.end(), data.begin());
}

void transform_all_dims(std::span<cd> data, std::span<const std::uint32_t> dims,
                        void (*kernel)(std::span<cd>, FftDirection),
                        FftDirection direction) {
  std::uint64_t total = 1;
  for (std::uint32_t d : dims) total *= d;
  if (total != data.size()) {
    fail(ErrorCode::kShape, "transform data does not match dimensions");
  }
  if (total == 0) return;

  std::uint64_t stride = 1;
  std::vector<cd> line;
  for (std::uint32_t len : dims) {
    if (len > 1) {
      line.resize(len);
      const std::uint64_t block = stride * len;
      // Lines along this dimension start at (outer * block + inner).
      for (std::uint64_t outer = 0; outer < total; outer += block) {
        for (std::uint64_t inner = 0; inner < stride; ++inner) {
          const std::uint64_t start = outer + inner;
          for (std::uint32_t i = 0; i < len; ++i) line[i] = data[start + i * stride];
          kernel(line, direction);
          for (std::uint32_t i = 0; i < len; ++i) data[start + i * stride] = line[i];
        }
      }
    }
    stride *= len;
  }
}

}  // namespace sciarray::kernels
