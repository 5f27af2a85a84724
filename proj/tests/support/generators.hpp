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

// Hand-rolled random generators and independent oracles shared by the unit
// and acceptance suites. Nothing here calls into the code paths it checks.

#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstring>
#include <numbers>
#include <random>
#include <vector>

#include "sciarray/array_blob.hpp"
#include "sciarray/header.hpp"

namespace sciarray::testing {

using Rng = std::mt19937_64;

inline std::uint64_t product(const Dims& dims) {
  std::uint64_t n = 1;
  for (auto d : dims) n *= d;
  return n;
}

/// Random dims with at most `max_count` elements. Zero extents appear rarely.
inline Dims random_dims(Rng& rng, std::size_t max_rank, std::uint64_t max_count,
                        bool allow_zero = true) {
  std::uniform_int_distribution<std::size_t> rank_dist(1, max_rank);
  const std::size_t rank = rank_dist(rng);
  Dims dims(rank, 1);
  std::uint64_t budget = max_count;
  for (std::size_t d = 0; d < rank; ++d) {
    const std::uint64_t cap = std::max<std::uint64_t>(1, std::min<std::uint64_t>(budget, 9));
    std::uniform_int_distribution<std::uint64_t> dist(1, cap);
    dims[d] = static_cast<std::uint32_t>(dist(rng));
    budget = std::max<std::uint64_t>(1, budget / dims[d]);
  }
  if (allow_zero && std::uniform_int_distribution<int>(0, 49)(rng) == 0) {
    dims[std::uniform_int_distribution<std::size_t>(0, rank - 1)(rng)] = 0;
  }
  return dims;
}

/// Random payload bytes. Float elements mix ordinary values, infinities,
/// zeros of both signs and NaNs with arbitrary payload bits.
inline Bytes random_payload(Rng& rng, ElementType elem, std::uint64_t count) {
  const std::size_t w = byte_width(elem);
  Bytes out(count * w);
  std::uniform_int_distribution<int> byte(0, 255);
  if (is_integer(elem)) {
    for (auto& b : out) b = static_cast<std::byte>(byte(rng));
    return out;
  }
  const bool single = component_width(elem) == 4;
  std::uniform_int_distribution<int> pick(0, 19);
  std::normal_distribution<double> normal(0.0, 1e3);
  for (std::size_t off = 0; off < out.size(); off += component_width(elem)) {
    double v = 0.0;
    const int k = pick(rng);
    if (k == 0) v = std::numeric_limits<double>::infinity();
    else if (k == 1) v = -std::numeric_limits<double>::infinity();
    else if (k == 2) v = -0.0;
    else if (k == 3) {
      // NaN with random payload bits.
      if (single) {
        std::uint32_t bits = 0x7f800001u | (static_cast<std::uint32_t>(rng()) & 0x807fffffu);
        std::memcpy(out.data() + off, &bits, 4);
      } else {
        std::uint64_t bits = 0x7ff0000000000001ull | (rng() & 0x800fffffffffffffull);
        std::memcpy(out.data() + off, &bits, 8);
      }
      continue;
    } else {
      v = normal(rng) * std::pow(10.0, std::uniform_int_distribution<int>(-30, 30)(rng));
    }
    if (single) {
      const float f = static_cast<float>(v);
      std::memcpy(out.data() + off, &f, 4);
    } else {
      std::memcpy(out.data() + off, &v, 8);
    }
  }
  return out;
}

inline ElementType random_elem(Rng& rng) {
  return kAllElementTypes[std::uniform_int_distribution<std::size_t>(0, 7)(rng)];
}

/// Independent column-major offset: sum_d i_d * prod_{k<d} dims[k].
inline std::uint64_t oracle_offset(const Dims& dims, const std::vector<std::int64_t>& idx) {
  std::uint64_t off = 0;
  std::uint64_t stride = 1;
  for (std::size_t d = 0; d < dims.size(); ++d) {
    off += static_cast<std::uint64_t>(idx[d]) * stride;
    stride *= dims[d];
  }
  return off;
}

/// Direct n-dimensional DFT by brute-force summation over all index pairs.
inline std::vector<std::complex<double>> naive_dft(const std::vector<std::complex<double>>& x,
                                                   const Dims& dims, double sign = -1.0) {
  const std::uint64_t n = product(dims);
  std::vector<std::complex<double>> out(n);
  std::vector<std::int64_t> k(dims.size()), j(dims.size());
  for (std::uint64_t kl = 0; kl < n; ++kl) {
    std::uint64_t t = kl;
    for (std::size_t d = 0; d < dims.size(); ++d) { k[d] = static_cast<std::int64_t>(t % dims[d]); t /= dims[d]; }
    std::complex<double> acc{};
    for (std::uint64_t jl = 0; jl < n; ++jl) {
      std::uint64_t u = jl;
      // Phase accumulated as a sum of exact fractions k_d * j_d / N_d.
      double phase = 0.0;
      for (std::size_t d = 0; d < dims.size(); ++d) {
        j[d] = static_cast<std::int64_t>(u % dims[d]);
        u /= dims[d];
        phase += static_cast<double>((k[d] * j[d]) % dims[d]) / dims[d];
      }
      const double angle = sign * 2.0 * std::numbers::pi * phase;
      acc += x[jl] * std::complex<double>(std::cos(angle), std::sin(angle));
    }
    out[kl] = acc;
  }
  return out;
}

}  // namespace sciarray::testing
