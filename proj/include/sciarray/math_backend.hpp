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

// Math kernels over array blobs: n-dimensional discrete Fourier transform and
// singular value decomposition, dispatched through a pluggable backend.
//
// Conventions:
//   forward  X[k] = sum_n x[n] exp(-2 pi i <k, n/N>)   (unnormalized)
//   inverse  x[n] = 1/N sum_k X[k] exp(+2 pi i <k, n/N>)
// The transform runs along every dimension of the array.
//
// Blob payloads are already in the column-major order numerical libraries
// expect, so matrices are handed to backends as views over the payload bytes.

#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sciarray/array_blob.hpp"

namespace sciarray {

enum Capability : unsigned {
  kCapabilityFft = 1u << 0,
  kCapabilitySvd = 1u << 1,
};

enum class FftDirection { kForward, kInverse };
enum class SvdMode { kFull, kThin };

/// Read-only column-major matrix over blob payload bytes. No copy is made;
/// element (i, j) lives at byte offset (i + j * rows) * width.
class ColumnMajorMatrix {
 public:
  ColumnMajorMatrix(ElementType elem, std::uint32_t rows, std::uint32_t cols,
                    std::span<const std::byte> payload);
  explicit ColumnMajorMatrix(const ArrayView& matrix);

  std::uint32_t rows() const noexcept { return rows_; }
  std::uint32_t cols() const noexcept { return cols_; }
  ElementType elem() const noexcept { return elem_; }
  std::span<const std::byte> payload() const noexcept { return payload_; }
  double at(std::uint32_t i, std::uint32_t j) const;

 private:
  ElementType elem_;
  std::uint32_t rows_;
  std::uint32_t cols_;
  std::span<const std::byte> payload_;
};

/// Factors in column-major order. u is rows x u_cols, vt is vt_rows x cols.
struct SvdFactors {
  std::uint32_t rows = 0;
  std::uint32_t cols = 0;
  std::uint32_t u_cols = 0;
  std::uint32_t vt_rows = 0;
  std::vector<double> u;
  std::vector<double> s;  // min(rows, cols) values, nonincreasing
  std::vector<double> vt;
};

class MathBackend {
 public:
  virtual ~MathBackend() = default;

  virtual std::string name() const = 0;
  virtual unsigned capabilities() const = 0;

  /// Unnormalized in-place transform of column-major complex data along every
  /// dimension. Normalization of the inverse is applied by the caller.
  virtual void fft(std::span<std::complex<double>> data,
                   std::span<const std::uint32_t> dims, FftDirection direction) const;

  virtual SvdFactors svd(const ColumnMajorMatrix& a, SvdMode mode) const;
};

/// Mixed radix-2 / Bluestein FFT and one-sided Jacobi SVD.
std::shared_ptr<const MathBackend> reference_backend();
/// Direct O(N^2) summation DFT, FFT capability only.
std::shared_ptr<const MathBackend> direct_backend();

/// Runs the acceptance checks a backend must pass before registration.
/// Throws kBackendRejected describing the first failed check.
void validate_backend(const MathBackend& backend);

/// Registers after validation. The reference and direct backends are always
/// registered; "reference" is selected by default. Registration is meant for
/// start-up: it is serialized but should not race with running kernels.
void register_backend(std::shared_ptr<const MathBackend> backend);
/// Makes `name` the active backend; kLookup for unknown names.
std::shared_ptr<const MathBackend> select_backend(std::string_view name);
std::shared_ptr<const MathBackend> find_backend(std::string_view name);
std::shared_ptr<const MathBackend> active_backend();
std::vector<std::string> backend_names();

struct SvdResult {
  ArrayBlob u;
  ArrayBlob s;
  ArrayBlob vt;
};

ArrayBlob fft_forward(const ArrayView& array);
ArrayBlob fft_inverse(const ArrayView& array);
ArrayBlob fft_forward(const ArrayView& array, const MathBackend& backend);
ArrayBlob fft_inverse(const ArrayView& array, const MathBackend& backend);

SvdResult svd(const ArrayView& matrix, SvdMode mode);
SvdResult svd(const ArrayView& matrix, SvdMode mode, const MathBackend& backend);

namespace kernels {

/// In-place 1-D transform of contiguous data, any length.
void fft_1d(std::span<std::complex<double>> data, FftDirection direction);
/// Direct-sum 1-D DFT with exact integer phase reduction.
void dft_1d_direct(std::span<std::complex<double>> data, FftDirection direction);
/// Applies a 1-D kernel along each dimension of column-major data.
void transform_all_dims(std::span<std::complex<double>> data,
                        std::span<const std::uint32_t> dims,
                        void (*kernel)(std::span<std::complex<double>>, FftDirection),
                        FftDirection direction);

/// One-sided Jacobi SVD, at most 30 sweeps; kNumerical if it does not converge.
SvdFactors jacobi_svd(const ColumnMajorMatrix& a, SvdMode mode);

}  // namespace kernels

}  // namespace sciarray
