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

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <random>
#include <shared_mutex>
#include <string>

#include "sciarray/array_ops.hpp"
#include "sciarray/error.hpp"
#include "sciarray/math_backend.hpp"
#include "../internal/little_endian.hpp"

namespace sciarray {

ColumnMajorMatrix::ColumnMajorMatrix(ElementType elem, std::uint32_t rows,
                                     std::uint32_t cols,
                                     std::span<const std::byte> payload)
    : elem_(elem), rows_(rows), cols_(cols), payload_(payload) {
  if (!is_real_float(elem)) {
    fail(ErrorCode::kTypeMismatch, "matrix kernels need a real float array, got " +
                                       std::string(element_type_name(elem)));
  }
  if (payload.size() != static_cast<std::uint64_t>(rows) * cols * byte_width(elem)) {
    fail(ErrorCode::kShape, "payload size does not match matrix shape");
  }
}

ColumnMajorMatrix::ColumnMajorMatrix(const ArrayView& matrix)
    : ColumnMajorMatrix(matrix.elem(), matrix.rank() == 2 ? matrix.dims()[0] : 0,
                        matrix.rank() == 2 ? matrix.dims()[1] : 0,
                        matrix.rank() == 2 ? matrix.payload()
                                           : std::span<const std::byte>()) {
  if (matrix.rank() != 2) {
    fail(ErrorCode::kShape, "expected a rank-2 array, got rank " +
                                std::to_string(matrix.rank()));
  }
}

double ColumnMajorMatrix::at(std::uint32_t i, std::uint32_t j) const {
  const std::uint64_t linear = static_cast<std::uint64_t>(i) +
                               static_cast<std::uint64_t>(j) * rows_;
  const std::byte* p = payload_.data() + linear * byte_width(elem_);
  return elem_ == ElementType::kFloat32 ? detail::load_le<float>(p)
                                        : detail::load_le<double>(p);
}

void MathBackend::fft(std::span<std::complex<double>>, std::span<const std::uint32_t>,
                      FftDirection) const {
  fail(ErrorCode::kUnsupported, "backend '" + name() + "' has no FFT capability");
}

SvdFactors MathBackend::svd(const ColumnMajorMatrix&, SvdMode) const {
  fail(ErrorCode::kUnsupported, "backend '" + name() + "' has no SVD capability");
}

namespace {

class ReferenceBackend final : public MathBackend {
 public:
  std::string name() const override { return "reference"; }
  unsigned capabilities() const override { return kCapabilityFft | kCapabilitySvd; }
  void fft(std::span<std::complex<double>> data, std::span<const std::uint32_t> dims,
           FftDirection direction) const override {
    kernels::transform_all_dims(data, dims, &kernels::fft_1d, direction);
  }
  SvdFactors svd(const ColumnMajorMatrix& a, SvdMode mode) const override {
    return kernels::jacobi_svd(a, mode);
  }
};

class DirectBackend final : public MathBackend {
 public:
  std::string name() const override { return "direct"; }
  unsigned capabilities() const override { return kCapabilityFft; }
  void fft(std::span<std::complex<double>> data, std::span<const std::uint32_t> dims,
           FftDirection direction) const override {
    kernels::transform_all_dims(data, dims, &kernels::dft_1d_direct, direction);
  }
};

[[noreturn]] void reject(const MathBackend& b, const std::string& why) {
  fail(ErrorCode::kBackendRejected, "backend '" + b.name() + "' rejected: " + why);
}

double max_abs_diff(std::span<const std::complex<double>> a,
                    std::span<const std::complex<double>> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

void validate_fft(const MathBackend& b) {
  {
    const std::uint32_t dims[] = {8};
    std::vector<std::complex<double>> x(8);
    x[0] = 1.0;
    b.fft(x, dims, FftDirection::kForward);
    for (const auto& v : x) {
      if (std::abs(v - std::complex<double>(1.0, 0.0)) > 1e-12) {
        reject(b, "FFT of a delta is not all ones");
      }
    }
  }
  std::mt19937_64 rng(0x5eed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (const auto& shape : {std::vector<std::uint32_t>{12}, std::vector<std::uint32_t>{3, 5},
                            std::vector<std::uint32_t>{4, 1, 6}}) {
    std::uint64_t n = 1;
    for (auto d : shape) n *= d;
    std::vector<std::complex<double>> x(n);
    for (auto& v : x) v = {u(rng), u(rng)};
    auto expected = x;
    kernels::transform_all_dims(expected, shape, &kernels::dft_1d_direct,
                                FftDirection::kForward);
    auto got = x;
    b.fft(got, shape, FftDirection::kForward);
    double scale = 0.0;
    for (const auto& v : expected) scale = std::max(scale, std::abs(v));
    if (max_abs_diff(got, expected) > 1e-9 * scale) {
      reject(b, "FFT disagrees with the direct-sum transform");
    }
    b.fft(got, shape, FftDirection::kInverse);
    for (auto& v : got) v /= static_cast<double>(n);
    if (max_abs_diff(got, x) > 1e-12) reject(b, "FFT round trip is not the identity");
  }
}

void validate_svd(const MathBackend& b) {
  std::mt19937_64 rng(0xfeed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const std::pair<std::uint32_t, std::uint32_t> shapes[] = {{5, 3}, {3, 5}, {4, 4}, {1, 6}};
  for (auto [m, n] : shapes) {
    std::vector<double> a(static_cast<std::size_t>(m) * n);
    for (auto& v : a) v = u(rng);
    Bytes payload(a.size() * 8);
    for (std::size_t i = 0; i < a.size(); ++i) detail::store_le<double>(payload.data() + 8 * i, a[i]);
    for (SvdMode mode : {SvdMode::kFull, SvdMode::kThin}) {
      const SvdFactors f = b.svd(ColumnMajorMatrix(ElementType::kFloat64, m, n, payload), mode);
      const std::uint32_t k = std::min(m, n);
      const std::uint32_t uc = mode == SvdMode::kFull ? m : k;
      const std::uint32_t vr = mode == SvdMode::kFull ? n : k;
      if (f.rows != m || f.cols != n || f.u_cols != uc || f.vt_rows != vr ||
          f.s.size() != k || f.u.size() != std::size_t{m} * uc ||
          f.vt.size() != std::size_t{vr} * n) {
        reject(b, "SVD factor shapes are wrong");
      }
      for (std::size_t i = 0; i < k; ++i) {
        if (f.s[i] < 0.0 || (i > 0 && f.s[i] > f.s[i - 1])) {
          reject(b, "singular values are not nonnegative and nonincreasing");
        }
      }
      double norm = 0.0;
      for (double v : a) norm += v * v;
      double err = 0.0;
      for (std::uint32_t i = 0; i < m; ++i) {
        for (std::uint32_t j = 0; j < n; ++j) {
          double r = 0.0;
          for (std::uint32_t t = 0; t < k; ++t) r += f.u[i + t * m] * f.s[t] * f.vt[t + j * vr];
          const double d = a[i + j * m] - r;
          err += d * d;
        }
      }
      if (std::sqrt(err) > 1e-10 * std::sqrt(norm)) reject(b, "SVD reconstruction error too large");
      for (std::uint32_t p = 0; p < uc; ++p) {
        for (std::uint32_t q = 0; q < uc; ++q) {
          double d = 0.0;
          for (std::uint32_t i = 0; i < m; ++i) d += f.u[i + p * m] * f.u[i + q * m];
          if (std::fabs(d - (p == q ? 1.0 : 0.0)) > 1e-10) reject(b, "U is not orthonormal");
        }
      }
      for (std::uint32_t p = 0; p < vr; ++p) {
        for (std::uint32_t q = 0; q < vr; ++q) {
          double d = 0.0;
          for (std::uint32_t j = 0; j < n; ++j) d += f.vt[p + j * vr] * f.vt[q + j * vr];
          if (std::fabs(d - (p == q ? 1.0 : 0.0)) > 1e-10) reject(b, "Vt is not orthonormal");
        }
      }
    }
  }
}

class Registry {
 public:
  static Registry& instance() {
    static Registry r;
    return r;
  }

  void add(std::shared_ptr<const MathBackend> backend) {
    std::unique_lock lock(mu_);
    backends_[backend->name()] = std::move(backend);
  }

  std::shared_ptr<const MathBackend> find(std::string_view name) const {
    std::shared_lock lock(mu_);
    const auto it = backends_.find(std::string(name));
    return it == backends_.end() ? nullptr : it->second;
  }

  std::shared_ptr<const MathBackend> select(std::string_view name) {
    std::unique_lock lock(mu_);
    const auto it = backends_.find(std::string(name));
    if (it == backends_.end()) {
      fail(ErrorCode::kLookup, "unknown math backend '" + std::string(name) + "'");
    }
    active_ = it->second;
    return active_;
  }

  std::shared_ptr<const MathBackend> active() const {
    std::shared_lock lock(mu_);
    return active_;
  }

  std::vector<std::string> names() const {
    std::shared_lock lock(mu_);
    std::vector<std::string> out;
    for (const auto& [name, _] : backends_) out.push_back(name);
    return out;
  }

 private:
  Registry() {
    auto ref = reference_backend();
    backends_[ref->name()] = ref;
    auto direct = direct_backend();
    backends_[direct->name()] = direct;
    active_ = ref;
  }

  mutable std::shared_mutex mu_;
  std::map<std::string, std::shared_ptr<const MathBackend>> backends_;
  std::shared_ptr<const MathBackend> active_;
};

}  // namespace

std::shared_ptr<const MathBackend> reference_backend() {
  static const auto b = std::make_shared<const ReferenceBackend>();
  return b;
}

std::shared_ptr<const MathBackend> direct_backend() {
  static const auto b = std::make_shared<const DirectBackend>();
  return b;
}

void validate_backend(const MathBackend& backend) {
  const unsigned caps = backend.capabilities();
  if ((caps & (kCapabilityFft | kCapabilitySvd)) == 0) {
    reject(backend, "declares no capabilities");
  }
  try {
    if (caps & kCapabilityFft) validate_fft(backend);
    if (caps & kCapabilitySvd) validate_svd(backend);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kBackendRejected) throw;
    reject(backend, std::string("check raised: ") + e.what());
  }
}

void register_backend(std::shared_ptr<const MathBackend> backend) {
  if (!backend) fail(ErrorCode::kInvalidArgument, "null backend");
  if (backend->name().empty()) reject(*backend, "empty name");
  validate_backend(*backend);
  Registry::instance().add(std::move(backend));
}

std::shared_ptr<const MathBackend> select_backend(std::string_view name) {
  return Registry::instance().select(name);
}

std::shared_ptr<const MathBackend> find_backend(std::string_view name) {
  return Registry::instance().find(name);
}

std::shared_ptr<const MathBackend> active_backend() { return Registry::instance().active(); }

std::vector<std::string> backend_names() { return Registry::instance().names(); }

namespace {

ArrayBlob run_fft(const ArrayView& array, const MathBackend& backend, FftDirection dir) {
  if (!is_real_float(array.elem()) && !is_complex(array.elem())) {
    fail(ErrorCode::kTypeMismatch, "FFT needs a float or complex array, got " +
                                       std::string(element_type_name(array.elem())));
  }
  if (!(backend.capabilities() & kCapabilityFft)) {
    fail(ErrorCode::kUnsupported, "backend '" + backend.name() + "' has no FFT capability");
  }
  // Private scratch buffer; the payload itself may be unaligned.
  std::vector<std::complex<double>> data(array.count());
  for (std::uint64_t i = 0; i < array.count(); ++i) {
    const Scalar v = array.load(i);
    data[i] = std::holds_alternative<double>(v) ? std::complex<double>(std::get<double>(v), 0.0)
                                                : std::get<std::complex<double>>(v);
  }
  backend.fft(data, array.dims(), dir);
  if (dir == FftDirection::kInverse && !data.empty()) {
    const double scale = 1.0 / static_cast<double>(data.size());
    for (auto& v : data) v *= scale;
  }
  const ElementType out_elem = complex_counterpart(array.elem());
  const ArrayHeader h = classified_header(out_elem, array.dims());
  Bytes payload(h.payload_size());
  const std::size_t w = byte_width(out_elem);
  for (std::size_t i = 0; i < data.size(); ++i) {
    store_element(out_elem, Scalar{data[i]}, std::span<std::byte>(payload).subspan(i * w, w));
  }
  return ArrayBlob::assemble(h, payload);
}

ArrayBlob matrix_blob(ElementType elem, std::uint32_t rows, std::uint32_t cols,
                      const std::vector<double>& values) {
  const std::uint32_t dims[] = {rows, cols};
  const ArrayHeader h = classified_header(elem, dims);
  Bytes payload(h.payload_size());
  const std::size_t w = byte_width(elem);
  for (std::size_t i = 0; i < values.size(); ++i) {
    store_element(elem, Scalar{values[i]}, std::span<std::byte>(payload).subspan(i * w, w));
  }
  return ArrayBlob::assemble(h, payload);
}

}  // namespace

ArrayBlob fft_forward(const ArrayView& array, const MathBackend& backend) {
  return run_fft(array, backend, FftDirection::kForward);
}

ArrayBlob fft_inverse(const ArrayView& array, const MathBackend& backend) {
  return run_fft(array, backend, FftDirection::kInverse);
}

ArrayBlob fft_forward(const ArrayView& array) { return fft_forward(array, *active_backend()); }
ArrayBlob fft_inverse(const ArrayView& array) { return fft_inverse(array, *active_backend()); }

SvdResult svd(const ArrayView& matrix, SvdMode mode, const MathBackend& backend) {
  if (matrix.rank() != 2) {
    fail(ErrorCode::kShape, "SVD needs a rank-2 array, got rank " +
                                std::to_string(matrix.rank()));
  }
  if (!(backend.capabilities() & kCapabilitySvd)) {
    fail(ErrorCode::kUnsupported, "backend '" + backend.name() + "' has no SVD capability");
  }
  const ColumnMajorMatrix a(matrix);
  const SvdFactors f = backend.svd(a, mode);
  const ElementType elem = matrix.elem();
  std::vector<double> s = f.s;
  const std::uint32_t k = static_cast<std::uint32_t>(s.size());
  return SvdResult{
      matrix_blob(elem, f.rows, f.u_cols, f.u),
      make_array(elem, std::span<const std::uint32_t>(&k, 1),
                 [&] {
                   std::vector<Scalar> v;
                   for (double x : s) v.emplace_back(x);
                   return v;
                 }()),
      matrix_blob(elem, f.vt_rows, f.cols, f.vt),
  };
}

SvdResult svd(const ArrayView& matrix, SvdMode mode) {
  return svd(matrix, mode, *active_backend());
}

}  // namespace sciarray
