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
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "sciarray/error.hpp"
#include "sciarray/math_backend.hpp"

namespace sciarray::kernels {

namespace {

constexpr int kMaxSweeps = 30;

struct Dense {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> v;  // column-major

  Dense(std::size_t r, std::size_t c) : rows(r), cols(c), v(r * c, 0.0) {}
  double* col(std::size_t j) { return v.data() + j * rows; }
  const double* col(std::size_t j) const { return v.data() + j * rows; }
  double& operator()(std::size_t i, std::size_t j) { return v[i + j * rows]; }
};

double dot(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

void rotate(double* p, double* q, std::size_t n, double c, double s) {
  for (std::size_t i = 0; i < n; ++i) {
    const double x = p[i];
    const double y = q[i];
    p[i] = c * x - s * y;
    q[i] = s * x + c * y;
  }
}

// Fills columns [filled, target) of u with unit vectors orthogonal to every
// earlier column. Each new column is the standard basis vector with the
// largest residual after projecting out the columns already present.
void complete_basis(Dense& u, std::size_t filled, std::size_t target) {
  const std::size_t m = u.rows;
  std::vector<double> cand(m);
  std::vector<double> best(m);
  auto residual = [&](std::size_t e) {
    std::fill(cand.begin(), cand.end(), 0.0);
    cand[e] = 1.0;
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t j = 0; j < filled; ++j) {
        const double proj = dot(u.col(j), cand.data(), m);
        for (std::size_t i = 0; i < m; ++i) cand[i] -= proj * u.col(j)[i];
      }
    }
    return std::sqrt(dot(cand.data(), cand.data(), m));
  };
  for (; filled < target; ++filled) {
    double best_norm = 0.0;
    for (std::size_t e = 0; e < m; ++e) {
      const double norm = residual(e);
      if (norm > best_norm) {
        best_norm = norm;
        best = cand;
      }
    }
    if (best_norm < 1e-3) fail(ErrorCode::kNumerical, "failed to complete orthonormal basis");
    for (std::size_t i = 0; i < m; ++i) u(i, filled) = best[i] / best_norm;
  }
}

// Tall case (rows >= cols). Returns factors of a.
SvdFactors jacobi_tall(Dense w, SvdMode mode) {
  const std::size_t m = w.rows;
  const std::size_t n = w.cols;
  Dense v(n, n);
  for (std::size_t i = 0; i < n; ++i) v(i, i) = 1.0;

  const double tol = std::numeric_limits<double>::epsilon() * static_cast<double>(std::max<std::size_t>(m, 1));
  bool converged = n < 2;
  for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
    converged = true;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double alpha = dot(w.col(p), w.col(p), m);
        const double beta = dot(w.col(q), w.col(q), m);
        const double gamma = dot(w.col(p), w.col(q), m);
        if (alpha == 0.0 || beta == 0.0) continue;
        if (std::fabs(gamma) <= tol * std::sqrt(alpha) * std::sqrt(beta)) continue;
        converged = false;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = std::copysign(1.0, zeta) / (std::fabs(zeta) + std::hypot(1.0, zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        rotate(w.col(p), w.col(q), m, c, s);
        rotate(v.col(p), v.col(q), n, c, s);
      }
    }
  }
  if (!converged) {
    fail(ErrorCode::kNumerical,
         "Jacobi SVD did not converge in " + std::to_string(kMaxSweeps) + " sweeps");
  }

  std::vector<double> sigma(n);
  for (std::size_t j = 0; j < n; ++j) sigma[j] = std::sqrt(dot(w.col(j), w.col(j), m));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return sigma[a] > sigma[b]; });

  const std::size_t u_cols = mode == SvdMode::kFull ? m : n;
  Dense u(m, u_cols);
  SvdFactors f;
  f.rows = static_cast<std::uint32_t>(m);
  f.cols = static_cast<std::uint32_t>(n);
  f.u_cols = static_cast<std::uint32_t>(u_cols);
  f.vt_rows = static_cast<std::uint32_t>(n);
  f.s.resize(n);
  // Zero singular values sort last; their columns carry no direction and are
  // rebuilt together with the full-mode extension.
  std::size_t nonzero = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t j = order[k];
    f.s[k] = sigma[j];
    if (sigma[j] > 0.0) {
      for (std::size_t i = 0; i < m; ++i) u(i, k) = w(i, j) / sigma[j];
      ++nonzero;
    }
  }
  if (nonzero < u_cols) complete_basis(u, nonzero, u_cols);
  f.u = std::move(u.v);

  f.vt.assign(n * n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t j = order[k];
    for (std::size_t i = 0; i < n; ++i) f.vt[k + i * n] = v(i, j);  // row k of Vt
  }
  return f;
}

}  // namespace

SvdFactors jacobi_svd(const ColumnMajorMatrix& a, SvdMode mode) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  if (m >= n) {
    Dense w(m, n);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < m; ++i) w(i, j) = a.at(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j));
    return jacobi_tall(std::move(w), mode);
  }
  // Wide: factor the transpose, A^T = U' S V'^T, so A = V' S U'^T.
  Dense w(n, m);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < m; ++i) w(j, i) = a.at(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j));
  SvdFactors t = jacobi_tall(std::move(w), mode);
  SvdFactors f;
  f.rows = static_cast<std::uint32_t>(m);
  f.cols = static_cast<std::uint32_t>(n);
  f.s = std::move(t.s);
  // U = V' (m x m): V' columns are rows of t.vt.
  f.u_cols = static_cast<std::uint32_t>(m);
  f.u.assign(m * m, 0.0);
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t i = 0; i < m; ++i) f.u[i + k * m] = t.vt[k + i * m];
  // Vt = U'^T: U' is n x u_cols.
  f.vt_rows = t.u_cols;
  f.vt.assign(static_cast<std::size_t>(t.u_cols) * n, 0.0);
  for (std::size_t k = 0; k < t.u_cols; ++k)
    for (std::size_t i = 0; i < n; ++i) f.vt[k + i * t.u_cols] = t.u[i + k * n];
  return f;
}

}  // namespace sciarray::kernels
