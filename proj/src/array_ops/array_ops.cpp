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

#include "sciarray/array_ops.hpp"

#include <algorithm>
#include <cfenv>
#include <cfloat>
#include <cmath>
#include <limits>
#include <string>

#include "sciarray/error.hpp"
#include "../internal/little_endian.hpp"

namespace sciarray {

Dims to_dims(std::span<const std::int64_t> extents) {
  Dims dims(extents.size());
  for (std::size_t d = 0; d < extents.size(); ++d) {
    if (extents[d] < 0) {
      fail(ErrorCode::kShape, "dimension " + std::to_string(d) + " has negative size " +
                                  std::to_string(extents[d]));
    }
    if (extents[d] > static_cast<std::int64_t>(kMaxMaxDim)) {
      fail(ErrorCode::kCapacity, "dimension " + std::to_string(d) + " size " +
                                     std::to_string(extents[d]) + " exceeds 2147483647");
    }
    dims[d] = static_cast<std::uint32_t>(extents[d]);
  }
  return dims;
}

ArrayHeader classified_header(ElementType elem, std::span<const std::uint32_t> dims) {
  ArrayHeader h{classify(elem, dims), elem, Dims(dims.begin(), dims.end())};
  h.validate();
  return h;
}

namespace {

ArrayBlob build(const ArrayHeader& header, std::span<const Scalar> values) {
  if (values.size() != header.total_count()) {
    fail(ErrorCode::kShape, "expected " + std::to_string(header.total_count()) +
                                " values, got " + std::to_string(values.size()));
  }
  const std::size_t w = byte_width(header.elem);
  Bytes payload(values.size() * w);
  for (std::size_t i = 0; i < values.size(); ++i) {
    store_element(header.elem, values[i], std::span<std::byte>(payload).subspan(i * w, w));
  }
  return ArrayBlob::assemble(header, payload);
}

}  // namespace

ArrayBlob make_array(ElementType elem, std::span<const std::uint32_t> dims,
                     std::span<const Scalar> values) {
  return build(classified_header(elem, dims), values);
}

ArrayBlob make_vector(ElementType elem, std::span<const Scalar> values) {
  if (values.size() > kMaxMaxDim) fail(ErrorCode::kCapacity, "vector too long");
  const std::uint32_t n = static_cast<std::uint32_t>(values.size());
  return make_array(elem, std::span<const std::uint32_t>(&n, 1), values);
}

ArrayBlob make_matrix(ElementType elem, std::uint32_t rows, std::uint32_t cols,
                      std::span<const Scalar> values) {
  if (static_cast<std::uint64_t>(rows) * cols != values.size()) {
    fail(ErrorCode::kShape, "a " + std::to_string(rows) + "x" + std::to_string(cols) +
                                " matrix needs " +
                                std::to_string(static_cast<std::uint64_t>(rows) * cols) +
                                " values, got " + std::to_string(values.size()));
  }
  const std::uint32_t dims[2] = {rows, cols};
  return make_array(elem, dims, values);
}

ArrayBlob make_filled(ElementType elem, std::span<const std::uint32_t> dims,
                      const Scalar& fill) {
  const ArrayHeader h = classified_header(elem, dims);
  const std::size_t w = byte_width(elem);
  std::byte cell[16];
  store_element(elem, fill, std::span<std::byte>(cell, w));
  Bytes payload(h.payload_size());
  for (std::size_t off = 0; off < payload.size(); off += w) {
    std::copy_n(cell, w, payload.begin() + static_cast<std::ptrdiff_t>(off));
  }
  return ArrayBlob::assemble(h, payload);
}

Scalar item(const ArrayView& array, std::span<const std::int64_t> indices) {
  return array.load(linearize(array.dims(), indices));
}

Scalar item_streamed(BlockReader& reader, std::span<const std::int64_t> indices) {
  const ArrayHeader h = decode_header(reader);
  const std::uint64_t linear = linearize(h.dims, indices);
  const std::size_t w = byte_width(h.elem);
  std::byte cell[16];
  reader.read_at(h.encoded_size() + linear * w, std::span<std::byte>(cell, w));
  return load_element(h.elem, std::span<const std::byte>(cell, w));
}

ArrayBlob update_item(const ArrayView& array, std::span<const std::int64_t> indices,
                      const Scalar& value) {
  const std::uint64_t linear = linearize(array.dims(), indices);
  const std::size_t w = byte_width(array.elem());
  Bytes bytes(array.bytes().begin(), array.bytes().end());
  const std::size_t at = array.header().encoded_size() + linear * w;
  store_element(array.elem(), value, std::span<std::byte>(bytes).subspan(at, w));
  return ArrayBlob::from_bytes(std::move(bytes));
}

namespace {

// Contiguous-run decomposition of a hyper-rectangle in column-major order.
// Leading dimensions covered in full merge into a single run.
struct RunPlan {
  std::uint64_t run_elems = 0;     // elements per run
  std::uint64_t run_count = 0;
  std::size_t outer_begin = 0;     // first dimension iterated across runs
  std::uint64_t base = 0;          // linear index of the range origin
};

void check_range(std::span<const std::uint32_t> dims, const SubarrayRange& range) {
  if (range.offset.size() != dims.size() || range.length.size() != dims.size()) {
    fail(ErrorCode::kShape, "range rank (" + std::to_string(range.offset.size()) + "/" +
                                std::to_string(range.length.size()) +
                                ") does not match array rank " +
                                std::to_string(dims.size()));
  }
  for (std::size_t d = 0; d < dims.size(); ++d) {
    const std::int64_t off = range.offset[d];
    const std::int64_t len = range.length[d];
    if (off < 0 || len < 0 || off > static_cast<std::int64_t>(dims[d]) ||
        len > static_cast<std::int64_t>(dims[d]) - off) {
      fail(ErrorCode::kBounds, "range offset " + std::to_string(off) + " length " +
                                   std::to_string(len) + " exceeds dimension " +
                                   std::to_string(d) + " of size " +
                                   std::to_string(dims[d]));
    }
  }
}

RunPlan plan_runs(std::span<const std::uint32_t> dims, const SubarrayRange& range) {
  RunPlan plan;
  const std::size_t r = dims.size();
  const auto strides = column_major_strides(dims);
  for (std::size_t d = 0; d < r; ++d) {
    plan.base += static_cast<std::uint64_t>(range.offset[d]) * strides[d];
  }
  std::uint64_t total = 1;
  for (std::size_t d = 0; d < r; ++d) total *= static_cast<std::uint64_t>(range.length[d]);
  if (total == 0) return plan;

  std::size_t d = 0;
  plan.run_elems = static_cast<std::uint64_t>(range.length[0]);
  while (d + 1 < r && range.length[d] == static_cast<std::int64_t>(dims[d])) {
    ++d;
    plan.run_elems *= static_cast<std::uint64_t>(range.length[d]);
  }
  plan.outer_begin = d + 1;
  plan.run_count = total / plan.run_elems;
  return plan;
}

// Calls fn(source_linear_start, run_elems) for each run in result order.
template <typename Fn>
void for_each_run(std::span<const std::uint32_t> dims, const SubarrayRange& range,
                  const RunPlan& plan, Fn&& fn) {
  if (plan.run_count == 0) return;
  const std::size_t r = dims.size();
  const auto strides = column_major_strides(dims);
  std::vector<std::int64_t> counter(r, 0);
  for (std::uint64_t run = 0; run < plan.run_count; ++run) {
    std::uint64_t start = plan.base;
    for (std::size_t d = plan.outer_begin; d < r; ++d) {
      start += static_cast<std::uint64_t>(counter[d]) * strides[d];
    }
    fn(start, plan.run_elems);
    for (std::size_t d = plan.outer_begin; d < r; ++d) {
      if (++counter[d] < range.length[d]) break;
      counter[d] = 0;
    }
  }
}

Dims result_dims(const SubarrayRange& range, bool squeeze) {
  Dims out;
  for (std::int64_t len : range.length) {
    if (squeeze && len == 1) continue;
    out.push_back(static_cast<std::uint32_t>(len));
  }
  if (out.empty()) out.push_back(1);
  return out;
}

}  // namespace

std::uint64_t subarray_run_count(std::span<const std::uint32_t> dims,
                                 const SubarrayRange& range) {
  check_range(dims, range);
  return plan_runs(dims, range).run_count;
}

ArrayBlob subarray(const ArrayView& array, const SubarrayRange& range, bool squeeze) {
  check_range(array.dims(), range);
  const RunPlan plan = plan_runs(array.dims(), range);
  const std::size_t w = byte_width(array.elem());
  const ArrayHeader h = classified_header(array.elem(), result_dims(range, squeeze));
  Bytes payload(h.payload_size());
  const auto src = array.payload();
  std::size_t out = 0;
  for_each_run(array.dims(), range, plan, [&](std::uint64_t start, std::uint64_t n) {
    std::copy_n(src.begin() + static_cast<std::ptrdiff_t>(start * w), n * w,
                payload.begin() + static_cast<std::ptrdiff_t>(out));
    out += n * w;
  });
  return ArrayBlob::assemble(h, payload);
}

ArrayBlob subarray_streamed(BlockReader& reader, const SubarrayRange& range,
                            bool squeeze) {
  const ArrayHeader src = decode_header(reader);
  check_range(src.dims, range);
  const RunPlan plan = plan_runs(src.dims, range);
  const std::size_t w = byte_width(src.elem);
  const std::uint64_t data_start = src.encoded_size();
  const ArrayHeader h = classified_header(src.elem, result_dims(range, squeeze));
  Bytes payload(h.payload_size());
  std::size_t out = 0;
  for_each_run(src.dims, range, plan, [&](std::uint64_t start, std::uint64_t n) {
    reader.read_at(data_start + start * w,
                   std::span<std::byte>(payload).subspan(out, n * w));
    out += n * w;
  });
  return ArrayBlob::assemble(h, payload);
}

ArrayBlob reshape(const ArrayView& array, std::span<const std::uint32_t> new_dims) {
  std::uint64_t count = 0;
  if (!checked_product(new_dims, count) || count != array.count()) {
    fail(ErrorCode::kShape, "cannot reshape " + std::to_string(array.count()) +
                                " elements into the requested dimensions");
  }
  ArrayHeader h{array.storage(), array.elem(), Dims(new_dims.begin(), new_dims.end())};
  if (h.storage == StorageClass::kShort) {
    if (const char* why = short_class_violation(h.elem, h.dims)) {
      fail(ErrorCode::kCapacity, std::string("reshape target invalid for short array: ") + why);
    }
  }
  return ArrayBlob::assemble(h, array.payload());
}

ArrayBlob cast_raw(ElementType elem, std::span<const std::uint32_t> dims,
                   std::span<const std::byte> raw_bytes) {
  const ArrayHeader h = classified_header(elem, dims);
  if (raw_bytes.size() != h.payload_size()) {
    fail(ErrorCode::kFormat, "raw buffer has " + std::to_string(raw_bytes.size()) +
                                 " bytes, " + std::to_string(h.payload_size()) +
                                 " expected for the given type and dimensions");
  }
  return ArrayBlob::assemble(h, raw_bytes);
}

std::span<const std::byte> raw(const ArrayView& array) { return array.payload(); }

namespace {

struct IntLimits {
  std::int64_t lo;
  std::int64_t hi;
};

IntLimits int_limits(ElementType t) {
  switch (t) {
    case ElementType::kInt8: return {INT8_MIN, INT8_MAX};
    case ElementType::kInt16: return {INT16_MIN, INT16_MAX};
    case ElementType::kInt32: return {INT32_MIN, INT32_MAX};
    default: return {INT64_MIN, INT64_MAX};
  }
}

[[noreturn]] void conversion_overflow(std::uint64_t index, const Scalar& v, ElementType t) {
  fail(ErrorCode::kRange, "element " + std::to_string(index) + ": value " +
                              scalar_to_string(v) + " is not representable as " +
                              std::string(element_type_name(t)));
}

std::int64_t to_integer(std::uint64_t index, const Scalar& v, ElementType target,
                        ConversionPolicy policy) {
  const IntLimits lim = int_limits(target);
  if (const auto* i = std::get_if<std::int64_t>(&v)) {
    if (*i >= lim.lo && *i <= lim.hi) return *i;
    if (policy == ConversionPolicy::kStrict) conversion_overflow(index, v, target);
    return std::clamp(*i, lim.lo, lim.hi);
  }
  const double x = std::get<double>(v);
  if (policy == ConversionPolicy::kStrict) {
    if (!std::isfinite(x) || x != std::trunc(x) || x < static_cast<double>(lim.lo) ||
        x >= -static_cast<double>(lim.lo)) {
      conversion_overflow(index, v, target);
    }
    return static_cast<std::int64_t>(x);
  }
  if (std::isnan(x)) return 0;
  // nearbyint honours the default round-to-nearest-even mode.
  const double r = std::nearbyint(x);
  if (r <= static_cast<double>(lim.lo)) return lim.lo;
  if (r >= -static_cast<double>(lim.lo)) return lim.hi;
  return std::clamp(static_cast<std::int64_t>(r), lim.lo, lim.hi);
}

double to_real_component(std::uint64_t index, double x, ElementType component,
                         ConversionPolicy policy) {
  if (component == ElementType::kFloat32 && policy == ConversionPolicy::kStrict &&
      std::isfinite(x) && std::fabs(x) > static_cast<double>(FLT_MAX)) {
    conversion_overflow(index, Scalar{x}, component);
  }
  return x;
}

}  // namespace

ArrayBlob convert_elem(const ArrayView& array, ElementType target,
                       ConversionPolicy policy) {
  const ElementType source = array.elem();
  if (is_complex(source) && !is_complex(target)) {
    fail(ErrorCode::kTypeMismatch, "cannot convert complex " +
                                       std::string(element_type_name(source)) +
                                       " to real " + std::string(element_type_name(target)));
  }
  ArrayHeader h{array.storage(), target, array.dims()};
  if (h.storage == StorageClass::kShort && short_class_violation(target, h.dims)) {
    h.storage = StorageClass::kMax;
  }
  const std::size_t w = byte_width(target);
  Bytes payload(h.payload_size());
  const std::span<std::byte> out(payload);
  for (std::uint64_t i = 0; i < array.count(); ++i) {
    const Scalar v = array.load(i);
    const auto cell = out.subspan(i * w, w);
    if (is_integer(target)) {
      store_element(target, Scalar{to_integer(i, v, target, policy)}, cell);
      continue;
    }
    const ElementType component =
        component_width(target) == 4 ? ElementType::kFloat32 : ElementType::kFloat64;
    if (is_complex(target)) {
      std::complex<double> z;
      if (const auto* c = std::get_if<std::complex<double>>(&v)) {
        z = *c;
      } else if (const auto* n = std::get_if<std::int64_t>(&v)) {
        z = {static_cast<double>(*n), 0.0};
      } else {
        z = {std::get<double>(v), 0.0};
      }
      const double re = to_real_component(i, z.real(), component, policy);
      const double im = to_real_component(i, z.imag(), component, policy);
      if (component == ElementType::kFloat32) {
        detail::store_le<float>(cell.data(), detail::narrow_float(re));
        detail::store_le<float>(cell.data() + 4, detail::narrow_float(im));
      } else {
        detail::store_le<double>(cell.data(), re);
        detail::store_le<double>(cell.data() + 8, im);
      }
      continue;
    }
    const double x = std::holds_alternative<std::int64_t>(v)
                         ? static_cast<double>(std::get<std::int64_t>(v))
                         : std::get<double>(v);
    if (target == ElementType::kFloat32) {
      // Float32 sources keep their exact bits, NaN payloads included.
      if (source == ElementType::kFloat32) {
        std::copy_n(array.element_bytes(i).begin(), 4, cell.begin());
      } else {
        detail::store_le<float>(cell.data(), detail::narrow_float(
                                                 to_real_component(i, x, component, policy)));
      }
    } else {
      detail::store_le<double>(cell.data(), x);
    }
  }
  return ArrayBlob::assemble(h, payload);
}

ArrayBlob convert_storage(const ArrayView& array, StorageClass target) {
  if (target == StorageClass::kShort) {
    if (const char* why = short_class_violation(array.elem(), array.dims())) {
      fail(ErrorCode::kCapacity, std::string("cannot store as short array: ") + why);
    }
  }
  ArrayHeader h{target, array.elem(), array.dims()};
  return ArrayBlob::assemble(h, array.payload());
}

}  // namespace sciarray
