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

#include "sciarray/sciarray.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <memory>
#include <new>
#include <optional>
#include <sstream>
#include <string>

#include "sciarray/array_ops.hpp"
#include "sciarray/bench.hpp"
#include "sciarray/error.hpp"
#include "sciarray/math_backend.hpp"
#include "sciarray/sql_adapter.hpp"
#include "sciarray/table_bridge.hpp"
#include "sciarray/text_codec.hpp"

struct sciarray_blob {
  sciarray::ArrayBlob blob;
};

struct sciarray_reader {
  sciarray::BlockReader reader;
};

struct sciarray_concat {
  sciarray::ConcatState state;
};

namespace {

using sciarray::ArrayBlob;
using sciarray::Error;
using sciarray::ErrorCode;
using sciarray::Scalar;

static_assert(SCIARRAY_E_INVALID_ARGUMENT == static_cast<int>(ErrorCode::kInvalidArgument));
static_assert(SCIARRAY_E_SQL == static_cast<int>(ErrorCode::kSql));
static_assert(SCIARRAY_E_TYPE_MISMATCH == static_cast<int>(ErrorCode::kTypeMismatch));
static_assert(SCIARRAY_COMPLEX128 == static_cast<int>(sciarray::ElementType::kComplexFloat64));

thread_local std::string g_last_error;

sciarray_status set_error(sciarray_status status, const char* message) {
  g_last_error = message;
  return status;
}

/// Runs `fn`, translating exceptions into status codes.
template <typename Fn>
sciarray_status guarded(Fn&& fn) noexcept {
  try {
    g_last_error.clear();
    fn();
    return SCIARRAY_OK;
  } catch (const Error& e) {
    return set_error(static_cast<sciarray_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(SCIARRAY_E_NO_MEMORY, "out of memory");
  } catch (const std::exception& e) {
    return set_error(SCIARRAY_E_INTERNAL, e.what());
  } catch (...) {
    return set_error(SCIARRAY_E_INTERNAL, "unknown error");
  }
}

void require(const void* p, const char* what) {
  if (p == nullptr) sciarray::fail(ErrorCode::kInvalidArgument, std::string(what) + " is NULL");
}

sciarray::ElementType to_elem(sciarray_elem e) {
  auto t = sciarray::element_type_from_code(static_cast<std::uint8_t>(e));
  if (!t) sciarray::fail(ErrorCode::kUnknownElementType, "unknown element type " + std::to_string(e));
  return *t;
}

Scalar to_scalar(const sciarray_value& v) {
  switch (v.kind) {
    case SCIARRAY_VALUE_INT: return v.i;
    case SCIARRAY_VALUE_REAL: return v.re;
    case SCIARRAY_VALUE_COMPLEX: return std::complex<double>(v.re, v.im);
  }
  sciarray::fail(ErrorCode::kInvalidArgument, "unknown value kind");
}

sciarray_value from_scalar(const Scalar& s) {
  sciarray_value v{SCIARRAY_VALUE_INT, 0, 0.0, 0.0};
  if (const auto* i = std::get_if<std::int64_t>(&s)) {
    v.i = *i;
  } else if (const auto* d = std::get_if<double>(&s)) {
    v.kind = SCIARRAY_VALUE_REAL;
    v.re = *d;
  } else {
    const auto& z = std::get<std::complex<double>>(s);
    v.kind = SCIARRAY_VALUE_COMPLEX;
    v.re = z.real();
    v.im = z.imag();
  }
  return v;
}

template <typename T>
std::span<const T> span_of(const T* p, std::size_t n, const char* what) {
  if (n > 0) require(p, what);
  return {p, n};
}

sciarray_blob* wrap(ArrayBlob blob) { return new sciarray_blob{std::move(blob)}; }

void emit(sciarray_blob** out, ArrayBlob blob) {
  *out = wrap(std::move(blob));
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

bool is_stdio(const char* path) { return path == nullptr || std::strcmp(path, "-") == 0; }

}  // namespace

extern "C" {

const char* sciarray_last_error(void) { return g_last_error.c_str(); }

const char* sciarray_status_name(sciarray_status status) {
  switch (status) {
    case SCIARRAY_E_NO_MEMORY: return "no_memory";
    case SCIARRAY_E_INTERNAL: return "internal";
    default: return sciarray::error_code_name(static_cast<ErrorCode>(status)).data();
  }
}

const char* sciarray_version(void) { return "1.0.0"; }

void sciarray_string_free(char* s) { std::free(s); }

const char* sciarray_elem_name(sciarray_elem elem) {
  const auto t = sciarray::element_type_from_code(static_cast<std::uint8_t>(elem));
  return t ? sciarray::element_type_name(*t).data() : "?";
}

sciarray_status sciarray_elem_parse(const char* name, sciarray_elem* out) {
  return guarded([&] {
    require(name, "name");
    require(out, "out");
    const auto t = sciarray::parse_element_type(name);
    if (!t) {
      sciarray::fail(ErrorCode::kUnknownElementType,
                     std::string("unknown element type '") + name +
                         "', expected one of i8 i16 i32 i64 f32 f64 c64 c128");
    }
    *out = static_cast<sciarray_elem>(sciarray::element_code(*t));
  });
}

size_t sciarray_elem_width(sciarray_elem elem) {
  const auto t = sciarray::element_type_from_code(static_cast<std::uint8_t>(elem));
  return t ? sciarray::byte_width(*t) : 0;
}

sciarray_status sciarray_blob_from_bytes(const void* bytes, size_t size, sciarray_blob** out) {
  return guarded([&] {
    require(out, "out");
    if (size > 0) require(bytes, "bytes");
    emit(out, ArrayBlob::from_bytes(
                  std::span<const std::byte>(static_cast<const std::byte*>(bytes), size)));
  });
}

void sciarray_blob_free(sciarray_blob* blob) { delete blob; }

const uint8_t* sciarray_blob_bytes(const sciarray_blob* blob, size_t* size) {
  if (blob == nullptr) return nullptr;
  if (size) *size = blob->blob.bytes().size();
  return reinterpret_cast<const uint8_t*>(blob->blob.bytes().data());
}

sciarray_elem sciarray_blob_elem(const sciarray_blob* blob) {
  return static_cast<sciarray_elem>(sciarray::element_code(blob->blob.elem()));
}

sciarray_storage sciarray_blob_storage(const sciarray_blob* blob) {
  return static_cast<sciarray_storage>(blob->blob.storage());
}

size_t sciarray_blob_rank(const sciarray_blob* blob) { return blob->blob.rank(); }

uint32_t sciarray_blob_dim(const sciarray_blob* blob, size_t d) {
  return d < blob->blob.rank() ? blob->blob.dims()[d] : 0;
}

uint64_t sciarray_blob_count(const sciarray_blob* blob) { return blob->blob.count(); }

size_t sciarray_blob_header_size(const sciarray_blob* blob) {
  return blob->blob.header().encoded_size();
}

sciarray_status sciarray_blob_read_file(const char* path, sciarray_blob** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    emit(out, ArrayBlob::from_bytes(sciarray::read_file(path)));
  });
}

sciarray_status sciarray_blob_write_file(const sciarray_blob* blob, const char* path) {
  return guarded([&] {
    require(blob, "blob");
    require(path, "path");
    sciarray::write_file(path, blob->blob.bytes());
  });
}

sciarray_status sciarray_make_array(sciarray_elem elem, const uint32_t* dims, size_t rank,
                                    const sciarray_value* values, size_t count,
                                    sciarray_blob** out) {
  return guarded([&] {
    require(out, "out");
    std::vector<Scalar> scalars;
    scalars.reserve(count);
    for (const auto& v : span_of(values, count, "values")) scalars.push_back(to_scalar(v));
    emit(out, sciarray::make_array(to_elem(elem), span_of(dims, rank, "dims"), scalars));
  });
}

sciarray_status sciarray_make_filled(sciarray_elem elem, const uint32_t* dims, size_t rank,
                                     sciarray_value fill, sciarray_blob** out) {
  return guarded([&] {
    require(out, "out");
    emit(out, sciarray::make_filled(to_elem(elem), span_of(dims, rank, "dims"), to_scalar(fill)));
  });
}

sciarray_status sciarray_cast_raw(sciarray_elem elem, const uint32_t* dims, size_t rank,
                                  const void* raw, size_t size, sciarray_blob** out) {
  return guarded([&] {
    require(out, "out");
    if (size > 0) require(raw, "raw");
    emit(out, sciarray::cast_raw(to_elem(elem), span_of(dims, rank, "dims"),
                                 {static_cast<const std::byte*>(raw), size}));
  });
}

const uint8_t* sciarray_raw(const sciarray_blob* blob, size_t* size) {
  if (blob == nullptr) return nullptr;
  const auto payload = sciarray::raw(blob->blob);
  if (size) *size = payload.size();
  return reinterpret_cast<const uint8_t*>(payload.data());
}

sciarray_status sciarray_item(const sciarray_blob* blob, const int64_t* indices, size_t n,
                              sciarray_value* out) {
  return guarded([&] {
    require(blob, "blob");
    require(out, "out");
    *out = from_scalar(sciarray::item(blob->blob, span_of(indices, n, "indices")));
  });
}

sciarray_status sciarray_update_item(const sciarray_blob* blob, const int64_t* indices,
                                     size_t n, sciarray_value value, sciarray_blob** out) {
  return guarded([&] {
    require(blob, "blob");
    require(out, "out");
    emit(out, sciarray::update_item(blob->blob, span_of(indices, n, "indices"), to_scalar(value)));
  });
}

namespace {

sciarray::SubarrayRange make_range(const int64_t* offset, const int64_t* length, size_t rank) {
  const auto o = span_of(offset, rank, "offset");
  const auto l = span_of(length, rank, "length");
  return {{o.begin(), o.end()}, {l.begin(), l.end()}};
}

}  // namespace

sciarray_status sciarray_subarray(const sciarray_blob* blob, const int64_t* offset,
                                  const int64_t* length, size_t rank, int squeeze,
                                  sciarray_blob** out) {
  return guarded([&] {
    require(blob, "blob");
    require(out, "out");
    emit(out, sciarray::subarray(blob->blob, make_range(offset, length, rank), squeeze != 0));
  });
}

sciarray_status sciarray_reshape(const sciarray_blob* blob, const uint32_t* dims, size_t rank,
                                 sciarray_blob** out) {
  return guarded([&] {
    require(blob, "blob");
    require(out, "out");
    emit(out, sciarray::reshape(blob->blob, span_of(dims, rank, "dims")));
  });
}

sciarray_status sciarray_convert_elem(const sciarray_blob* blob, sciarray_elem target,
                                      sciarray_conversion policy, sciarray_blob** out) {
  return guarded([&] {
    require(blob, "blob");
    require(out, "out");
    const auto p = policy == SCIARRAY_CONVERT_SATURATE ? sciarray::ConversionPolicy::kSaturate
                                                       : sciarray::ConversionPolicy::kStrict;
    emit(out, sciarray::convert_elem(blob->blob, to_elem(target), p));
  });
}

sciarray_status sciarray_convert_storage(const sciarray_blob* blob, sciarray_storage target,
                                         sciarray_blob** out) {
  return guarded([&] {
    require(blob, "blob");
    require(out, "out");
    emit(out, sciarray::convert_storage(blob->blob, target == SCIARRAY_MAX
                                                        ? sciarray::StorageClass::kMax
                                                        : sciarray::StorageClass::kShort));
  });
}

sciarray_status sciarray_to_text(const sciarray_blob* blob, char** out) {
  return guarded([&] {
    require(blob, "blob");
    require(out, "out");
    *out = copy_string(sciarray::to_text(blob->blob));
  });
}

sciarray_status sciarray_from_text(sciarray_elem elem, const char* text, sciarray_blob** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    emit(out, sciarray::from_text(to_elem(elem), text));
  });
}

sciarray_status sciarray_reader_open_file(const char* path, sciarray_reader** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new sciarray_reader{sciarray::BlockReader::open_file(path)};
  });
}

sciarray_status sciarray_reader_open_memory(const void* bytes, size_t size,
                                            sciarray_reader** out) {
  return guarded([&] {
    require(out, "out");
    if (size > 0) require(bytes, "bytes");
    const auto* p = static_cast<const std::byte*>(bytes);
    *out = new sciarray_reader{sciarray::BlockReader(
        std::make_unique<sciarray::OwnedMemorySource>(sciarray::Bytes(p, p + size)))};
  });
}

void sciarray_reader_free(sciarray_reader* reader) { delete reader; }

uint64_t sciarray_reader_bytes_read(const sciarray_reader* reader) {
  return reader->reader.bytes_read();
}

uint64_t sciarray_reader_read_calls(const sciarray_reader* reader) {
  return reader->reader.read_calls();
}

void sciarray_reader_reset_counters(sciarray_reader* reader) { reader->reader.reset_counters(); }

sciarray_status sciarray_reader_item(sciarray_reader* reader, const int64_t* indices, size_t n,
                                     sciarray_value* out) {
  return guarded([&] {
    require(reader, "reader");
    require(out, "out");
    *out = from_scalar(sciarray::item_streamed(reader->reader, span_of(indices, n, "indices")));
  });
}

sciarray_status sciarray_reader_subarray(sciarray_reader* reader, const int64_t* offset,
                                         const int64_t* length, size_t rank, int squeeze,
                                         sciarray_blob** out) {
  return guarded([&] {
    require(reader, "reader");
    require(out, "out");
    emit(out, sciarray::subarray_streamed(reader->reader, make_range(offset, length, rank),
                                          squeeze != 0));
  });
}

namespace {

sciarray::MissingCellPolicy to_missing(sciarray_missing policy) {
  return policy == SCIARRAY_MISSING_ZERO_FILL ? sciarray::MissingCellPolicy::kZeroFill
                                              : sciarray::MissingCellPolicy::kStrict;
}

}  // namespace

sciarray_status sciarray_concat_new(sciarray_elem elem, const uint32_t* dims, size_t rank,
                                    sciarray_missing policy, sciarray_concat** out) {
  return guarded([&] {
    require(out, "out");
    const auto d = span_of(dims, rank, "dims");
    *out = new sciarray_concat{
        sciarray::ConcatState(to_elem(elem), sciarray::Dims(d.begin(), d.end()), to_missing(policy))};
  });
}

void sciarray_concat_free(sciarray_concat* state) { delete state; }

sciarray_status sciarray_concat_add(sciarray_concat* state, const int64_t* indices, size_t n,
                                    sciarray_value value) {
  return guarded([&] {
    require(state, "state");
    state->state.accumulate(span_of(indices, n, "indices"), to_scalar(value));
  });
}

sciarray_status sciarray_concat_finish(const sciarray_concat* state, sciarray_blob** out) {
  return guarded([&] {
    require(state, "state");
    require(out, "out");
    emit(out, state->state.finish());
  });
}

sciarray_status sciarray_to_table(const sciarray_blob* blob, sciarray_row_fn fn, void* user) {
  return guarded([&] {
    require(blob, "blob");
    if (fn == nullptr) sciarray::fail(ErrorCode::kInvalidArgument, "callback is NULL");
    sciarray::TableRows rows(blob->blob);
    sciarray::IndexedValue row;
    while (rows.next(row)) {
      const sciarray_value v = from_scalar(row.value);
      if (fn(user, row.indices.data(), row.indices.size(), &v) != 0) break;
    }
  });
}

sciarray_status sciarray_write_csv(const sciarray_blob* blob, const char* path) {
  return guarded([&] {
    require(blob, "blob");
    if (is_stdio(path)) {
      sciarray::write_csv(blob->blob, std::cout);
      std::cout.flush();
      return;
    }
    std::ofstream out(path);
    if (!out) sciarray::fail(ErrorCode::kIo, std::string("cannot open ") + path + " for writing");
    sciarray::write_csv(blob->blob, out);
    if (!out.flush()) sciarray::fail(ErrorCode::kIo, std::string("failed writing ") + path);
  });
}

sciarray_status sciarray_read_csv(const char* path, sciarray_elem elem, const uint32_t* dims,
                                  size_t rank, sciarray_missing policy, sciarray_blob** out) {
  return guarded([&] {
    require(out, "out");
    const auto d = span_of(dims, rank, "dims");
    const sciarray::Dims shape(d.begin(), d.end());
    if (is_stdio(path)) {
      emit(out, sciarray::read_csv(std::cin, to_elem(elem), shape, to_missing(policy)));
      return;
    }
    std::ifstream in(path);
    if (!in) {
      sciarray::fail(ErrorCode::kIo,
                     std::string("cannot open ") + path + ": file not found or unreadable");
    }
    emit(out, sciarray::read_csv(in, to_elem(elem), shape, to_missing(policy)));
  });
}

sciarray_status sciarray_fft_forward(const sciarray_blob* blob, sciarray_blob** out) {
  return guarded([&] {
    require(blob, "blob");
    require(out, "out");
    emit(out, sciarray::fft_forward(blob->blob));
  });
}

sciarray_status sciarray_fft_inverse(const sciarray_blob* blob, sciarray_blob** out) {
  return guarded([&] {
    require(blob, "blob");
    require(out, "out");
    emit(out, sciarray::fft_inverse(blob->blob));
  });
}

sciarray_status sciarray_svd(const sciarray_blob* matrix, sciarray_svd_mode mode,
                             sciarray_blob** u, sciarray_blob** s, sciarray_blob** vt) {
  return guarded([&] {
    require(matrix, "matrix");
    auto r = sciarray::svd(matrix->blob, mode == SCIARRAY_SVD_FULL ? sciarray::SvdMode::kFull
                                                                   : sciarray::SvdMode::kThin);
    // Allocate all handles before publishing any.
    std::unique_ptr<sciarray_blob> hu(wrap(std::move(r.u)));
    std::unique_ptr<sciarray_blob> hs(wrap(std::move(r.s)));
    std::unique_ptr<sciarray_blob> hv(wrap(std::move(r.vt)));
    if (u) *u = hu.release();
    if (s) *s = hs.release();
    if (vt) *vt = hv.release();
  });
}

sciarray_status sciarray_select_backend(const char* name) {
  return guarded([&] {
    require(name, "name");
    sciarray::select_backend(name);
  });
}

const char* sciarray_active_backend(void) {
  thread_local std::string name;
  name = sciarray::active_backend()->name();
  return name.c_str();
}

sciarray_status sciarray_sqlite_register(struct sqlite3* db, int* count) {
  return guarded([&] {
    require(db, "db");
    const int n = sciarray::sql::register_all(db);
    if (count) *count = n;
  });
}

void sciarray_bench_config_init(sciarray_bench_config* config) {
  if (config == nullptr) return;
  const sciarray::BenchConfig d;
  config->rows = d.rows;
  config->vector_dim = d.vector_dim;
  config->elem = static_cast<sciarray_elem>(sciarray::element_code(d.elem));
  config->repetitions = d.repetitions;
  config->seed = d.seed;
  config->concat_cells = d.concat_cells;
  config->work_dir = nullptr;
  config->keep_files = 0;
}

sciarray_status sciarray_bench_run(const sciarray_bench_config* config, char** csv, char** text) {
  return guarded([&] {
    require(config, "config");
    sciarray::BenchConfig c;
    c.rows = config->rows;
    c.vector_dim = config->vector_dim;
    c.elem = to_elem(config->elem);
    c.repetitions = config->repetitions;
    c.seed = config->seed;
    c.concat_cells = config->concat_cells;
    if (config->work_dir) c.work_dir = config->work_dir;
    c.keep_files = config->keep_files != 0;
    const sciarray::BenchReport report = sciarray::run_bench(c);
    std::ostringstream csv_out, text_out;
    sciarray::write_bench_csv(report, csv_out);
    sciarray::write_bench_text(report, text_out);
    char* csv_str = copy_string(csv_out.str());
    char* text_str = nullptr;
    try {
      text_str = copy_string(text_out.str());
    } catch (...) {
      std::free(csv_str);
      throw;
    }
    if (csv) *csv = csv_str; else std::free(csv_str);
    if (text) *text = text_str; else std::free(text_str);
  });
}

}  // extern "C"
