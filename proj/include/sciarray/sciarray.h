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

/*
 * C interface to libsciarray.
 *
 * Every fallible call returns a sciarray_status. On failure a one-line
 * message is available from sciarray_last_error() on the calling thread
 * until its next call into the library. Objects are opaque handles created
 * by the library and released with the matching *_free function; functions
 * never take ownership of handles passed in. Strings returned through char**
 * parameters are released with sciarray_string_free.
 *
 * Arrays are stored column-major. Value lists passed to constructors are in
 * storage order: element (i, j) of a rows x cols matrix is values[i + j*rows].
 */

#ifndef SCIARRAY_SCIARRAY_H_
#define SCIARRAY_SCIARRAY_H_

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(__GNUC__)
#define SCIARRAY_API __attribute__((visibility("default")))
#else
#define SCIARRAY_API
#endif

typedef enum sciarray_status {
  SCIARRAY_OK = 0,
  SCIARRAY_E_FORMAT = 1,
  SCIARRAY_E_UNKNOWN_ELEMENT_TYPE = 2,
  SCIARRAY_E_INVALID_RANK = 3,
  SCIARRAY_E_OVERFLOW = 4,
  SCIARRAY_E_TRUNCATED = 5,
  SCIARRAY_E_COUNT_MISMATCH = 6,
  SCIARRAY_E_CAPACITY = 7,
  SCIARRAY_E_BOUNDS = 8,
  SCIARRAY_E_SHAPE = 9,
  SCIARRAY_E_RANGE = 10,
  SCIARRAY_E_TYPE_MISMATCH = 11,
  SCIARRAY_E_CONFLICT = 12,
  SCIARRAY_E_COVERAGE = 13,
  SCIARRAY_E_PARSE = 14,
  SCIARRAY_E_NUMERICAL = 15,
  SCIARRAY_E_LOOKUP = 16,
  SCIARRAY_E_UNSUPPORTED = 17,
  SCIARRAY_E_BACKEND_REJECTED = 18,
  SCIARRAY_E_IO = 19,
  SCIARRAY_E_SQL = 20,
  SCIARRAY_E_INVALID_ARGUMENT = 21,
  SCIARRAY_E_NO_MEMORY = 22,
  SCIARRAY_E_INTERNAL = 23
} sciarray_status;

/* Values are the element codes stored in blob headers. */
typedef enum sciarray_elem {
  SCIARRAY_INT8 = 1,
  SCIARRAY_INT16 = 2,
  SCIARRAY_INT32 = 3,
  SCIARRAY_INT64 = 4,
  SCIARRAY_FLOAT32 = 5,
  SCIARRAY_FLOAT64 = 6,
  SCIARRAY_COMPLEX64 = 7,
  SCIARRAY_COMPLEX128 = 8
} sciarray_elem;

typedef enum sciarray_storage { SCIARRAY_SHORT = 0, SCIARRAY_MAX = 1 } sciarray_storage;

typedef enum sciarray_conversion {
  SCIARRAY_CONVERT_STRICT = 0,
  SCIARRAY_CONVERT_SATURATE = 1
} sciarray_conversion;

typedef enum sciarray_missing {
  SCIARRAY_MISSING_STRICT = 0,
  SCIARRAY_MISSING_ZERO_FILL = 1
} sciarray_missing;

typedef enum sciarray_svd_mode { SCIARRAY_SVD_THIN = 0, SCIARRAY_SVD_FULL = 1 } sciarray_svd_mode;

typedef enum sciarray_value_kind {
  SCIARRAY_VALUE_INT = 0,
  SCIARRAY_VALUE_REAL = 1,
  SCIARRAY_VALUE_COMPLEX = 2
} sciarray_value_kind;

/* One element. INT uses i, REAL uses re, COMPLEX uses re and im. */
typedef struct sciarray_value {
  sciarray_value_kind kind;
  int64_t i;
  double re;
  double im;
} sciarray_value;

typedef struct sciarray_blob sciarray_blob;
typedef struct sciarray_reader sciarray_reader;
typedef struct sciarray_concat sciarray_concat;

/* Errors and versions */

SCIARRAY_API const char* sciarray_last_error(void);
SCIARRAY_API const char* sciarray_status_name(sciarray_status status);
SCIARRAY_API const char* sciarray_version(void);
SCIARRAY_API void sciarray_string_free(char* s);

/* Element types */

SCIARRAY_API const char* sciarray_elem_name(sciarray_elem elem);
/* Accepts i8 i16 i32 i64 f32 f64 c64 c128. */
SCIARRAY_API sciarray_status sciarray_elem_parse(const char* name, sciarray_elem* out);
SCIARRAY_API size_t sciarray_elem_width(sciarray_elem elem);

/* Blobs */

/* Copies and validates encoded bytes. */
SCIARRAY_API sciarray_status sciarray_blob_from_bytes(const void* bytes, size_t size,
                                                      sciarray_blob** out);
SCIARRAY_API void sciarray_blob_free(sciarray_blob* blob);
SCIARRAY_API const uint8_t* sciarray_blob_bytes(const sciarray_blob* blob, size_t* size);
SCIARRAY_API sciarray_elem sciarray_blob_elem(const sciarray_blob* blob);
SCIARRAY_API sciarray_storage sciarray_blob_storage(const sciarray_blob* blob);
SCIARRAY_API size_t sciarray_blob_rank(const sciarray_blob* blob);
SCIARRAY_API uint32_t sciarray_blob_dim(const sciarray_blob* blob, size_t d);
SCIARRAY_API uint64_t sciarray_blob_count(const sciarray_blob* blob);
SCIARRAY_API size_t sciarray_blob_header_size(const sciarray_blob* blob);
SCIARRAY_API sciarray_status sciarray_blob_read_file(const char* path, sciarray_blob** out);
SCIARRAY_API sciarray_status sciarray_blob_write_file(const sciarray_blob* blob, const char* path);

/* Construction. Storage class is chosen from the size. */

SCIARRAY_API sciarray_status sciarray_make_array(sciarray_elem elem, const uint32_t* dims,
                                                 size_t rank, const sciarray_value* values,
                                                 size_t count, sciarray_blob** out);
SCIARRAY_API sciarray_status sciarray_make_filled(sciarray_elem elem, const uint32_t* dims,
                                                  size_t rank, sciarray_value fill,
                                                  sciarray_blob** out);
/* Prefixes little-endian payload bytes with a header. */
SCIARRAY_API sciarray_status sciarray_cast_raw(sciarray_elem elem, const uint32_t* dims,
                                               size_t rank, const void* raw, size_t size,
                                               sciarray_blob** out);
/* Payload bytes, valid while the blob lives. */
SCIARRAY_API const uint8_t* sciarray_raw(const sciarray_blob* blob, size_t* size);

/* Element access and shape */

SCIARRAY_API sciarray_status sciarray_item(const sciarray_blob* blob, const int64_t* indices,
                                           size_t n, sciarray_value* out);
SCIARRAY_API sciarray_status sciarray_update_item(const sciarray_blob* blob,
                                                  const int64_t* indices, size_t n,
                                                  sciarray_value value, sciarray_blob** out);
/* Contiguous window; squeeze drops every length-1 dimension. */
SCIARRAY_API sciarray_status sciarray_subarray(const sciarray_blob* blob, const int64_t* offset,
                                               const int64_t* length, size_t rank, int squeeze,
                                               sciarray_blob** out);
SCIARRAY_API sciarray_status sciarray_reshape(const sciarray_blob* blob, const uint32_t* dims,
                                              size_t rank, sciarray_blob** out);
SCIARRAY_API sciarray_status sciarray_convert_elem(const sciarray_blob* blob,
                                                   sciarray_elem target,
                                                   sciarray_conversion policy,
                                                   sciarray_blob** out);
SCIARRAY_API sciarray_status sciarray_convert_storage(const sciarray_blob* blob,
                                                      sciarray_storage target,
                                                      sciarray_blob** out);

/* Text form: nested braces, innermost along dimension 0. */

SCIARRAY_API sciarray_status sciarray_to_text(const sciarray_blob* blob, char** out);
SCIARRAY_API sciarray_status sciarray_from_text(sciarray_elem elem, const char* text,
                                                sciarray_blob** out);

/* Streamed access through a counting reader */

SCIARRAY_API sciarray_status sciarray_reader_open_file(const char* path, sciarray_reader** out);
/* Copies the bytes. */
SCIARRAY_API sciarray_status sciarray_reader_open_memory(const void* bytes, size_t size,
                                                         sciarray_reader** out);
SCIARRAY_API void sciarray_reader_free(sciarray_reader* reader);
SCIARRAY_API uint64_t sciarray_reader_bytes_read(const sciarray_reader* reader);
SCIARRAY_API uint64_t sciarray_reader_read_calls(const sciarray_reader* reader);
SCIARRAY_API void sciarray_reader_reset_counters(sciarray_reader* reader);
SCIARRAY_API sciarray_status sciarray_reader_item(sciarray_reader* reader,
                                                  const int64_t* indices, size_t n,
                                                  sciarray_value* out);
SCIARRAY_API sciarray_status sciarray_reader_subarray(sciarray_reader* reader,
                                                      const int64_t* offset,
                                                      const int64_t* length, size_t rank,
                                                      int squeeze, sciarray_blob** out);

/* Tables */

SCIARRAY_API sciarray_status sciarray_concat_new(sciarray_elem elem, const uint32_t* dims,
                                                 size_t rank, sciarray_missing policy,
                                                 sciarray_concat** out);
SCIARRAY_API void sciarray_concat_free(sciarray_concat* state);
SCIARRAY_API sciarray_status sciarray_concat_add(sciarray_concat* state, const int64_t* indices,
                                                 size_t n, sciarray_value value);
SCIARRAY_API sciarray_status sciarray_concat_finish(const sciarray_concat* state,
                                                    sciarray_blob** out);

/* Called once per element in column-major order; return nonzero to stop. */
typedef int (*sciarray_row_fn)(void* user, const int64_t* indices, size_t rank,
                               const sciarray_value* value);
SCIARRAY_API sciarray_status sciarray_to_table(const sciarray_blob* blob, sciarray_row_fn fn,
                                               void* user);
/* CSV with header i_0,...,value. A NULL or "-" path means standard output
 * for writing and standard input for reading. rank 0 infers dims. */
SCIARRAY_API sciarray_status sciarray_write_csv(const sciarray_blob* blob, const char* path);
SCIARRAY_API sciarray_status sciarray_read_csv(const char* path, sciarray_elem elem,
                                               const uint32_t* dims, size_t rank,
                                               sciarray_missing policy, sciarray_blob** out);

/* Math */

SCIARRAY_API sciarray_status sciarray_fft_forward(const sciarray_blob* blob, sciarray_blob** out);
SCIARRAY_API sciarray_status sciarray_fft_inverse(const sciarray_blob* blob, sciarray_blob** out);
SCIARRAY_API sciarray_status sciarray_svd(const sciarray_blob* matrix, sciarray_svd_mode mode,
                                          sciarray_blob** u, sciarray_blob** s,
                                          sciarray_blob** vt);
SCIARRAY_API sciarray_status sciarray_select_backend(const char* name);
/* Name of the active backend; static storage until the next selection. */
SCIARRAY_API const char* sciarray_active_backend(void);

/* SQL */

struct sqlite3;
/* Registers the SQL functions and ArrayToTable on an open connection. */
SCIARRAY_API sciarray_status sciarray_sqlite_register(struct sqlite3* db, int* count);

/* Benchmark */

typedef struct sciarray_bench_config {
  uint64_t rows;
  uint32_t vector_dim;
  sciarray_elem elem;
  int repetitions;
  uint64_t seed;
  uint64_t concat_cells;
  const char* work_dir; /* NULL: temporary directory */
  int keep_files;
} sciarray_bench_config;

SCIARRAY_API void sciarray_bench_config_init(sciarray_bench_config* config);
/* Runs the benchmark; csv and text receive the two report forms and may be NULL. */
SCIARRAY_API sciarray_status sciarray_bench_run(const sciarray_bench_config* config, char** csv,
                                                char** text);

#ifdef __cplusplus
}
#endif

#endif /* SCIARRAY_SCIARRAY_H_ */
