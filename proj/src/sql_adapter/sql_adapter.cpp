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

#include "sciarray/sql_adapter.hpp"

#include <sqlite3.h>

#include <cstring>
#include <memory>
#include <new>
#include <string>
#include <string_view>

#include "sciarray/array_ops.hpp"
#include "sciarray/error.hpp"
#include "sciarray/math_backend.hpp"
#include "sciarray/table_bridge.hpp"
#include "sciarray/text_codec.hpp"

namespace sciarray::sql {
namespace {

enum class Op {
  kVector, kMatrix, kItem, kUpdateItem, kSubarray, kReshape, kCast, kRaw,
  kToString, kFromString, kConvert, kToMax, kToShort, kDims, kRank, kCount,
  kFftForward, kFftInverse, kSvd, kSvdU, kSvdVt, kEmpty, kConcatQuery,
  kConcat, kConcatFill,
};

struct Prefix {
  const char* name;
  ElementType elem;
};

constexpr Prefix kPrefixes[] = {
    {"TinyIntArray", ElementType::kInt8},
    {"SmallIntArray", ElementType::kInt16},
    {"IntArray", ElementType::kInt32},
    {"BigIntArray", ElementType::kInt64},
    {"RealArray", ElementType::kFloat32},
    {"FloatArray", ElementType::kFloat64},
    {"RealComplexArray", ElementType::kComplexFloat32},
    {"FloatComplexArray", ElementType::kComplexFloat64},
};

struct Binding {
  FunctionInfo info;
  Op op;
  ElementType elem;
  bool max;
  int n;
};

std::vector<Binding> build_bindings() {
  std::vector<Binding> out;
  for (const Prefix& p : kPrefixes) {
    for (bool max : {false, true}) {
      const std::string base = std::string(p.name) + (max ? "Max" : "") + "_";
      auto add = [&](const std::string& suffix, const char* family, Op op, int arity,
                     std::string summary, int n = 0, bool aggregate = false) {
        out.push_back({{base + suffix, family, arity, aggregate, std::move(summary)},
                       op, p.elem, max, n});
      };
      for (int n = 1; n <= 6; ++n) {
        add("Vector_" + std::to_string(n), "Vector", Op::kVector, n,
            "rank-1 array of the arguments", n);
      }
      for (int n = 1; n <= 4; ++n) {
        add("Matrix_" + std::to_string(n), "Matrix", Op::kMatrix, n * n,
            "n x n matrix, arguments in column-major order", n);
      }
      for (int n = 1; n <= 6; ++n) {
        add("Item_" + std::to_string(n), "Item", Op::kItem, n + 1,
            "element at n zero-based indices", n);
      }
      for (int n = 1; n <= 6; ++n) {
        add("UpdateItem_" + std::to_string(n), "UpdateItem", Op::kUpdateItem, n + 2,
            "copy with one element replaced", n);
      }
      add("Subarray", "Subarray", Op::kSubarray, 4,
          "contiguous window (array, offsets, lengths, squeeze)");
      add("Reshape", "Reshape", Op::kReshape, 2, "same payload under new dimensions");
      add("Cast", "Cast", Op::kCast, 1, "vector over raw little-endian bytes");
      add("Cast", "Cast", Op::kCast, 2, "array over raw bytes with the given dimensions");
      add("Raw", "Raw", Op::kRaw, 1, "payload bytes without the header");
      add("ToString", "ToString", Op::kToString, 1, "nested-brace text form");
      add("FromString", "FromString", Op::kFromString, 1, "parse the nested-brace text form");
      add("Convert", "Convert", Op::kConvert, 2, "convert elements to another type, strict");
      add("Convert", "Convert", Op::kConvert, 3,
          "convert elements with policy 'strict' or 'saturate'");
      add("ToMax", "ToMax", Op::kToMax, 1, "re-encode with the Max header");
      add("ToShort", "ToShort", Op::kToShort, 1, "re-encode with the Short header");
      add("Dims", "Dims", Op::kDims, 1, "dimensions as an IntArray vector");
      add("Rank", "Rank", Op::kRank, 1, "number of dimensions");
      add("Count", "Count", Op::kCount, 1, "number of elements");
      add("EmptyFunction", "EmptyFunction", Op::kEmpty, 1,
          "returns 0 without reading the array; measures call overhead");
      add("ConcatQuery", "ConcatQuery", Op::kConcatQuery, 2,
          "array from the rows of a query (shape, sql), strict");
      add("ConcatQuery", "ConcatQuery", Op::kConcatQuery, 3,
          "array from the rows of a query with policy 'strict' or 'zero_fill'");
      add("Concat", "Concat", Op::kConcat, 3,
          "aggregate (shape, index, value); every cell exactly once", 0, true);
      add("ConcatFill", "ConcatFill", Op::kConcatFill, 3,
          "aggregate (shape, index, value); missing cells are zero", 0, true);
      if (!is_integer(p.elem)) {
        add("FFTForward", "FFTForward", Op::kFftForward, 1,
            "unnormalized n-dimensional DFT, complex result");
        add("FFTInverse", "FFTInverse", Op::kFftInverse, 1,
            "inverse n-dimensional DFT with 1/N scaling");
      }
      if (is_real_float(p.elem)) {
        for (int arity : {1, 2}) {
          const char* mode = arity == 1 ? "" : ", mode 'thin' or 'full'";
          add("SVD", "SVD", Op::kSvd, arity, std::string("singular values") + mode);
          add("SVD_U", "SVD", Op::kSvdU, arity, std::string("left singular vectors") + mode);
          add("SVD_VT", "SVD", Op::kSvdVt, arity,
              std::string("transposed right singular vectors") + mode);
        }
      }
    }
  }
  return out;
}

const std::vector<Binding>& bindings() {
  static const std::vector<Binding> b = build_bindings();
  return b;
}

// Argument and result helpers

std::span<const std::byte> blob_bytes(sqlite3_value* v) {
  if (sqlite3_value_type(v) != SQLITE_BLOB) {
    fail(ErrorCode::kTypeMismatch, "expected an array blob argument");
  }
  const auto* p = static_cast<const std::byte*>(sqlite3_value_blob(v));
  return {p, static_cast<std::size_t>(sqlite3_value_bytes(v))};
}

ArrayView any_array(sqlite3_value* v) { return ArrayView::parse(blob_bytes(v)); }

ArrayView typed_array(sqlite3_value* v, ElementType elem) {
  ArrayView view = any_array(v);
  require_element_type(view, elem);
  return view;
}

std::string_view text_arg(sqlite3_value* v) {
  const auto* p = reinterpret_cast<const char*>(sqlite3_value_text(v));
  return {p ? p : "", static_cast<std::size_t>(sqlite3_value_bytes(v))};
}

Scalar scalar_arg(sqlite3_value* v, ElementType elem) {
  switch (sqlite3_value_type(v)) {
    case SQLITE_INTEGER: return std::int64_t{sqlite3_value_int64(v)};
    case SQLITE_FLOAT: return sqlite3_value_double(v);
    case SQLITE_TEXT: {
      // Accepts the element spellings of the text form: "(1,2)", "nan", "-inf".
      const ArrayBlob one = from_text(elem, "{" + std::string(text_arg(v)) + "}");
      if (one.count() != 1) fail(ErrorCode::kParse, "expected a single value");
      return one.load(0);
    }
    default: fail(ErrorCode::kTypeMismatch, "expected a numeric argument");
  }
}

std::int64_t index_arg(sqlite3_value* v) {
  if (sqlite3_value_type(v) == SQLITE_INTEGER) return sqlite3_value_int64(v);
  if (sqlite3_value_type(v) == SQLITE_FLOAT) {
    const double d = sqlite3_value_double(v);
    if (d == static_cast<double>(static_cast<std::int64_t>(d))) return static_cast<std::int64_t>(d);
  }
  fail(ErrorCode::kInvalidArgument, "index arguments must be integers");
}

/// An index given either as an integer array blob or, for rank 1, an integer.
std::vector<std::int64_t> index_list(sqlite3_value* v) {
  if (sqlite3_value_type(v) == SQLITE_BLOB) return indices_from_blob(any_array(v));
  return {index_arg(v)};
}

MissingCellPolicy missing_policy(std::string_view name) {
  if (name == "strict") return MissingCellPolicy::kStrict;
  if (name == "zero_fill") return MissingCellPolicy::kZeroFill;
  fail(ErrorCode::kInvalidArgument,
       "unknown policy '" + std::string(name) + "', expected strict or zero_fill");
}

ElementType target_type(std::string_view name) {
  if (auto t = parse_element_type(name)) return *t;
  std::string_view bare = name;
  if (bare.size() > 3 && bare.substr(bare.size() - 3) == "Max") bare.remove_suffix(3);
  for (const Prefix& p : kPrefixes) {
    if (bare == p.name) return p.elem;
  }
  fail(ErrorCode::kInvalidArgument, "unknown element type '" + std::string(name) + "'");
}

void result_array(sqlite3_context* ctx, const ArrayBlob& blob) {
  sqlite3_result_blob64(ctx, blob.bytes().data(), blob.bytes().size(), SQLITE_TRANSIENT);
}

void result_bytes(sqlite3_context* ctx, std::span<const std::byte> bytes) {
  // A zero-length blob rather than NULL for an empty payload.
  if (bytes.empty()) {
    sqlite3_result_zeroblob(ctx, 0);
    return;
  }
  sqlite3_result_blob64(ctx, bytes.data(), bytes.size(), SQLITE_TRANSIENT);
}

void result_scalar(sqlite3_context* ctx, ElementType elem, const Scalar& value) {
  if (const auto* i = std::get_if<std::int64_t>(&value)) {
    sqlite3_result_int64(ctx, *i);
  } else if (const auto* d = std::get_if<double>(&value)) {
    sqlite3_result_double(ctx, *d);
  } else {
    std::byte cell[16];
    store_element(elem, value, std::span<std::byte>(cell, byte_width(elem)));
    const std::string text = format_element(elem, std::span<const std::byte>(cell, byte_width(elem)));
    sqlite3_result_text(ctx, text.data(), static_cast<int>(text.size()), SQLITE_TRANSIENT);
  }
}

void result_text(sqlite3_context* ctx, const std::string& text) {
  sqlite3_result_text64(ctx, text.data(), text.size(), SQLITE_TRANSIENT, SQLITE_UTF8);
}

/// Constructors under the Max prefix always produce Max arrays.
ArrayBlob constructed(const Binding& b, ArrayBlob blob) {
  if (b.max && blob.storage() == StorageClass::kShort) {
    return convert_storage(blob, StorageClass::kMax);
  }
  return blob;
}

std::vector<std::int64_t> indices_of(sqlite3_value** argv, int first, int n) {
  std::vector<std::int64_t> out(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) out[k] = index_arg(argv[first + k]);
  return out;
}

struct StatementCloser {
  void operator()(sqlite3_stmt* s) const noexcept { sqlite3_finalize(s); }
};

ArrayBlob concat_query(const Binding& b, sqlite3_context* ctx, int argc, sqlite3_value** argv) {
  const ArrayView shape = any_array(argv[0]);
  const std::string_view sql_text = text_arg(argv[1]);
  const MissingCellPolicy policy =
      argc > 2 ? missing_policy(text_arg(argv[2])) : MissingCellPolicy::kStrict;
  sqlite3* db = sqlite3_context_db_handle(ctx);
  sqlite3_stmt* raw_stmt = nullptr;
  if (sqlite3_prepare_v2(db, sql_text.data(), static_cast<int>(sql_text.size()), &raw_stmt,
                         nullptr) != SQLITE_OK) {
    fail(ErrorCode::kSql, sqlite3_errmsg(db));
  }
  std::unique_ptr<sqlite3_stmt, StatementCloser> stmt(raw_stmt);
  if (!stmt) fail(ErrorCode::kSql, "empty query");
  const int ncols = sqlite3_column_count(stmt.get());
  if (ncols < 2) fail(ErrorCode::kInvalidArgument, "query must return index and value columns");

  const RowCursor cursor = [&]() -> std::optional<IndexedValue> {
    for (;;) {
      const int rc = sqlite3_step(stmt.get());
      if (rc == SQLITE_DONE) return std::nullopt;
      if (rc != SQLITE_ROW) fail(ErrorCode::kSql, sqlite3_errmsg(db));
      bool null_cell = false;
      for (int c = 0; c < ncols; ++c) null_cell |= sqlite3_column_type(stmt.get(), c) == SQLITE_NULL;
      if (null_cell) continue;
      IndexedValue row;
      if (ncols == 2) {
        row.indices = index_list(sqlite3_column_value(stmt.get(), 0));
      } else {
        for (int c = 0; c + 1 < ncols; ++c) {
          row.indices.push_back(index_arg(sqlite3_column_value(stmt.get(), c)));
        }
      }
      row.value = scalar_arg(sqlite3_column_value(stmt.get(), ncols - 1), b.elem);
      return row;
    }
  };
  return constructed(b, concat_from_cursor(b.elem, shape, cursor, policy));
}

void run_scalar(const Binding& b, sqlite3_context* ctx, int argc, sqlite3_value** argv) {
  const ElementType elem = b.elem;
  switch (b.op) {
    case Op::kVector:
    case Op::kMatrix: {
      std::vector<Scalar> values;
      values.reserve(static_cast<std::size_t>(argc));
      for (int k = 0; k < argc; ++k) values.push_back(scalar_arg(argv[k], elem));
      const auto n = static_cast<std::uint32_t>(b.n);
      result_array(ctx, constructed(b, b.op == Op::kVector ? make_vector(elem, values)
                                                             : make_matrix(elem, n, n, values)));
      return;
    }
    case Op::kItem:
      result_scalar(ctx, elem, item(typed_array(argv[0], elem), indices_of(argv, 1, b.n)));
      return;
    case Op::kUpdateItem: {
      const ArrayView a = typed_array(argv[0], elem);
      result_array(ctx, update_item(a, indices_of(argv, 1, b.n), scalar_arg(argv[b.n + 1], elem)));
      return;
    }
    case Op::kSubarray: {
      const ArrayView a = typed_array(argv[0], elem);
      SubarrayRange range{indices_from_blob(any_array(argv[1])),
                          indices_from_blob(any_array(argv[2]))};
      result_array(ctx, subarray(a, range, index_arg(argv[3]) != 0));
      return;
    }
    case Op::kReshape:
      result_array(ctx, reshape(typed_array(argv[0], elem), dims_from_blob(any_array(argv[1]))));
      return;
    case Op::kCast: {
      const auto raw_bytes = blob_bytes(argv[0]);
      Dims dims;
      if (argc == 2) {
        dims = dims_from_blob(any_array(argv[1]));
      } else {
        if (raw_bytes.size() % byte_width(elem) != 0) {
          fail(ErrorCode::kFormat, "raw length " + std::to_string(raw_bytes.size()) +
                                       " is not a multiple of the element width");
        }
        dims = to_dims(std::vector<std::int64_t>{
            static_cast<std::int64_t>(raw_bytes.size() / byte_width(elem))});
      }
      result_array(ctx, constructed(b, cast_raw(elem, dims, raw_bytes)));
      return;
    }
    case Op::kRaw:
      result_bytes(ctx, raw(typed_array(argv[0], elem)));
      return;
    case Op::kToString:
      result_text(ctx, to_text(typed_array(argv[0], elem)));
      return;
    case Op::kFromString:
      result_array(ctx, constructed(b, from_text(elem, text_arg(argv[0]))));
      return;
    case Op::kConvert: {
      ConversionPolicy policy = ConversionPolicy::kStrict;
      if (argc == 3) {
        const auto p = text_arg(argv[2]);
        if (p == "saturate") policy = ConversionPolicy::kSaturate;
        else if (p != "strict") fail(ErrorCode::kInvalidArgument, "unknown policy '" + std::string(p) + "', expected strict or saturate");
      }
      result_array(ctx, convert_elem(typed_array(argv[0], elem), target_type(text_arg(argv[1])), policy));
      return;
    }
    case Op::kToMax:
      result_array(ctx, convert_storage(typed_array(argv[0], elem), StorageClass::kMax));
      return;
    case Op::kToShort:
      result_array(ctx, convert_storage(typed_array(argv[0], elem), StorageClass::kShort));
      return;
    case Op::kDims: {
      const ArrayView a = typed_array(argv[0], elem);
      std::vector<Scalar> d;
      for (const std::uint32_t extent : a.dims()) d.emplace_back(std::int64_t{extent});
      result_array(ctx, make_vector(ElementType::kInt32, d));
      return;
    }
    case Op::kRank:
      sqlite3_result_int64(ctx, static_cast<sqlite3_int64>(typed_array(argv[0], elem).rank()));
      return;
    case Op::kCount:
      sqlite3_result_int64(ctx, static_cast<sqlite3_int64>(typed_array(argv[0], elem).count()));
      return;
    case Op::kFftForward:
      result_array(ctx, fft_forward(typed_array(argv[0], elem)));
      return;
    case Op::kFftInverse:
      result_array(ctx, fft_inverse(typed_array(argv[0], elem)));
      return;
    case Op::kSvd:
    case Op::kSvdU:
    case Op::kSvdVt: {
      SvdMode mode = SvdMode::kThin;
      if (argc == 2) {
        const auto m = text_arg(argv[1]);
        if (m == "full") mode = SvdMode::kFull;
        else if (m != "thin") fail(ErrorCode::kInvalidArgument, "unknown SVD mode '" + std::string(m) + "', expected thin or full");
      }
      const SvdResult r = svd(typed_array(argv[0], elem), mode);
      result_array(ctx, b.op == Op::kSvd ? r.s : b.op == Op::kSvdU ? r.u : r.vt);
      return;
    }
    case Op::kEmpty:
      sqlite3_result_int(ctx, 0);
      return;
    case Op::kConcatQuery:
      result_array(ctx, concat_query(b, ctx, argc, argv));
      return;
    case Op::kConcat:
    case Op::kConcatFill:
      break;
  }
  fail(ErrorCode::kUnsupported, "not a scalar function");
}

void report(sqlite3_context* ctx) {
  try {
    throw;
  } catch (const std::bad_alloc&) {
    sqlite3_result_error_nomem(ctx);
  } catch (const std::exception& e) {
    sqlite3_result_error(ctx, e.what(), -1);
  }
}

void call_scalar(sqlite3_context* ctx, int argc, sqlite3_value** argv) {
  const auto& b = *static_cast<const Binding*>(sqlite3_user_data(ctx));
  for (int k = 0; k < argc; ++k) {
    if (sqlite3_value_type(argv[k]) == SQLITE_NULL) {
      sqlite3_result_null(ctx);
      return;
    }
  }
  try {
    run_scalar(b, ctx, argc, argv);
  } catch (...) {
    report(ctx);
  }
}

// Aggregate. SQLite zeroes the slot on first use and calls the final
// function even when a step failed, so the state is always released there.

struct ConcatSlot {
  ConcatState* state;
  bool failed;
};

void concat_step(sqlite3_context* ctx, int, sqlite3_value** argv) {
  const auto& b = *static_cast<const Binding*>(sqlite3_user_data(ctx));
  auto* slot = static_cast<ConcatSlot*>(sqlite3_aggregate_context(ctx, sizeof(ConcatSlot)));
  if (slot == nullptr) {
    sqlite3_result_error_nomem(ctx);
    return;
  }
  if (slot->failed) return;
  try {
    if (slot->state == nullptr) {
      if (sqlite3_value_type(argv[0]) == SQLITE_NULL) {
        fail(ErrorCode::kShape, "Concat shape argument is NULL");
      }
      const auto policy =
          b.op == Op::kConcat ? MissingCellPolicy::kStrict : MissingCellPolicy::kZeroFill;
      slot->state = new ConcatState(concat_init(b.elem, any_array(argv[0]), policy));
    }
    if (sqlite3_value_type(argv[1]) == SQLITE_NULL || sqlite3_value_type(argv[2]) == SQLITE_NULL) {
      return;
    }
    concat_accumulate(*slot->state, IndexedValue{index_list(argv[1]), scalar_arg(argv[2], b.elem)});
  } catch (...) {
    slot->failed = true;
    report(ctx);
  }
}

void concat_final(sqlite3_context* ctx) {
  const auto& b = *static_cast<const Binding*>(sqlite3_user_data(ctx));
  auto* slot = static_cast<ConcatSlot*>(sqlite3_aggregate_context(ctx, 0));
  if (slot == nullptr || slot->state == nullptr) {
    sqlite3_result_null(ctx);
    return;
  }
  std::unique_ptr<ConcatState> state(slot->state);
  slot->state = nullptr;
  if (slot->failed) return;
  try {
    result_array(ctx, constructed(b, concat_finish(*state)));
  } catch (...) {
    report(ctx);
  }
}

// ArrayToTable: eponymous virtual table expanding one array into rows.

enum Column { kColIx = 0, kColI0 = 1, kColValue = 7, kColArr = 8 };
constexpr int kNamedIndexColumns = 6;

struct TableCursor {
  sqlite3_vtab_cursor base;
  Bytes bytes;
  ArrayView view;
  std::uint64_t row = 0;
  std::uint64_t decoded_row = UINT64_MAX;
  std::vector<std::int64_t> indices;
};

void set_vtab_error(sqlite3_vtab* vtab, const char* message) {
  sqlite3_free(vtab->zErrMsg);
  vtab->zErrMsg = sqlite3_mprintf("%s", message);
}

int table_connect(sqlite3* db, void*, int, const char* const*, sqlite3_vtab** out, char**) {
  const int rc = sqlite3_declare_vtab(
      db,
      "CREATE TABLE x(ix BLOB, i0 INTEGER, i1 INTEGER, i2 INTEGER, i3 INTEGER, i4 INTEGER, "
      "i5 INTEGER, value, arr HIDDEN)");
  if (rc != SQLITE_OK) return rc;
  auto* vtab = static_cast<sqlite3_vtab*>(sqlite3_malloc(sizeof(sqlite3_vtab)));
  if (vtab == nullptr) return SQLITE_NOMEM;
  std::memset(vtab, 0, sizeof(*vtab));
  *out = vtab;
  return SQLITE_OK;
}

int table_disconnect(sqlite3_vtab* vtab) {
  sqlite3_free(vtab);
  return SQLITE_OK;
}

int table_best_index(sqlite3_vtab*, sqlite3_index_info* info) {
  bool unusable = false;
  for (int k = 0; k < info->nConstraint; ++k) {
    const auto& c = info->aConstraint[k];
    if (c.iColumn != kColArr || c.op != SQLITE_INDEX_CONSTRAINT_EQ) continue;
    if (!c.usable) {
      unusable = true;
      continue;
    }
    info->aConstraintUsage[k].argvIndex = 1;
    info->aConstraintUsage[k].omit = 1;
    info->idxNum = 1;
    info->estimatedCost = 1.0;
    info->estimatedRows = 1000;
    return SQLITE_OK;
  }
  if (unusable) return SQLITE_CONSTRAINT;
  info->idxNum = 0;
  info->estimatedCost = 1e99;
  return SQLITE_OK;
}

int table_open(sqlite3_vtab*, sqlite3_vtab_cursor** out) {
  auto* cursor = new (std::nothrow) TableCursor{};
  if (cursor == nullptr) return SQLITE_NOMEM;
  *out = &cursor->base;
  return SQLITE_OK;
}

int table_close(sqlite3_vtab_cursor* cur) {
  delete reinterpret_cast<TableCursor*>(cur);
  return SQLITE_OK;
}

int table_filter(sqlite3_vtab_cursor* cur, int idx_num, const char*, int argc,
                 sqlite3_value** argv) {
  auto* c = reinterpret_cast<TableCursor*>(cur);
  c->bytes.clear();
  c->view = ArrayView{};
  c->row = 0;
  c->decoded_row = UINT64_MAX;
  if (idx_num == 0 || argc < 1) {
    set_vtab_error(cur->pVtab, "ArrayToTable needs an array argument");
    return SQLITE_ERROR;
  }
  if (sqlite3_value_type(argv[0]) == SQLITE_NULL) return SQLITE_OK;
  try {
    const auto bytes = blob_bytes(argv[0]);
    c->bytes.assign(bytes.begin(), bytes.end());
    c->view = ArrayView::parse(c->bytes);
  } catch (const std::exception& e) {
    set_vtab_error(cur->pVtab, e.what());
    return SQLITE_ERROR;
  }
  return SQLITE_OK;
}

int table_next(sqlite3_vtab_cursor* cur) {
  ++reinterpret_cast<TableCursor*>(cur)->row;
  return SQLITE_OK;
}

int table_eof(sqlite3_vtab_cursor* cur) {
  const auto* c = reinterpret_cast<TableCursor*>(cur);
  return c->row >= c->view.count();
}

int table_column(sqlite3_vtab_cursor* cur, sqlite3_context* ctx, int column) {
  auto* c = reinterpret_cast<TableCursor*>(cur);
  try {
    if (c->decoded_row != c->row) {
      c->indices = delinearize(c->view.dims(), c->row);
      c->decoded_row = c->row;
    }
    if (column == kColIx) {
      std::vector<Scalar> ix(c->indices.begin(), c->indices.end());
      result_array(ctx, make_vector(ElementType::kInt32, ix));
    } else if (column >= kColI0 && column < kColI0 + kNamedIndexColumns) {
      const auto d = static_cast<std::size_t>(column - kColI0);
      if (d < c->indices.size()) sqlite3_result_int64(ctx, c->indices[d]);
      else sqlite3_result_null(ctx);
    } else if (column == kColValue) {
      result_scalar(ctx, c->view.elem(), c->view.load(c->row));
    } else {
      result_array(ctx, ArrayBlob::from_bytes(c->view.bytes()));
    }
  } catch (...) {
    report(ctx);
    return SQLITE_ERROR;
  }
  return SQLITE_OK;
}

int table_rowid(sqlite3_vtab_cursor* cur, sqlite3_int64* rowid) {
  *rowid = static_cast<sqlite3_int64>(reinterpret_cast<TableCursor*>(cur)->row);
  return SQLITE_OK;
}

sqlite3_module make_table_module() {
  sqlite3_module m{};
  m.xConnect = table_connect;  // no xCreate: eponymous only
  m.xBestIndex = table_best_index;
  m.xDisconnect = table_disconnect;
  m.xDestroy = table_disconnect;
  m.xOpen = table_open;
  m.xClose = table_close;
  m.xFilter = table_filter;
  m.xNext = table_next;
  m.xEof = table_eof;
  m.xColumn = table_column;
  m.xRowid = table_rowid;
  return m;
}

}  // namespace

std::string sql_prefix(ElementType elem, bool max) {
  for (const Prefix& p : kPrefixes) {
    if (p.elem == elem) return std::string(p.name) + (max ? "Max" : "");
  }
  fail(ErrorCode::kUnknownElementType, "unknown element type");
}

const std::vector<FunctionInfo>& function_catalog() {
  static const std::vector<FunctionInfo> catalog = [] {
    std::vector<FunctionInfo> out;
    for (const Binding& b : bindings()) out.push_back(b.info);
    return out;
  }();
  return catalog;
}

int register_all(sqlite3* db) {
  for (const Binding& b : bindings()) {
    int flags = SQLITE_UTF8;
    if (b.op != Op::kConcatQuery) flags |= SQLITE_DETERMINISTIC;
    void* data = const_cast<Binding*>(&b);
    const int rc =
        b.info.aggregate
            ? sqlite3_create_function_v2(db, b.info.name.c_str(), b.info.arity, flags, data,
                                         nullptr, concat_step, concat_final, nullptr)
            : sqlite3_create_function_v2(db, b.info.name.c_str(), b.info.arity, flags, data,
                                         call_scalar, nullptr, nullptr, nullptr);
    if (rc != SQLITE_OK) fail(ErrorCode::kSql, sqlite3_errmsg(db));
  }
  static const sqlite3_module module = make_table_module();
  if (sqlite3_create_module(db, "ArrayToTable", &module, nullptr) != SQLITE_OK) {
    fail(ErrorCode::kSql, sqlite3_errmsg(db));
  }
  return static_cast<int>(bindings().size()) + 1;
}

}  // namespace sciarray::sql
