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

#include "sciarray/bench.hpp"

#include <sqlite3.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>

#include "sciarray/array_ops.hpp"
#include "sciarray/block_reader.hpp"
#include "sciarray/error.hpp"
#include "sciarray/sql_adapter.hpp"

namespace sciarray {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

class Connection {
 public:
  explicit Connection(const fs::path& path) {
    if (sqlite3_open(path.c_str(), &db_) != SQLITE_OK) {
      const std::string msg = db_ ? sqlite3_errmsg(db_) : "out of memory";
      sqlite3_close(db_);
      fail(ErrorCode::kSql, "cannot open " + path.string() + ": " + msg);
    }
    sql::register_all(db_);
  }
  ~Connection() { sqlite3_close(db_); }
  Connection(const Connection&) = delete;
  Connection& operator=(const Connection&) = delete;

  sqlite3* get() const { return db_; }

  void exec(const std::string& sql) {
    char* err = nullptr;
    if (sqlite3_exec(db_, sql.c_str(), nullptr, nullptr, &err) != SQLITE_OK) {
      const std::string msg = err ? err : sqlite3_errmsg(db_);
      sqlite3_free(err);
      fail(ErrorCode::kSql, msg + " in: " + sql);
    }
  }

  /// Runs a query returning one row and hands the statement to `read`.
  void one_row(const std::string& sql, const std::function<void(sqlite3_stmt*)>& read) {
    sqlite3_stmt* stmt = nullptr;
    if (sqlite3_prepare_v2(db_, sql.c_str(), -1, &stmt, nullptr) != SQLITE_OK) {
      fail(ErrorCode::kSql, std::string(sqlite3_errmsg(db_)) + " in: " + sql);
    }
    const int rc = sqlite3_step(stmt);
    if (rc != SQLITE_ROW) {
      const std::string msg = sqlite3_errmsg(db_);
      sqlite3_finalize(stmt);
      fail(ErrorCode::kSql, msg + " in: " + sql);
    }
    read(stmt);
    sqlite3_finalize(stmt);
  }

  double real(const std::string& sql) {
    double v = 0;
    one_row(sql, [&](sqlite3_stmt* s) { v = sqlite3_column_double(s, 0); });
    return v;
  }

  std::int64_t integer(const std::string& sql) {
    std::int64_t v = 0;
    one_row(sql, [&](sqlite3_stmt* s) { v = sqlite3_column_int64(s, 0); });
    return v;
  }

  std::uint64_t file_bytes() {
    return static_cast<std::uint64_t>(integer("PRAGMA page_count")) *
           static_cast<std::uint64_t>(integer("PRAGMA page_size"));
  }

 private:
  sqlite3* db_ = nullptr;
};

class Statement {
 public:
  Statement(sqlite3* db, const std::string& sql) : db_(db) {
    if (sqlite3_prepare_v2(db, sql.c_str(), -1, &stmt_, nullptr) != SQLITE_OK) {
      fail(ErrorCode::kSql, sqlite3_errmsg(db));
    }
  }
  ~Statement() { sqlite3_finalize(stmt_); }
  Statement(const Statement&) = delete;
  Statement& operator=(const Statement&) = delete;

  sqlite3_stmt* get() const { return stmt_; }
  void step_done() {
    if (sqlite3_step(stmt_) != SQLITE_DONE) fail(ErrorCode::kSql, sqlite3_errmsg(db_));
    sqlite3_reset(stmt_);
  }

 private:
  sqlite3* db_;
  sqlite3_stmt* stmt_ = nullptr;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

/// Cold time on a fresh connection, then the minimum over warm repetitions.
std::pair<double, double> time_query(const fs::path& db_path, const std::string& sql,
                                     int repetitions) {
  Connection conn(db_path);
  auto t0 = Clock::now();
  conn.real(sql);
  const double cold = seconds_since(t0);
  double warm = cold;
  for (int r = 0; r < repetitions; ++r) {
    t0 = Clock::now();
    conn.real(sql);
    warm = std::min(warm, seconds_since(t0));
  }
  return {cold, warm};
}

template <typename Fn>
std::pair<double, double> time_call(Fn&& fn, int repetitions) {
  auto t0 = Clock::now();
  fn();
  const double cold = seconds_since(t0);
  double warm = cold;
  for (int r = 0; r < repetitions; ++r) {
    t0 = Clock::now();
    fn();
    warm = std::min(warm, seconds_since(t0));
  }
  return {cold, warm};
}

std::string columns(std::uint32_t dim, const char* decl) {
  std::string out;
  for (std::uint32_t c = 0; c < dim; ++c) {
    out += ", c" + std::to_string(c) + decl;
  }
  return out;
}

void populate(const BenchConfig& cfg, Connection& scalar_db, Connection& vector_db) {
  for (Connection* c : {&scalar_db, &vector_db}) {
    c->exec("PRAGMA journal_mode=OFF; PRAGMA synchronous=OFF;");
  }
  scalar_db.exec("CREATE TABLE Tscalar(id INTEGER PRIMARY KEY" + columns(cfg.vector_dim, " REAL") + ")");
  vector_db.exec("CREATE TABLE Tvector(id INTEGER PRIMARY KEY, v BLOB)");
  std::string placeholders = "?";
  for (std::uint32_t c = 0; c < cfg.vector_dim; ++c) placeholders += ", ?";
  Statement ins_scalar(scalar_db.get(), "INSERT INTO Tscalar VALUES (" + placeholders + ")");
  Statement ins_vector(vector_db.get(), "INSERT INTO Tvector VALUES (?, ?)");

  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> dist(-1000.0, 1000.0);
  std::vector<Scalar> values(cfg.vector_dim);
  scalar_db.exec("BEGIN");
  vector_db.exec("BEGIN");
  for (std::uint64_t r = 0; r < cfg.rows; ++r) {
    const auto id = static_cast<sqlite3_int64>(r + 1);
    sqlite3_bind_int64(ins_scalar.get(), 1, id);
    for (std::uint32_t c = 0; c < cfg.vector_dim; ++c) {
      double x = dist(rng);
      if (cfg.elem == ElementType::kFloat32) x = static_cast<double>(static_cast<float>(x));
      // Integral values would be stored as integers; keep every value fractional.
      if (x == std::trunc(x)) x += 0.5;
      values[c] = x;
      sqlite3_bind_double(ins_scalar.get(), static_cast<int>(c + 2), x);
    }
    const ArrayBlob blob = make_vector(cfg.elem, values);
    sqlite3_bind_int64(ins_vector.get(), 1, id);
    sqlite3_bind_blob64(ins_vector.get(), 2, blob.bytes().data(), blob.bytes().size(),
                        SQLITE_STATIC);
    ins_scalar.step_done();
    ins_vector.step_done();
  }
  scalar_db.exec("COMMIT");
  vector_db.exec("COMMIT");
}

void run_concat_rows(const BenchConfig& cfg, const fs::path& dir, BenchReport& report) {
  const fs::path path = dir / "cells.db";
  const std::string prefix = sql::sql_prefix(cfg.elem);
  const std::string n = std::to_string(cfg.concat_cells);
  std::uint64_t file_bytes = 0;
  {
    Connection db(path);
    db.exec("PRAGMA journal_mode=OFF; PRAGMA synchronous=OFF;");
    db.exec("CREATE TABLE Tcells(i INTEGER PRIMARY KEY, v REAL)");
    db.exec("WITH RECURSIVE s(k) AS (SELECT 0 UNION ALL SELECT k + 1 FROM s WHERE k < " + n +
            " - 1) INSERT INTO Tcells SELECT k, k * 0.25 + 0.125 FROM s");
    file_bytes = db.file_bytes();
  }
  const std::string shape = "IntArray_Vector_1(" + n + ")";
  const std::string agg = prefix + "Max_Concat(" + shape + ", i, v)";
  const std::string cursor = prefix + "Max_ConcatQuery(" + shape + ", 'SELECT i, v FROM Tcells')";
  const auto base = time_query(path, "SELECT COUNT(v) FROM Tcells", cfg.repetitions);
  const auto t_agg = time_query(path, "SELECT length(" + agg + ") FROM Tcells", cfg.repetitions);
  const auto t_cur = time_query(path, "SELECT length(" + cursor + ")", cfg.repetitions);
  const double cells = static_cast<double>(cfg.concat_cells);
  report.rows.push_back({"concat_aggregate", "Concat aggregate over Tcells", cfg.concat_cells,
                         t_agg.second, t_agg.first,
                         (t_agg.second - base.second) / cells * 1e6, file_bytes});
  report.rows.push_back({"concat_cursor", "ConcatQuery cursor over Tcells", cfg.concat_cells,
                         t_cur.second, t_cur.first,
                         (t_cur.second - base.second) / cells * 1e6, file_bytes});

  Connection db(path);
  auto fetch = [&](const std::string& sql) {
    Bytes out;
    db.one_row(sql, [&](sqlite3_stmt* s) {
      const auto* p = static_cast<const std::byte*>(sqlite3_column_blob(s, 0));
      out.assign(p, p + sqlite3_column_bytes(s, 0));
    });
    return out;
  };
  report.concat_paths_identical =
      fetch("SELECT " + agg + " FROM Tcells") == fetch("SELECT " + cursor);
}

void run_subarray_rows(const BenchConfig& cfg, const fs::path& dir, BenchReport& report) {
  const std::uint32_t dims[] = {64, 64, 64};
  const ArrayBlob cube = make_filled(ElementType::kFloat32, dims, 1.5);
  const fs::path path = dir / "cube64.ablob";
  write_file(path.string(), cube.bytes());
  const SubarrayRange window{{10, 20, 30}, {8, 8, 8}};

  const auto t_full = time_call(
      [&] {
        const ArrayBlob a = ArrayBlob::from_bytes(read_file(path.string()));
        subarray(a, window, false);
      },
      cfg.repetitions);
  std::uint64_t streamed = 0;
  const auto t_stream = time_call(
      [&] {
        BlockReader reader = BlockReader::open_file(path);
        subarray_streamed(reader, window, false);
        streamed = reader.bytes_read();
      },
      cfg.repetitions);
  report.subarray_header_bytes = cube.header().encoded_size();
  report.subarray_payload_bytes = cube.payload().size();
  report.subarray_streamed_bytes = streamed;
  report.rows.push_back({"subarray_materialized", "8^3 window of a 64^3 f32 file, whole blob read",
                         512, t_full.second, t_full.first, t_full.second * 1e6,
                         cube.bytes().size()});
  report.rows.push_back({"subarray_streamed", "8^3 window of a 64^3 f32 file, counting reader",
                         512, t_stream.second, t_stream.first, t_stream.second * 1e6, streamed});
  fs::remove(path);
}

}  // namespace

const BenchRow& BenchReport::row(const std::string& query_id) const {
  for (const auto& r : rows) {
    if (r.query_id == query_id) return r;
  }
  fail(ErrorCode::kLookup, "no bench row " + query_id);
}

BenchReport run_bench(const BenchConfig& config) {
  if (!is_real_float(config.elem)) {
    fail(ErrorCode::kInvalidArgument, "bench element type must be f32 or f64");
  }
  if (config.rows == 0 || config.vector_dim == 0 || config.concat_cells == 0) {
    fail(ErrorCode::kInvalidArgument, "bench rows, dimension and cell count must be positive");
  }
  if (config.repetitions < 1) fail(ErrorCode::kInvalidArgument, "repetitions must be at least 1");

  fs::path dir = config.work_dir;
  const bool own_dir = dir.empty();
  if (own_dir) {
    std::random_device rd;
    dir = fs::temp_directory_path() / ("sciarray-bench-" + std::to_string(rd()));
  }
  fs::create_directories(dir);
  const fs::path scalar_path = dir / "tscalar.db";
  const fs::path vector_path = dir / "tvector.db";
  fs::remove(scalar_path);
  fs::remove(vector_path);
  fs::remove(dir / "cells.db");

  BenchReport report;
  report.config = config;
  {
    Connection scalar_db(scalar_path);
    Connection vector_db(vector_path);
    populate(config, scalar_db, vector_db);
    report.tscalar_file_bytes = scalar_db.file_bytes();
    report.tvector_file_bytes = vector_db.file_bytes();
    std::string real_bytes = "0";
    for (std::uint32_t c = 0; c < config.vector_dim; ++c) {
      real_bytes += " + (typeof(c" + std::to_string(c) + ") = 'real') * 8";
    }
    const double rows = static_cast<double>(config.rows);
    report.scalar_value_bytes_per_row =
        scalar_db.real("SELECT SUM(" + real_bytes + ") FROM Tscalar") / rows;
    report.vector_value_bytes_per_row = vector_db.real("SELECT SUM(length(v)) FROM Tvector") / rows;
  }

  const std::string prefix = sql::sql_prefix(config.elem);
  struct Query {
    const char* id;
    const char* description;
    const fs::path* db;
    std::string sql;
  };
  const Query queries[] = {
      {"1", "count scalar rows", &scalar_path, "SELECT COUNT(c0) FROM Tscalar"},
      {"2", "count vector rows", &vector_path, "SELECT COUNT(v) FROM Tvector"},
      {"3", "sum scalar column", &scalar_path, "SELECT SUM(c0) FROM Tscalar"},
      {"4", "sum Item over blob", &vector_path, "SELECT SUM(" + prefix + "_Item_1(v, 0)) FROM Tvector"},
      {"5", "sum empty function over blob", &vector_path,
       "SELECT SUM(" + prefix + "_EmptyFunction(v)) FROM Tvector"},
  };
  for (const Query& q : queries) {
    const auto [cold, warm] = time_query(*q.db, q.sql, config.repetitions);
    const std::uint64_t bytes = q.db == &scalar_path ? report.tscalar_file_bytes
                                                     : report.tvector_file_bytes;
    report.rows.push_back({q.id, q.description, config.rows, warm, cold, 0.0, bytes});
  }
  auto& r = report.rows;
  const double n = static_cast<double>(config.rows);
  r[2].per_call_us = (r[2].wall_s - r[0].wall_s) / n * 1e6;
  r[3].per_call_us = (r[3].wall_s - r[1].wall_s) / n * 1e6;
  r[4].per_call_us = (r[4].wall_s - r[1].wall_s) / n * 1e6;

  {
    Connection scalar_db(scalar_path);
    Connection vector_db(vector_path);
    report.scalar_count = static_cast<std::uint64_t>(scalar_db.integer(queries[0].sql));
    report.vector_count = static_cast<std::uint64_t>(vector_db.integer(queries[1].sql));
    report.scalar_sum = scalar_db.real(queries[2].sql);
    report.vector_sum = vector_db.real(queries[3].sql);
  }
  const double scale = std::max(std::fabs(report.scalar_sum), std::fabs(report.vector_sum));
  report.sum_relative_diff =
      scale == 0 ? 0.0 : std::fabs(report.scalar_sum - report.vector_sum) / scale;

  run_concat_rows(config, dir, report);
  run_subarray_rows(config, dir, report);

  if (!config.keep_files) {
    fs::remove(scalar_path);
    fs::remove(vector_path);
    fs::remove(dir / "cells.db");
    if (own_dir) fs::remove(dir);
  }

  if (report.scalar_count != config.rows || report.vector_count != config.rows) {
    fail(ErrorCode::kNumerical, "row counts differ from the configured row count");
  }
  if (report.sum_relative_diff > 1e-6) {
    fail(ErrorCode::kNumerical, "query 3 and query 4 sums differ");
  }
  if (!report.concat_paths_identical) {
    fail(ErrorCode::kNumerical, "Concat aggregate and cursor results differ");
  }
  return report;
}

void write_bench_csv(const BenchReport& report, std::ostream& out) {
  out << "query_id,rows,wall_s,per_call_us,bytes_read\n";
  for (const auto& r : report.rows) {
    out << r.query_id << ',' << r.rows << ',' << std::setprecision(9) << r.wall_s << ','
        << std::setprecision(6) << r.per_call_us << ',' << r.bytes_read << '\n';
  }
}

void write_bench_text(const BenchReport& report, std::ostream& out) {
  const auto& c = report.config;
  out << "rows " << c.rows << ", vector dim " << c.vector_dim << ", element "
      << element_type_name(c.elem) << ", repetitions " << c.repetitions << "\n\n";
  out << std::left << std::setw(22) << "query" << std::setw(32) << "description" << std::right
      << std::setw(12) << "cold s" << std::setw(12) << "warm s" << std::setw(14)
      << "per call us" << std::setw(14) << "bytes read" << '\n';
  out << std::fixed;
  for (const auto& r : report.rows) {
    out << std::left << std::setw(22) << r.query_id << std::setw(32) << r.description.substr(0, 31)
        << std::right << std::setprecision(4) << std::setw(12) << r.cold_wall_s << std::setw(12)
        << r.wall_s << std::setprecision(4) << std::setw(14) << r.per_call_us << std::setw(14)
        << r.bytes_read << '\n';
  }
  out << std::defaultfloat << std::setprecision(10) << '\n';
  out << "query 3 sum " << report.scalar_sum << ", query 4 sum " << report.vector_sum
      << ", relative difference " << report.sum_relative_diff << '\n';
  const double growth = 100.0 * (static_cast<double>(report.tvector_file_bytes) /
                                     static_cast<double>(report.tscalar_file_bytes) - 1.0);
  out << std::setprecision(4) << "Tscalar file " << report.tscalar_file_bytes << " B, Tvector file "
      << report.tvector_file_bytes << " B (" << growth << "% larger)\n";
  out << "stored values per row: scalar " << report.scalar_value_bytes_per_row << " B, vector "
      << report.vector_value_bytes_per_row << " B, delta "
      << report.vector_value_bytes_per_row - report.scalar_value_bytes_per_row << " B\n";
  out << "file bytes per row delta "
      << (static_cast<double>(report.tvector_file_bytes) -
          static_cast<double>(report.tscalar_file_bytes)) /
             static_cast<double>(c.rows)
      << " B\n";
  out << "Concat aggregate and cursor results identical: "
      << (report.concat_paths_identical ? "yes" : "no") << '\n';
  out << "streamed subarray read " << report.subarray_streamed_bytes << " B of a "
      << report.subarray_header_bytes + report.subarray_payload_bytes << " B blob ("
      << 100.0 * static_cast<double>(report.subarray_streamed_bytes) /
             static_cast<double>(report.subarray_payload_bytes)
      << "% of payload)\n\n";
  out << "For comparison only, measured on the original server hardware: about 2 us per\n"
         "function call, the empty function still costing about 38% CPU, and the vector\n"
         "table 43% larger than the scalar one. These figures are not asserted here.\n";
}

}  // namespace sciarray
