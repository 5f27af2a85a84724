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

// Command-line front end. Uses only the C interface.

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <string>
#include <vector>

#include "sciarray/sciarray.h"

namespace {

// Operation failure carrying the library's message; exit code 1.
struct OpError {
  std::string message;
};

void check(sciarray_status status) {
  if (status != SCIARRAY_OK) throw OpError{sciarray_last_error()};
}

struct BlobDeleter {
  void operator()(sciarray_blob* b) const { sciarray_blob_free(b); }
};
using Blob = std::unique_ptr<sciarray_blob, BlobDeleter>;

struct ReaderDeleter {
  void operator()(sciarray_reader* r) const { sciarray_reader_free(r); }
};
using Reader = std::unique_ptr<sciarray_reader, ReaderDeleter>;

Blob load(const std::string& path) {
  sciarray_blob* b = nullptr;
  check(sciarray_blob_read_file(path.c_str(), &b));
  return Blob(b);
}

Reader open_reader(const std::string& path) {
  sciarray_reader* r = nullptr;
  check(sciarray_reader_open_file(path.c_str(), &r));
  return Reader(r);
}

void save(const Blob& blob, const std::string& path) {
  check(sciarray_blob_write_file(blob.get(), path.c_str()));
}

sciarray_elem parse_elem(const std::string& name) {
  sciarray_elem e;
  check(sciarray_elem_parse(name.c_str(), &e));
  return e;
}

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  std::string s(buf, res.ptr);
  if (s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

std::string format_value(const sciarray_value& v) {
  switch (v.kind) {
    case SCIARRAY_VALUE_INT: return std::to_string(v.i);
    case SCIARRAY_VALUE_REAL: return format_real(v.re);
    case SCIARRAY_VALUE_COMPLEX: return "(" + format_real(v.re) + "," + format_real(v.im) + ")";
  }
  return "?";
}

std::string dims_string(const sciarray_blob* b) {
  std::string s;
  for (size_t d = 0; d < sciarray_blob_rank(b); ++d) {
    if (d) s += "x";
    s += std::to_string(sciarray_blob_dim(b, d));
  }
  return s;
}

void describe(const Blob& b, const std::string& path) {
  size_t size = 0;
  sciarray_blob_bytes(b.get(), &size);
  std::cout << path << ": " << sciarray_elem_name(sciarray_blob_elem(b.get())) << ' '
            << (sciarray_blob_storage(b.get()) == SCIARRAY_MAX ? "max" : "short") << ' '
            << dims_string(b.get()) << ", " << sciarray_blob_count(b.get()) << " elements, "
            << size << " bytes\n";
}

std::vector<uint32_t> to_dims(const std::vector<int64_t>& v) {
  std::vector<uint32_t> out;
  for (int64_t x : v) {
    if (x < 0 || x > 0x7fffffff) throw OpError{"dimension " + std::to_string(x) + " out of range"};
    out.push_back(static_cast<uint32_t>(x));
  }
  return out;
}

std::string read_all(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw OpError{"cannot open " + path + ": file not found or unreadable"};
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

sciarray_value parse_value(sciarray_elem elem, const std::string& text) {
  sciarray_blob* one = nullptr;
  check(sciarray_from_text(elem, ("{" + text + "}").c_str(), &one));
  Blob holder(one);
  if (sciarray_blob_count(one) != 1) throw OpError{"expected a single value, got '" + text + "'"};
  const int64_t zero = 0;
  sciarray_value v;
  check(sciarray_item(one, &zero, 1, &v));
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Array blob tool", "sciarray"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(sciarray_version()));

  std::string in_path, out_path, elem_name = "f64", values, fill, text_in, csv_path, to_name,
              storage_name, bench_csv, bench_dir;
  std::vector<int64_t> dims, offset, length, index, positional;
  bool squeeze = false, inverse = false, full = false, zero_fill = false, saturate = false,
       keep = false;
  std::string value_text;
  uint64_t rows = 1000000, seed = 1, cells = 100000;
  uint32_t dim = 5;
  int reps = 3;

  auto* create = app.add_subcommand("create", "build an array from values or a fill value");
  create->add_option("--elem", elem_name, "element type: i8 i16 i32 i64 f32 f64 c64 c128");
  create->add_option("--dims", dims, "dimensions, comma separated")->delimiter(',');
  auto* values_opt = create->add_option("--values", values,
                                        "values in column-major order, comma separated");
  auto* fill_opt = create->add_option("--fill", fill, "value for every element");
  values_opt->excludes(fill_opt);
  create->add_option("--storage", storage_name, "force storage class: short or max");
  create->add_option("out", out_path, "output file")->required();

  auto* item = app.add_subcommand("item", "print one element (reads only header and element)");
  item->add_option("file", in_path)->required();
  item->add_option("index", positional, "zero-based indices")->required()->allow_extra_args();

  auto* sub = app.add_subcommand("subarray", "extract a contiguous window");
  sub->add_option("file", in_path)->required();
  sub->add_option("--offset", offset)->required()->delimiter(',');
  sub->add_option("--len", length)->required()->delimiter(',');
  sub->add_flag("--squeeze", squeeze, "drop dimensions of length 1");
  sub->add_option("out", out_path)->required();

  auto* update = app.add_subcommand("update", "replace one element");
  update->add_option("file", in_path)->required();
  update->add_option("--index", index)->required()->delimiter(',');
  update->add_option("--value", value_text)->required();
  update->add_option("out", out_path)->required();

  auto* reshape = app.add_subcommand("reshape", "same elements under new dimensions");
  reshape->add_option("file", in_path)->required();
  reshape->add_option("--dims", dims)->required()->delimiter(',');
  reshape->add_option("out", out_path)->required();

  auto* cast = app.add_subcommand("cast", "add a header to raw little-endian values");
  cast->add_option("file", in_path, "raw input")->required();
  cast->add_option("--elem", elem_name)->required();
  cast->add_option("--dims", dims, "default: one dimension covering the file")->delimiter(',');
  cast->add_option("out", out_path)->required();

  auto* raw = app.add_subcommand("raw", "write the payload without the header");
  raw->add_option("file", in_path)->required();
  raw->add_option("out", out_path)->required();

  auto* totable = app.add_subcommand("totable", "write one CSV row per element");
  totable->add_option("file", in_path)->required();
  totable->add_option("out", csv_path, "CSV output, default standard output");

  auto* fromcsv = app.add_subcommand("fromcsv", "build an array from CSV rows i_0,...,value");
  fromcsv->add_option("file", csv_path, "CSV input, - for standard input")->required();
  fromcsv->add_option("--elem", elem_name);
  fromcsv->add_option("--dims", dims, "default: inferred from the largest indices")->delimiter(',');
  fromcsv->add_flag("--zero-fill", zero_fill, "unlisted cells are zero instead of an error");
  fromcsv->add_option("out", out_path)->required();

  auto* convert = app.add_subcommand("convert", "change element type or storage class");
  convert->add_option("file", in_path)->required();
  convert->add_option("--to", to_name, "target element type");
  convert->add_option("--storage", storage_name, "target storage class: short or max");
  convert->add_flag("--saturate", saturate, "clamp out-of-range values instead of failing");
  convert->add_option("out", out_path)->required();

  auto* fft = app.add_subcommand("fft", "n-dimensional discrete Fourier transform");
  fft->add_option("file", in_path)->required();
  fft->add_flag("--inverse", inverse);
  fft->add_option("out", out_path)->required();

  auto* svd = app.add_subcommand("svd", "singular value decomposition of a matrix");
  svd->add_option("file", in_path)->required();
  svd->add_flag("--full", full, "square U and Vt");
  svd->add_option("prefix", out_path, "writes <prefix>_u, _s, _vt .ablob files")->required();

  auto* text = app.add_subcommand("text", "print an array as text, or parse text with --from");
  text->add_option("file", in_path, "array to print, or output file with --from")->required();
  text->add_option("--from", text_in, "text to parse into the file");
  text->add_option("--elem", elem_name);

  auto* info = app.add_subcommand("info", "print element type, storage class and shape");
  info->add_option("file", in_path)->required();

  auto* bench = app.add_subcommand("bench", "call overhead benchmark on twin tables");
  bench->add_option("--rows", rows);
  bench->add_option("--dim", dim, "vector length");
  bench->add_option("--elem", elem_name, "f32 or f64");
  bench->add_option("--reps", reps, "warm repetitions per query");
  bench->add_option("--seed", seed);
  bench->add_option("--cells", cells, "cells for the Concat comparison");
  bench->add_option("--csv", bench_csv, "write the CSV report here");
  bench->add_option("--dir", bench_dir, "directory for database files");
  bench->add_flag("--keep", keep, "keep the database files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "sciarray: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    if (*create) {
      const sciarray_elem elem = parse_elem(elem_name);
      Blob b;
      sciarray_blob* out = nullptr;
      if (!fill.empty()) {
        if (dims.empty()) throw OpError{"--fill needs --dims"};
        const auto d = to_dims(dims);
        check(sciarray_make_filled(elem, d.data(), d.size(), parse_value(elem, fill), &out));
        b.reset(out);
      } else {
        check(sciarray_from_text(elem, ("{" + values + "}").c_str(), &out));
        b.reset(out);
        if (!dims.empty()) {
          const auto d = to_dims(dims);
          check(sciarray_reshape(b.get(), d.data(), d.size(), &out));
          b.reset(out);
        }
      }
      if (!storage_name.empty()) {
        if (storage_name != "short" && storage_name != "max") {
          throw OpError{"unknown storage class '" + storage_name + "'"};
        }
        check(sciarray_convert_storage(b.get(), storage_name == "max" ? SCIARRAY_MAX : SCIARRAY_SHORT, &out));
        b.reset(out);
      }
      save(b, out_path);
    } else if (*item) {
      Reader r = open_reader(in_path);
      sciarray_value v;
      check(sciarray_reader_item(r.get(), positional.data(), positional.size(), &v));
      std::cout << format_value(v) << '\n';
    } else if (*sub) {
      if (offset.size() != length.size()) throw OpError{"--offset and --len differ in length"};
      Reader r = open_reader(in_path);
      sciarray_blob* out = nullptr;
      check(sciarray_reader_subarray(r.get(), offset.data(), length.data(), offset.size(),
                                     squeeze ? 1 : 0, &out));
      Blob b(out);
      save(b, out_path);
      describe(b, out_path);
      std::cout << "bytes read: " << sciarray_reader_bytes_read(r.get()) << " in "
                << sciarray_reader_read_calls(r.get()) << " reads\n";
    } else if (*update) {
      Blob src = load(in_path);
      sciarray_blob* out = nullptr;
      check(sciarray_update_item(src.get(), index.data(), index.size(),
                                 parse_value(sciarray_blob_elem(src.get()), value_text), &out));
      save(Blob(out), out_path);
    } else if (*reshape) {
      Blob src = load(in_path);
      const auto d = to_dims(dims);
      sciarray_blob* out = nullptr;
      check(sciarray_reshape(src.get(), d.data(), d.size(), &out));
      save(Blob(out), out_path);
    } else if (*cast) {
      const sciarray_elem elem = parse_elem(elem_name);
      const std::string bytes = read_all(in_path);
      std::vector<uint32_t> d = to_dims(dims);
      if (d.empty()) {
        const size_t w = sciarray_elem_width(elem);
        if (bytes.size() % w != 0) {
          throw OpError{"raw length " + std::to_string(bytes.size()) +
                        " is not a multiple of the element width " + std::to_string(w)};
        }
        d = to_dims({static_cast<int64_t>(bytes.size() / w)});
      }
      sciarray_blob* out = nullptr;
      check(sciarray_cast_raw(elem, d.data(), d.size(), bytes.data(), bytes.size(), &out));
      save(Blob(out), out_path);
    } else if (*raw) {
      Blob src = load(in_path);
      size_t size = 0;
      const uint8_t* p = sciarray_raw(src.get(), &size);
      std::ofstream out(out_path, std::ios::binary);
      if (!out.write(reinterpret_cast<const char*>(p), static_cast<std::streamsize>(size))) {
        throw OpError{"failed writing " + out_path};
      }
    } else if (*totable) {
      Blob src = load(in_path);
      check(sciarray_write_csv(src.get(), csv_path.empty() ? nullptr : csv_path.c_str()));
    } else if (*fromcsv) {
      const auto d = to_dims(dims);
      sciarray_blob* out = nullptr;
      check(sciarray_read_csv(csv_path.c_str(), parse_elem(elem_name), d.data(), d.size(),
                              zero_fill ? SCIARRAY_MISSING_ZERO_FILL : SCIARRAY_MISSING_STRICT,
                              &out));
      Blob b(out);
      save(b, out_path);
      describe(b, out_path);
    } else if (*convert) {
      Blob b = load(in_path);
      sciarray_blob* out = nullptr;
      if (!to_name.empty()) {
        check(sciarray_convert_elem(b.get(), parse_elem(to_name),
                                    saturate ? SCIARRAY_CONVERT_SATURATE : SCIARRAY_CONVERT_STRICT,
                                    &out));
        b.reset(out);
      }
      if (!storage_name.empty()) {
        if (storage_name != "short" && storage_name != "max") {
          throw OpError{"unknown storage class '" + storage_name + "'"};
        }
        check(sciarray_convert_storage(b.get(), storage_name == "max" ? SCIARRAY_MAX : SCIARRAY_SHORT, &out));
        b.reset(out);
      }
      save(b, out_path);
    } else if (*fft) {
      Blob src = load(in_path);
      sciarray_blob* out = nullptr;
      check(inverse ? sciarray_fft_inverse(src.get(), &out) : sciarray_fft_forward(src.get(), &out));
      save(Blob(out), out_path);
    } else if (*svd) {
      Blob src = load(in_path);
      sciarray_blob *u = nullptr, *s = nullptr, *vt = nullptr;
      check(sciarray_svd(src.get(), full ? SCIARRAY_SVD_FULL : SCIARRAY_SVD_THIN, &u, &s, &vt));
      Blob bu(u), bs(s), bvt(vt);
      save(bu, out_path + "_u.ablob");
      save(bs, out_path + "_s.ablob");
      save(bvt, out_path + "_vt.ablob");
      char* t = nullptr;
      check(sciarray_to_text(bs.get(), &t));
      std::cout << "singular values " << t << '\n';
      sciarray_string_free(t);
    } else if (*text) {
      if (!text_in.empty()) {
        sciarray_blob* out = nullptr;
        check(sciarray_from_text(parse_elem(elem_name), text_in.c_str(), &out));
        save(Blob(out), in_path);
      } else {
        Blob src = load(in_path);
        char* t = nullptr;
        check(sciarray_to_text(src.get(), &t));
        std::cout << t << '\n';
        sciarray_string_free(t);
      }
    } else if (*info) {
      Blob b = load(in_path);
      describe(b, in_path);
      std::cout << "header " << sciarray_blob_header_size(b.get()) << " bytes\n";
    } else if (*bench) {
      sciarray_bench_config cfg;
      sciarray_bench_config_init(&cfg);
      cfg.rows = rows;
      cfg.vector_dim = dim;
      cfg.elem = parse_elem(elem_name);
      cfg.repetitions = reps;
      cfg.seed = seed;
      cfg.concat_cells = cells;
      cfg.work_dir = bench_dir.empty() ? nullptr : bench_dir.c_str();
      cfg.keep_files = keep ? 1 : 0;
      char* csv = nullptr;
      char* report = nullptr;
      check(sciarray_bench_run(&cfg, &csv, &report));
      std::cout << report << '\n' << csv;
      if (!bench_csv.empty()) {
        std::ofstream out(bench_csv);
        out << csv;
        if (!out) {
          sciarray_string_free(csv);
          sciarray_string_free(report);
          throw OpError{"failed writing " + bench_csv};
        }
      }
      sciarray_string_free(csv);
      sciarray_string_free(report);
    }
  } catch (const OpError& e) {
    std::cerr << "sciarray: error: " << e.message << '\n';
    return 1;
  }
  return 0;
}
