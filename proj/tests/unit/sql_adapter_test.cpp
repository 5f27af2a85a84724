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

#include <gtest/gtest.h>

#include <regex>
#include <set>

#include "sciarray/array_ops.hpp"
#include "sciarray/math_backend.hpp"
#include "sciarray/table_bridge.hpp"
#include "support/generators.hpp"
#include "support/sql_session.hpp"

namespace sciarray {
namespace {

using testing::SqlSession;
using testing::to_bytes;

constexpr const char* kCubeSql =
    "WITH RECURSIVE n(k) AS (SELECT 0 UNION ALL SELECT k + 1 FROM n WHERE k < 1199) "
    "SELECT FloatArrayMax_Concat(IntArray_Vector_3(10, 10, 12), "
    "IntArray_Vector_3(k % 10, (k / 10) % 10, k / 100), k) FROM n";

ArrayBlob cube() {
  std::vector<Scalar> v;
  for (int k = 0; k < 1200; ++k) v.emplace_back(static_cast<double>(k));
  const std::uint32_t dims[] = {10, 10, 12};
  return convert_storage(make_array(ElementType::kFloat64, dims, v), StorageClass::kMax);
}

TEST(SqlCatalog, NamesFollowScheme) {
  SqlSession s;
  const auto& catalog = sql::function_catalog();
  EXPECT_EQ(static_cast<std::size_t>(s.registered()), catalog.size() + 1);
  const std::regex scheme(
      "(TinyInt|SmallInt|Int|BigInt|Real|Float|RealComplex|FloatComplex)Array(Max)?_"
      "[A-Za-z]+(_[0-9]|_U|_VT)?");
  std::set<std::string> names;
  for (const auto& f : catalog) {
    EXPECT_TRUE(std::regex_match(f.name, scheme)) << f.name;
    names.insert(f.name);
  }
  for (const char* n : {"FloatArray_Item_1", "IntArrayMax_Subarray", "FloatArrayMax_Concat",
                        "FloatArray_Vector_6", "BigIntArray_UpdateItem_6",
                        "FloatArrayMax_FFTForward", "RealArray_SVD_VT"}) {
    EXPECT_TRUE(names.count(n)) << n;
  }
  EXPECT_FALSE(names.count("IntArray_FFTForward"));
  EXPECT_FALSE(names.count("FloatComplexArray_SVD"));
}

TEST(SqlSessionExample, VectorAndMatrixItems) {
  SqlSession s;
  EXPECT_EQ(std::get<double>(s.value("SELECT FloatArray_Item_1(FloatArray_Vector_5(1,2,3,4,5), 3)")),
            4.0);
  EXPECT_EQ(std::get<double>(s.value(
                "SELECT FloatArray_Item_2(FloatArray_Matrix_2(0.1, 0.2, 0.3, 0.4), 1, 0)")),
            0.2);
  const std::vector<Scalar> five{1.0, 2.0, 3.0, 4.0, 5.0};
  EXPECT_EQ(s.blob("SELECT FloatArray_Vector_5(1,2,3,4,5)"),
            to_bytes(make_vector(ElementType::kFloat64, five)));
  EXPECT_EQ(std::get<std::int64_t>(s.value("SELECT IntArray_Item_1(IntArray_Vector_3(7, 8, 9), 2)")),
            9);
}

TEST(SqlSessionExample, SubarrayCube) {
  SqlSession s;
  const Bytes a = s.blob(kCubeSql);
  EXPECT_EQ(a, to_bytes(cube()));
  const Bytes sub = s.blob(
      "SELECT FloatArrayMax_Subarray(?1, IntArray_Vector_3(1, 4, 6), IntArray_Vector_3(5, 5, 5), 0)",
      {a});
  EXPECT_EQ(sub, to_bytes(subarray(cube(), {{1, 4, 6}, {5, 5, 5}}, false)));
  EXPECT_EQ(std::get<std::int64_t>(s.value("SELECT FloatArray_Count(?1)", {sub})), 125);
  EXPECT_EQ(std::get<double>(s.value("SELECT FloatArray_Item_3(?1, 2, 3, 4)", {sub})),
            3 + 10 * 7 + 100 * 10);
}

TEST(SqlSessionExample, UpdateItem) {
  SqlSession s;
  const std::vector<Scalar> expected{1.0, 2.0, 3.0, 4.5, 5.0};
  EXPECT_EQ(s.blob("SELECT FloatArray_UpdateItem_1(FloatArray_Vector_5(1,2,3,4,5), 3, 4.5)"),
            to_bytes(make_vector(ElementType::kFloat64, expected)));
  EXPECT_NE(s.error_of("SELECT FloatArray_UpdateItem_1(FloatArray_Vector_1(1), 1, 0)")
                .find("out of bounds"),
            std::string::npos);
}

TEST(SqlConcat, AggregateMatchesVector) {
  SqlSession s;
  s.exec("CREATE TABLE t(i INTEGER, v REAL); INSERT INTO t VALUES (1, 2.0), (0, 1.0);");
  EXPECT_EQ(s.blob("SELECT FloatArray_Concat(IntArray_Vector_1(2), i, v) FROM t"),
            s.blob("SELECT FloatArray_Vector_2(1, 2)"));
  EXPECT_EQ(s.blob("SELECT FloatArray_Concat(IntArray_Vector_1(2), IntArray_Vector_1(i), v) FROM t"),
            s.blob("SELECT FloatArray_Vector_2(1, 2)"));
  EXPECT_EQ(s.blob("SELECT FloatArray_ConcatQuery(IntArray_Vector_1(2), 'SELECT i, v FROM t')"),
            s.blob("SELECT FloatArray_Vector_2(1, 2)"));
}

TEST(SqlConcat, GroupByBuildsOneArrayPerGroup) {
  SqlSession s;
  s.exec(
      "CREATE TABLE t(g TEXT, i INTEGER, v REAL);"
      "INSERT INTO t VALUES ('a', 0, 1), ('b', 1, 20), ('a', 1, 2), ('b', 0, 10), ('b', 2, 30);");
  const auto rows = s.rows(
      "SELECT g, FloatArray_ToString(FloatArray_ConcatFill(IntArray_Vector_1(3), i, v)) "
      "FROM t GROUP BY g ORDER BY g");
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(std::get<std::string>(rows[0][1]), "{1,2,0}");
  EXPECT_EQ(std::get<std::string>(rows[1][1]), "{10,20,30}");
}

TEST(SqlConcat, ErrorsBecomeSqlErrors) {
  SqlSession s;
  s.exec("CREATE TABLE t(i INTEGER, v REAL); INSERT INTO t VALUES (0, 1.0), (0, 1.0);");
  EXPECT_NE(s.error_of("SELECT FloatArray_Concat(IntArray_Vector_1(2), i, v) FROM t")
                .find("duplicate cell [0]"),
            std::string::npos);
  s.exec("DELETE FROM t WHERE rowid = 2;");
  EXPECT_NE(s.error_of("SELECT FloatArray_Concat(IntArray_Vector_1(2), i, v) FROM t")
                .find("1 of 2 cells missing"),
            std::string::npos);
  EXPECT_NE(s.error_of("SELECT FloatArray_ConcatQuery(IntArray_Vector_1(1), "
                       "'SELECT i, v FROM t UNION ALL SELECT 0, 5')")
                .find("duplicate"),
            std::string::npos);
}

TEST(SqlToTable, RowsAndRoundTrip) {
  SqlSession s;
  const Bytes m = s.blob("SELECT FloatArray_Matrix_2(1, 2, 3, 4)");
  const auto rows = s.rows("SELECT i0, i1, value FROM ArrayToTable(?1)", {m});
  ASSERT_EQ(rows.size(), 4u);
  const std::int64_t order[4][2] = {{0, 0}, {1, 0}, {0, 1}, {1, 1}};
  for (int k = 0; k < 4; ++k) {
    EXPECT_EQ(std::get<std::int64_t>(rows[k][0]), order[k][0]);
    EXPECT_EQ(std::get<std::int64_t>(rows[k][1]), order[k][1]);
    EXPECT_EQ(std::get<double>(rows[k][2]), k + 1.0);
  }
  EXPECT_TRUE(s.rows("SELECT * FROM ArrayToTable(FloatArray_Cast(x''))").empty());
  EXPECT_EQ(s.blob("SELECT FloatArray_Concat(FloatArray_Dims(?1), ix, value) FROM ArrayToTable(?1)", {m}),
            m);
  EXPECT_FALSE(s.error_of("SELECT * FROM ArrayToTable(x'00')").empty());
  EXPECT_FALSE(s.error_of("SELECT * FROM ArrayToTable").empty());
}

TEST(SqlToTable, RandomRoundTripsAreByteIdentical) {
  SqlSession s;
  testing::Rng rng(41);
  for (int iter = 0; iter < 50; ++iter) {
    const Dims dims = testing::random_dims(rng, 4, 200, false);
    const ArrayBlob x = ArrayBlob::assemble(
        ArrayHeader{classify(ElementType::kInt16, dims), ElementType::kInt16, dims},
        testing::random_payload(rng, ElementType::kInt16, testing::product(dims)));
    EXPECT_EQ(s.blob("SELECT SmallIntArray_Concat(SmallIntArray_Dims(?1), ix, value) "
                     "FROM ArrayToTable(?1)",
                     {to_bytes(x)}),
              to_bytes(x));
  }
}

TEST(SqlTypes, MismatchAndComplexValues) {
  SqlSession s;
  const std::string err = s.error_of("SELECT IntArray_Item_1(FloatArray_Vector_2(1, 2), 0)");
  EXPECT_NE(err.find("type mismatch"), std::string::npos) << err;
  EXPECT_EQ(std::get<std::string>(s.value(
                "SELECT FloatComplexArray_Item_1(FloatComplexArray_Vector_2('(1,-2)', 3), 0)")),
            "(1,-2)");
  EXPECT_TRUE(std::holds_alternative<std::monostate>(s.value("SELECT FloatArray_Item_1(NULL, 0)")));
  EXPECT_EQ(std::to_integer<int>(s.blob("SELECT FloatArrayMax_Vector_2(1, 2)")[0]) & 1, 1);
  EXPECT_EQ(std::to_integer<int>(s.blob("SELECT FloatArray_Vector_2(1, 2)")[0]) & 1, 0);
  EXPECT_EQ(std::get<std::string>(s.value("SELECT FloatArray_ToString(IntArray_Convert("
                                          "IntArray_Vector_2(1, 300), 'f64'))")),
            "{1,300}");
  EXPECT_EQ(std::get<std::string>(s.value("SELECT TinyIntArray_ToString(IntArray_Convert("
                                          "IntArray_Vector_2(1, 300), 'TinyIntArray', 'saturate'))")),
            "{1,127}");
}

TEST(SqlMath, ResultsMatchLibrary) {
  SqlSession s;
  s.exec("CREATE TABLE t(v BLOB); INSERT INTO t VALUES (FloatArrayMax_Vector_4(1, 0, 0, 0)),"
         " (FloatArrayMax_Vector_4(1, 1, 1, 1));");
  const auto rows = s.rows("SELECT FloatArrayMax_FFTForward(v) FROM t");
  ASSERT_EQ(rows.size(), 2u);
  const std::vector<Scalar> ones{1.0, 1.0, 1.0, 1.0};
  const ArrayBlob expected = fft_forward(
      convert_storage(make_vector(ElementType::kFloat64, ones), StorageClass::kMax));
  EXPECT_EQ(std::get<Bytes>(rows[1][0]), to_bytes(expected));
  const Bytes m = s.blob("SELECT FloatArray_Matrix_2(3, 0, 0, 2)");
  EXPECT_EQ(s.blob("SELECT FloatArray_SVD(?1)", {m}),
            to_bytes(svd(ArrayBlob::from_bytes(std::span<const std::byte>(m)), SvdMode::kThin).s));
  EXPECT_FALSE(s.error_of("SELECT FloatArray_SVD(FloatArray_Vector_2(1, 2))").empty());
}

TEST(SqlWorkflow, ScalarAndBlobSumsAgree) {
  SqlSession s;
  s.exec("CREATE TABLE ts(id INTEGER PRIMARY KEY, a REAL, b REAL, c REAL, d REAL, e REAL);"
         "CREATE TABLE tv(id INTEGER PRIMARY KEY, v BLOB);");
  s.exec("WITH RECURSIVE n(k) AS (SELECT 1 UNION ALL SELECT k + 1 FROM n WHERE k < 500) "
         "INSERT INTO ts SELECT k, k * 0.5, k * 1.5, k * 2.5, k * 3.5, k * 4.5 FROM n;"
         "INSERT INTO tv SELECT id, FloatArray_Vector_5(a, b, c, d, e) FROM ts;");
  for (int col = 0; col < 5; ++col) {
    const char* names[] = {"a", "b", "c", "d", "e"};
    const double scalar = std::get<double>(s.value(std::string("SELECT SUM(") + names[col] + ") FROM ts"));
    const double blob = std::get<double>(
        s.value("SELECT SUM(FloatArray_Item_1(v, " + std::to_string(col) + ")) FROM tv"));
    EXPECT_EQ(scalar, blob);
  }
}

}  // namespace
}  // namespace sciarray
