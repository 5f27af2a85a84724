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

#include "sciarray/array_ops.hpp"
#include "sciarray/error.hpp"
#include "support/generators.hpp"

namespace sciarray {
namespace {

using testing::Rng;

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kOk;
}

std::vector<Scalar> doubles(std::initializer_list<double> v) {
  return std::vector<Scalar>(v.begin(), v.end());
}

ArrayBlob five() { return make_vector(ElementType::kFloat64, doubles({1, 2, 3, 4, 5})); }

ArrayBlob random_array(Rng& rng, ElementType elem, const Dims& dims, StorageClass storage) {
  const Bytes payload = testing::random_payload(rng, elem, testing::product(dims));
  return ArrayBlob::assemble(ArrayHeader{storage, elem, dims}, payload);
}

TEST(MakeVector, Examples) {
  const ArrayBlob v = five();
  EXPECT_EQ(v.dims(), Dims{5});
  EXPECT_EQ(v.storage(), StorageClass::kShort);
  EXPECT_EQ(v.bytes().size(), 64u);

  const ArrayBlob empty = make_vector(ElementType::kInt8, std::vector<Scalar>{});
  EXPECT_EQ(empty.dims(), Dims{0});
  EXPECT_TRUE(empty.payload().empty());

  const std::vector<Scalar> big{std::int64_t{200}};
  EXPECT_EQ(code_of([&] { make_vector(ElementType::kInt8, big); }), ErrorCode::kRange);
  const std::vector<Scalar> frac{1.5};
  EXPECT_EQ(code_of([&] { make_vector(ElementType::kInt32, frac); }), ErrorCode::kRange);
  const std::vector<Scalar> cplx{std::complex<double>(1, 1)};
  EXPECT_EQ(code_of([&] { make_vector(ElementType::kFloat64, cplx); }),
            ErrorCode::kTypeMismatch);
  const std::vector<Scalar> huge{1e300};
  EXPECT_EQ(code_of([&] { make_vector(ElementType::kFloat32, huge); }), ErrorCode::kRange);
}

TEST(MakeMatrix, ValuesFillColumnMajor) {
  const ArrayBlob m = make_matrix(ElementType::kFloat64, 2, 2, doubles({0.1, 0.2, 0.3, 0.4}));
  const std::int64_t i00[] = {0, 0}, i10[] = {1, 0}, i01[] = {0, 1}, i11[] = {1, 1};
  EXPECT_EQ(std::get<double>(item(m, i00)), 0.1);
  EXPECT_EQ(std::get<double>(item(m, i10)), 0.2);
  EXPECT_EQ(std::get<double>(item(m, i01)), 0.3);
  EXPECT_EQ(std::get<double>(item(m, i11)), 0.4);

  const ArrayBlob one = make_matrix(ElementType::kFloat64, 1, 1, doubles({7.0}));
  EXPECT_EQ(one.dims(), (Dims{1, 1}));
  EXPECT_EQ(code_of([] { make_matrix(ElementType::kFloat64, 2, 3, doubles({1, 2, 3, 4, 5})); }),
            ErrorCode::kShape);
}

TEST(MakeFilled, Examples) {
  const std::uint32_t d33[] = {3, 3};
  const ArrayBlob z = make_filled(ElementType::kFloat64, d33, 0.0);
  for (std::uint64_t i = 0; i < 9; ++i) EXPECT_EQ(std::get<double>(z.load(i)), 0.0);
  const std::uint32_t d222[] = {2, 2, 2};
  const ArrayBlob m = make_filled(ElementType::kInt32, d222, std::int64_t{-1});
  EXPECT_EQ(m.count(), 8u);
  for (std::uint64_t i = 0; i < 8; ++i) EXPECT_EQ(std::get<std::int64_t>(m.load(i)), -1);
  const std::uint32_t d0[] = {0};
  EXPECT_EQ(make_filled(ElementType::kFloat32, d0, 3.0).count(), 0u);
  EXPECT_EQ(code_of([&] { make_filled(ElementType::kInt8, d0, std::int64_t{999}); }),
            ErrorCode::kRange);
}

TEST(Item, Examples) {
  const std::int64_t three[] = {3};
  EXPECT_EQ(std::get<double>(item(five(), three)), 4.0);
  const std::int64_t oob[] = {5};
  EXPECT_EQ(code_of([&] { item(five(), oob); }), ErrorCode::kBounds);
  const std::int64_t two[] = {0, 0};
  EXPECT_EQ(code_of([&] { item(five(), two); }), ErrorCode::kShape);
}

TEST(Item, RuntimeTypeCheck) {
  EXPECT_NO_THROW(require_element_type(five(), ElementType::kFloat64));
  EXPECT_EQ(code_of([] { require_element_type(five(), ElementType::kInt32); }),
            ErrorCode::kTypeMismatch);
}

TEST(ItemStreamed, MatchesMaterializedAndReadsOneElement) {
  Rng rng(11);
  const Dims dims{64, 64, 64};
  const ArrayBlob cube = random_array(rng, ElementType::kFloat32, dims, StorageClass::kMax);
  for (int i = 0; i < 50; ++i) {
    std::vector<std::int64_t> idx(3);
    for (auto& x : idx) x = std::uniform_int_distribution<std::int64_t>(0, 63)(rng);
    auto reader = BlockReader::over(cube.bytes());
    const Scalar s = item_streamed(reader, idx);
    const Scalar m = item(cube, idx);
    // Compare bits: payloads may hold NaNs.
    EXPECT_EQ(std::memcmp(&std::get<double>(s), &std::get<double>(m), 8), 0);
    EXPECT_LE(reader.bytes_read(), cube.header().encoded_size() + 4);
  }
}

TEST(ItemStreamed, TruncatedSourceIsAnError) {
  const ArrayBlob big = make_filled(ElementType::kFloat64, std::vector<std::uint32_t>{2000}, 1.0);
  auto cut = big.bytes().first(big.bytes().size() - 8);
  auto reader = BlockReader::over(cut);
  const std::int64_t last[] = {1999};
  EXPECT_EQ(code_of([&] { item_streamed(reader, last); }), ErrorCode::kTruncated);
  const std::int64_t first[] = {0};
  auto r2 = BlockReader::over(cut);
  EXPECT_EQ(std::get<double>(item_streamed(r2, first)), 1.0);
}

TEST(UpdateItem, Examples) {
  const ArrayBlob v = five();
  const Bytes before(v.bytes().begin(), v.bytes().end());
  const std::int64_t three[] = {3};
  const ArrayBlob u = update_item(v, three, 4.5);
  EXPECT_TRUE(std::equal(before.begin(), before.end(), v.bytes().begin()));
  EXPECT_EQ(u, make_vector(ElementType::kFloat64, doubles({1, 2, 3, 4.5, 5})));

  const ArrayBlob empty = make_vector(ElementType::kFloat64, std::vector<Scalar>{});
  const std::int64_t zero[] = {0};
  EXPECT_EQ(code_of([&] { update_item(empty, zero, 1.0); }), ErrorCode::kBounds);
}

TEST(UpdateItem, ReadYourWriteTouchesOneCell) {
  Rng rng(12);
  for (int iter = 0; iter < 500; ++iter) {
    const ElementType elem = testing::random_elem(rng);
    const Dims dims = testing::random_dims(rng, 4, 200, false);
    const ArrayBlob a = random_array(rng, elem, dims, classify(elem, dims));
    std::vector<std::int64_t> idx(dims.size());
    for (std::size_t d = 0; d < dims.size(); ++d) {
      idx[d] = std::uniform_int_distribution<std::int64_t>(0, dims[d] - 1)(rng);
    }
    Scalar value;
    if (is_integer(elem)) value = std::int64_t{std::uniform_int_distribution<int>(-100, 100)(rng)};
    else if (is_complex(elem)) value = std::complex<double>(0.5, -1.25);
    else value = 0.375;
    const ArrayBlob u = update_item(a, idx, value);
    EXPECT_EQ(scalar_to_string(item(u, idx)), scalar_to_string(value));
    std::size_t diff_lo = SIZE_MAX, diff_hi = 0;
    for (std::size_t i = 0; i < a.bytes().size(); ++i) {
      if (a.bytes()[i] != u.bytes()[i]) {
        diff_lo = std::min(diff_lo, i);
        diff_hi = i;
      }
    }
    if (diff_lo != SIZE_MAX) {
      const std::size_t cell = a.header().encoded_size() +
                               testing::oracle_offset(dims, idx) * byte_width(elem);
      EXPECT_GE(diff_lo, cell);
      EXPECT_LT(diff_hi, cell + byte_width(elem));
    }
  }
}

TEST(Subarray, CubeWindowBecomesShort) {
  const std::uint32_t dims[] = {10, 10, 12};
  std::vector<Scalar> values;
  for (int i = 0; i < 1200; ++i) values.emplace_back(static_cast<double>(i));
  const ArrayBlob a = make_array(ElementType::kFloat64, dims, values);
  ASSERT_EQ(a.storage(), StorageClass::kMax);
  const SubarrayRange r{{1, 4, 6}, {5, 5, 5}};
  const ArrayBlob b = subarray(a, r, false);
  EXPECT_EQ(b.dims(), (Dims{5, 5, 5}));
  EXPECT_EQ(b.storage(), StorageClass::kShort);  // 24 + 125 * 8 fits a page
  const std::int64_t j[] = {2, 3, 4};
  const std::int64_t src[] = {3, 7, 10};
  EXPECT_EQ(std::get<double>(item(b, j)), std::get<double>(item(a, src)));
}

TEST(Subarray, ColumnVectorOfMatrix) {
  const ArrayBlob m = make_matrix(ElementType::kFloat64, 2, 2, doubles({0.1, 0.2, 0.3, 0.4}));
  const ArrayBlob col = subarray(m, {{0, 1}, {2, 1}}, true);
  EXPECT_EQ(col, make_vector(ElementType::kFloat64, doubles({0.3, 0.4})));
  const ArrayBlob unsqueezed = subarray(m, {{0, 1}, {2, 1}}, false);
  EXPECT_EQ(unsqueezed.dims(), (Dims{2, 1}));
  const ArrayBlob single = subarray(m, {{1, 1}, {1, 1}}, true);
  EXPECT_EQ(single.dims(), Dims{1});
  EXPECT_EQ(std::get<double>(single.load(0)), 0.4);
}

TEST(Subarray, FullRangeIsIdentity) {
  Rng rng(13);
  for (int iter = 0; iter < 200; ++iter) {
    const ElementType elem = testing::random_elem(rng);
    const Dims dims = testing::random_dims(rng, 5, 500);
    const ArrayBlob a = random_array(rng, elem, dims, classify(elem, dims));
    SubarrayRange r{std::vector<std::int64_t>(dims.size(), 0),
                    std::vector<std::int64_t>(dims.begin(), dims.end())};
    EXPECT_EQ(subarray(a, r, false), a);
  }
}

TEST(Subarray, Errors) {
  const ArrayBlob m = make_matrix(ElementType::kFloat64, 2, 2, doubles({1, 2, 3, 4}));
  EXPECT_EQ(code_of([&] { subarray(m, {{1, 0}, {2, 1}}, false); }), ErrorCode::kBounds);
  EXPECT_EQ(code_of([&] { subarray(m, {{0}, {1}}, false); }), ErrorCode::kShape);
  EXPECT_EQ(code_of([&] { subarray(m, {{-1, 0}, {1, 1}}, false); }), ErrorCode::kBounds);
}

TEST(SubarrayStreamed, WindowOfLargeCubeReadsFewBytes) {
  Rng rng(14);
  const ArrayBlob cube =
      random_array(rng, ElementType::kFloat32, {64, 64, 64}, StorageClass::kMax);
  const SubarrayRange r{{10, 20, 30}, {8, 8, 8}};
  auto reader = BlockReader::over(cube.bytes());
  const ArrayBlob got = subarray_streamed(reader, r, false);
  EXPECT_EQ(got, subarray(cube, r, false));
  const std::uint64_t header = cube.header().encoded_size();
  EXPECT_EQ(reader.bytes_read(), header + 64 * 8 * 4);
  EXPECT_EQ(reader.read_calls(), 2u + 64u);  // header in two pieces, then 64 runs
  EXPECT_LT(reader.bytes_read(), 0.01 * cube.payload().size());
  EXPECT_EQ(subarray_run_count(cube.dims(), r), 64u);
}

TEST(SubarrayStreamed, FullRangeIsOneRead) {
  Rng rng(15);
  const ArrayBlob a = random_array(rng, ElementType::kInt16, {7, 5, 3}, StorageClass::kMax);
  auto reader = BlockReader::over(a.bytes());
  reader.reset_counters();
  const ArrayBlob got = subarray_streamed(reader, {{0, 0, 0}, {7, 5, 3}}, false);
  EXPECT_EQ(reader.read_calls(), 3u);
  EXPECT_EQ(reader.bytes_read(), a.bytes().size());
  EXPECT_EQ(convert_storage(got, StorageClass::kMax), a);
}

TEST(SubarrayStreamed, EquivalentToMaterializedSlice) {
  Rng rng(16);
  for (int iter = 0; iter < 300; ++iter) {
    const ElementType elem = testing::random_elem(rng);
    const Dims dims = testing::random_dims(rng, 5, 2000);
    const ArrayBlob a = random_array(rng, elem, dims, StorageClass::kMax);
    SubarrayRange r;
    for (auto d : dims) {
      const auto off = std::uniform_int_distribution<std::int64_t>(0, d)(rng);
      r.offset.push_back(off);
      r.length.push_back(std::uniform_int_distribution<std::int64_t>(0, d - off)(rng));
    }
    const bool squeeze = iter % 2 == 0;
    auto reader = BlockReader::over(a.bytes());
    const ArrayBlob streamed = subarray_streamed(reader, r, squeeze);
    const ArrayBlob sliced = subarray(a, r, squeeze);
    ASSERT_EQ(streamed, sliced);
    // Element-wise oracle against independent offset arithmetic.
    std::vector<std::int64_t> j(dims.size(), 0), src(dims.size());
    const std::uint64_t n = sliced.count();
    const std::size_t w = byte_width(elem);
    for (std::uint64_t lin = 0; lin < n; ++lin) {
      for (std::size_t d = 0; d < dims.size(); ++d) src[d] = r.offset[d] + j[d];
      ASSERT_EQ(std::memcmp(sliced.payload().data() + lin * w,
                            a.payload().data() + testing::oracle_offset(dims, src) * w, w),
                0);
      for (std::size_t d = 0; d < dims.size(); ++d) {
        if (++j[d] < r.length[d]) break;
        j[d] = 0;
      }
    }
  }
}

TEST(Reshape, Examples) {
  std::vector<Scalar> six;
  for (int i = 0; i < 6; ++i) six.emplace_back(std::int64_t{i * 10});
  const ArrayBlob v = make_vector(ElementType::kInt32, six);
  const std::uint32_t d23[] = {2, 3};
  const ArrayBlob m = reshape(v, d23);
  const std::int64_t i10[] = {1, 0};
  const std::int64_t i1[] = {1};
  EXPECT_EQ(item(m, i10), item(v, i1));
  EXPECT_TRUE(std::equal(m.payload().begin(), m.payload().end(), v.payload().begin()));
  const std::uint32_t same[] = {6};
  EXPECT_EQ(reshape(v, same), v);
  const std::uint32_t d5[] = {5};
  EXPECT_EQ(code_of([&] { reshape(five(), d23); }), ErrorCode::kShape);
  EXPECT_EQ(code_of([&] { reshape(five(), d5); }), ErrorCode::kOk);
  const std::uint32_t rank7[] = {1, 1, 1, 1, 1, 1, 6};
  EXPECT_EQ(code_of([&] { reshape(v, rank7); }), ErrorCode::kCapacity);
  EXPECT_EQ(reshape(convert_storage(v, StorageClass::kMax), rank7).rank(), 7u);
}

TEST(CastRaw, Examples) {
  Bytes raw_bytes(40);
  const double vals[] = {1, 2, 3, 4, 5};
  std::memcpy(raw_bytes.data(), vals, 40);
  const std::uint32_t d5[] = {5};
  const ArrayBlob a = cast_raw(ElementType::kFloat64, d5, raw_bytes);
  EXPECT_EQ(a.bytes().size(), 64u);
  EXPECT_EQ(a, five());
  const auto back = raw(a);
  EXPECT_TRUE(std::equal(back.begin(), back.end(), raw_bytes.begin(), raw_bytes.end()));
  EXPECT_EQ(code_of([&] {
              cast_raw(ElementType::kFloat64, d5, std::span<const std::byte>(raw_bytes).first(39));
            }),
            ErrorCode::kFormat);
  EXPECT_TRUE(raw(make_vector(ElementType::kInt8, std::vector<Scalar>{})).empty());
  EXPECT_EQ(cast_raw(a.elem(), a.dims(), raw(a)), a);
}

TEST(ConvertElem, Examples) {
  std::vector<Scalar> ints{std::int64_t{1}, std::int64_t{2}, std::int64_t{3}};
  const ArrayBlob i = make_vector(ElementType::kInt32, ints);
  EXPECT_EQ(convert_elem(i, ElementType::kFloat64, ConversionPolicy::kStrict),
            make_vector(ElementType::kFloat64, doubles({1, 2, 3})));

  const ArrayBlob big = make_vector(ElementType::kFloat64, doubles({300.0}));
  EXPECT_EQ(code_of([&] { convert_elem(big, ElementType::kInt8, ConversionPolicy::kStrict); }),
            ErrorCode::kRange);
  const ArrayBlob sat = convert_elem(big, ElementType::kInt8, ConversionPolicy::kSaturate);
  EXPECT_EQ(std::get<std::int64_t>(sat.load(0)), 127);

  const ArrayBlob c = convert_elem(five(), ElementType::kComplexFloat64, ConversionPolicy::kStrict);
  for (std::uint64_t k = 0; k < 5; ++k) {
    EXPECT_EQ(std::get<std::complex<double>>(c.load(k)).imag(), 0.0);
    EXPECT_EQ(std::get<std::complex<double>>(c.load(k)).real(), k + 1.0);
  }
  EXPECT_EQ(code_of([&] { convert_elem(c, ElementType::kFloat64, ConversionPolicy::kStrict); }),
            ErrorCode::kTypeMismatch);
}

TEST(ConvertElem, SaturateRoundsHalfToEven) {
  const ArrayBlob v =
      make_vector(ElementType::kFloat64, doubles({0.5, 1.5, 2.5, -0.5, -1.5, -1000.0, 2.4}));
  const ArrayBlob r = convert_elem(v, ElementType::kInt8, ConversionPolicy::kSaturate);
  const std::int64_t expected[] = {0, 2, 2, 0, -2, -128, 2};
  for (std::size_t k = 0; k < 7; ++k) EXPECT_EQ(std::get<std::int64_t>(r.load(k)), expected[k]);
  EXPECT_EQ(code_of([&] { convert_elem(v, ElementType::kInt8, ConversionPolicy::kStrict); }),
            ErrorCode::kRange);
}

TEST(ConvertElem, StrictErrorNamesIndex) {
  std::vector<Scalar> ints{std::int64_t{1}, std::int64_t{70000}};
  const ArrayBlob v = make_vector(ElementType::kInt32, ints);
  try {
    convert_elem(v, ElementType::kInt16, ConversionPolicy::kStrict);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kRange);
    EXPECT_NE(std::string(e.what()).find("element 1"), std::string::npos);
  }
}

TEST(ConvertElem, WideningRoundTripsAreExact) {
  Rng rng(17);
  for (int iter = 0; iter < 200; ++iter) {
    const Dims dims = testing::random_dims(rng, 3, 300);
    const ArrayBlob i8 = random_array(rng, ElementType::kInt8, dims, classify(ElementType::kInt8, dims));
    const ArrayBlob back = convert_elem(
        convert_elem(i8, ElementType::kInt64, ConversionPolicy::kStrict), ElementType::kInt8,
        ConversionPolicy::kStrict);
    EXPECT_TRUE(std::ranges::equal(back.payload(), i8.payload()));
    EXPECT_EQ(back.dims(), i8.dims());

    std::vector<Scalar> fv;
    std::normal_distribution<double> nd(0, 1e6);
    for (std::uint64_t k = 0; k < testing::product(dims); ++k) {
      fv.emplace_back(static_cast<double>(static_cast<float>(nd(rng))));
    }
    const ArrayBlob f32 = make_array(ElementType::kFloat32, dims, fv);
    const ArrayBlob f32back = convert_elem(
        convert_elem(f32, ElementType::kFloat64, ConversionPolicy::kStrict),
        ElementType::kFloat32, ConversionPolicy::kStrict);
    EXPECT_EQ(f32back, f32);
  }
}

TEST(ConvertStorage, Examples) {
  const ArrayBlob v = five();
  const ArrayBlob m = convert_storage(v, StorageClass::kMax);
  EXPECT_EQ(m.storage(), StorageClass::kMax);
  EXPECT_EQ(m.header().encoded_size(), 20u);
  EXPECT_EQ(convert_storage(m, StorageClass::kShort), v);

  const ArrayBlob big =
      make_filled(ElementType::kFloat64, std::vector<std::uint32_t>{1000}, 0.0);
  EXPECT_EQ(code_of([&] { convert_storage(big, StorageClass::kShort); }), ErrorCode::kCapacity);
  const ArrayBlob rank7 =
      make_filled(ElementType::kFloat32, std::vector<std::uint32_t>(7, 2), 0.0);
  EXPECT_EQ(code_of([&] { convert_storage(rank7, StorageClass::kShort); }),
            ErrorCode::kCapacity);
}

TEST(Purity, InputsAreNeverMutated) {
  Rng rng(18);
  const ArrayBlob a = random_array(rng, ElementType::kFloat64, {4, 3}, StorageClass::kShort);
  const Bytes before(a.bytes().begin(), a.bytes().end());
  const std::int64_t idx[] = {1, 1};
  const std::uint32_t d12[] = {12};
  update_item(a, idx, 9.0);
  subarray(a, {{1, 0}, {2, 2}}, true);
  reshape(a, d12);
  convert_elem(a, ElementType::kComplexFloat32, ConversionPolicy::kSaturate);
  convert_storage(a, StorageClass::kMax);
  EXPECT_TRUE(std::ranges::equal(before, a.bytes()));
}

}  // namespace
}  // namespace sciarray
