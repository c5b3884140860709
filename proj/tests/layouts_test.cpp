// Part of the mdview project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#include "mdview/layouts.hpp"

#include <gtest/gtest.h>

#include <random>

#include "layout_oracle.hpp"

namespace {

using mdv::dextents;
using mdv::index_type;
using mdv::layout_left;
using mdv::layout_right;
using mdv::layout_stride;
using mdv::layout_symmetric_lower;
using mdv::layout_symmetric_upper;
using mdv_test::enumerate_layout;

/// Checks every Table-style metadata method against the brute-force oracle.
template <class Mapping>
void expect_matches_oracle(const Mapping& m, const std::string& label) {
  const auto facts = enumerate_layout(m);
  EXPECT_EQ(m.required_span_size(), facts.required_span_size) << label;
  EXPECT_EQ(m.is_unique(), facts.unique) << label;
  EXPECT_EQ(m.is_contiguous(), facts.contiguous) << label;
  EXPECT_EQ(m.is_strided(), facts.strided) << label;
  if (facts.strided) {
    for (std::size_t r = 0; r < Mapping::extents_type::rank(); ++r) {
      if (facts.strides[r]) {
        EXPECT_EQ(m.stride(r), *facts.strides[r]) << label << " rank " << r;
      }
    }
  }
  for (index_type off : facts.offsets) {
    EXPECT_GE(off, 0) << label;
  }
}

TEST(LayoutRight, MapAndStrides) {
  layout_right::mapping<dextents<2>> m(dextents<2>(20, 40));
  EXPECT_EQ(m(10, 5), 405);
  EXPECT_EQ(m.required_span_size(), 800);
  EXPECT_EQ(m.stride(0), 40);
  EXPECT_EQ(m.stride(1), 1);
  EXPECT_TRUE(m.is_unique());
  EXPECT_TRUE(m.is_contiguous());
  EXPECT_TRUE(m.is_strided());
  EXPECT_TRUE(decltype(m)::is_always_unique());
  EXPECT_TRUE(decltype(m)::is_always_contiguous());
  EXPECT_TRUE(decltype(m)::is_always_strided());
  EXPECT_THROW(m.stride(2), mdv::rank_out_of_bounds);
}

TEST(LayoutLeft, MapAndStrides) {
  layout_left::mapping<dextents<2>> m(dextents<2>(20, 40));
  EXPECT_EQ(m(10, 5), 110);
  EXPECT_EQ(m.stride(0), 1);
  EXPECT_EQ(m.stride(1), 20);
}

TEST(LayoutRight, ZeroExtentSpanSize) {
  layout_right::mapping<dextents<2>> m(dextents<2>(0, 5));
  EXPECT_EQ(m.required_span_size(), 0);
  layout_left::mapping<dextents<2>> ml(dextents<2>(0, 5));
  EXPECT_EQ(ml.required_span_size(), 0);
}

TEST(LayoutRight, SpanSizeOverflow) {
  const index_type big = index_type{1} << 32;
  EXPECT_THROW(layout_right::mapping<dextents<2>>(dextents<2>(big, big)),
               mdv::offset_overflow);
}

TEST(LayoutStride, SpanSizeByBruteForce) {
  layout_stride::mapping<dextents<2>> m(dextents<2>(3, 4), {1, 3});
  // brute-force max of i0*1 + i1*3 over the 12-point domain, plus one
  EXPECT_EQ(m.required_span_size(), 12);
  EXPECT_EQ(enumerate_layout(m).required_span_size, 12);
  layout_stride::mapping<dextents<2>> z(dextents<2>(0, 5), {1, 1});
  EXPECT_EQ(z.required_span_size(), 0);
}

TEST(LayoutStride, GappedIsNotContiguous) {
  layout_stride::mapping<dextents<2>> m(dextents<2>(3, 4), {1, 6});
  EXPECT_TRUE(m.is_unique());
  EXPECT_FALSE(m.is_contiguous());
  EXPECT_FALSE(decltype(m)::is_always_unique());
  EXPECT_FALSE(decltype(m)::is_always_contiguous());
  EXPECT_TRUE(decltype(m)::is_always_strided());
  expect_matches_oracle(m, "stride(1,6)");
}

TEST(LayoutStride, AliasingStridesAllowed) {
  layout_stride::mapping<dextents<2>> m(dextents<2>(2, 2), {1, 1});
  EXPECT_FALSE(m.is_unique());
  expect_matches_oracle(m, "stride(1,1)");
}

TEST(LayoutStride, NonPositiveStrideRejected) {
  EXPECT_THROW((layout_stride::mapping<dextents<1>>(dextents<1>(4), {0})),
               mdv::invalid_stride);
  EXPECT_THROW((layout_stride::mapping<dextents<1>>(dextents<1>(4), {-2})),
               mdv::invalid_stride);
}

TEST(LayoutStride, MatchesRightAndLeft) {
  const dextents<3> e(4, 5, 6);
  layout_right::mapping<dextents<3>> right(e);
  layout_left::mapping<dextents<3>> left(e);
  layout_stride::mapping<dextents<3>> as_right(e, layout_stride::right_strides(e));
  layout_stride::mapping<dextents<3>> as_left(e, layout_stride::left_strides(e));
  for (index_type i = 0; i < 4; ++i) {
    for (index_type j = 0; j < 5; ++j) {
      for (index_type k = 0; k < 6; ++k) {
        EXPECT_EQ(right(i, j, k), as_right(i, j, k));
        EXPECT_EQ(left(i, j, k), as_left(i, j, k));
      }
    }
  }
  EXPECT_TRUE(as_right.is_contiguous());
  EXPECT_TRUE(as_left.is_contiguous());
}

TEST(SymmetricPacked, UpperSmallEnumeration) {
  layout_symmetric_upper::mapping<dextents<2>> m(dextents<2>(3, 3));
  EXPECT_EQ(m(0, 1), 1);
  EXPECT_EQ(m(1, 0), 1);
  EXPECT_EQ(m.required_span_size(), 6);
  // Symmetric over all 9 pairs, codomain exactly {0..5}.
  std::array<bool, 6> seen{};
  for (index_type i = 0; i < 3; ++i) {
    for (index_type j = 0; j < 3; ++j) {
      EXPECT_EQ(m(i, j), m(j, i));
      ASSERT_LT(m(i, j), 6);
      seen[static_cast<std::size_t>(m(i, j))] = true;
    }
  }
  for (bool s : seen) EXPECT_TRUE(s);
}

TEST(SymmetricPacked, MetadataAgainstOracle) {
  layout_symmetric_upper::mapping<dextents<2>> m(dextents<2>(3, 3));
  EXPECT_FALSE(m.is_unique());
  EXPECT_TRUE(m.is_contiguous());
  EXPECT_FALSE(m.is_strided());
  EXPECT_THROW(m.stride(0), mdv::not_strided);
  EXPECT_FALSE(decltype(m)::is_always_unique());
  EXPECT_TRUE(decltype(m)::is_always_contiguous());
  EXPECT_FALSE(decltype(m)::is_always_strided());
  expect_matches_oracle(m, "sym-upper n=3");

  layout_symmetric_lower::mapping<dextents<2>> l(dextents<2>(4, 4));
  expect_matches_oracle(l, "sym-lower n=4");

  // n = 1 instances are unique and strided, hence the "always" forms stay
  // false for the type as a whole.
  layout_symmetric_upper::mapping<dextents<2>> one(dextents<2>(1, 1));
  EXPECT_TRUE(one.is_unique());
  EXPECT_TRUE(one.is_strided());
  expect_matches_oracle(one, "sym-upper n=1");
}

TEST(SymmetricPacked, RequiresSquare) {
  EXPECT_THROW((layout_symmetric_upper::mapping<dextents<2>>(dextents<2>(3, 4))),
               mdv::extents_mismatch);
}

TEST(LayoutOracle, RandomStrideSets) {
  std::mt19937_64 rng(20260823);
  std::uniform_int_distribution<index_type> ext(0, 6);
  std::uniform_int_distribution<index_type> step(1, 9);
  for (int trial = 0; trial < 40; ++trial) {
    const dextents<3> e(ext(rng), ext(rng), ext(rng));
    const std::array<index_type, 3> strides{step(rng), step(rng), step(rng)};
    layout_stride::mapping<dextents<3>> m(e, strides);
    expect_matches_oracle(m, "random stride trial " + std::to_string(trial));
  }
}

TEST(LayoutOracle, DenseLayoutsVariousExtents) {
  const std::array<std::array<index_type, 3>, 6> cases{{{2, 3, 4},
                                                        {1, 1, 1},
                                                        {0, 3, 2},
                                                        {7, 1, 5},
                                                        {10, 10, 10},
                                                        {1, 8, 1}}};
  for (const auto& c : cases) {
    const dextents<3> e(c[0], c[1], c[2]);
    expect_matches_oracle(layout_right::mapping<dextents<3>>(e), "right");
    expect_matches_oracle(layout_left::mapping<dextents<3>>(e), "left");
  }
  expect_matches_oracle(layout_right::mapping<mdv::extents<>>(mdv::extents<>()),
                        "right rank-0");
}

}  // namespace
