// Part of the mdview project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#include "mdview/accessors.hpp"

#include <gtest/gtest.h>

#include <cstdint>
#include <random>
#include <thread>
#include <type_traits>
#include <vector>

namespace {

using mdv::index_type;

TEST(DefaultAccessor, AccessAndOffset) {
  std::vector<int> data{10, 20, 30};
  mdv::default_accessor<int> a;
  EXPECT_EQ(a.access(data.data(), 2), 30);
  // Table-style coherence: offsetting then accessing at 0 lands on the same
  // element.
  EXPECT_EQ(a.access(a.offset(data.data(), 1), 0), 20);
  a.access(data.data(), 0) = 11;
  EXPECT_EQ(data[0], 11);
}

template <class Accessor>
void expect_coherence(typename Accessor::pointer p, index_type length) {
  Accessor a;
  typename Accessor::offset_policy rebased(a);
  for (index_type i = 0; i <= length; ++i) {
    const auto q = a.offset(p, i);
    for (index_type j = 0; i + j < length; ++j) {
      EXPECT_EQ(static_cast<typename Accessor::element_type>(rebased.access(q, j)),
                static_cast<typename Accessor::element_type>(a.access(p, i + j)))
          << "i=" << i << " j=" << j;
    }
  }
}

TEST(Accessors, CoherenceLaw) {
  std::vector<double> data(64);
  for (std::size_t i = 0; i < data.size(); ++i) data[i] = static_cast<double>(i) * 1.5;
  expect_coherence<mdv::default_accessor<double>>(data.data(), 64);
  expect_coherence<mdv::no_alias_accessor<double>>(data.data(), 64);
  expect_coherence<mdv::atomic_accessor<double>>(data.data(), 64);
  expect_coherence<mdv::overaligned_accessor<double, 16>>(data.data(), 64);

  std::vector<std::uint8_t> words(16);
  for (std::size_t i = 0; i < 128; ++i) {
    if (i % 3 == 0) words[i / 8] |= static_cast<std::uint8_t>(1u << (i % 8));
  }
  expect_coherence<mdv::bit_packed_bool_accessor<>>({words.data(), 0}, 128);
}

TEST(NoAliasAccessor, MatchesDefaultSingleThreaded) {
  std::vector<double> a_buf{1, 2, 3, 4};
  std::vector<double> b_buf{1, 2, 3, 4};
  mdv::default_accessor<double> da;
  mdv::no_alias_accessor<double> na;
  for (index_type i = 0; i < 4; ++i) {
    da.access(a_buf.data(), i) *= 2.0;
    na.access(b_buf.data(), i) *= 2.0;
  }
  EXPECT_EQ(a_buf, b_buf);
}

TEST(AtomicAccessor, ConcurrentFetchAdd) {
  std::int64_t value = 0;
  mdv::atomic_accessor<std::int64_t> a;
  std::vector<std::thread> threads;
  for (int t = 0; t < 4; ++t) {
    threads.emplace_back([&] {
      for (int n = 0; n < 1000; ++n) a.access(&value, 0).fetch_add(1);
    });
  }
  for (auto& t : threads) t.join();
  EXPECT_EQ(value, 4000);
}

TEST(BitPackedBool, PatternOccupiesExactBits) {
  // (true, false) x 8 over 16 elements fits in exactly two bytes.
  std::vector<std::uint8_t> words(2, 0);
  mdv::bit_packed_bool_accessor<> a;
  const mdv::bit_packed_pointer<std::uint8_t> p{words.data(), 0};
  for (index_type i = 0; i < 16; ++i) a.access(p, i) = (i % 2 == 0);
  EXPECT_EQ(words[0], 0x55);
  EXPECT_EQ(words[1], 0x55);
  for (index_type i = 0; i < 16; ++i) {
    EXPECT_EQ(static_cast<bool>(a.access(p, i)), i % 2 == 0);
  }
}

TEST(BitPackedBool, OffsetRebasesWordAndBit) {
  std::vector<std::uint8_t> words(4, 0);
  mdv::bit_packed_bool_accessor<> a;
  const mdv::bit_packed_pointer<std::uint8_t> p{words.data(), 0};
  const auto q = a.offset(p, 9);
  EXPECT_EQ(q.word, words.data() + 1);
  EXPECT_EQ(q.bit, 1u);
}

TEST(BitPackedBool, MatchesPlainBoolArrayOracle) {
  constexpr std::size_t n = 300;
  std::vector<std::uint8_t> words((n + 7) / 8, 0);
  std::vector<bool> oracle(n, false);
  mdv::bit_packed_bool_accessor<> a;
  const mdv::bit_packed_pointer<std::uint8_t> p{words.data(), 0};

  std::mt19937_64 rng(1234);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::bernoulli_distribution coin;
  for (int op = 0; op < 10000; ++op) {
    const auto i = static_cast<index_type>(pick(rng));
    if (coin(rng)) {
      const bool v = coin(rng);
      a.access(p, i) = v;
      oracle[static_cast<std::size_t>(i)] = v;
    } else {
      ASSERT_EQ(static_cast<bool>(a.access(p, i)), oracle[static_cast<std::size_t>(i)])
          << "element " << i << " after " << op << " ops";
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    EXPECT_EQ(static_cast<bool>(a.access(p, static_cast<index_type>(i))), oracle[i]);
  }
}

TEST(BitPackedBool, WiderWords) {
  std::vector<std::uint32_t> words(2, 0);
  mdv::bit_packed_bool_accessor<std::uint32_t> a;
  EXPECT_EQ(a.word_bits, 32u);
  const mdv::bit_packed_pointer<std::uint32_t> p{words.data(), 0};
  a.access(p, 33) = true;
  EXPECT_EQ(words[1], 2u);
  EXPECT_EQ(a.offset(p, 33).word, words.data() + 1);
  EXPECT_EQ(a.offset(p, 33).bit, 1u);
}

TEST(OveralignedAccessor, OffsetDecaysToDefaultPolicy) {
  static_assert(std::is_same_v<mdv::overaligned_accessor<double, 64>::offset_policy,
                               mdv::default_accessor<double>>);
  alignas(64) double data[8] = {1, 2, 3, 4, 5, 6, 7, 8};
  mdv::overaligned_accessor<double, 64> a;
  EXPECT_EQ(a.access(data, 3), 4.0);
  EXPECT_EQ(a.offset(data, 5), data + 5);
}

TEST(SpaceTaggedAccessor, TagsArePartOfTheType) {
  using ptr_a = mdv::tagged_pointer<double, mdv::space_a_tag>;
  using ptr_b = mdv::tagged_pointer<double, mdv::space_b_tag>;
  static_assert(!std::is_convertible_v<ptr_b, ptr_a>);
  static_assert(!std::is_convertible_v<ptr_a, ptr_b>);

  double value = 7.5;
  mdv::space_tagged_accessor<double, mdv::space_a_tag> a;
  const ptr_a p{&value};
  EXPECT_EQ(a.access(p, 0), 7.5);
  // Copies keep the space tag.
  const ptr_a q = a.offset(p, 0);
  static_assert(std::is_same_v<std::remove_const_t<decltype(q)>, ptr_a>);
  EXPECT_EQ(q, p);
}

}  // namespace
