// Part of the mdview project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#ifndef MDVIEW_EXTENTS_HPP
#define MDVIEW_EXTENTS_HPP

#include <array>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>

#include "mdview/error.hpp"

namespace mdv {

/// Signed index/offset type used throughout the library.
using index_type = std::int64_t;

/// Sentinel marking an extent whose length is supplied at construction time.
inline constexpr index_type dynamic_extent = -1;

/// Multidimensional index domain with a per-rank mix of compile-time and
/// runtime extents. Only the dynamic extents occupy storage.
template <index_type... StaticExtents>
class extents {
  static_assert(((StaticExtents == dynamic_extent || StaticExtents >= 0) && ...),
                "static extents must be nonnegative or dynamic_extent");

 public:
  static constexpr std::size_t rank() noexcept { return sizeof...(StaticExtents); }

  static constexpr std::size_t rank_dynamic() noexcept {
    return static_cast<std::size_t>(((StaticExtents == dynamic_extent ? 1 : 0) + ... + 0));
  }

  constexpr extents() noexcept = default;

  /// Fills the dynamic slots in declaration order; static slots come from the
  /// type. Compile-time arity check.
  template <std::convertible_to<index_type>... DynamicValues>
    requires(sizeof...(DynamicValues) == rank_dynamic() && rank_dynamic() > 0)
  constexpr explicit extents(DynamicValues... dynamic_values)
      : dynamic_{check_nonnegative(static_cast<index_type>(dynamic_values))...} {}

  /// Runtime-arity construction; throws arity_mismatch when the count of
  /// supplied values does not match the number of dynamic slots.
  constexpr explicit extents(std::span<const index_type> dynamic_values) {
    if (dynamic_values.size() != rank_dynamic()) {
      throw arity_mismatch("extents: expected " + std::to_string(rank_dynamic()) +
                           " dynamic extent values, got " +
                           std::to_string(dynamic_values.size()));
    }
    for (std::size_t d = 0; d < rank_dynamic(); ++d) {
      dynamic_[d] = check_nonnegative(dynamic_values[d]);
    }
  }

  /// Static length of rank `r`, or dynamic_extent when supplied at runtime.
  static constexpr index_type static_extent(std::size_t r) {
    check_rank(r);
    constexpr std::array<index_type, sizeof...(StaticExtents)> table{StaticExtents...};
    return table[r];
  }

  /// Resolved length of rank `r`.
  constexpr index_type extent(std::size_t r) const {
    check_rank(r);
    constexpr std::array<index_type, sizeof...(StaticExtents)> table{StaticExtents...};
    if (table[r] != dynamic_extent) return table[r];
    return dynamic_[dynamic_index(r)];
  }

  /// Compile-time-rank variant of extent(); static lengths resolve to
  /// constants with no runtime branch.
  template <std::size_t R>
  constexpr index_type extent() const noexcept {
    static_assert(R < rank());
    constexpr std::array<index_type, sizeof...(StaticExtents)> table{StaticExtents...};
    if constexpr (table[R] != dynamic_extent) {
      return table[R];
    } else {
      return dynamic_[dynamic_index(R)];
    }
  }

  /// Number of multi-indices in the domain; the empty product is 1.
  constexpr index_type cardinality() const {
    index_type n = 1;
    for (std::size_t r = 0; r < rank(); ++r) n *= extent(r);
    return n;
  }

  friend constexpr bool operator==(const extents& a, const extents& b) noexcept {
    for (std::size_t r = 0; r < rank(); ++r) {
      if (a.extent(r) != b.extent(r)) return false;
    }
    return true;
  }

 private:
  static constexpr void check_rank(std::size_t r) {
    if (r >= rank()) {
      throw rank_out_of_bounds("extents: rank index " + std::to_string(r) +
                               " out of bounds for rank " + std::to_string(rank()));
    }
  }

  static constexpr index_type check_nonnegative(index_type v) {
    if (v < 0) {
      throw invalid_extent("extents: negative dynamic extent " + std::to_string(v));
    }
    return v;
  }

  // Count of dynamic slots strictly before rank r.
  static constexpr std::size_t dynamic_index(std::size_t r) noexcept {
    constexpr std::array<index_type, sizeof...(StaticExtents)> table{StaticExtents...};
    std::size_t d = 0;
    for (std::size_t k = 0; k < r; ++k) {
      if (table[k] == dynamic_extent) ++d;
    }
    return d;
  }

  [[no_unique_address]] std::array<index_type, rank_dynamic()> dynamic_{};
};

namespace detail {

template <class Seq>
struct dextents_impl;

template <std::size_t... I>
struct dextents_impl<std::index_sequence<I...>> {
  using type = extents<((void)I, dynamic_extent)...>;
};

}  // namespace detail

/// All-dynamic extents of the given rank.
template <std::size_t Rank>
using dextents = typename detail::dextents_impl<std::make_index_sequence<Rank>>::type;

}  // namespace mdv

#endif  // MDVIEW_EXTENTS_HPP
