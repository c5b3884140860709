// Part of the mdview project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#ifndef MDVIEW_SUBSPAN_HPP
#define MDVIEW_SUBSPAN_HPP

#include <array>
#include <concepts>
#include <cstddef>
#include <span>
#include <string>
#include <type_traits>
#include <utility>

#include "mdview/core.hpp"

namespace mdv {

/// Keep-all slice specifier.
struct all_t {
  explicit all_t() = default;
};
inline constexpr all_t all{};

namespace detail {

template <class S>
inline constexpr bool is_fix_spec = std::integral<std::remove_cvref_t<S>>;

template <class S>
struct is_range_spec : std::false_type {};

template <class A, class B>
  requires(std::integral<A> && std::integral<B>)
struct is_range_spec<std::pair<A, B>> : std::true_type {};

template <class S>
inline constexpr bool is_range_spec_v = is_range_spec<std::remove_cvref_t<S>>::value;

template <class S>
inline constexpr bool is_all_spec = std::is_same_v<std::remove_cvref_t<S>, all_t>;

template <class S>
concept slice_specifier = is_fix_spec<S> || is_range_spec_v<S> || is_all_spec<S>;

template <class Mapping, std::size_t R, std::size_t... I>
constexpr index_type apply_map(const Mapping& m, const std::array<index_type, R>& idx,
                               std::index_sequence<I...>) {
  return m(idx[I]...);
}

struct subspan_builder {
  std::size_t r = 0;  // source rank being consumed
  std::size_t k = 0;  // result rank being produced

  template <std::size_t R, std::size_t K, class Extents, class Spec>
  void consume(const Extents& e, std::array<index_type, R>& base,
               std::array<index_type, K>& sub_ext, const Spec& spec) {
    const index_type len = e.extent(r);
    if constexpr (is_fix_spec<Spec>) {
      const auto i = static_cast<index_type>(spec);
      if (i < 0 || i >= len) {
        throw spec_out_of_bounds("subspan: fixed index " + std::to_string(i) +
                                 " out of bounds for extent " + std::to_string(len) +
                                 " at rank " + std::to_string(r));
      }
      base[r] = i;
    } else if constexpr (is_all_spec<Spec>) {
      base[r] = 0;
      sub_ext[k++] = len;
    } else {
      const auto b = static_cast<index_type>(spec.first);
      const auto ee = static_cast<index_type>(spec.second);
      if (b < 0 || b > ee || ee > len) {
        throw spec_out_of_bounds("subspan: range [" + std::to_string(b) + ", " +
                                 std::to_string(ee) + ") invalid for extent " +
                                 std::to_string(len) + " at rank " + std::to_string(r));
      }
      base[r] = b;
      sub_ext[k++] = ee - b;
    }
    ++r;
  }
};

}  // namespace detail

/// Slices a view with one specifier per source rank: an integral fixes (and
/// drops) a rank, `all` keeps it whole, a pair {begin, end} keeps the
/// half-open range. The result is a strided view over the same elements,
/// with its handle rebased through the accessor's offset rule.
template <class ElementType, class Extents, class Layout, class Accessor,
          detail::slice_specifier... Specs>
constexpr auto subspan(const basic_mdview<ElementType, Extents, Layout, Accessor>& v,
                       Specs... specs) {
  constexpr std::size_t source_rank = Extents::rank();
  static_assert(sizeof...(Specs) == source_rank,
                "subspan requires one slice specifier per source rank");
  constexpr std::size_t result_rank =
      ((detail::is_fix_spec<Specs> ? std::size_t{0} : std::size_t{1}) + ... +
       std::size_t{0});

  if (!v.mapping().is_strided()) {
    throw unsupported_layout("subspan requires a strided source layout");
  }

  std::array<index_type, source_rank> base{};
  std::array<index_type, result_rank> sub_ext{};
  detail::subspan_builder builder;
  (builder.consume(v.extents(), base, sub_ext, specs), ...);

  // Kept ranks inherit the source stride unchanged.
  std::array<index_type, result_rank> sub_strides{};
  {
    std::size_t k = 0;
    std::size_t r = 0;
    auto keep = [&](bool kept) {
      if (kept) sub_strides[k++] = v.mapping().stride(r);
      ++r;
    };
    (keep(!detail::is_fix_spec<Specs>), ...);
  }

  const index_type base_offset = detail::apply_map(
      v.mapping(), base, std::make_index_sequence<source_rank>{});

  using result_extents = dextents<result_rank>;
  using result_accessor = typename Accessor::offset_policy;
  const typename layout_stride::mapping<result_extents> sub_mapping(
      result_extents(std::span<const index_type>(sub_ext)), sub_strides);
  const result_accessor acc(v.accessor());
  return basic_mdview<ElementType, result_extents, layout_stride, result_accessor>(
      v.accessor().offset(v.data_handle(), base_offset), sub_mapping, acc);
}

}  // namespace mdv

#endif  // MDVIEW_SUBSPAN_HPP
