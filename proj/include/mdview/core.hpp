// Part of the mdview project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#ifndef MDVIEW_CORE_HPP
#define MDVIEW_CORE_HPP

#include <array>
#include <concepts>
#include <cstddef>
#include <span>
#include <string>
#include <type_traits>
#include <utility>

#include "mdview/accessors.hpp"
#include "mdview/error.hpp"
#include "mdview/extents.hpp"
#include "mdview/layouts.hpp"

// MDVIEW_BOUNDS_CHECK: when defined, operator() validates every index
// component (checked mode). Benchmark binaries leave it undefined; indexing
// out of bounds is then undefined behavior, as with raw pointers.

namespace mdv {

namespace detail {

/// Invokes fn(i0, ..., in) for every multi-index in the domain, rightmost
/// index fastest.
template <class Extents, class Fn, std::size_t... R>
constexpr void for_each_index_impl(const Extents& e, Fn&& fn, std::index_sequence<R...>) {
  std::array<index_type, Extents::rank()> idx{};
  if (e.cardinality() == 0) return;
  for (;;) {
    fn(idx[R]...);
    std::size_t r = Extents::rank();
    while (r-- > 0) {
      if (++idx[r] < e.extent(r)) break;
      idx[r] = 0;
      if (r == 0) return;
    }
    if (Extents::rank() == 0) return;
  }
}

template <class Extents, class Fn>
constexpr void for_each_index(const Extents& e, Fn&& fn) {
  for_each_index_impl(e, std::forward<Fn>(fn),
                      std::make_index_sequence<Extents::rank()>{});
}

}  // namespace detail

/// Non-owning multidimensional view: data handle + layout mapping + accessor.
/// Copying a view aliases the same elements; the view never owns memory.
template <class ElementType, class Extents, class Layout = layout_right,
          class Accessor = default_accessor<ElementType>>
class basic_mdview {
 public:
  using element_type = ElementType;
  using extents_type = Extents;
  using layout_type = Layout;
  using accessor_type = Accessor;
  using mapping_type = typename Layout::template mapping<Extents>;
  using pointer = typename Accessor::pointer;
  using reference = typename Accessor::reference;

  constexpr basic_mdview() = default;

  constexpr basic_mdview(pointer p, const mapping_type& m, const Accessor& a = Accessor{})
      : ptr_(p), mapping_(m), accessor_(a) {}

  /// Shorthand: dynamic extent values only, layout and accessor defaulted.
  template <std::convertible_to<index_type>... DynamicValues>
    requires(sizeof...(DynamicValues) == Extents::rank_dynamic())
  constexpr explicit basic_mdview(pointer p, DynamicValues... dynamic_values)
      : ptr_(p), mapping_(Extents(dynamic_values...)) {}

  static constexpr std::size_t rank() noexcept { return Extents::rank(); }

  constexpr const Extents& extents() const noexcept { return mapping_.extents(); }
  constexpr index_type extent(std::size_t r) const { return extents().extent(r); }
  constexpr const mapping_type& mapping() const noexcept { return mapping_; }
  constexpr const Accessor& accessor() const noexcept { return accessor_; }
  constexpr pointer data_handle() const noexcept { return ptr_; }

  template <std::convertible_to<index_type>... Idx>
    requires(sizeof...(Idx) == Extents::rank())
  constexpr reference operator()(Idx... idxs) const {
#ifdef MDVIEW_BOUNDS_CHECK
    check_bounds(static_cast<index_type>(idxs)...);
#endif
    return accessor_.access(ptr_, mapping_(idxs...));
  }

  /// Always-checked element access, independent of build mode.
  template <std::convertible_to<index_type>... Idx>
    requires(sizeof...(Idx) == Extents::rank())
  constexpr reference at(Idx... idxs) const {
    check_bounds(static_cast<index_type>(idxs)...);
    return accessor_.access(ptr_, mapping_(idxs...));
  }

 private:
  template <class... Idx>
  constexpr void check_bounds(Idx... idxs) const {
    const std::array<index_type, Extents::rank()> i{idxs...};
    for (std::size_t r = 0; r < Extents::rank(); ++r) {
      if (i[r] < 0 || i[r] >= extent(r)) {
        throw index_out_of_bounds("mdview: index " + std::to_string(i[r]) +
                                  " out of bounds for extent " +
                                  std::to_string(extent(r)) + " at rank " +
                                  std::to_string(r));
      }
    }
  }

  pointer ptr_{};
  mapping_type mapping_{};
  [[no_unique_address]] Accessor accessor_{};
};

/// Alias with layout and accessor defaulted, in the style of the shorthand
/// view type.
template <class ElementType, index_type... Exts>
using mdview = basic_mdview<ElementType, extents<Exts...>>;

/// Checked view creation: the reachable range must cover the mapping's
/// codomain.
template <class ElementType, class Extents, class Layout, class Accessor>
constexpr basic_mdview<ElementType, Extents, Layout, Accessor> make_mdview(
    typename Accessor::pointer p, index_type range_length,
    const typename Layout::template mapping<Extents>& m, const Accessor& a = Accessor{}) {
  if (range_length < m.required_span_size()) {
    throw insufficient_span("mdview: range of length " + std::to_string(range_length) +
                            " cannot back a mapping needing " +
                            std::to_string(m.required_span_size()) + " elements");
  }
  return basic_mdview<ElementType, Extents, Layout, Accessor>(p, m, a);
}

/// Checked creation from a span, for accessors whose handle is a raw pointer.
template <class ElementType, class Mapping>
constexpr auto make_mdview(std::span<ElementType> s, const Mapping& m) {
  using Extents = typename Mapping::extents_type;
  using Layout = typename Mapping::layout_type;
  return make_mdview<ElementType, Extents, Layout, default_accessor<ElementType>>(
      s.data(), static_cast<index_type>(s.size()), m);
}

}  // namespace mdv

#endif  // MDVIEW_CORE_HPP
