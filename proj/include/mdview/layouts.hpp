// Part of the mdview project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#ifndef MDVIEW_LAYOUTS_HPP
#define MDVIEW_LAYOUTS_HPP

#include <algorithm>
#include <array>
#include <concepts>
#include <cstddef>
#include <string>
#include <vector>

#include "mdview/error.hpp"
#include "mdview/extents.hpp"

namespace mdv {

namespace detail {

constexpr index_type checked_mul(index_type a, index_type b) {
  index_type out = 0;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw offset_overflow("layout: offset arithmetic overflow in " + std::to_string(a) +
                          " * " + std::to_string(b));
  }
  return out;
}

constexpr index_type checked_add(index_type a, index_type b) {
  index_type out = 0;
  if (__builtin_add_overflow(a, b, &out)) {
    throw offset_overflow("layout: offset arithmetic overflow in " + std::to_string(a) +
                          " + " + std::to_string(b));
  }
  return out;
}

template <class Extents>
constexpr bool has_zero_extent(const Extents& e) noexcept {
  for (std::size_t r = 0; r < Extents::rank(); ++r) {
    if (e.extent(r) == 0) return true;
  }
  return false;
}

constexpr void check_rank_index(std::size_t r, std::size_t rank) {
  if (r >= rank) {
    throw rank_out_of_bounds("layout: rank index " + std::to_string(r) +
                             " out of bounds for rank " + std::to_string(rank));
  }
}

}  // namespace detail

/// Row-major: the rightmost index is fastest-running.
struct layout_right {
  template <class Extents>
  class mapping {
   public:
    using extents_type = Extents;
    using layout_type = layout_right;

    constexpr mapping() { validate(); }
    constexpr explicit mapping(const Extents& e) : exts_(e) { validate(); }

    constexpr const Extents& extents() const noexcept { return exts_; }

    template <std::convertible_to<index_type>... Idx>
      requires(sizeof...(Idx) == Extents::rank())
    constexpr index_type operator()(Idx... idxs) const noexcept {
      return offset_of(std::index_sequence_for<Idx...>{},
                       static_cast<index_type>(idxs)...);
    }

    constexpr index_type required_span_size() const noexcept {
      index_type n = 1;
      for (std::size_t r = 0; r < Extents::rank(); ++r) n *= exts_.extent(r);
      return n;
    }

    static constexpr bool is_always_unique() noexcept { return true; }
    static constexpr bool is_always_contiguous() noexcept { return true; }
    static constexpr bool is_always_strided() noexcept { return true; }
    constexpr bool is_unique() const noexcept { return true; }
    constexpr bool is_contiguous() const noexcept { return true; }
    constexpr bool is_strided() const noexcept { return true; }

    /// Product of the extents to the right of rank `r`.
    constexpr index_type stride(std::size_t r) const {
      detail::check_rank_index(r, Extents::rank());
      index_type s = 1;
      for (std::size_t k = r + 1; k < Extents::rank(); ++k) s *= exts_.extent(k);
      return s;
    }

   private:
    template <std::size_t... R, std::convertible_to<index_type>... Idx>
    constexpr index_type offset_of(std::index_sequence<R...>, Idx... i) const noexcept {
      index_type off = 0;
      ((off = off * exts_.template extent<R>() + i), ...);
      return off;
    }

    constexpr void validate() const {
      index_type n = 1;
      for (std::size_t r = 0; r < Extents::rank(); ++r) {
        n = detail::checked_mul(n, exts_.extent(r));
      }
    }

    Extents exts_{};
  };
};

/// Column-major: the leftmost index is fastest-running.
struct layout_left {
  template <class Extents>
  class mapping {
   public:
    using extents_type = Extents;
    using layout_type = layout_left;

    constexpr mapping() { validate(); }
    constexpr explicit mapping(const Extents& e) : exts_(e) { validate(); }

    constexpr const Extents& extents() const noexcept { return exts_; }

    template <std::convertible_to<index_type>... Idx>
      requires(sizeof...(Idx) == Extents::rank())
    constexpr index_type operator()(Idx... idxs) const noexcept {
      return offset_of(std::index_sequence_for<Idx...>{},
                       {static_cast<index_type>(idxs)...});
    }

    constexpr index_type required_span_size() const noexcept {
      index_type n = 1;
      for (std::size_t r = 0; r < Extents::rank(); ++r) n *= exts_.extent(r);
      return n;
    }

    static constexpr bool is_always_unique() noexcept { return true; }
    static constexpr bool is_always_contiguous() noexcept { return true; }
    static constexpr bool is_always_strided() noexcept { return true; }
    constexpr bool is_unique() const noexcept { return true; }
    constexpr bool is_contiguous() const noexcept { return true; }
    constexpr bool is_strided() const noexcept { return true; }

    /// Product of the extents to the left of rank `r`.
    constexpr index_type stride(std::size_t r) const {
      detail::check_rank_index(r, Extents::rank());
      index_type s = 1;
      for (std::size_t k = 0; k < r; ++k) s *= exts_.extent(k);
      return s;
    }

   private:
    template <std::size_t... R>
    constexpr index_type offset_of(
        std::index_sequence<R...>,
        const std::array<index_type, Extents::rank()>& i) const noexcept {
      constexpr std::size_t last = Extents::rank() - 1;
      index_type off = 0;
      ((off = off * exts_.template extent<last - R>() + i[last - R]), ...);
      return off;
    }

    constexpr void validate() const {
      index_type n = 1;
      for (std::size_t r = 0; r < Extents::rank(); ++r) {
        n = detail::checked_mul(n, exts_.extent(r));
      }
    }

    Extents exts_{};
  };
};

/// Arbitrary positive per-rank strides. Uniqueness and contiguity are
/// instance properties, resolved at construction: a cheap sufficient test
/// first, then exhaustive offset enumeration for domains up to 10^6 points,
/// else conservatively false.
struct layout_stride {
  template <class Extents>
  class mapping {
   public:
    using extents_type = Extents;
    using layout_type = layout_stride;
    static constexpr std::size_t rank_ = Extents::rank();

    constexpr mapping() { init(); }

    constexpr mapping(const Extents& e, const std::array<index_type, rank_>& strides)
        : exts_(e), strides_(strides) {
      init();
    }

    constexpr const Extents& extents() const noexcept { return exts_; }

    template <std::convertible_to<index_type>... Idx>
      requires(sizeof...(Idx) == rank_)
    constexpr index_type operator()(Idx... idxs) const noexcept {
      return offset_of(std::index_sequence_for<Idx...>{},
                       static_cast<index_type>(idxs)...);
    }

    constexpr index_type required_span_size() const noexcept { return span_size_; }

    static constexpr bool is_always_unique() noexcept { return false; }
    static constexpr bool is_always_contiguous() noexcept { return false; }
    static constexpr bool is_always_strided() noexcept { return true; }
    constexpr bool is_unique() const noexcept { return unique_; }
    constexpr bool is_contiguous() const noexcept { return contiguous_; }
    constexpr bool is_strided() const noexcept { return true; }

    constexpr index_type stride(std::size_t r) const {
      detail::check_rank_index(r, rank_);
      return strides_[r];
    }

    constexpr const std::array<index_type, rank_>& strides() const noexcept {
      return strides_;
    }

   private:
    template <std::size_t... R, std::convertible_to<index_type>... Idx>
    constexpr index_type offset_of(std::index_sequence<R...>, Idx... i) const noexcept {
      index_type off = 0;
      ((off += i * strides_[R]), ...);
      return off;
    }

    static constexpr index_type enumeration_limit = 1'000'000;

    constexpr void init() {
      for (std::size_t r = 0; r < rank_; ++r) {
        if (strides_[r] <= 0) {
          throw invalid_stride("layout_stride: stride " + std::to_string(strides_[r]) +
                               " at rank " + std::to_string(r) + " must be positive");
        }
      }
      compute_span_size();
      compute_flags();
    }

    constexpr void compute_span_size() {
      if (detail::has_zero_extent(exts_)) {
        span_size_ = 0;
        return;
      }
      // Strides are positive, so the maximum offset is at the maximal index.
      index_type max_off = 0;
      for (std::size_t r = 0; r < rank_; ++r) {
        max_off = detail::checked_add(
            max_off, detail::checked_mul(exts_.extent(r) - 1, strides_[r]));
      }
      span_size_ = detail::checked_add(max_off, 1);
    }

    constexpr void compute_flags() {
      const index_type card = exts_.cardinality();
      if (card == 0) {
        // Empty codomain: both properties hold vacuously.
        unique_ = true;
        contiguous_ = true;
        return;
      }
      if (separated()) {
        unique_ = true;
        contiguous_ = (span_size_ == card);
        return;
      }
      if (card <= enumeration_limit) {
        enumerate_flags();
        return;
      }
      unique_ = false;
      contiguous_ = false;
    }

    // Sufficient condition for uniqueness: with ranks sorted by stride, each
    // stride clears the total reach of all smaller-stride ranks. Dense
    // permuted layouts (and everything subspan produces from them) land here.
    constexpr bool separated() const noexcept {
      std::array<std::size_t, rank_> order{};
      for (std::size_t r = 0; r < rank_; ++r) order[r] = r;
      for (std::size_t a = 1; a < rank_; ++a) {  // insertion sort, rank is tiny
        std::size_t k = a;
        while (k > 0 && strides_[order[k - 1]] > strides_[order[k]]) {
          std::swap(order[k - 1], order[k]);
          --k;
        }
      }
      index_type reach = 0;  // max offset expressible by already-seen ranks
      for (std::size_t k = 0; k < rank_; ++k) {
        const std::size_t r = order[k];
        if (exts_.extent(r) == 1) continue;
        if (strides_[r] <= reach) return false;
        reach += (exts_.extent(r) - 1) * strides_[r];
      }
      return true;
    }

    void enumerate_flags() {
      std::vector<index_type> offsets;
      offsets.reserve(static_cast<std::size_t>(exts_.cardinality()));
      std::array<index_type, rank_> idx{};
      for (;;) {
        index_type off = 0;
        for (std::size_t r = 0; r < rank_; ++r) off += idx[r] * strides_[r];
        offsets.push_back(off);
        std::size_t r = rank_;
        while (r-- > 0) {
          if (++idx[r] < exts_.extent(r)) break;
          idx[r] = 0;
          if (r == 0) goto done;
        }
        if (rank_ == 0) break;
      }
    done:
      std::sort(offsets.begin(), offsets.end());
      unique_ = std::adjacent_find(offsets.begin(), offsets.end()) == offsets.end();
      offsets.erase(std::unique(offsets.begin(), offsets.end()), offsets.end());
      contiguous_ = static_cast<index_type>(offsets.size()) == span_size_;
      if (contiguous_) {
        for (std::size_t k = 0; k < offsets.size(); ++k) {
          if (offsets[k] != static_cast<index_type>(k)) {
            contiguous_ = false;
            break;
          }
        }
      }
    }

    Extents exts_{};
    std::array<index_type, rank_> strides_ = [] {
      std::array<index_type, rank_> s{};
      s.fill(1);
      return s;
    }();
    index_type span_size_ = 0;
    bool unique_ = false;
    bool contiguous_ = false;
  };

  /// Strides a layout_right mapping would use for these extents.
  template <class Extents>
  static constexpr std::array<index_type, Extents::rank()> right_strides(const Extents& e) {
    std::array<index_type, Extents::rank()> s{};
    index_type acc = 1;
    for (std::size_t r = Extents::rank(); r-- > 0;) {
      s[r] = acc;
      acc *= e.extent(r) == 0 ? 1 : e.extent(r);
    }
    return s;
  }

  /// Strides a layout_left mapping would use for these extents.
  template <class Extents>
  static constexpr std::array<index_type, Extents::rank()> left_strides(const Extents& e) {
    std::array<index_type, Extents::rank()> s{};
    index_type acc = 1;
    for (std::size_t r = 0; r < Extents::rank(); ++r) {
      s[r] = acc;
      acc *= e.extent(r) == 0 ? 1 : e.extent(r);
    }
    return s;
  }
};

enum class triangle { upper, lower };

/// Rank-2 packed symmetric layout: (i, j) and (j, i) share one stored
/// element, with one triangle held in row-major packed order. Non-unique for
/// n >= 2, non-strided for n >= 3, always contiguous.
template <triangle Tri>
struct layout_symmetric_packed {
  template <class Extents>
  class mapping {
    static_assert(Extents::rank() == 2, "symmetric packed layout requires rank 2");

   public:
    using extents_type = Extents;
    using layout_type = layout_symmetric_packed;

    constexpr mapping() { validate(); }
    constexpr explicit mapping(const Extents& e) : exts_(e) { validate(); }

    constexpr const Extents& extents() const noexcept { return exts_; }

    constexpr index_type operator()(index_type i, index_type j) const noexcept {
      const index_type n = exts_.extent(0);
      const index_type a = i < j ? i : j;
      const index_type b = i < j ? j : i;
      if constexpr (Tri == triangle::upper) {
        // Row-major packed upper triangle: row a holds columns a..n-1.
        return a * n - a * (a - 1) / 2 + (b - a);
      } else {
        // Row-major packed lower triangle: row b holds columns 0..b.
        return b * (b + 1) / 2 + a;
      }
    }

    constexpr index_type required_span_size() const noexcept {
      const index_type n = exts_.extent(0);
      return n * (n + 1) / 2;
    }

    static constexpr bool is_always_unique() noexcept { return false; }
    static constexpr bool is_always_contiguous() noexcept { return true; }
    static constexpr bool is_always_strided() noexcept { return false; }
    constexpr bool is_unique() const noexcept { return exts_.extent(0) <= 1; }
    constexpr bool is_contiguous() const noexcept { return true; }
    // For n = 2 the packed offset degenerates to i + j, which is a constant
    // step of 1 in both ranks; from n = 3 on no constant step exists.
    constexpr bool is_strided() const noexcept { return exts_.extent(0) <= 2; }

    constexpr index_type stride(std::size_t r) const {
      detail::check_rank_index(r, 2);
      if (!is_strided()) {
        throw not_strided("symmetric packed layout has no constant stride for n >= 3");
      }
      return 1;
    }

   private:
    constexpr void validate() const {
      if (exts_.extent(0) != exts_.extent(1)) {
        throw extents_mismatch("symmetric packed layout requires square extents, got " +
                               std::to_string(exts_.extent(0)) + "x" +
                               std::to_string(exts_.extent(1)));
      }
      const index_type n = exts_.extent(0);
      detail::checked_mul(n, n + 1);  // packed size n*(n+1)/2 must fit
    }

    Extents exts_{};
  };
};

using layout_symmetric_upper = layout_symmetric_packed<triangle::upper>;
using layout_symmetric_lower = layout_symmetric_packed<triangle::lower>;

}  // namespace mdv

#endif  // MDVIEW_LAYOUTS_HPP
