// Part of the mdview project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#ifndef MDVIEW_ALGORITHMS_HPP
#define MDVIEW_ALGORITHMS_HPP

#include <cstddef>
#include <string>

#include "mdview/core.hpp"

namespace mdv {

// Algorithms take views by value: a view is a cheap non-owning handle, and a
// local copy lets the optimizer keep the pointer and extents in registers
// across stores through the view.

namespace detail {

// The validation helpers stay out of line: inlining a throw with string
// formatting into a kernel defeats the vectorizer for the whole function.
// (Only noinline: marking them cold would drag the callers' optimization
// level down, since the calls are unconditional.)
#if defined(__GNUC__)
#define MDVIEW_NOINLINE __attribute__((noinline))
#define MDVIEW_FORCE_INLINE inline __attribute__((always_inline))
#else
#define MDVIEW_NOINLINE
#define MDVIEW_FORCE_INLINE inline
#endif

template <class ViewA, class ViewB>
MDVIEW_NOINLINE void check_same_extents(const ViewA& a, const ViewB& b) {
  static_assert(ViewA::rank() == ViewB::rank());
  for (std::size_t r = 0; r < ViewA::rank(); ++r) {
    if (a.extent(r) != b.extent(r)) {
      throw extents_mismatch("algorithms: extent mismatch at rank " + std::to_string(r) +
                             ": " + std::to_string(a.extent(r)) + " vs " +
                             std::to_string(b.extent(r)));
    }
  }
}

template <class MatView, class VecView, class OutView>
MDVIEW_NOINLINE void check_matvec_extents(const MatView& A, const VecView& x,
                                               const OutView& y) {
  if (A.extent(1) != x.extent(0) || A.extent(0) != y.extent(0)) {
    throw extents_mismatch("matvec: A is " + std::to_string(A.extent(0)) + "x" +
                           std::to_string(A.extent(1)) + " but x has " +
                           std::to_string(x.extent(0)) + " and y has " +
                           std::to_string(y.extent(0)) + " entries");
  }
}

template <class View>
MDVIEW_NOINLINE void check_stencil_interior(const View& s, index_type d) {
  for (std::size_t r = 0; r < 3; ++r) {
    if (s.extent(r) <= 2 * d) {
      throw extent_too_small("stencil3d: extent " + std::to_string(s.extent(r)) +
                             " at rank " + std::to_string(r) +
                             " leaves no interior for radius " + std::to_string(d));
    }
  }
}

// Pure loop nests, separated from the validation above so they compile in a
// function with no exception edges of their own. noinline keeps them out of
// caller frames that do have such edges, which would disable vectorization.

template <class MatView, class VecView, class OutView>
MDVIEW_NOINLINE void matvec_loops(MatView A, VecView x, OutView y) {
  for (index_type i = 0; i < A.extent(0); ++i) {
    for (index_type j = 0; j < A.extent(1); ++j) {
      y(i) += A(i, j) * x(j);
    }
  }
}

// The stencil loop nest is force-inlined instead: the radius `d` must reach
// the inner loops as a compile-time constant for them to unroll, and that
// only happens when the nest is merged into the call site where `d` is a
// literal. (A runtime `d` costs roughly 3x at radius 1.)
template <class InView, class OutView>
MDVIEW_FORCE_INLINE void stencil3d_loops(InView s, OutView o, index_type d) {
  using value_type = std::remove_const_t<typename InView::element_type>;
  for (index_type i = d; i < s.extent(0) - d; ++i) {
    for (index_type j = d; j < s.extent(1) - d; ++j) {
      for (index_type k = d; k < s.extent(2) - d; ++k) {
        value_type sum_local = 0;
        for (index_type di = i - d; di < i + d + 1; ++di) {
          for (index_type dj = j - d; dj < j + d + 1; ++dj) {
            for (index_type dk = k - d; dk < k + d + 1; ++dk) {
              sum_local += s(di, dj, dk);
            }
          }
        }
        o(i, j, k) = sum_local;
      }
    }
  }
}

}  // namespace detail

/// Multiplies every stored element by alpha, exactly once. Unique layouts
/// iterate the multi-index domain; non-unique but contiguous layouts (such
/// as packed symmetric) iterate the codomain instead, so shared elements are
/// not scaled twice.
template <class ElementType, class Extents, class Layout, class Accessor, class Scalar>
void scale(basic_mdview<ElementType, Extents, Layout, Accessor> v, Scalar alpha) {
  if (v.mapping().is_unique()) {
    detail::for_each_index(v.extents(), [&](auto... idx) { v(idx...) *= alpha; });
  } else if (v.mapping().is_contiguous()) {
    const index_type n = v.mapping().required_span_size();
    for (index_type off = 0; off < n; ++off) {
      v.accessor().access(v.data_handle(), off) *= alpha;
    }
  } else {
    throw unsupported_layout("scale requires a unique or contiguous layout");
  }
}

/// Sum over the multi-index domain of a(i...) * b(i...). Valid for any
/// layouts, including non-unique ones.
template <class EA, class ExtA, class LA, class AA, class EB, class ExtB, class LB, class AB>
auto dot_product(basic_mdview<EA, ExtA, LA, AA> a, basic_mdview<EB, ExtB, LB, AB> b) {
  detail::check_same_extents(a, b);
  std::remove_const_t<EA> acc{};
  detail::for_each_index(a.extents(),
                         [&](auto... idx) { acc += a(idx...) * b(idx...); });
  return acc;
}

/// Sum of all entries; the empty domain sums to zero.
template <class View>
auto sum_all(View v) {
  std::remove_const_t<typename View::element_type> acc{};
  if constexpr (View::rank() == 3) {
    // Hot path for the 3-D kernels; identical semantics to the generic walk.
    for (index_type i = 0; i < v.extent(0); ++i) {
      for (index_type j = 0; j < v.extent(1); ++j) {
        for (index_type k = 0; k < v.extent(2); ++k) {
          acc += v(i, j, k);
        }
      }
    }
  } else {
    detail::for_each_index(v.extents(), [&](auto... idx) { acc += v(idx...); });
  }
  return acc;
}

/// y(i) += A(i, j) * x(j), outer loop over rows, layout-agnostic.
template <class MatView, class VecView, class OutView>
void matvec(MatView A, VecView x, OutView y) {
  static_assert(MatView::rank() == 2 && VecView::rank() == 1 && OutView::rank() == 1);
  detail::check_matvec_extents(A, x, y);
  detail::matvec_loops(A, x, y);
}

/// Writes into each interior point of `o` the sum over the (2d+1)^3
/// neighborhood of `s`; boundary entries of `o` are left untouched.
/// Force-inlined so a constant radius at the call site propagates into the
/// loop nest (see stencil3d_loops).
template <class InView, class OutView>
MDVIEW_FORCE_INLINE void stencil3d(InView s, OutView o, index_type d) {
  static_assert(InView::rank() == 3 && OutView::rank() == 3);
  detail::check_same_extents(s, o);
  detail::check_stencil_interior(s, d);
  detail::stencil3d_loops(s, o, d);
}

}  // namespace mdv

#endif  // MDVIEW_ALGORITHMS_HPP
