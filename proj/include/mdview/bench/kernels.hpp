// Part of the mdview project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#ifndef MDVIEW_BENCH_KERNELS_HPP
#define MDVIEW_BENCH_KERNELS_HPP

#include <cstddef>
#include <type_traits>

#include "mdview/algorithms.hpp"
#include "mdview/core.hpp"
#include "mdview/subspan.hpp"

namespace mdv::bench {

/// Forwards element access to at(), turning a view into its bounds-checked
/// twin without touching the kernels.
template <class View>
struct checked_adaptor {
  View view;

  using element_type = typename View::element_type;
  static constexpr std::size_t rank() noexcept { return View::rank(); }
  const auto& extents() const noexcept { return view.extents(); }
  index_type extent(std::size_t r) const { return view.extent(r); }

  template <class... Idx>
  decltype(auto) operator()(Idx... idx) const {
    return view.at(idx...);
  }
};

template <bool Checked, class View>
auto adapt(const View& v) {
  if constexpr (Checked) {
    return checked_adaptor<View>{v};
  } else {
    return v;
  }
}

// --- view-based kernels -----------------------------------------------------

template <bool Checked, class View>
double sum3d_view(View s) {
  return sum_all(adapt<Checked>(s));
}

// Force-inlined so the radius literal at the harness call site reaches the
// stencil loop nest as a constant (see mdv::stencil3d).
template <bool Checked, class InView, class OutView>
MDVIEW_FORCE_INLINE void stencil3d_view(InView s, OutView o, index_type d) {
  stencil3d(adapt<Checked>(s), adapt<Checked>(o), d);
}

template <bool Checked, class InView, class OutView>
void tinymatrixsum_view(InView s, OutView o) {
  const auto sv = adapt<Checked>(s);
  const auto ov = adapt<Checked>(o);
  for (index_type i = 0; i < sv.extent(0); ++i) {
    for (index_type j = 0; j < sv.extent(1); ++j) {
      for (index_type k = 0; k < sv.extent(2); ++k) {
        ov(i, j, k) += sv(i, j, k);
      }
    }
  }
}

/// Same reduction as sum3d_view, but every element access goes through two
/// subspan calls; stresses the slicing machinery.
template <bool Checked, class View>
double subspan3d_view(View s) {
  double sum = 0.0;
  for (index_type i = 0; i < s.extent(0); ++i) {
    const auto sub_i = subspan(s, i, all, all);
    for (index_type j = 0; j < s.extent(1); ++j) {
      const auto sub_i_j = subspan(sub_i, j, all);
      const auto sv = adapt<Checked>(sub_i_j);
      for (index_type k = 0; k < s.extent(2); ++k) {
        sum += sv(k);
      }
    }
  }
  return sum;
}

template <bool Checked, class MatView, class VecView, class OutView>
void matvec_view(MatView A, VecView x, OutView y) {
  matvec(adapt<Checked>(A), adapt<Checked>(x), adapt<Checked>(y));
}

// --- raw-pointer baselines (hard-coded row-major arithmetic) ----------------

inline double raw_sum3d(const double* p, index_type n0, index_type n1, index_type n2) {
  double sum = 0.0;
  for (index_type i = 0; i < n0; ++i) {
    for (index_type j = 0; j < n1; ++j) {
      for (index_type k = 0; k < n2; ++k) {
        sum += p[(i * n1 + j) * n2 + k];
      }
    }
  }
  return sum;
}

inline void raw_stencil3d(const double* s, double* o, index_type n0, index_type n1,
                          index_type n2, index_type d) {
  for (index_type i = d; i < n0 - d; ++i) {
    for (index_type j = d; j < n1 - d; ++j) {
      for (index_type k = d; k < n2 - d; ++k) {
        double sum_local = 0.0;
        for (index_type di = i - d; di < i + d + 1; ++di) {
          for (index_type dj = j - d; dj < j + d + 1; ++dj) {
            for (index_type dk = k - d; dk < k + d + 1; ++dk) {
              sum_local += s[(di * n1 + dj) * n2 + dk];
            }
          }
        }
        o[(i * n1 + j) * n2 + k] = sum_local;
      }
    }
  }
}

/// SN1/SN2 mirror the view variant's static extents so both sides offer the
/// optimizer the same information; dynamic_extent means runtime-sized.
template <index_type SN1 = dynamic_extent, index_type SN2 = dynamic_extent>
void raw_tinymatrixsum(const double* s, double* o, index_type n0, index_type n1,
                       index_type n2) {
  const index_type e1 = SN1 == dynamic_extent ? n1 : SN1;
  const index_type e2 = SN2 == dynamic_extent ? n2 : SN2;
  for (index_type i = 0; i < n0; ++i) {
    for (index_type j = 0; j < e1; ++j) {
      for (index_type k = 0; k < e2; ++k) {
        o[(i * e1 + j) * e2 + k] += s[(i * e1 + j) * e2 + k];
      }
    }
  }
}

inline void raw_matvec(const double* A, const double* x, double* y, index_type rows,
                       index_type cols) {
  for (index_type i = 0; i < rows; ++i) {
    for (index_type j = 0; j < cols; ++j) {
      y[i] += A[i * cols + j] * x[j];
    }
  }
}

}  // namespace mdv::bench

#endif  // MDVIEW_BENCH_KERNELS_HPP
