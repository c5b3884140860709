// Part of the mdview project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#ifndef MDVIEW_BENCH_HARNESS_HPP
#define MDVIEW_BENCH_HARNESS_HPP

#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <thread>
#include <type_traits>
#include <utility>
#include <vector>

#include "mdview/bench/config.hpp"
#include "mdview/bench/kernels.hpp"
#include "mdview/bench/report.hpp"
#include "mdview/mdview.hpp"

namespace mdv::bench {

namespace detail {

struct pass_result {
  double ns = 0.0;
  double checksum = 0.0;
};

class timer {
 public:
  timer() : start_(std::chrono::steady_clock::now()) {}
  double elapsed_ns() const {
    return std::chrono::duration<double, std::nano>(std::chrono::steady_clock::now() -
                                                    start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

struct timed_variant {
  std::vector<double> ns;
  double checksum = 0.0;
};

/// One untimed warmup pass, then repetitions until both the repetition count
/// and the minimum total time are satisfied.
template <class Pass>
timed_variant time_variant(Pass&& pass, int reps, double min_time_s) {
  pass();
  timed_variant out;
  double total_s = 0.0;
  while (static_cast<int>(out.ns.size()) < reps || total_s < min_time_s) {
    const pass_result r = pass();
    out.ns.push_back(r.ns);
    out.checksum = r.checksum;
    total_s += r.ns * 1e-9;
  }
  return out;
}

inline void check_agreement(const std::string& benchmark, double view_cs, double raw_cs) {
  const double scale = std::max(std::abs(view_cs), std::abs(raw_cs));
  if (std::abs(view_cs - raw_cs) > 1e-12 * std::max(scale, 1.0)) {
    throw checksum_mismatch(benchmark + ": view checksum " + std::to_string(view_cs) +
                            " disagrees with raw checksum " + std::to_string(raw_cs));
  }
}

inline std::vector<double> random_values(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  std::vector<double> vals(n);
  for (double& v : vals) v = dist(rng);
  return vals;
}

/// Writes the logical value sequence through the view's own mapping.
template <class View>
void fill_view(const View& v, const std::vector<double>& vals) {
  std::size_t n = 0;
  mdv::detail::for_each_index(v.extents(), [&](auto... idx) { v(idx...) = vals[n++]; });
}

template <class Layout, class Extents>
typename Layout::template mapping<Extents> make_mapping(const bench_config& cfg,
                                                        const Extents& e) {
  if constexpr (std::is_same_v<Layout, layout_stride>) {
    if (cfg.layout_strides.size() != Extents::rank()) {
      throw config_error("stride layout needs " + std::to_string(Extents::rank()) +
                         " strides, got " + std::to_string(cfg.layout_strides.size()));
    }
    std::array<index_type, Extents::rank()> strides{};
    for (std::size_t r = 0; r < Extents::rank(); ++r) strides[r] = cfg.layout_strides[r];
    typename layout_stride::mapping<Extents> m(e, strides);
    if (!m.is_unique()) {
      throw config_error("stride layout with aliasing offsets cannot be benchmarked "
                         "against the raw baseline");
    }
    return m;
  } else {
    return typename Layout::template mapping<Extents>(e);
  }
}

template <class F>
auto dispatch_layout(const bench_config& cfg, F&& f) {
  if (cfg.layout == "right") return f(std::type_identity<layout_right>{});
  if (cfg.layout == "left") return f(std::type_identity<layout_left>{});
  if (cfg.layout == "stride") return f(std::type_identity<layout_stride>{});
  throw config_error("layout '" + cfg.layout +
                     "' is not usable here: benchmark kernels need a unique strided "
                     "layout matching the raw baseline");
}

template <class F>
auto dispatch_accessor(const bench_config& cfg, F&& f) {
  if (cfg.accessor == "default") return f(std::type_identity<default_accessor<double>>{});
  if (cfg.accessor == "noalias") return f(std::type_identity<no_alias_accessor<double>>{});
  if (cfg.accessor == "atomic") return f(std::type_identity<atomic_accessor<double>>{});
  throw config_error("unknown accessor: " + cfg.accessor);
}

inline bench_report assemble_report(const bench_config& cfg, const std::string& benchmark,
                                    index_type bytes, const timed_variant& view,
                                    const timed_variant& raw) {
  check_agreement(benchmark, view.checksum, raw.checksum);
  bench_report rep;
  rep.benchmark = benchmark;
  rep.layout = cfg.layout;
  rep.extents_mode = cfg.extents_mode();
  rep.threads = cfg.threads;
  rep.reps = static_cast<int>(view.ns.size());
  variant_record vr{"view", summarize(view.ns), bytes, 0.0};
  vr.throughput_bps = static_cast<double>(bytes) / (vr.stats.median_ns * 1e-9);
  variant_record rr{"raw", summarize(raw.ns), bytes, 0.0};
  rr.throughput_bps = static_cast<double>(bytes) / (rr.stats.median_ns * 1e-9);
  rep.overhead_pct = compute_overhead(vr.stats.median_ns, rr.stats.median_ns);
  rep.variants = {std::move(vr), std::move(rr)};
  return rep;
}

inline void require_rank(const bench_config& cfg, std::size_t rank) {
  if (cfg.extents.size() != rank) {
    throw config_error(cfg.benchmark + " needs " + std::to_string(rank) +
                       " extents, got " + std::to_string(cfg.extents.size()));
  }
}

inline void require_all_dynamic(const bench_config& cfg) {
  for (const auto& e : cfg.extents) {
    if (e.is_static) {
      throw config_error("static extents are precompiled only for tinymatrixsum");
    }
  }
}

// --- 3-D reduction benchmarks (sum3d / subspan3d) ---------------------------

template <bool Checked, bool UseSubspan, class Layout, class Accessor>
bench_report run_sum3d_impl(const bench_config& cfg) {
  using E = dextents<3>;
  const E e(cfg.extents[0].length, cfg.extents[1].length, cfg.extents[2].length);
  const auto m = make_mapping<Layout>(cfg, e);
  std::vector<double> vbuf(static_cast<std::size_t>(m.required_span_size()));
  const basic_mdview<double, E, Layout, Accessor> v(vbuf.data(), m);
  const auto vals = random_values(static_cast<std::size_t>(e.cardinality()), cfg.seed);
  fill_view(v, vals);
  std::vector<double> rbuf(vals);  // raw baseline is row-major, logical order

  auto view_pass = [&] {
    timer t;
    const double cs = UseSubspan ? subspan3d_view<Checked>(v) : sum3d_view<Checked>(v);
    return pass_result{t.elapsed_ns(), cs};
  };
  auto raw_pass = [&] {
    timer t;
    const double cs =
        raw_sum3d(rbuf.data(), e.extent(0), e.extent(1), e.extent(2));
    return pass_result{t.elapsed_ns(), cs};
  };
  const auto view_t = time_variant(view_pass, cfg.reps, cfg.min_time);
  const auto raw_t = time_variant(raw_pass, cfg.reps, cfg.min_time);
  const index_type bytes = e.cardinality() * static_cast<index_type>(sizeof(double));
  return assemble_report(cfg, UseSubspan ? "subspan3d" : "sum3d", bytes, view_t, raw_t);
}

// --- stencil3d --------------------------------------------------------------

template <bool Checked, class Layout, class Accessor>
bench_report run_stencil3d_impl(const bench_config& cfg) {
  using E = dextents<3>;
  const E e(cfg.extents[0].length, cfg.extents[1].length, cfg.extents[2].length);
  constexpr index_type d = 1;
  const auto m = make_mapping<Layout>(cfg, e);
  std::vector<double> sbuf(static_cast<std::size_t>(m.required_span_size()));
  std::vector<double> obuf(sbuf.size());
  const basic_mdview<double, E, Layout, Accessor> sv(sbuf.data(), m);
  const basic_mdview<double, E, Layout, Accessor> ov(obuf.data(), m);
  const auto vals = random_values(static_cast<std::size_t>(e.cardinality()), cfg.seed);
  fill_view(sv, vals);
  std::vector<double> rs(vals);
  std::vector<double> ro(rs.size());

  auto view_pass = [&] {
    std::fill(obuf.begin(), obuf.end(), 0.0);
    timer t;
    stencil3d_view<Checked>(sv, ov, d);
    const double ns = t.elapsed_ns();
    return pass_result{ns, sum3d_view<false>(ov)};
  };
  auto raw_pass = [&] {
    std::fill(ro.begin(), ro.end(), 0.0);
    timer t;
    raw_stencil3d(rs.data(), ro.data(), e.extent(0), e.extent(1), e.extent(2), d);
    const double ns = t.elapsed_ns();
    return pass_result{ns, raw_sum3d(ro.data(), e.extent(0), e.extent(1), e.extent(2))};
  };
  const auto view_t = time_variant(view_pass, cfg.reps, cfg.min_time);
  const auto raw_t = time_variant(raw_pass, cfg.reps, cfg.min_time);
  const index_type bytes = 2 * e.cardinality() * static_cast<index_type>(sizeof(double));
  return assemble_report(cfg, "stencil3d", bytes, view_t, raw_t);
}

// --- tinymatrixsum ----------------------------------------------------------

template <bool Checked, class E, index_type SN1, index_type SN2, class Layout,
          class Accessor>
bench_report run_tiny_impl(const bench_config& cfg) {
  std::vector<index_type> dyn;
  for (std::size_t r = 0; r < 3; ++r) {
    if (E::static_extent(r) == dynamic_extent) dyn.push_back(cfg.extents[r].length);
  }
  const E e{std::span<const index_type>(dyn)};
  const auto m = make_mapping<Layout>(cfg, e);
  std::vector<double> sbuf(static_cast<std::size_t>(m.required_span_size()));
  std::vector<double> obuf(sbuf.size());
  const basic_mdview<double, E, Layout, Accessor> sv(sbuf.data(), m);
  const basic_mdview<double, E, Layout, Accessor> ov(obuf.data(), m);
  const auto vals = random_values(static_cast<std::size_t>(e.cardinality()), cfg.seed);
  fill_view(sv, vals);
  std::vector<double> rs(vals);
  std::vector<double> ro(rs.size());

  auto view_pass = [&] {
    std::fill(obuf.begin(), obuf.end(), 0.0);
    timer t;
    tinymatrixsum_view<Checked>(sv, ov);
    const double ns = t.elapsed_ns();
    return pass_result{ns, sum3d_view<false>(ov)};
  };
  auto raw_pass = [&] {
    std::fill(ro.begin(), ro.end(), 0.0);
    timer t;
    raw_tinymatrixsum<SN1, SN2>(rs.data(), ro.data(), e.extent(0), e.extent(1),
                                e.extent(2));
    const double ns = t.elapsed_ns();
    return pass_result{ns, raw_sum3d(ro.data(), e.extent(0), e.extent(1), e.extent(2))};
  };
  const auto view_t = time_variant(view_pass, cfg.reps, cfg.min_time);
  const auto raw_t = time_variant(raw_pass, cfg.reps, cfg.min_time);
  const index_type bytes = 3 * e.cardinality() * static_cast<index_type>(sizeof(double));
  return assemble_report(cfg, "tinymatrixsum", bytes, view_t, raw_t);
}

template <bool Checked>
bench_report run_tiny(const bench_config& cfg) {
  require_rank(cfg, 3);
  if (cfg.extents[0].is_static) {
    throw config_error("tinymatrixsum: the batch extent must be dynamic");
  }
  const bool s1 = cfg.extents[1].is_static;
  const bool s2 = cfg.extents[2].is_static;
  if ((s1 && cfg.extents[1].length != 3) || (s2 && cfg.extents[2].length != 3)) {
    throw config_error("tinymatrixsum: static inner extents are precompiled for 3x3");
  }
  auto with_mode = [&]<class E, index_type SN1, index_type SN2>() {
    return detail::dispatch_layout(cfg, [&]<class L>(std::type_identity<L>) {
      return detail::dispatch_accessor(cfg, [&]<class A>(std::type_identity<A>) {
        return run_tiny_impl<Checked, E, SN1, SN2, L, A>(cfg);
      });
    });
  };
  if (s1 && s2) {
    return with_mode.template operator()<extents<dynamic_extent, 3, 3>, 3, 3>();
  }
  if (s1) {
    return with_mode
        .template operator()<extents<dynamic_extent, 3, dynamic_extent>, 3,
                             dynamic_extent>();
  }
  if (s2) {
    return with_mode
        .template operator()<extents<dynamic_extent, dynamic_extent, 3>, dynamic_extent,
                             3>();
  }
  return with_mode.template operator()<dextents<3>, dynamic_extent, dynamic_extent>();
}

// --- matvec -----------------------------------------------------------------

/// Outer-loop data-parallel matvec: each worker owns a disjoint row range of
/// y, so no synchronization is needed inside the kernel.
template <bool Checked, class MatView, class VecView, class OutView>
void matvec_view_parallel(const MatView& A, const VecView& x, const OutView& y,
                          int threads) {
  if (threads <= 1) {
    matvec_view<Checked>(A, x, y);
    return;
  }
  const index_type rows = A.extent(0);
  const auto Av = adapt<Checked>(A);
  const auto xv = adapt<Checked>(x);
  const auto yv = adapt<Checked>(y);
  std::vector<std::thread> workers;
  workers.reserve(static_cast<std::size_t>(threads));
  for (int w = 0; w < threads; ++w) {
    const index_type i0 = rows * w / threads;
    const index_type i1 = rows * (w + 1) / threads;
    workers.emplace_back([=] {
      for (index_type i = i0; i < i1; ++i) {
        for (index_type j = 0; j < Av.extent(1); ++j) {
          yv(i) += Av(i, j) * xv(j);
        }
      }
    });
  }
  for (auto& t : workers) t.join();
}

inline void raw_matvec_parallel(const double* A, const double* x, double* y,
                                index_type rows, index_type cols, int threads) {
  if (threads <= 1) {
    raw_matvec(A, x, y, rows, cols);
    return;
  }
  std::vector<std::thread> workers;
  workers.reserve(static_cast<std::size_t>(threads));
  for (int w = 0; w < threads; ++w) {
    const index_type i0 = rows * w / threads;
    const index_type i1 = rows * (w + 1) / threads;
    workers.emplace_back([=] {
      for (index_type i = i0; i < i1; ++i) {
        for (index_type j = 0; j < cols; ++j) {
          y[i] += A[i * cols + j] * x[j];
        }
      }
    });
  }
  for (auto& t : workers) t.join();
}

template <bool Checked, class Layout, class Accessor>
bench_report run_matvec_impl(const bench_config& cfg) {
  using E2 = dextents<2>;
  using E1 = dextents<1>;
  const E2 eA(cfg.extents[0].length, cfg.extents[1].length);
  const index_type rows = eA.extent(0);
  const index_type cols = eA.extent(1);
  const auto mA = make_mapping<Layout>(cfg, eA);
  std::vector<double> Abuf(static_cast<std::size_t>(mA.required_span_size()));
  std::vector<double> xbuf(static_cast<std::size_t>(cols));
  std::vector<double> ybuf(static_cast<std::size_t>(rows));
  const basic_mdview<double, E2, Layout, Accessor> A(Abuf.data(), mA);
  const basic_mdview<double, E1, layout_right, Accessor> x(
      xbuf.data(), layout_right::mapping<E1>(E1(cols)));
  const basic_mdview<double, E1, layout_right, Accessor> y(
      ybuf.data(), layout_right::mapping<E1>(E1(rows)));
  const auto vals =
      random_values(static_cast<std::size_t>(eA.cardinality() + cols), cfg.seed);
  fill_view(A, {vals.begin(), vals.begin() + eA.cardinality()});
  for (index_type j = 0; j < cols; ++j) xbuf[static_cast<std::size_t>(j)] = vals[eA.cardinality() + j];
  std::vector<double> rA(vals.begin(), vals.begin() + eA.cardinality());
  std::vector<double> ry(ybuf.size());

  auto view_pass = [&] {
    std::fill(ybuf.begin(), ybuf.end(), 0.0);
    timer t;
    matvec_view_parallel<Checked>(A, x, y, cfg.threads);
    const double ns = t.elapsed_ns();
    double cs = 0.0;
    for (double v : ybuf) cs += v;
    return pass_result{ns, cs};
  };
  auto raw_pass = [&] {
    std::fill(ry.begin(), ry.end(), 0.0);
    timer t;
    raw_matvec_parallel(rA.data(), xbuf.data(), ry.data(), rows, cols, cfg.threads);
    const double ns = t.elapsed_ns();
    double cs = 0.0;
    for (double v : ry) cs += v;
    return pass_result{ns, cs};
  };
  const auto view_t = time_variant(view_pass, cfg.reps, cfg.min_time);
  const auto raw_t = time_variant(raw_pass, cfg.reps, cfg.min_time);
  const index_type bytes = rows * cols * 3 * static_cast<index_type>(sizeof(double));
  return assemble_report(cfg, "matvec", bytes, view_t, raw_t);
}

template <bool Checked>
bench_report run_benchmark_impl(const bench_config& cfg) {
  auto with_layout_accessor = [&](auto&& run) {
    return dispatch_layout(cfg, [&]<class L>(std::type_identity<L>) {
      return dispatch_accessor(cfg, [&]<class A>(std::type_identity<A>) {
        return run.template operator()<L, A>();
      });
    });
  };
  if (cfg.benchmark == "sum3d") {
    require_rank(cfg, 3);
    require_all_dynamic(cfg);
    return with_layout_accessor([&]<class L, class A>() {
      return run_sum3d_impl<Checked, false, L, A>(cfg);
    });
  }
  if (cfg.benchmark == "subspan3d") {
    require_rank(cfg, 3);
    require_all_dynamic(cfg);
    return with_layout_accessor([&]<class L, class A>() {
      return run_sum3d_impl<Checked, true, L, A>(cfg);
    });
  }
  if (cfg.benchmark == "stencil3d") {
    require_rank(cfg, 3);
    require_all_dynamic(cfg);
    return with_layout_accessor([&]<class L, class A>() {
      return run_stencil3d_impl<Checked, L, A>(cfg);
    });
  }
  if (cfg.benchmark == "tinymatrixsum") {
    return run_tiny<Checked>(cfg);
  }
  if (cfg.benchmark == "matvec") {
    require_rank(cfg, 2);
    require_all_dynamic(cfg);
    return with_layout_accessor([&]<class L, class A>() {
      return run_matvec_impl<Checked, L, A>(cfg);
    });
  }
  throw config_error("unknown benchmark: " + cfg.benchmark);
}

}  // namespace detail

/// Runs one benchmark configuration: warmup, timed repetitions of the view
/// and raw variants, checksum agreement, overhead.
inline bench_report run_benchmark(const bench_config& cfg) {
  cfg.validate();
  if (cfg.checked) return detail::run_benchmark_impl<true>(cfg);
  return detail::run_benchmark_impl<false>(cfg);
}

/// Times the view-based matvec under both matrix layouts with the given
/// thread count. Verifies y == x on an identity matrix before timing. The
/// throughput metric counts three memory accesses per inner iteration.
inline std::vector<bench_report> run_matvec_layout_study(index_type rows, index_type cols,
                                                         int threads, int reps = 25,
                                                         double min_time = 0.5,
                                                         std::uint64_t seed = 42) {
  if (threads < 1 || rows < 1 || cols < 1) {
    throw config_error("matvec layout study: rows, cols, and threads must be positive");
  }
  using E2 = dextents<2>;
  using E1 = dextents<1>;

  auto run_one = [&]<class L>(std::type_identity<L>, const char* layout_name) {
    const E2 eA(rows, cols);
    const typename L::template mapping<E2> mA(eA);
    std::vector<double> Abuf(static_cast<std::size_t>(mA.required_span_size()));
    std::vector<double> xbuf(static_cast<std::size_t>(cols));
    std::vector<double> ybuf(static_cast<std::size_t>(rows));
    const basic_mdview<double, E2, L> A(Abuf.data(), mA);
    const basic_mdview<double, E1, layout_right> x(
        xbuf.data(), layout_right::mapping<E1>(E1(cols)));
    const basic_mdview<double, E1, layout_right> y(
        ybuf.data(), layout_right::mapping<E1>(E1(rows)));

    // Identity sanity check: y must come back exactly equal to x.
    const index_type n = std::min(rows, cols);
    for (index_type i = 0; i < n; ++i) A(i, i) = 1.0;
    for (index_type j = 0; j < cols; ++j) xbuf[static_cast<std::size_t>(j)] =
        static_cast<double>(j + 1);
    detail::matvec_view_parallel<false>(A, x, y, threads);
    for (index_type i = 0; i < n; ++i) {
      if (ybuf[static_cast<std::size_t>(i)] != xbuf[static_cast<std::size_t>(i)]) {
        throw checksum_mismatch(std::string("matvec layout study: identity check failed "
                                            "for layout ") +
                                layout_name);
      }
    }

    const auto vals =
        detail::random_values(static_cast<std::size_t>(eA.cardinality() + cols), seed);
    detail::fill_view(A, {vals.begin(), vals.begin() + eA.cardinality()});
    for (index_type j = 0; j < cols; ++j) xbuf[static_cast<std::size_t>(j)] =
        vals[static_cast<std::size_t>(eA.cardinality() + j)];

    auto pass = [&] {
      std::fill(ybuf.begin(), ybuf.end(), 0.0);
      detail::timer t;
      detail::matvec_view_parallel<false>(A, x, y, threads);
      const double ns = t.elapsed_ns();
      double cs = 0.0;
      for (double v : ybuf) cs += v;
      return detail::pass_result{ns, cs};
    };
    const auto timed = detail::time_variant(pass, reps, min_time);

    bench_report rep;
    rep.benchmark = "matvec";
    rep.layout = layout_name;
    rep.extents_mode = "DxD";
    rep.threads = threads;
    rep.reps = static_cast<int>(timed.ns.size());
    variant_record vr{"view", summarize(timed.ns), rows * cols * 3 * 8, 0.0};
    vr.throughput_bps =
        static_cast<double>(vr.bytes_processed) / (vr.stats.median_ns * 1e-9);
    rep.variants = {std::move(vr)};
    return rep;
  };

  std::vector<bench_report> out;
  out.push_back(run_one(std::type_identity<layout_right>{}, "right"));
  out.push_back(run_one(std::type_identity<layout_left>{}, "left"));
  return out;
}

}  // namespace mdv::bench

#endif  // MDVIEW_BENCH_HARNESS_HPP
