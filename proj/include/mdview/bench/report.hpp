// Part of the mdview project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#ifndef MDVIEW_BENCH_REPORT_HPP
#define MDVIEW_BENCH_REPORT_HPP

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mdview/error.hpp"
#include "mdview/extents.hpp"

namespace mdv::bench {

struct timing_stats {
  double mean_ns = 0.0;
  double median_ns = 0.0;
  double stddev_ns = 0.0;
};

/// Mean, median, and sample standard deviation of per-repetition times.
inline timing_stats summarize(std::vector<double> times_ns) {
  if (times_ns.empty()) {
    throw config_error("summarize: no timing samples");
  }
  timing_stats s;
  const std::size_t n = times_ns.size();
  double sum = 0.0;
  for (double t : times_ns) sum += t;
  s.mean_ns = sum / static_cast<double>(n);
  std::sort(times_ns.begin(), times_ns.end());
  s.median_ns = (n % 2 == 1) ? times_ns[n / 2]
                             : 0.5 * (times_ns[n / 2 - 1] + times_ns[n / 2]);
  double sq = 0.0;
  for (double t : times_ns) sq += (t - s.mean_ns) * (t - s.mean_ns);
  s.stddev_ns = n > 1 ? std::sqrt(sq / static_cast<double>(n - 1)) : 0.0;
  return s;
}

/// Signed overhead of the view variant over the raw baseline, in percent.
inline double compute_overhead(double view_median_ns, double raw_median_ns) {
  if (raw_median_ns <= 0.0) {
    throw division_by_zero("compute_overhead: raw median must be positive");
  }
  return (view_median_ns - raw_median_ns) / raw_median_ns * 100.0;
}

struct variant_record {
  std::string variant;  // "view" or "raw"
  timing_stats stats;
  index_type bytes_processed = 0;
  double throughput_bps = 0.0;
};

struct bench_report {
  std::string benchmark;
  std::string layout;
  std::string extents_mode;
  int threads = 1;
  int reps = 0;
  std::vector<variant_record> variants;
  std::optional<double> overhead_pct;  // set only when both variants ran

  const variant_record* find(const std::string& variant) const {
    for (const auto& v : variants) {
      if (v.variant == variant) return &v;
    }
    return nullptr;
  }
};

enum class report_format { csv, json };

inline report_format parse_format(const std::string& name) {
  if (name == "csv") return report_format::csv;
  if (name == "json") return report_format::json;
  throw config_error("unknown report format: " + name);
}

inline void emit_report(const std::vector<bench_report>& reports, report_format format,
                        std::ostream& out) {
  if (reports.empty()) {
    throw config_error("emit_report: no reports to emit");
  }
  if (format == report_format::csv) {
    out << "benchmark,variant,layout,extents_mode,threads,reps,median_ns,mean_ns,"
           "stddev_ns,bytes_processed,throughput_bps,overhead_pct\n";
    for (const auto& r : reports) {
      for (const auto& v : r.variants) {
        out << r.benchmark << ',' << v.variant << ',' << r.layout << ','
            << r.extents_mode << ',' << r.threads << ',' << r.reps << ','
            << v.stats.median_ns << ',' << v.stats.mean_ns << ',' << v.stats.stddev_ns
            << ',' << v.bytes_processed << ',' << v.throughput_bps << ',';
        if (r.overhead_pct) out << *r.overhead_pct;
        out << '\n';
      }
    }
  } else {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : reports) {
      for (const auto& v : r.variants) {
        nlohmann::json row{{"benchmark", r.benchmark},
                           {"variant", v.variant},
                           {"layout", r.layout},
                           {"extents_mode", r.extents_mode},
                           {"threads", r.threads},
                           {"reps", r.reps},
                           {"median_ns", v.stats.median_ns},
                           {"mean_ns", v.stats.mean_ns},
                           {"stddev_ns", v.stats.stddev_ns},
                           {"bytes_processed", v.bytes_processed},
                           {"throughput_bps", v.throughput_bps}};
        if (r.overhead_pct) {
          row["overhead_pct"] = *r.overhead_pct;
        } else {
          row["overhead_pct"] = nullptr;
        }
        rows.push_back(std::move(row));
      }
    }
    out << rows.dump(2) << '\n';
  }
  if (!out) {
    throw io_error("emit_report: stream write failed");
  }
}

inline void emit_report(const std::vector<bench_report>& reports, report_format format,
                        const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw io_error("emit_report: cannot open " + path);
  }
  emit_report(reports, format, out);
}

}  // namespace mdv::bench

#endif  // MDVIEW_BENCH_REPORT_HPP
