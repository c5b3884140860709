// Part of the mdview project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
// Benchmark harness CLI. Examples:
//   bench --benchmark sum3d --extents 128x128x128 --layout right \
//         --accessor default --reps 25 --min-time 0.5 --format csv --out report.csv
//   bench --benchmark tinymatrixsum --extents 1000000x3x3 --extents-mode DxSxS
//   bench --benchmark matvec --extents 2048x2048 --threads 4 --layout-study
//
// BENCH_SEED in the environment fixes the input-randomization seed.

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mdview/bench/harness.hpp"

int main(int argc, char** argv) {
  CLI::App app{"mdview benchmark harness"};

  std::string benchmark;
  std::string extents_text;
  std::string extents_mode;
  std::string layout = "right";
  std::string accessor = "default";
  std::string format = "csv";
  std::string out_path;
  int reps = 25;
  double min_time = 0.5;
  int threads = 1;
  bool checked = false;
  bool layout_study = false;

  app.add_option("--benchmark", benchmark,
                 "one of: sum3d, stencil3d, tinymatrixsum, subspan3d, matvec")
      ->required();
  app.add_option("--extents", extents_text,
                 "e.g. 128x128x128 or 1000000x3sx3s (suffix s = static)")
      ->required();
  app.add_option("--extents-mode", extents_mode, "e.g. DxSxS; overrides suffixes");
  app.add_option("--layout", layout,
                 "right | left | stride:<k0,k1,...> | sym-upper | sym-lower");
  app.add_option("--accessor", accessor, "default | noalias | atomic");
  app.add_option("--reps", reps, "timed repetitions per variant (>= 3)");
  app.add_option("--min-time", min_time, "minimum timed seconds per variant");
  app.add_option("--threads", threads, "worker threads (matvec only)");
  app.add_flag("--checked", checked, "run the view variant with bounds checking");
  app.add_flag("--layout-study", layout_study,
               "matvec only: compare layouts right and left instead of view vs raw");
  app.add_option("--format", format, "csv | json");
  app.add_option("--out", out_path, "output file; stdout when omitted");

  CLI11_PARSE(app, argc, argv);

  try {
    mdv::bench::bench_config cfg;
    cfg.benchmark = benchmark;
    cfg.extents = mdv::bench::parse_extents(extents_text);
    if (!extents_mode.empty()) {
      mdv::bench::apply_extents_mode(cfg.extents, extents_mode);
    }
    mdv::bench::parse_layout(layout, cfg.layout, cfg.layout_strides);
    cfg.accessor = accessor;
    cfg.reps = reps;
    cfg.min_time = min_time;
    cfg.threads = threads;
    cfg.checked = checked;
    if (const char* seed_env = std::getenv("BENCH_SEED")) {
      cfg.seed = std::strtoull(seed_env, nullptr, 10);
    }

    std::vector<mdv::bench::bench_report> reports;
    if (layout_study) {
      if (benchmark != "matvec") {
        throw mdv::config_error("--layout-study applies to matvec only");
      }
      if (cfg.extents.size() != 2) {
        throw mdv::config_error("matvec needs two extents");
      }
      reports = mdv::bench::run_matvec_layout_study(
          cfg.extents[0].length, cfg.extents[1].length, cfg.threads, cfg.reps,
          cfg.min_time, cfg.seed);
    } else {
      reports.push_back(mdv::bench::run_benchmark(cfg));
    }

    const auto fmt = mdv::bench::parse_format(format);
    if (out_path.empty()) {
      mdv::bench::emit_report(reports, fmt, std::cout);
    } else {
      mdv::bench::emit_report(reports, fmt, out_path);
    }
  } catch (const mdv::checksum_mismatch& e) {
    std::cerr << "checksum mismatch: " << e.what() << '\n';
    return 2;
  } catch (const mdv::error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
