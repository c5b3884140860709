// Part of the mdview project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#ifndef MDVIEW_BENCH_CONFIG_HPP
#define MDVIEW_BENCH_CONFIG_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "mdview/error.hpp"
#include "mdview/extents.hpp"

namespace mdv::bench {

/// One parsed extent: its length plus whether the CLI asked for a static
/// (compile-time) expression of it.
struct extent_spec {
  index_type length = 0;
  bool is_static = false;
};

/// Parses "128x128x128" or "1000000x3sx3s" (suffix `s` marks a static
/// extent).
inline std::vector<extent_spec> parse_extents(const std::string& text) {
  std::vector<extent_spec> out;
  std::size_t pos = 0;
  if (text.empty()) {
    throw config_error("empty extents string");
  }
  while (pos <= text.size()) {
    std::size_t sep = text.find('x', pos);
    if (sep == std::string::npos) sep = text.size();
    std::string part = text.substr(pos, sep - pos);
    extent_spec spec;
    if (!part.empty() && (part.back() == 's' || part.back() == 'S')) {
      spec.is_static = true;
      part.pop_back();
    }
    try {
      std::size_t used = 0;
      spec.length = std::stoll(part, &used);
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw config_error("bad extent '" + part + "' in '" + text + "'");
    }
    if (spec.length < 0) {
      throw config_error("negative extent in '" + text + "'");
    }
    out.push_back(spec);
    pos = sep + 1;
    if (sep == text.size()) break;
  }
  return out;
}

/// "DxSxS"-style summary of which extents are static.
inline std::string extents_mode_string(const std::vector<extent_spec>& extents) {
  std::string mode;
  for (std::size_t r = 0; r < extents.size(); ++r) {
    if (r > 0) mode += 'x';
    mode += extents[r].is_static ? 'S' : 'D';
  }
  return mode;
}

/// Applies an explicit mode string like "DxSxS" on top of parsed extents.
inline void apply_extents_mode(std::vector<extent_spec>& extents, const std::string& mode) {
  std::vector<bool> flags;
  for (std::size_t pos = 0; pos <= mode.size();) {
    std::size_t sep = mode.find('x', pos);
    if (sep == std::string::npos) sep = mode.size();
    const std::string part = mode.substr(pos, sep - pos);
    if (part == "D" || part == "d") {
      flags.push_back(false);
    } else if (part == "S" || part == "s") {
      flags.push_back(true);
    } else {
      throw config_error("bad extents mode '" + mode + "'");
    }
    pos = sep + 1;
    if (sep == mode.size()) break;
  }
  if (flags.size() != extents.size()) {
    throw config_error("extents mode '" + mode + "' does not match rank " +
                       std::to_string(extents.size()));
  }
  for (std::size_t r = 0; r < extents.size(); ++r) extents[r].is_static = flags[r];
}

struct bench_config {
  std::string benchmark;
  std::vector<extent_spec> extents;
  std::string layout = "right";
  std::vector<index_type> layout_strides;  // for layout == "stride"
  std::string accessor = "default";
  int reps = 25;
  double min_time = 0.5;  // seconds per variant
  int threads = 1;
  bool checked = false;
  std::uint64_t seed = 42;

  std::string extents_mode() const { return extents_mode_string(extents); }

  void validate() const {
    if (reps < 3) {
      throw config_error("reps must be >= 3, got " + std::to_string(reps));
    }
    if (threads < 1) {
      throw config_error("threads must be >= 1, got " + std::to_string(threads));
    }
    if (min_time < 0.0) {
      throw config_error("min-time must be nonnegative");
    }
  }
};

/// Parses "right", "left", "stride:<k0,k1,...>", "sym-upper", "sym-lower"
/// into (name, strides).
inline void parse_layout(const std::string& text, std::string& name,
                         std::vector<index_type>& strides) {
  strides.clear();
  if (text == "right" || text == "left" || text == "sym-upper" || text == "sym-lower") {
    name = text;
    return;
  }
  if (text.rfind("stride:", 0) == 0) {
    name = "stride";
    const std::string list = text.substr(7);
    std::size_t pos = 0;
    while (pos <= list.size()) {
      std::size_t sep = list.find(',', pos);
      if (sep == std::string::npos) sep = list.size();
      const std::string part = list.substr(pos, sep - pos);
      try {
        std::size_t used = 0;
        strides.push_back(std::stoll(part, &used));
        if (used != part.size()) throw std::invalid_argument(part);
      } catch (const std::exception&) {
        throw config_error("bad stride '" + part + "' in '" + text + "'");
      }
      pos = sep + 1;
      if (sep == list.size()) break;
    }
    if (strides.empty()) {
      throw config_error("stride layout needs at least one stride: " + text);
    }
    return;
  }
  throw config_error("unknown layout: " + text);
}

}  // namespace mdv::bench

#endif  // MDVIEW_BENCH_CONFIG_HPP
