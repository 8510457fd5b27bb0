#pragma once

// Flat key = value configuration files. '#' starts a comment. A `preset` key
// selects the base configuration and is applied before every other key,
// wherever it appears.

#include <istream>
#include <string>

#include "maxcoh/experiments.hpp"

namespace maxcoh::config {

struct RunConfig {
  experiments::ExperimentConfig exp = experiments::figure_preset("fig7");
  double tau = 0.0;  // retarded time of the single-slice commands (T1)
};

// Throws ConfigError with "<source>:<line>: field '<key>': ..." diagnostics.
// Keys are applied on top of `base`, a preset line first. A non-empty
// `preset_override` replaces any preset line in the file.
[[nodiscard]] RunConfig parse_config(std::istream& in, const std::string& source = "<config>",
                                     RunConfig base = {}, const std::string& preset_override = "");
[[nodiscard]] RunConfig load_config(const std::string& path, RunConfig base = {},
                                    const std::string& preset_override = "");

// Applies one key; exposed for command-line overrides.
void apply_key(RunConfig& rc, const std::string& key, const std::string& value);

// One line per accepted key.
[[nodiscard]] std::string describe_keys();

}  // namespace maxcoh::config
