// SPDX-License-Identifier: Apache-2.0

#ifndef SINYAL_CONFIG_HPP
#define SINYAL_CONFIG_HPP

#include <cstdint>
#include <string>

#include "sinyal/cart.hpp"
#include "sinyal/geostream.hpp"

namespace sinyal {

/// One flat configuration for every subcommand; CLI flags override file
/// values. Unknown keys are rejected by name.
struct Config {
    // paths
    std::string corpus;
    std::string stopwords; // empty: use the bundled default list
    std::string model;
    std::string output_dir = ".";

    // query selection (at most one of the three)
    std::string query;      // inline protocol string
    std::string query_file; // file holding the protocol string
    std::string protocol;   // built-in name, e.g. "paper2016"

    std::string lang = "id";
    std::uint64_t min_freq = 10;

    FitParams cart; // min_split, min_bucket, cp, max_depth (seed injected)
    bool binary_features = false;
    double train_fraction = 0.7;

    BBox bbox = BBox::indonesia();
    double cell_deg = 0.5;
    bool predicted_only = false;

    std::uint64_t seed = 20160726;

    /// Cross-field validation; throws ConfigError.
    void validate() const;
};

/// Flat `key = value` UTF-8 text, `#` comments; unknown keys raise
/// ConfigError naming the key.
Config load_config(const std::string& path);

/// Applies one key=value assignment (shared by file parsing and overrides).
void apply_config_entry(Config& config, const std::string& key, const std::string& value);

} // namespace sinyal

#endif
