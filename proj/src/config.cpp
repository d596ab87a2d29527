// SPDX-License-Identifier: Apache-2.0

#include "sinyal/config.hpp"

#include <charconv>
#include <fstream>

#include "sinyal/error.hpp"

namespace sinyal {

namespace {

std::string trim(const std::string& s) {
    const std::size_t start = s.find_first_not_of(" \t\r");
    if (start == std::string::npos) return "";
    const std::size_t end = s.find_last_not_of(" \t\r");
    return s.substr(start, end - start + 1);
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
    std::uint64_t out = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size())
        throw ConfigError("config key '" + key + "' needs a non-negative integer, got '" + value + "'");
    return out;
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double out = std::stod(value, &used);
        if (used == value.size()) return out;
    } catch (const std::exception&) {
    }
    throw ConfigError("config key '" + key + "' needs a number, got '" + value + "'");
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw ConfigError("config key '" + key + "' needs true/false, got '" + value + "'");
}

} // namespace

void apply_config_entry(Config& c, const std::string& key, const std::string& value) {
    if (key == "corpus") c.corpus = value;
    else if (key == "stopwords") c.stopwords = value;
    else if (key == "model") c.model = value;
    else if (key == "output_dir") c.output_dir = value;
    else if (key == "query") c.query = value;
    else if (key == "query_file") c.query_file = value;
    else if (key == "protocol") c.protocol = value;
    else if (key == "lang") c.lang = value;
    else if (key == "min_freq") c.min_freq = parse_u64(key, value);
    else if (key == "min_split") c.cart.min_split = parse_u64(key, value);
    else if (key == "min_bucket") c.cart.min_bucket = parse_u64(key, value);
    else if (key == "cp") c.cart.cp = parse_double(key, value);
    else if (key == "max_depth") c.cart.max_depth = parse_u64(key, value);
    else if (key == "binary_features") c.binary_features = parse_bool(key, value);
    else if (key == "train_fraction") c.train_fraction = parse_double(key, value);
    else if (key == "bbox_lat_min") c.bbox.lat_min = parse_double(key, value);
    else if (key == "bbox_lat_max") c.bbox.lat_max = parse_double(key, value);
    else if (key == "bbox_lon_min") c.bbox.lon_min = parse_double(key, value);
    else if (key == "bbox_lon_max") c.bbox.lon_max = parse_double(key, value);
    else if (key == "cell_deg") c.cell_deg = parse_double(key, value);
    else if (key == "predicted_only") c.predicted_only = parse_bool(key, value);
    else if (key == "seed") c.seed = parse_u64(key, value);
    else throw ConfigError("unknown config key '" + key + "'");
}

Config load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open config file: " + path);

    Config config;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        const std::size_t eq = stripped.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(line_no) +
                              " is not a key = value assignment");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty())
            throw ConfigError("config line " + std::to_string(line_no) + " has an empty key");
        apply_config_entry(config, key, value);
    }
    return config;
}

void Config::validate() const {
    int query_sources = 0;
    query_sources += !query.empty();
    query_sources += !query_file.empty();
    query_sources += !protocol.empty();
    if (query_sources > 1)
        throw ConfigError("query, query_file and protocol are mutually exclusive");
    if (!protocol.empty() && protocol != "paper2016")
        throw ConfigError("unknown protocol '" + protocol + "' (available: paper2016)");
    if (lang.empty()) throw ConfigError("lang must not be empty");
    if (min_freq < 1) throw ConfigError("min_freq must be >= 1");
    if (!(train_fraction > 0.0 && train_fraction < 1.0))
        throw ConfigError("train_fraction must lie strictly between 0 and 1");
    if (!(cell_deg > 0.0)) throw ConfigError("cell_deg must be positive");
    cart.validate();
    bbox.validate();
}

} // namespace sinyal
