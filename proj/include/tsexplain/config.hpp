#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tsexplain/bench.hpp"
#include "tsexplain/detect.hpp"
#include "tsexplain/explain.hpp"

namespace tsexplain {

/// Everything the CLI can tune. File format: one `key = value` per line,
/// `#` comments, unknown keys rejected. All defaults are usable as-is.
struct Config {
    std::size_t window = 64;
    ThresholdMode threshold_mode = ThresholdMode::MuSigma;
    std::optional<double> threshold_value;  // overrides the trained threshold
    std::size_t exclusion = 0;              // 0 means = window

    ExplainConfig explain;

    std::uint64_t seed = 1;
    std::size_t workers = 1;

    // Benchmark parameters; sources empty means synthetic per trial.
    std::size_t bench_n = 1200;
    std::size_t bench_n_train = 400;
    std::size_t bench_trials_per_class = 50;
    std::size_t bench_region_length = 0;  // 0 means = window
    double bench_magnitude_lo = 3.0;
    double bench_magnitude_hi = 6.0;
    double bench_noise_magnitude_lo = 1.5;
    double bench_noise_magnitude_hi = 3.0;
    double bench_warp_displacement_lo = 0.03;
    double bench_warp_displacement_hi = 0.08;
    std::vector<std::string> bench_sources;  // CSV paths

    void validate() const;  // throws std::invalid_argument
    BenchConfig bench_config() const;  // sources not loaded here
};

/// Parses a config file. Unknown keys, duplicate keys, malformed values and
/// out-of-range settings all raise DataError with the line number.
Config load_config(const std::string& path);

/// The parser behind load_config, for in-memory text.
Config parse_config(const std::string& text, const std::string& origin);

/// A fully commented config with every key at its default, suitable as a
/// starting point for users.
std::string default_config_text();

}  // namespace tsexplain
