#include "tsexplain/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "tsexplain/csv.hpp"

namespace tsexplain {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) {
        return "";
    }
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) {
        const std::string t = trim(item);
        if (!t.empty()) {
            out.push_back(t);
        }
    }
    return out;
}

[[noreturn]] void fail(const std::string& origin, std::size_t line, const std::string& msg) {
    throw DataError(origin + ":" + std::to_string(line) + ": " + msg);
}

}  // namespace

void Config::validate() const {
    if (window < 4) {
        throw std::invalid_argument("config: window must be >= 4");
    }
    if (threshold_value && !(*threshold_value > 0.0)) {
        throw std::invalid_argument("config: threshold_value must be positive");
    }
    if (!(explain.weak_threshold > 0.0)) {
        throw std::invalid_argument("config: weak_threshold must be positive");
    }
    if (workers < 1 || workers > 256) {
        throw std::invalid_argument("config: workers must lie in [1, 256]");
    }
    if (!(bench_magnitude_lo > 0.0 && bench_magnitude_hi >= bench_magnitude_lo)) {
        throw std::invalid_argument("config: bad bench magnitude range");
    }
    if (!(bench_noise_magnitude_lo > 0.0 &&
          bench_noise_magnitude_hi >= bench_noise_magnitude_lo)) {
        throw std::invalid_argument("config: bad bench noise magnitude range");
    }
    if (!(bench_warp_displacement_lo > 0.0 &&
          bench_warp_displacement_hi >= bench_warp_displacement_lo &&
          bench_warp_displacement_hi <= 0.2)) {
        throw std::invalid_argument("config: bad bench warp displacement range");
    }
    explain.operators.validate();
}

BenchConfig Config::bench_config() const {
    BenchConfig b;
    b.n = bench_n;
    b.n_train = bench_n_train;
    b.window = window;
    b.trials_per_class = bench_trials_per_class;
    b.region_length = bench_region_length;
    b.magnitude_lo = bench_magnitude_lo;
    b.magnitude_hi = bench_magnitude_hi;
    b.noise_magnitude_lo = bench_noise_magnitude_lo;
    b.noise_magnitude_hi = bench_noise_magnitude_hi;
    b.warp_displacement_lo = bench_warp_displacement_lo;
    b.warp_displacement_hi = bench_warp_displacement_hi;
    b.threshold_mode = threshold_mode;
    b.explain = explain;
    b.seed = seed;
    b.workers = workers;
    return b;
}

Config parse_config(const std::string& text, const std::string& origin) {
    Config cfg;
    std::map<std::string, std::size_t> seen;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;

    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line = line.substr(0, hash);
        }
        const std::string row = trim(line);
        if (row.empty()) {
            continue;
        }
        const auto eq = row.find('=');
        if (eq == std::string::npos) {
            fail(origin, line_no, "expected key = value");
        }
        const std::string key = trim(row.substr(0, eq));
        const std::string value = trim(row.substr(eq + 1));
        if (key.empty() || value.empty()) {
            fail(origin, line_no, "expected key = value");
        }
        if (seen.count(key)) {
            fail(origin, line_no, "duplicate key '" + key + "' (first at line " +
                                      std::to_string(seen[key]) + ")");
        }
        seen[key] = line_no;

        auto as_size = [&](std::size_t lo, std::size_t hi) {
            char* end = nullptr;
            const long long v = std::strtoll(value.c_str(), &end, 10);
            if (end != value.c_str() + value.size() || v < 0) {
                fail(origin, line_no, "'" + key + "' expects a non-negative integer");
            }
            const auto u = static_cast<std::size_t>(v);
            if (u < lo || u > hi) {
                fail(origin, line_no, "'" + key + "' out of range [" + std::to_string(lo) +
                                          ", " + std::to_string(hi) + "]");
            }
            return u;
        };
        auto as_double = [&](double lo, double hi) {
            char* end = nullptr;
            const double v = std::strtod(value.c_str(), &end);
            if (end != value.c_str() + value.size() || !std::isfinite(v)) {
                fail(origin, line_no, "'" + key + "' expects a number");
            }
            if (v < lo || v > hi) {
                fail(origin, line_no, "'" + key + "' out of range");
            }
            return v;
        };

        if (key == "window") {
            cfg.window = as_size(4, 100000);
        } else if (key == "threshold_mode") {
            if (value == "mu_sigma") {
                cfg.threshold_mode = ThresholdMode::MuSigma;
            } else if (value == "max_plus_sigma") {
                cfg.threshold_mode = ThresholdMode::MaxPlusSigma;
            } else {
                fail(origin, line_no, "threshold_mode must be mu_sigma or max_plus_sigma");
            }
        } else if (key == "threshold_value") {
            cfg.threshold_value = as_double(1e-12, 1e12);
        } else if (key == "exclusion") {
            cfg.exclusion = as_size(0, 100000);
        } else if (key == "operators") {
            OperatorConfig& oc = cfg.explain.operators;
            oc.enabled.fill(false);
            for (const std::string& name : split(value, ',')) {
                const auto kind = operator_kind_from_name(name);
                if (!kind) {
                    fail(origin, line_no, "unknown operator '" + name + "'");
                }
                oc.set_enabled(*kind, true);
            }
            if (oc.enabled_count() == 0) {
                fail(origin, line_no, "operator list is empty");
            }
        } else if (key == "scaling_min") {
            cfg.explain.operators.scaling_min = as_double(0.5, 1.0);
        } else if (key == "scaling_max") {
            cfg.explain.operators.scaling_max = as_double(1.0, 2.0);
        } else if (key == "dtw_band_frac") {
            cfg.explain.operators.dtw_band_frac = as_double(0.0, 1.0);
        } else if (key == "smoothing_window") {
            cfg.explain.operators.smoothing_window = as_size(1, 1001);
        } else if (key == "pnd_min_seg") {
            cfg.explain.operators.pnd_min_seg = as_size(2, 1000);
        } else if (key == "weak_threshold") {
            cfg.explain.weak_threshold = as_double(1e-9, 100.0);
        } else if (key == "on_not_anomalous") {
            if (value == "error") {
                cfg.explain.not_anomalous_is_error = true;
            } else if (value == "warn") {
                cfg.explain.not_anomalous_is_error = false;
            } else {
                fail(origin, line_no, "on_not_anomalous must be error or warn");
            }
        } else if (key == "seed") {
            char* end = nullptr;
            const unsigned long long v = std::strtoull(value.c_str(), &end, 10);
            if (end != value.c_str() + value.size()) {
                fail(origin, line_no, "seed expects an unsigned integer");
            }
            cfg.seed = v;
        } else if (key == "workers") {
            cfg.workers = as_size(1, 256);
        } else if (key == "bench_n") {
            cfg.bench_n = as_size(64, 10000000);
        } else if (key == "bench_n_train") {
            cfg.bench_n_train = as_size(32, 10000000);
        } else if (key == "bench_trials_per_class") {
            cfg.bench_trials_per_class = as_size(1, 1000000);
        } else if (key == "bench_region_length") {
            cfg.bench_region_length = as_size(0, 100000);
        } else if (key == "bench_magnitude_lo") {
            cfg.bench_magnitude_lo = as_double(0.0, 100.0);
        } else if (key == "bench_magnitude_hi") {
            cfg.bench_magnitude_hi = as_double(0.0, 100.0);
        } else if (key == "bench_noise_magnitude_lo") {
            cfg.bench_noise_magnitude_lo = as_double(0.0, 100.0);
        } else if (key == "bench_noise_magnitude_hi") {
            cfg.bench_noise_magnitude_hi = as_double(0.0, 100.0);
        } else if (key == "bench_warp_displacement_lo") {
            cfg.bench_warp_displacement_lo = as_double(0.0, 0.2);
        } else if (key == "bench_warp_displacement_hi") {
            cfg.bench_warp_displacement_hi = as_double(0.0, 0.2);
        } else if (key == "bench_sources") {
            cfg.bench_sources = split(value, ',');
        } else {
            fail(origin, line_no, "unknown key '" + key + "'");
        }
    }

    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        throw DataError(origin + ": " + e.what());
    }
    return cfg;
}

Config load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw DataError("cannot open config: " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), path);
}

std::string default_config_text() {
    return R"(# tsexplain configuration. One `key = value` per line; '#' starts a comment.
# Unknown keys are rejected.

# Subsequence (anomaly window) length, in samples.
window = 64

# How the anomaly threshold is derived from training data:
#   mu_sigma       -> mean + 3 * std of training nearest-neighbor distances
#   max_plus_sigma -> max + 1 * std of the training matrix profile
threshold_mode = mu_sigma
# Uncomment to bypass training and use a fixed threshold.
# threshold_value = 2.5

# Exclusion-zone radius for profile self-matches; 0 means one full window.
exclusion = 0

# Operators to evaluate (comma list). Remove entries to disable operators.
operators = Occlusion,UniformScaling,Warping,PiecewiseNorm,LinearTrend,Smoothing,LRFlip,UDFlip

# Uniform-scaling search range: the anomaly may be rescaled to between
# scaling_min and scaling_max of its original length, on a 1% grid.
scaling_min = 0.80
scaling_max = 1.20

# Sakoe-Chiba band half-width for the warping operator, as a fraction of the
# window length.
dtw_band_frac = 0.10

# Moving-mean window of the smoothing operator.
smoothing_window = 3

# Minimum segment length on each side of a piecewise-normalization split.
pnd_min_seg = 3

# Improvement scores above this are flagged as weak explanations.
weak_threshold = 0.9

# When explain() is asked about a window at or below the anomaly threshold:
# error (refuse) or warn (proceed, flag the result).
on_not_anomalous = error

# Master RNG seed for `bench` and `corrupt`.
seed = 1

# Worker threads for the benchmark (results do not depend on this).
workers = 1

# Benchmark shape: per-trial series length, training prefix, trials per
# corruption class, and the injected region length (0 means = window).
bench_n = 1200
bench_n_train = 400
bench_trials_per_class = 50
bench_region_length = 0

# Corruption magnitudes, in sigma-units of the corrupted window.
bench_magnitude_lo = 3.0
bench_magnitude_hi = 6.0
# Noise-std range for the noisy corruption classes.
bench_noise_magnitude_lo = 1.5
bench_noise_magnitude_hi = 3.0
# Warp displacement range, as a fraction of the window length.
bench_warp_displacement_lo = 0.03
bench_warp_displacement_hi = 0.08

# Comma list of anomaly-free source CSVs; empty means synthetic sources.
# bench_sources = data/a.csv,data/b.csv
)";
}

}  // namespace tsexplain
