#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace tsexplain {

/// A uniformly sampled sequence of finite real values. `sample_period` is
/// seconds per sample; `start_time` (seconds since the Unix epoch, UTC) is
/// set only when the data came with timestamps.
struct TimeSeries {
    std::vector<double> values;
    double sample_period = 1.0;
    std::optional<double> start_time;

    std::size_t size() const { return values.size(); }
    double operator[](std::size_t i) const { return values[i]; }

    std::span<const double> span() const { return {values.data(), values.size()}; }

    /// Copy of samples [start, start+len) keeping the time axis aligned.
    TimeSeries slice(std::size_t start, std::size_t len) const;
};

/// Throws std::invalid_argument if any sample is non-finite, the series is
/// empty, or sample_period <= 0. `name` shows up in the message.
void validate_series(const TimeSeries& s, const std::string& name = "series");

struct LineFit {
    double slope = 0.0;      // per sample
    double intercept = 0.0;  // value at index 0
};

double mean(std::span<const double> v);
/// Population (1/N) standard deviation.
double stddev_pop(std::span<const double> v);

/// Zero mean, unit population standard deviation. A flat input (sigma == 0)
/// maps to all zeros. Requires length >= 2.
std::vector<double> znormalize(std::span<const double> v);
TimeSeries znormalize(const TimeSeries& s);

/// Linear interpolation over a uniform re-parameterization of [0, L-1].
/// Endpoints are preserved exactly. Requires both lengths >= 2.
std::vector<double> resample(std::span<const double> v, std::size_t target_len);
TimeSeries resample(const TimeSeries& s, std::size_t target_len);

/// Centered moving mean with truncated (not padded) edges: sample i averages
/// indices max(0, i-w/2) .. min(L-1, i+w/2). Output length equals input
/// length. Requires 1 <= w <= length.
std::vector<double> moving_mean(std::span<const double> v, std::size_t w);
TimeSeries moving_mean(const TimeSeries& s, std::size_t w);

/// Ordinary least squares over (index, value) pairs. Requires length >= 2.
LineFit fit_line(std::span<const double> v);

}  // namespace tsexplain
