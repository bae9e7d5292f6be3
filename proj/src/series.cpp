#include "tsexplain/series.hpp"

#include <cmath>
#include <stdexcept>

namespace tsexplain {

TimeSeries TimeSeries::slice(std::size_t start, std::size_t len) const {
    if (start + len > values.size()) {
        throw std::invalid_argument("slice out of range");
    }
    TimeSeries out;
    out.values.assign(values.begin() + static_cast<std::ptrdiff_t>(start),
                      values.begin() + static_cast<std::ptrdiff_t>(start + len));
    out.sample_period = sample_period;
    if (start_time) {
        out.start_time = *start_time + static_cast<double>(start) * sample_period;
    }
    return out;
}

void validate_series(const TimeSeries& s, const std::string& name) {
    if (s.values.empty()) {
        throw std::invalid_argument(name + ": must contain at least one sample");
    }
    if (!(s.sample_period > 0.0)) {
        throw std::invalid_argument(name + ": sample_period must be positive");
    }
    for (std::size_t i = 0; i < s.values.size(); ++i) {
        if (!std::isfinite(s.values[i])) {
            throw std::invalid_argument(name + ": non-finite sample at index " +
                                        std::to_string(i));
        }
    }
}

double mean(std::span<const double> v) {
    double acc = 0.0;
    for (double x : v) {
        acc += x;
    }
    return acc / static_cast<double>(v.size());
}

double stddev_pop(std::span<const double> v) {
    const double mu = mean(v);
    double acc = 0.0;
    for (double x : v) {
        const double d = x - mu;
        acc += d * d;
    }
    return std::sqrt(acc / static_cast<double>(v.size()));
}

std::vector<double> znormalize(std::span<const double> v) {
    if (v.size() < 2) {
        throw std::invalid_argument("znormalize: need at least 2 samples");
    }
    const double mu = mean(v);
    double acc = 0.0;
    for (double x : v) {
        const double d = x - mu;
        acc += d * d;
    }
    const double sigma = std::sqrt(acc / static_cast<double>(v.size()));
    std::vector<double> out(v.size());
    if (sigma == 0.0) {
        return out;  // flat-series convention: all zeros
    }
    for (std::size_t i = 0; i < v.size(); ++i) {
        out[i] = (v[i] - mu) / sigma;
    }
    return out;
}

TimeSeries znormalize(const TimeSeries& s) {
    TimeSeries out;
    out.values = znormalize(s.span());
    out.sample_period = s.sample_period;
    out.start_time = s.start_time;
    return out;
}

std::vector<double> resample(std::span<const double> v, std::size_t target_len) {
    if (v.size() < 2) {
        throw std::invalid_argument("resample: need at least 2 input samples");
    }
    if (target_len < 2) {
        throw std::invalid_argument("resample: target length must be >= 2");
    }
    std::vector<double> out(target_len);
    const double scale = static_cast<double>(v.size() - 1) / static_cast<double>(target_len - 1);
    out[0] = v[0];
    out[target_len - 1] = v[v.size() - 1];
    for (std::size_t j = 1; j + 1 < target_len; ++j) {
        const double pos = static_cast<double>(j) * scale;
        const std::size_t lo = static_cast<std::size_t>(pos);
        const double frac = pos - static_cast<double>(lo);
        out[j] = v[lo] + frac * (v[lo + 1] - v[lo]);
    }
    return out;
}

TimeSeries resample(const TimeSeries& s, std::size_t target_len) {
    TimeSeries out;
    out.values = resample(s.span(), target_len);
    // The content is stretched, so the per-sample period changes with it.
    out.sample_period = s.sample_period * static_cast<double>(s.size() - 1) /
                        static_cast<double>(target_len - 1);
    out.start_time = s.start_time;
    return out;
}

std::vector<double> moving_mean(std::span<const double> v, std::size_t w) {
    if (w < 1) {
        throw std::invalid_argument("moving_mean: window must be >= 1");
    }
    if (w > v.size()) {
        throw std::invalid_argument("moving_mean: window longer than series");
    }
    const std::size_t half = w / 2;
    const std::size_t n = v.size();
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t lo = i >= half ? i - half : 0;
        const std::size_t hi = std::min(n - 1, i + half);
        double acc = 0.0;
        for (std::size_t k = lo; k <= hi; ++k) {
            acc += v[k];
        }
        out[i] = acc / static_cast<double>(hi - lo + 1);
    }
    return out;
}

TimeSeries moving_mean(const TimeSeries& s, std::size_t w) {
    TimeSeries out;
    out.values = moving_mean(s.span(), w);
    out.sample_period = s.sample_period;
    out.start_time = s.start_time;
    return out;
}

LineFit fit_line(std::span<const double> v) {
    if (v.size() < 2) {
        throw std::invalid_argument("fit_line: need at least 2 samples");
    }
    const std::size_t n = v.size();
    const double x_mean = static_cast<double>(n - 1) / 2.0;
    const double y_mean = mean(v);
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = static_cast<double>(i) - x_mean;
        sxy += dx * (v[i] - y_mean);
        sxx += dx * dx;
    }
    LineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = y_mean - fit.slope * x_mean;
    return fit;
}

}  // namespace tsexplain
