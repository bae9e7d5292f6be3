#include "tsexplain/operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace tsexplain {

namespace {

double denominator(const TimeSeries& anomaly, const TimeSeries& neighbor) {
    if (anomaly.size() != neighbor.size()) {
        throw std::invalid_argument("operator: anomaly and neighbor lengths differ");
    }
    const double d0 = znorm_euclidean(anomaly.span(), neighbor.span());
    if (!(d0 > 0.0)) {
        throw std::domain_error("operator: anomaly has zero distance to its neighbor");
    }
    return d0;
}

TimeSeries with_values(const TimeSeries& like, std::vector<double> values) {
    TimeSeries out;
    out.values = std::move(values);
    out.sample_period = like.sample_period;
    out.start_time = like.start_time;
    return out;
}

}  // namespace

std::string operator_kind_name(OperatorKind kind) {
    switch (kind) {
        case OperatorKind::Occlusion: return "Occlusion";
        case OperatorKind::UniformScaling: return "UniformScaling";
        case OperatorKind::Warping: return "Warping";
        case OperatorKind::PiecewiseNorm: return "PiecewiseNorm";
        case OperatorKind::LinearTrend: return "LinearTrend";
        case OperatorKind::Smoothing: return "Smoothing";
        case OperatorKind::LRFlip: return "LRFlip";
        case OperatorKind::UDFlip: return "UDFlip";
    }
    return "Unknown";
}

std::optional<OperatorKind> operator_kind_from_name(const std::string& name) {
    for (OperatorKind k : kOperatorPriority) {
        if (operator_kind_name(k) == name) {
            return k;
        }
    }
    return std::nullopt;
}

std::string occlusion_subkind_name(OcclusionSubkind k) {
    switch (k) {
        case OcclusionSubkind::Noise: return "Noise";
        case OcclusionSubkind::Spike: return "Spike";
        case OcclusionSubkind::Dropout: return "Dropout";
    }
    return "Unknown";
}

std::size_t OperatorConfig::enabled_count() const {
    std::size_t n = 0;
    for (bool b : enabled) {
        n += b ? 1 : 0;
    }
    return n;
}

void OperatorConfig::validate() const {
    if (!(scaling_min >= 0.5 && scaling_min <= 1.0)) {
        throw std::invalid_argument("config: scaling_min must lie in [0.5, 1.0]");
    }
    if (!(scaling_max >= 1.0 && scaling_max <= 2.0)) {
        throw std::invalid_argument("config: scaling_max must lie in [1.0, 2.0]");
    }
    if (!(dtw_band_frac >= 0.0 && dtw_band_frac <= 1.0)) {
        throw std::invalid_argument("config: dtw_band_frac must lie in [0, 1]");
    }
    if (smoothing_window < 1) {
        throw std::invalid_argument("config: smoothing_window must be >= 1");
    }
    if (pnd_min_seg < 2) {
        throw std::invalid_argument("config: pnd_min_seg must be >= 2");
    }
}

TimeSeries reverse_series(const TimeSeries& s) {
    TimeSeries out = s;
    std::reverse(out.values.begin(), out.values.end());
    return out;
}

TimeSeries negate_series(const TimeSeries& s) {
    TimeSeries out = s;
    for (double& x : out.values) {
        x = -x;
    }
    return out;
}

OperatorResult op_uniform_scaling(const TimeSeries& anomaly, const TimeSeries& neighbor,
                                  const OperatorConfig& cfg) {
    const double d0 = denominator(anomaly, neighbor);
    const std::size_t n = anomaly.size();
    if (n < 4) {
        throw std::invalid_argument("uniform scaling: need at least 4 samples");
    }
    const std::vector<double> zn_neighbor = znormalize(neighbor.span());
    const std::vector<double> zn_anomaly = znormalize(anomaly.span());

    auto stretched_to = [&](std::span<const double> src, int grid_percent) {
        const double factor = 1.0 + static_cast<double>(grid_percent) / 100.0;
        const std::size_t target = static_cast<std::size_t>(
            std::llround(factor * static_cast<double>(n)));
        std::vector<double> out = resample(src, std::max<std::size_t>(target, n));
        out.resize(n);  // truncate off the surplus tail
        return out;
    };

    double best_dist = std::numeric_limits<double>::infinity();
    double best_percent = 0.0;
    std::vector<double> best_values;

    // Stretch the anomaly on a 1%-step grid; the identity cell caps I at 1.
    const int stretch_steps = static_cast<int>(std::llround((cfg.scaling_max - 1.0) * 100.0));
    for (int p = 0; p <= stretch_steps; ++p) {
        std::vector<double> cand = stretched_to(anomaly.span(), p);
        const std::vector<double> z = znormalize(cand);
        const double d = euclidean(z, zn_neighbor);
        if (d < best_dist) {
            best_dist = d;
            best_percent = static_cast<double>(p);
            best_values = std::move(cand);
        }
    }

    // Shrink by reversing the roles: stretch the neighbor instead and report
    // the anomaly's equivalent (negative) rescale percent.
    const int shrink_steps = static_cast<int>(std::llround((1.0 / cfg.scaling_min - 1.0) * 100.0));
    for (int p = 1; p <= shrink_steps; ++p) {
        std::vector<double> cand = stretched_to(neighbor.span(), p);
        const std::vector<double> z = znormalize(cand);
        const double d = euclidean(z, zn_anomaly);
        if (d < best_dist) {
            best_dist = d;
            const double g = 1.0 + static_cast<double>(p) / 100.0;
            best_percent = (1.0 / g - 1.0) * 100.0;
            best_values = anomaly.values;  // the anomaly itself is the A-side here
        }
    }

    OperatorResult res;
    res.kind = OperatorKind::UniformScaling;
    res.improvement = best_dist / d0;
    res.params = ScalingParams{best_percent};
    res.transformed = with_values(anomaly, std::move(best_values));
    return res;
}

OperatorResult op_occlusion(const TimeSeries& anomaly, const TimeSeries& neighbor,
                            const OperatorConfig& cfg) {
    (void)cfg;
    const double d0 = denominator(anomaly, neighbor);
    const std::vector<double> zt = znormalize(neighbor.span());
    const std::vector<double> za = znormalize(anomaly.span());
    const OcclusionResult r = oed(zt, za);

    OcclusionParams params;
    params.location = r.location;
    params.length = r.length;
    params.subkind = OcclusionSubkind::Noise;
    if (r.length > 0) {
        // Classify against the mean and std of the non-occluded remainder.
        const std::span<const double> a = anomaly.span();
        double occ_sum = 0.0;
        for (std::size_t k = r.location; k < r.location + r.length; ++k) {
            occ_sum += a[k];
        }
        const double occ_mean = occ_sum / static_cast<double>(r.length);
        std::vector<double> rest;
        rest.reserve(a.size() - r.length);
        for (std::size_t k = 0; k < a.size(); ++k) {
            if (k < r.location || k >= r.location + r.length) {
                rest.push_back(a[k]);
            }
        }
        const double rest_mean = mean(rest);
        const double rest_std = stddev_pop(rest);
        if (occ_mean >= rest_mean + rest_std) {
            params.subkind = OcclusionSubkind::Spike;
        } else if (occ_mean <= rest_mean - rest_std) {
            params.subkind = OcclusionSubkind::Dropout;
        }
    }

    OperatorResult res;
    res.kind = OperatorKind::Occlusion;
    res.improvement = r.distance / d0;
    res.params = params;
    return res;
}

OperatorResult op_warping(const TimeSeries& anomaly, const TimeSeries& neighbor,
                          const OperatorConfig& cfg) {
    const double d0 = denominator(anomaly, neighbor);
    const std::size_t n = anomaly.size();
    const std::size_t band = static_cast<std::size_t>(
        std::ceil(cfg.dtw_band_frac * static_cast<double>(n)));
    const WarpResult w = dtw(anomaly.span(), neighbor.span(), band);

    OperatorResult res;
    res.kind = OperatorKind::Warping;
    res.params = WarpParams{band, w.max_deviation, w.path_length};
    if (w.path_length == n) {
        res.improvement = 1.0;  // diagonal path: DTW degenerates to ED, no gain
    } else {
        const double factor = static_cast<double>(n) /
                              static_cast<double>(w.path_length - n);
        res.improvement = (w.distance * factor) / d0;
    }
    return res;
}

OperatorResult op_smoothing(const TimeSeries& anomaly, const TimeSeries& neighbor,
                            const OperatorConfig& cfg) {
    const double d0 = denominator(anomaly, neighbor);
    if (anomaly.size() < cfg.smoothing_window) {
        throw std::invalid_argument("smoothing: window longer than series");
    }
    std::vector<double> smoothed = moving_mean(anomaly.span(), cfg.smoothing_window);
    const std::vector<double> z = znormalize(smoothed);
    const double d = euclidean(z, znormalize(neighbor.span()));

    OperatorResult res;
    res.kind = OperatorKind::Smoothing;
    res.improvement = d / d0;
    res.params = SmoothingParams{cfg.smoothing_window};
    res.transformed = with_values(anomaly, std::move(smoothed));
    return res;
}

OperatorResult op_lr_flip(const TimeSeries& anomaly, const TimeSeries& neighbor,
                          const OperatorConfig& cfg) {
    (void)cfg;
    const double d0 = denominator(anomaly, neighbor);
    TimeSeries flipped = reverse_series(anomaly);
    const double d = znorm_euclidean(flipped.span(), neighbor.span());

    OperatorResult res;
    res.kind = OperatorKind::LRFlip;
    res.improvement = d / d0;
    res.params = FlipParams{};
    res.transformed = std::move(flipped);
    return res;
}

OperatorResult op_ud_flip(const TimeSeries& anomaly, const TimeSeries& neighbor,
                          const OperatorConfig& cfg) {
    (void)cfg;
    const double d0 = denominator(anomaly, neighbor);
    TimeSeries flipped = negate_series(anomaly);
    const double d = znorm_euclidean(flipped.span(), neighbor.span());

    OperatorResult res;
    res.kind = OperatorKind::UDFlip;
    res.improvement = d / d0;
    res.params = FlipParams{};
    res.transformed = std::move(flipped);
    return res;
}

OperatorResult op_linear_trend(const TimeSeries& anomaly, const TimeSeries& neighbor,
                               const OperatorConfig& cfg) {
    (void)cfg;
    const double d0 = denominator(anomaly, neighbor);
    const std::size_t n = anomaly.size();
    const std::vector<double> zn_neighbor = znormalize(neighbor.span());
    const double sigma_a = stddev_pop(anomaly.span());
    const double s_max = 4.0 * sigma_a / static_cast<double>(n);

    std::vector<double> candidates;
    candidates.reserve(202);
    for (int k = 0; k <= 200; ++k) {
        const double t = static_cast<double>(k - 100) / 100.0;
        candidates.push_back(s_max * t);  // exact zero at the center
    }
    const double detrend = -fit_line(anomaly.span()).slope;
    if (std::abs(detrend) <= s_max) {
        candidates.push_back(detrend);
    }

    double best_dist = std::numeric_limits<double>::infinity();
    double best_slope = 0.0;
    std::vector<double> best_values;
    std::vector<double> with_ramp(n);
    for (double s : candidates) {
        for (std::size_t k = 0; k < n; ++k) {
            with_ramp[k] = anomaly.values[k] + s * static_cast<double>(k);
        }
        const std::vector<double> z = znormalize(with_ramp);
        const double d = euclidean(z, zn_neighbor);
        if (d < best_dist) {
            best_dist = d;
            best_slope = s;
            best_values = with_ramp;
        }
    }

    OperatorResult res;
    res.kind = OperatorKind::LinearTrend;
    res.improvement = best_dist / d0;
    const double rise_sigma =
        sigma_a == 0.0 ? 0.0 : best_slope * static_cast<double>(n - 1) / sigma_a;
    res.params = TrendParams{best_slope, rise_sigma};
    res.transformed = with_values(anomaly, std::move(best_values));
    return res;
}

OperatorResult op_piecewise_norm(const TimeSeries& anomaly, const TimeSeries& neighbor,
                                 const OperatorConfig& cfg) {
    const double d0 = denominator(anomaly, neighbor);
    const SplitResult r = pnd(anomaly.span(), neighbor.span(), cfg.pnd_min_seg);

    const std::size_t left_len = r.split_index + 1;
    std::vector<double> left = znormalize(anomaly.span().subspan(0, left_len));
    const std::vector<double> right = znormalize(anomaly.span().subspan(left_len));
    left.insert(left.end(), right.begin(), right.end());

    OperatorResult res;
    res.kind = OperatorKind::PiecewiseNorm;
    res.improvement = r.distance / d0;
    res.params = SplitParams{r.split_index};
    res.transformed = with_values(anomaly, std::move(left));
    return res;
}

OperatorResult run_operator(OperatorKind kind, const TimeSeries& anomaly,
                            const TimeSeries& neighbor, const OperatorConfig& cfg) {
    switch (kind) {
        case OperatorKind::Occlusion: return op_occlusion(anomaly, neighbor, cfg);
        case OperatorKind::UniformScaling: return op_uniform_scaling(anomaly, neighbor, cfg);
        case OperatorKind::Warping: return op_warping(anomaly, neighbor, cfg);
        case OperatorKind::PiecewiseNorm: return op_piecewise_norm(anomaly, neighbor, cfg);
        case OperatorKind::LinearTrend: return op_linear_trend(anomaly, neighbor, cfg);
        case OperatorKind::Smoothing: return op_smoothing(anomaly, neighbor, cfg);
        case OperatorKind::LRFlip: return op_lr_flip(anomaly, neighbor, cfg);
        case OperatorKind::UDFlip: return op_ud_flip(anomaly, neighbor, cfg);
    }
    throw std::logic_error("run_operator: unknown kind");
}

std::vector<OperatorResult> run_suite(const TimeSeries& anomaly, const TimeSeries& neighbor,
                                      const OperatorConfig& cfg) {
    if (cfg.enabled_count() == 0) {
        throw std::invalid_argument("operator suite: no operators enabled");
    }
    std::vector<OperatorResult> out;
    out.reserve(cfg.enabled_count());
    for (OperatorKind k : kOperatorPriority) {
        if (cfg.is_enabled(k)) {
            out.push_back(run_operator(k, anomaly, neighbor, cfg));
        }
    }
    return out;
}

}  // namespace tsexplain
