#include "tsexplain/explain.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "tsexplain/time_utils.hpp"

namespace tsexplain {

namespace {

std::string fmt(const char* format, double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), format, value);
    return buf;
}

/// "+9" for integral values, "+9.1" otherwise.
std::string fmt_percent(double p) {
    if (p == std::floor(p)) {
        return fmt("%+.0f", p);
    }
    return fmt("%+.1f", p);
}

std::string location_ref(const Explanation& e, std::size_t window_offset) {
    if (e.anomaly_timestamp) {
        return format_timestamp(*e.anomaly_timestamp +
                                static_cast<double>(window_offset) * e.sample_period);
    }
    return "index " + std::to_string(window_offset);
}

std::string phrase(const Explanation& e) {
    const OperatorResult& r = e.best;
    switch (r.kind) {
        case OperatorKind::UniformScaling: {
            const auto& p = std::get<ScalingParams>(r.params);
            return fmt_percent(p.percent) + "% uniform scaling";
        }
        case OperatorKind::Occlusion: {
            const auto& p = std::get<OcclusionParams>(r.params);
            return occlusion_subkind_name(p.subkind) + " of length " +
                   std::to_string(p.length) + ", from " + location_ref(e, p.location);
        }
        case OperatorKind::Warping: {
            const auto& p = std::get<WarpParams>(r.params);
            if (e.anomaly_timestamp) {
                const double seconds = static_cast<double>(p.max_deviation) * e.sample_period;
                return "warping of up to " + fmt("%.3g", seconds) + " seconds";
            }
            const double pct = 100.0 * static_cast<double>(p.max_deviation) /
                               static_cast<double>(e.window_length);
            return "warping of up to " + fmt("%.3g", pct) + "% of the window";
        }
        case OperatorKind::LinearTrend: {
            const auto& p = std::get<TrendParams>(r.params);
            return "a linear trend of " + fmt("%.3g", p.rise_sigma) + " sigma over the window";
        }
        case OperatorKind::PiecewiseNorm: {
            const auto& p = std::get<SplitParams>(r.params);
            return "a level/scale shift at " + location_ref(e, p.split_index);
        }
        case OperatorKind::Smoothing:
            return "noise (global)";
        case OperatorKind::LRFlip:
            return "horizontal reversal";
        case OperatorKind::UDFlip:
            return "vertical reversal";
    }
    return "an unknown corruption";
}

}  // namespace

std::optional<double> index_to_timestamp(std::size_t i, const TimeSeries& s) {
    if (!s.start_time) {
        return std::nullopt;
    }
    return *s.start_time + static_cast<double>(i) * s.sample_period;
}

Explanation explain(const TimeSeries& anomaly_window, std::size_t anomaly_location,
                    const TimeSeries& train, const ExplainConfig& cfg,
                    std::optional<double> anomaly_threshold) {
    const std::size_t m = anomaly_window.size();
    const NnResult nn = nn_search(anomaly_window.span(), train.span());
    if (!(nn.distance > 0.0)) {
        throw std::domain_error(
            "explain: window is identical to training data, nothing to explain");
    }

    Explanation e;
    e.below_threshold = anomaly_threshold && nn.distance <= *anomaly_threshold;
    if (e.below_threshold && cfg.not_anomalous_is_error) {
        throw std::domain_error("explain: window does not exceed the anomaly threshold");
    }

    const TimeSeries neighbor = train.slice(nn.location, m);
    e.all_results = run_suite(anomaly_window, neighbor, cfg.operators);
    std::size_t best_idx = 0;
    for (std::size_t i = 1; i < e.all_results.size(); ++i) {
        if (e.all_results[i].improvement < e.all_results[best_idx].improvement) {
            best_idx = i;
        }
    }
    e.best = e.all_results[best_idx];
    e.neighbor_location = nn.location;
    e.neighbor_timestamp = index_to_timestamp(nn.location, train);
    e.anomaly_location = anomaly_location;
    e.anomaly_timestamp = anomaly_window.start_time;
    e.pre_distance = nn.distance;
    e.window_length = m;
    e.sample_period = anomaly_window.sample_period;
    e.weak = e.best.improvement > cfg.weak_threshold;
    e.text = render_text(e);
    return e;
}

std::string render_text(const Explanation& e) {
    const std::string anomaly_ref =
        e.anomaly_timestamp ? format_timestamp(*e.anomaly_timestamp)
                            : "index " + std::to_string(e.anomaly_location);
    const std::string neighbor_ref =
        e.neighbor_timestamp ? format_timestamp(*e.neighbor_timestamp)
                             : "training index " + std::to_string(e.neighbor_location);
    return "Anomaly at " + anomaly_ref + " would be like " + neighbor_ref + ", except for " +
           phrase(e) + ".";
}

}  // namespace tsexplain
