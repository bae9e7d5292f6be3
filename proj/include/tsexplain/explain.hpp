#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "tsexplain/operators.hpp"
#include "tsexplain/series.hpp"

namespace tsexplain {

struct ExplainConfig {
    OperatorConfig operators;
    double weak_threshold = 0.9;
    /// When the caller passes an anomaly threshold and the window does not
    /// exceed it: throw (true) or proceed and flag it (false).
    bool not_anomalous_is_error = true;
};

/// The selected counterfactual plus everything needed to audit or re-render
/// it. `all_results` holds every enabled operator exactly once, in priority
/// order; `best` is the improvement argmin with ties broken by that order.
struct Explanation {
    OperatorResult best;
    std::vector<OperatorResult> all_results;
    std::size_t neighbor_location = 0;
    std::optional<double> neighbor_timestamp;
    std::size_t anomaly_location = 0;
    std::optional<double> anomaly_timestamp;
    double pre_distance = 0.0;  // znorm ED to the fixed nearest neighbor
    std::size_t window_length = 0;
    double sample_period = 1.0;
    bool weak = false;
    bool below_threshold = false;
    std::string text;
};

/// Absolute time of sample i, when the series has time metadata.
std::optional<double> index_to_timestamp(std::size_t i, const TimeSeries& s);

/// Runs nn_search to fix the neighbor, evaluates every enabled operator and
/// selects the argmin of improvement. `anomaly_location` is the window's
/// start in the test series (used only for reporting). When
/// `anomaly_threshold` is given, a window at or below it either throws
/// std::domain_error or is flagged, per config.
Explanation explain(const TimeSeries& anomaly_window, std::size_t anomaly_location,
                    const TimeSeries& train, const ExplainConfig& cfg,
                    std::optional<double> anomaly_threshold = std::nullopt);

/// Deterministic counterfactual sentence; a pure function of the Explanation.
std::string render_text(const Explanation& e);

}  // namespace tsexplain
