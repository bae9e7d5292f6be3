#include "tsexplain/json_io.hpp"

#include "tsexplain/time_utils.hpp"

namespace tsexplain {

using nlohmann::json;

namespace {

json params_to_json(const OperatorResult& r) {
    json p = json::object();
    switch (r.kind) {
        case OperatorKind::UniformScaling:
            p["percent"] = std::get<ScalingParams>(r.params).percent;
            break;
        case OperatorKind::Occlusion: {
            const auto& o = std::get<OcclusionParams>(r.params);
            p["location"] = o.location;
            p["length"] = o.length;
            p["subkind"] = occlusion_subkind_name(o.subkind);
            break;
        }
        case OperatorKind::Warping: {
            const auto& w = std::get<WarpParams>(r.params);
            p["band"] = w.band;
            p["max_deviation"] = w.max_deviation;
            p["path_length"] = w.path_length;
            break;
        }
        case OperatorKind::Smoothing:
            p["window"] = std::get<SmoothingParams>(r.params).window;
            break;
        case OperatorKind::LinearTrend: {
            const auto& t = std::get<TrendParams>(r.params);
            p["slope"] = t.slope;
            p["rise_sigma"] = t.rise_sigma;
            break;
        }
        case OperatorKind::PiecewiseNorm:
            p["split_index"] = std::get<SplitParams>(r.params).split_index;
            break;
        case OperatorKind::LRFlip:
        case OperatorKind::UDFlip:
            break;
    }
    return p;
}

}  // namespace

json to_json(const OperatorResult& r) {
    // Transformed series are emitted as plot data, not JSON, to keep
    // documents small.
    return json{{"operator", operator_kind_name(r.kind)},
                {"improvement", r.improvement},
                {"params", params_to_json(r)}};
}

json to_json(const Explanation& e) {
    json all = json::array();
    for (const OperatorResult& r : e.all_results) {
        all.push_back(to_json(r));
    }
    json j{{"best", to_json(e.best)},
           {"all_results", std::move(all)},
           {"neighbor_location", e.neighbor_location},
           {"anomaly_location", e.anomaly_location},
           {"pre_distance", e.pre_distance},
           {"window_length", e.window_length},
           {"sample_period", e.sample_period},
           {"weak", e.weak},
           {"below_threshold", e.below_threshold},
           {"text", e.text}};
    j["neighbor_timestamp"] =
        e.neighbor_timestamp ? json(format_timestamp(*e.neighbor_timestamp)) : json(nullptr);
    j["anomaly_timestamp"] =
        e.anomaly_timestamp ? json(format_timestamp(*e.anomaly_timestamp)) : json(nullptr);
    return j;
}

json to_json(const AnomalyCandidate& c) {
    return json{{"location", c.location},
                {"score", c.score},
                {"neighbor_location", c.neighbor_location},
                {"neighbor_distance", c.neighbor_distance}};
}

json to_json(const GroundTruth& t) {
    return json{{"kind", corruption_kind_name(t.kind)},
                {"location", t.location},
                {"length", t.length},
                {"magnitude", t.magnitude},
                {"sigma", t.sigma},
                {"scale_factor", t.scale_factor},
                {"warp_displacement", t.warp_displacement}};
}

json to_json(const RecoveryReport& r) {
    auto hist = [](const std::map<long, std::size_t>& h) {
        json out = json::object();
        for (const auto& [err, count] : h) {
            out[std::to_string(err)] = count;
        }
        return out;
    };
    return json{{"schema_version", kSchemaVersion},
                {"trials", r.trials},
                {"nonzero_length_trials", r.nonzero_length_trials},
                {"zero_length_trials", r.zero_length_trials},
                {"location_within3", r.location_within3},
                {"length_within3", r.length_within3},
                {"zero_length_small", r.zero_length_small},
                {"location_error_hist", hist(r.location_error_hist)},
                {"length_error_hist", hist(r.length_error_hist)}};
}

json to_json(const BenchReport& r) {
    json classes = json::array();
    for (CorruptionKind c : r.classes) {
        classes.push_back(corruption_kind_name(c));
    }
    json confusion = json::object();
    json misses = json::object();
    json per_class = json::object();
    for (std::size_t c = 0; c < r.classes.size(); ++c) {
        const std::string row_name = corruption_kind_name(r.classes[c]);
        json row = json::object();
        for (std::size_t j = 0; j < kCorruptionKindCount; ++j) {
            row[corruption_kind_name(kAllCorruptionKinds[j])] =
                r.confusion[static_cast<std::size_t>(r.classes[c])][j];
        }
        confusion[row_name] = std::move(row);
        misses[row_name] = r.misses_per_class[c];
        per_class[row_name] = r.per_class_accuracy[c];
    }
    return json{{"schema_version", kSchemaVersion},
                {"classes", std::move(classes)},
                {"trials_per_class", r.trials_per_class},
                {"seed", r.seed},
                {"confusion", std::move(confusion)},
                {"misses_per_class", std::move(misses)},
                {"detected", r.detected},
                {"missed", r.missed},
                {"per_class_accuracy", std::move(per_class)},
                {"overall_accuracy", r.overall_accuracy},
                {"detection_rate", r.detection_rate}};
}

json explanation_document(const Explanation& e, const AnomalyCandidate& c,
                          const std::string& test_file, const std::string& train_file) {
    return json{{"schema_version", kSchemaVersion},
                {"input", json{{"test_file", test_file}, {"train_file", train_file}}},
                {"candidate", to_json(c)},
                {"explanation", to_json(e)},
                {"text", e.text}};
}

json detect_document(const std::vector<AnomalyCandidate>& candidates, std::size_t window,
                     double threshold, const std::string& test_file,
                     const std::string& train_file) {
    json list = json::array();
    for (const AnomalyCandidate& c : candidates) {
        list.push_back(to_json(c));
    }
    return json{{"schema_version", kSchemaVersion},
                {"input", json{{"test_file", test_file}, {"train_file", train_file}}},
                {"window", window},
                {"threshold", threshold},
                {"candidates", std::move(list)}};
}

}  // namespace tsexplain
