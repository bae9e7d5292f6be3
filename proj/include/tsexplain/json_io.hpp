#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "tsexplain/bench.hpp"
#include "tsexplain/corrupt.hpp"
#include "tsexplain/detect.hpp"
#include "tsexplain/explain.hpp"

namespace tsexplain {

inline constexpr int kSchemaVersion = 1;

nlohmann::json to_json(const OperatorResult& r);
nlohmann::json to_json(const Explanation& e);
nlohmann::json to_json(const AnomalyCandidate& c);
nlohmann::json to_json(const GroundTruth& t);
nlohmann::json to_json(const RecoveryReport& r);
nlohmann::json to_json(const BenchReport& r);

/// The full per-candidate output document of `explain`.
nlohmann::json explanation_document(const Explanation& e, const AnomalyCandidate& c,
                                    const std::string& test_file,
                                    const std::string& train_file);

/// Candidate list document of `detect`.
nlohmann::json detect_document(const std::vector<AnomalyCandidate>& candidates, std::size_t window,
                               double threshold, const std::string& test_file,
                               const std::string& train_file);

}  // namespace tsexplain
