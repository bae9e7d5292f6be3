#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tsexplain/metrics.hpp"
#include "tsexplain/series.hpp"

namespace tsexplain {

/// One distance per window start. `indices[i]` is the matched neighbor start,
/// or npos when no admissible neighbor exists (distance +infinity).
struct MatrixProfile {
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::vector<double> distances;
    std::vector<std::size_t> indices;
    std::size_t window = 0;
    std::size_t exclusion = 0;
};

/// A window of the test series whose left-profile distance exceeded the
/// threshold, with its nearest neighbor in the training data.
struct AnomalyCandidate {
    std::size_t location = 0;  // start index in the test series
    TimeSeries window;
    double score = 0.0;  // left-profile distance
    std::size_t neighbor_location = 0;
    double neighbor_distance = 0.0;
};

enum class ThresholdMode { MuSigma, MaxPlusSigma };

/// For each window start i, the minimum z-normalized Euclidean distance to a
/// window starting at j <= i - exclusion (strictly earlier). Exact: equals
/// the naive double loop bit-for-bit. Requires s.length >= 2m, m >= 4.
MatrixProfile left_matrix_profile(std::span<const double> s, std::size_t m,
                                  std::size_t exclusion);
inline MatrixProfile left_matrix_profile(const TimeSeries& s, std::size_t m,
                                         std::size_t exclusion) {
    return left_matrix_profile(s.span(), m, exclusion);
}

/// Bidirectional profile: nearest neighbor among all windows with
/// |i - j| >= exclusion. Used to derive thresholds from training data.
MatrixProfile full_matrix_profile(std::span<const double> s, std::size_t m,
                                  std::size_t exclusion);

/// Threshold from a raw nearest-neighbor distance population:
/// MuSigma -> mean + 3 * population std; MaxPlusSigma -> max + population std.
double threshold_from_distances(std::span<const double> distances, ThresholdMode mode);

/// Threshold derived from the training series' own (bidirectional)
/// nearest-neighbor distances. Requires at least 10 windows.
double train_threshold(const TimeSeries& train, std::size_t m, ThresholdMode mode);

/// Windows of `test` whose left-profile distance over the concatenation
/// (training data plus preceding test data as left context) exceeds
/// `threshold`. Runs of overlapping above-threshold windows are merged into
/// one candidate at the peak-score start; neighbor fields come from
/// nn_search against the training data only.
std::vector<AnomalyCandidate> find_anomalies(const TimeSeries& test, const TimeSeries& train,
                                             std::size_t m, double threshold,
                                             std::size_t exclusion);

}  // namespace tsexplain
