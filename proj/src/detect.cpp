#include "tsexplain/detect.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace tsexplain {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_profile_args(std::size_t n, std::size_t m) {
    if (m < 4) {
        throw std::invalid_argument("matrix profile: window must be >= 4");
    }
    if (n < 2 * m) {
        throw std::invalid_argument("matrix profile: series shorter than 2 windows");
    }
}

}  // namespace

MatrixProfile left_matrix_profile(std::span<const double> s, std::size_t m,
                                  std::size_t exclusion) {
    check_profile_args(s.size(), m);
    const std::size_t n_windows = s.size() - m + 1;
    const WindowStats st = window_stats(s, m);

    MatrixProfile mp;
    mp.window = m;
    mp.exclusion = exclusion;
    mp.distances.assign(n_windows, kInf);
    mp.indices.assign(n_windows, MatrixProfile::npos);
    for (std::size_t i = 0; i < n_windows; ++i) {
        if (i < exclusion) {
            continue;  // no admissible left neighbor yet
        }
        const std::size_t j_max = i - exclusion;
        double best = kInf;
        std::size_t best_j = MatrixProfile::npos;
        for (std::size_t j = 0; j <= j_max; ++j) {
            const double d = znorm_window_distance(s.data() + i, st.mean[i], st.std[i],
                                                   s.data() + j, st.mean[j], st.std[j], m);
            if (d < best) {
                best = d;
                best_j = j;
            }
        }
        mp.distances[i] = best;
        mp.indices[i] = best_j;
    }
    return mp;
}

MatrixProfile full_matrix_profile(std::span<const double> s, std::size_t m,
                                  std::size_t exclusion) {
    check_profile_args(s.size(), m);
    const std::size_t n_windows = s.size() - m + 1;
    const WindowStats st = window_stats(s, m);

    MatrixProfile mp;
    mp.window = m;
    mp.exclusion = exclusion;
    mp.distances.assign(n_windows, kInf);
    mp.indices.assign(n_windows, MatrixProfile::npos);
    for (std::size_t i = 0; i < n_windows; ++i) {
        double best = kInf;
        std::size_t best_j = MatrixProfile::npos;
        for (std::size_t j = 0; j < n_windows; ++j) {
            const std::size_t gap = i >= j ? i - j : j - i;
            if (gap < exclusion) {
                continue;
            }
            const double d = znorm_window_distance(s.data() + i, st.mean[i], st.std[i],
                                                   s.data() + j, st.mean[j], st.std[j], m);
            if (d < best) {
                best = d;
                best_j = j;
            }
        }
        mp.distances[i] = best;
        mp.indices[i] = best_j;
    }
    return mp;
}

double threshold_from_distances(std::span<const double> distances, ThresholdMode mode) {
    std::vector<double> finite;
    finite.reserve(distances.size());
    for (double d : distances) {
        if (std::isfinite(d)) {
            finite.push_back(d);
        }
    }
    if (finite.size() < 2) {
        throw std::invalid_argument("threshold: need at least 2 finite distances");
    }
    const double mu = mean(finite);
    const double sigma = stddev_pop(finite);
    if (mode == ThresholdMode::MuSigma) {
        return mu + 3.0 * sigma;
    }
    const double mx = *std::max_element(finite.begin(), finite.end());
    return mx + sigma;
}

double train_threshold(const TimeSeries& train, std::size_t m, ThresholdMode mode) {
    if (train.size() < m + 9) {
        throw std::invalid_argument("train_threshold: need at least 10 windows");
    }
    const MatrixProfile mp = full_matrix_profile(train.span(), m, m);
    return threshold_from_distances(mp.distances, mode);
}

std::vector<AnomalyCandidate> find_anomalies(const TimeSeries& test, const TimeSeries& train,
                                             std::size_t m, double threshold,
                                             std::size_t exclusion) {
    if (!(threshold > 0.0)) {
        throw std::invalid_argument("find_anomalies: threshold must be positive");
    }
    if (test.size() < m || train.size() < m) {
        throw std::invalid_argument("find_anomalies: series shorter than window");
    }
    std::vector<double> concat;
    concat.reserve(train.size() + test.size());
    concat.insert(concat.end(), train.values.begin(), train.values.end());
    concat.insert(concat.end(), test.values.begin(), test.values.end());

    const std::size_t n_train = train.size();
    const std::size_t n_windows = concat.size() - m + 1;
    const WindowStats st = window_stats(concat, m);

    // Left profile restricted to windows that lie fully inside the test
    // region; left context covers training data and preceding test data.
    const std::size_t n_test_windows = n_windows - n_train;
    std::vector<double> scores(n_test_windows, -kInf);
    for (std::size_t i = n_train; i < n_windows; ++i) {
        double best = kInf;
        if (i >= exclusion) {
            const std::size_t j_max = i - exclusion;
            for (std::size_t j = 0; j <= j_max; ++j) {
                const double d = znorm_window_distance(concat.data() + i, st.mean[i], st.std[i],
                                                       concat.data() + j, st.mean[j], st.std[j], m);
                if (d < best) {
                    best = d;
                }
            }
        }
        if (std::isfinite(best)) {
            scores[i - n_train] = best;
        }
    }

    // One candidate per excursion: keep peak-score windows, suppressing
    // anything within 2m-1 starts of a stronger peak (a corruption of up to
    // one window length perturbs a span of at most 2m window starts; a
    // level-shift region scores as two step edges m apart). The peak set
    // does not depend on the threshold, so raising the threshold can only
    // drop candidates.
    std::vector<std::size_t> order(n_test_windows);
    for (std::size_t i = 0; i < n_test_windows; ++i) {
        order[i] = i;
    }
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (scores[a] != scores[b]) {
            return scores[a] > scores[b];
        }
        return a < b;
    });
    std::vector<bool> suppressed(n_test_windows, false);
    std::vector<std::size_t> peaks;
    for (std::size_t idx : order) {
        if (suppressed[idx] || !(scores[idx] > threshold)) {
            continue;
        }
        peaks.push_back(idx);
        const std::size_t radius = 2 * m - 1;
        const std::size_t lo = idx >= radius ? idx - radius : 0;
        const std::size_t hi = std::min(n_test_windows - 1, idx + radius);
        for (std::size_t k = lo; k <= hi; ++k) {
            suppressed[k] = true;
        }
    }
    std::sort(peaks.begin(), peaks.end());

    std::vector<AnomalyCandidate> out;
    out.reserve(peaks.size());
    for (std::size_t start : peaks) {
        AnomalyCandidate cand;
        cand.location = start;
        cand.window = test.slice(start, m);
        cand.score = scores[start];
        const NnResult nn = nn_search(cand.window.span(), train.span());
        cand.neighbor_location = nn.location;
        cand.neighbor_distance = nn.distance;
        out.push_back(std::move(cand));
    }
    return out;
}

}  // namespace tsexplain
