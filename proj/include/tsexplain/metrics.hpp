#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "tsexplain/series.hpp"

namespace tsexplain {

/// Result of a banded DTW alignment. The path is monotone, starts at (0,0),
/// ends at (L-1,L-1) and uses steps {(1,0),(0,1),(1,1)}; path_length >= L.
struct WarpResult {
    double distance = 0.0;
    std::vector<std::pair<std::size_t, std::size_t>> path;
    std::size_t path_length = 0;
    std::size_t max_deviation = 0;  // max |i - j| along the path
};

/// Best cell of the occlusion grid search: ignore `length` samples starting
/// at `location` and score the remainder plus penalties.
struct OcclusionResult {
    double distance = 0.0;  // OED
    std::size_t location = 0;
    std::size_t length = 0;
};

/// Best split for the piecewise normalized distance. split_index is the last
/// index of the left segment.
struct SplitResult {
    double distance = 0.0;
    std::size_t split_index = 0;
};

struct NnResult {
    std::size_t location = 0;
    double distance = 0.0;
};

/// Plain L2 on raw values. Lengths must match.
double euclidean(std::span<const double> a, std::span<const double> b);

/// L2 between the z-normalized inputs. Lengths must match and be >= 2.
double znorm_euclidean(std::span<const double> a, std::span<const double> b);

/// Per-window mean and population std of every length-m window of `s`,
/// computed by direct summation so results match a window-by-window scan
/// exactly.
struct WindowStats {
    std::vector<double> mean;
    std::vector<double> std;
};
WindowStats window_stats(std::span<const double> s, std::size_t m);

/// z-normalized Euclidean distance between two windows given their
/// precomputed moments. Flat windows (sigma == 0) contribute zeros.
double znorm_window_distance(const double* a, double mean_a, double std_a,
                             const double* b, double mean_b, double std_b,
                             std::size_t m);

/// Start index in `train` minimizing the z-normalized Euclidean distance to
/// `query`, ties to the smallest index. Equals the naive window-by-window
/// scan bit-for-bit.
NnResult nn_search(std::span<const double> query, std::span<const double> train);

/// Classic DTW with a Sakoe-Chiba band of half-width `band` on z-normalized
/// inputs. Distance is the square root of the accumulated squared
/// differences along the optimal path; backtracking prefers the diagonal,
/// then (1,0), then (0,1). band = 0 degenerates to the z-normalized
/// Euclidean distance.
WarpResult dtw(std::span<const double> a, std::span<const double> b, std::size_t band);

/// Piecewise normalized distance: each side of the split is z-normalized
/// independently and the squared differences are pooled. Both segments of
/// every admissible split have at least `min_seg` samples (min_seg >= 2,
/// L >= 2*min_seg). Ties to the smallest split.
SplitResult pnd(std::span<const double> a, std::span<const double> b, std::size_t min_seg);

/// Occlusion Euclidean distance: grid search over occlusion length
/// 0..floor(L/2) and start position, scoring prefix norm + suffix norm +
/// mean penalty + length penalty. Length 0 scores as the plain Euclidean
/// distance, so the minimum never exceeds it. Inputs are expected to be
/// z-normalized by the caller. Ties to smallest (length, location).
/// Requires equal lengths, L >= 4.
OcclusionResult oed(std::span<const double> t, std::span<const double> a);

inline double euclidean(const TimeSeries& a, const TimeSeries& b) {
    return euclidean(a.span(), b.span());
}
inline double znorm_euclidean(const TimeSeries& a, const TimeSeries& b) {
    return znorm_euclidean(a.span(), b.span());
}
inline NnResult nn_search(const TimeSeries& query, const TimeSeries& train) {
    return nn_search(query.span(), train.span());
}

}  // namespace tsexplain
