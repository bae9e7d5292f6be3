#include "tsexplain/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace tsexplain {

double euclidean(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("euclidean: length mismatch");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        acc += d * d;
    }
    return std::sqrt(acc);
}

double znorm_euclidean(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("znorm_euclidean: length mismatch");
    }
    const std::vector<double> za = znormalize(a);
    const std::vector<double> zb = znormalize(b);
    return euclidean(za, zb);
}

WindowStats window_stats(std::span<const double> s, std::size_t m) {
    if (m < 2 || m > s.size()) {
        throw std::invalid_argument("window_stats: bad window length");
    }
    const std::size_t n_windows = s.size() - m + 1;
    WindowStats st;
    st.mean.resize(n_windows);
    st.std.resize(n_windows);
    for (std::size_t i = 0; i < n_windows; ++i) {
        double acc = 0.0;
        for (std::size_t k = 0; k < m; ++k) {
            acc += s[i + k];
        }
        const double mu = acc / static_cast<double>(m);
        double acc2 = 0.0;
        for (std::size_t k = 0; k < m; ++k) {
            const double d = s[i + k] - mu;
            acc2 += d * d;
        }
        st.mean[i] = mu;
        st.std[i] = std::sqrt(acc2 / static_cast<double>(m));
    }
    return st;
}

double znorm_window_distance(const double* a, double mean_a, double std_a,
                             const double* b, double mean_b, double std_b,
                             std::size_t m) {
    double acc = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        const double u = std_a == 0.0 ? 0.0 : (a[k] - mean_a) / std_a;
        const double v = std_b == 0.0 ? 0.0 : (b[k] - mean_b) / std_b;
        const double d = u - v;
        acc += d * d;
    }
    return std::sqrt(acc);
}

NnResult nn_search(std::span<const double> query, std::span<const double> train) {
    const std::size_t m = query.size();
    if (m < 2) {
        throw std::invalid_argument("nn_search: query must have at least 2 samples");
    }
    if (train.size() < m) {
        throw std::invalid_argument("nn_search: train shorter than query");
    }
    double q_acc = 0.0;
    for (double x : query) {
        q_acc += x;
    }
    const double q_mean = q_acc / static_cast<double>(m);
    double q_acc2 = 0.0;
    for (double x : query) {
        const double d = x - q_mean;
        q_acc2 += d * d;
    }
    const double q_std = std::sqrt(q_acc2 / static_cast<double>(m));

    const WindowStats st = window_stats(train, m);
    NnResult best;
    best.location = 0;
    best.distance = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < st.mean.size(); ++i) {
        const double d = znorm_window_distance(query.data(), q_mean, q_std,
                                               train.data() + i, st.mean[i], st.std[i], m);
        if (d < best.distance) {
            best.distance = d;
            best.location = i;
        }
    }
    return best;
}

WarpResult dtw(std::span<const double> a, std::span<const double> b, std::size_t band) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("dtw: length mismatch");
    }
    const std::size_t n = a.size();
    const std::vector<double> za = znormalize(a);
    const std::vector<double> zb = znormalize(b);

    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> cost(n * n, inf);
    auto at = [&](std::size_t i, std::size_t j) -> double& { return cost[i * n + j]; };
    auto sq = [&](std::size_t i, std::size_t j) {
        const double d = za[i] - zb[j];
        return d * d;
    };
    auto in_band = [&](std::size_t i, std::size_t j) {
        return (i >= j ? i - j : j - i) <= band;
    };

    at(0, 0) = sq(0, 0);
    for (std::size_t i = 1; i < n && in_band(i, 0); ++i) {
        at(i, 0) = sq(i, 0) + at(i - 1, 0);
    }
    for (std::size_t j = 1; j < n && in_band(0, j); ++j) {
        at(0, j) = sq(0, j) + at(0, j - 1);
    }
    for (std::size_t i = 1; i < n; ++i) {
        const std::size_t j_lo = i > band ? i - band : 1;
        const std::size_t j_hi = std::min(n - 1, i + band);
        for (std::size_t j = std::max<std::size_t>(1, j_lo); j <= j_hi; ++j) {
            const double best = std::min(at(i - 1, j - 1), std::min(at(i - 1, j), at(i, j - 1)));
            at(i, j) = sq(i, j) + best;
        }
    }

    WarpResult res;
    res.distance = std::sqrt(at(n - 1, n - 1));

    // Backtrack; on ties prefer the diagonal, then (1,0), then (0,1).
    std::size_t i = n - 1;
    std::size_t j = n - 1;
    res.path.emplace_back(i, j);
    while (i > 0 || j > 0) {
        if (i == 0) {
            --j;
        } else if (j == 0) {
            --i;
        } else {
            const double diag = at(i - 1, j - 1);
            const double up = at(i - 1, j);
            const double left = at(i, j - 1);
            if (diag <= up && diag <= left) {
                --i;
                --j;
            } else if (up <= left) {
                --i;
            } else {
                --j;
            }
        }
        res.path.emplace_back(i, j);
    }
    std::reverse(res.path.begin(), res.path.end());
    res.path_length = res.path.size();
    res.max_deviation = 0;
    for (const auto& [pi, pj] : res.path) {
        const std::size_t dev = pi >= pj ? pi - pj : pj - pi;
        res.max_deviation = std::max(res.max_deviation, dev);
    }
    return res;
}

SplitResult pnd(std::span<const double> a, std::span<const double> b, std::size_t min_seg) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("pnd: length mismatch");
    }
    if (min_seg < 2) {
        throw std::invalid_argument("pnd: min_seg must be >= 2");
    }
    const std::size_t n = a.size();
    if (n < 2 * min_seg) {
        throw std::invalid_argument("pnd: series shorter than 2*min_seg");
    }
    auto ssd = [](std::span<const double> x, std::span<const double> y) {
        const std::vector<double> zx = znormalize(x);
        const std::vector<double> zy = znormalize(y);
        double acc = 0.0;
        for (std::size_t k = 0; k < zx.size(); ++k) {
            const double d = zx[k] - zy[k];
            acc += d * d;
        }
        return acc;
    };
    SplitResult best;
    best.distance = std::numeric_limits<double>::infinity();
    for (std::size_t i = min_seg - 1; i + min_seg < n; ++i) {
        const std::size_t left_len = i + 1;
        const double score = std::sqrt(ssd(a.subspan(0, left_len), b.subspan(0, left_len)) +
                                       ssd(a.subspan(left_len), b.subspan(left_len)));
        if (score < best.distance) {
            best.distance = score;
            best.split_index = i;
        }
    }
    return best;
}

OcclusionResult oed(std::span<const double> t, std::span<const double> a) {
    if (t.size() != a.size()) {
        throw std::invalid_argument("oed: length mismatch");
    }
    const std::size_t n = t.size();
    if (n < 4) {
        throw std::invalid_argument("oed: need at least 4 samples");
    }
    const std::size_t max_len = n / 2;

    OcclusionResult best;
    best.distance = euclidean(t, a);  // length-0 cell
    best.location = 0;
    best.length = 0;

    for (std::size_t olen = 1; olen <= max_len; ++olen) {
        // Evenly spaced penalty from 0 (olen = 1) to 2 (olen = max_len).
        const double scale_pen =
            2.0 * static_cast<double>(olen - 1) / static_cast<double>(max_len - 1);
        for (std::size_t oloc = 0; oloc + olen <= n; ++oloc) {
            const std::size_t suffix_start = oloc + olen;
            double before_acc = 0.0;
            double before_sum = 0.0;
            for (std::size_t k = 0; k < oloc; ++k) {
                const double d = t[k] - a[k];
                before_acc += d * d;
                before_sum += d;
            }
            double after_acc = 0.0;
            double after_sum = 0.0;
            for (std::size_t k = suffix_start; k < n; ++k) {
                const double d = t[k] - a[k];
                after_acc += d * d;
                after_sum += d;
            }
            const std::size_t n_before = oloc;
            const std::size_t n_after = n - suffix_start;
            const double before = std::sqrt(before_acc);
            const double after = std::sqrt(after_acc);
            double o1;
            double o2;
            if (n_before == 0 && n_after == 0) {
                o1 = 0.0;
                o2 = 0.0;
            } else if (n_before == 0) {
                o2 = std::abs(after_sum / static_cast<double>(n_after));
                o1 = o2;  // empty side borrows the other side's mean
            } else if (n_after == 0) {
                o1 = std::abs(before_sum / static_cast<double>(n_before));
                o2 = o1;
            } else {
                o1 = std::abs(before_sum / static_cast<double>(n_before));
                o2 = std::abs(after_sum / static_cast<double>(n_after));
            }
            const double mean_pen = (o1 + o2) * 0.5 * static_cast<double>(olen);
            const double score = before + after + mean_pen + scale_pen;
            if (score < best.distance) {
                best.distance = score;
                best.location = oloc;
                best.length = olen;
            }
        }
    }
    return best;
}

}  // namespace tsexplain
