#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tsexplain/metrics.hpp"
#include "tsexplain/series.hpp"

namespace tsexplain {

/// Fixed priority order; earlier entries win ties in the explanation argmin
/// (local, parsimonious edits before global ones).
enum class OperatorKind {
    Occlusion,
    UniformScaling,
    Warping,
    PiecewiseNorm,
    LinearTrend,
    Smoothing,
    LRFlip,
    UDFlip,
};
constexpr std::size_t kOperatorCount = 8;
constexpr std::array<OperatorKind, kOperatorCount> kOperatorPriority = {
    OperatorKind::Occlusion,     OperatorKind::UniformScaling, OperatorKind::Warping,
    OperatorKind::PiecewiseNorm, OperatorKind::LinearTrend,    OperatorKind::Smoothing,
    OperatorKind::LRFlip,        OperatorKind::UDFlip,
};

std::string operator_kind_name(OperatorKind kind);
std::optional<OperatorKind> operator_kind_from_name(const std::string& name);

enum class OcclusionSubkind { Noise, Spike, Dropout };
std::string occlusion_subkind_name(OcclusionSubkind k);

/// Signed percent; +9 means the anomaly matches when lengthened 9 percent,
/// a negative value means it matches when shortened (the neighbor was
/// stretched instead).
struct ScalingParams {
    double percent = 0.0;
};
struct OcclusionParams {
    std::size_t location = 0;  // window-relative
    std::size_t length = 0;
    OcclusionSubkind subkind = OcclusionSubkind::Noise;
};
struct WarpParams {
    std::size_t band = 0;
    std::size_t max_deviation = 0;
    std::size_t path_length = 0;
};
struct SmoothingParams {
    std::size_t window = 3;
};
struct FlipParams {};
struct TrendParams {
    double slope = 0.0;       // raw units per sample
    double rise_sigma = 0.0;  // total rise over the window in units of sigma(A)
};
struct SplitParams {
    std::size_t split_index = 0;  // last index of the left segment
};

using OperatorParams = std::variant<ScalingParams, OcclusionParams, WarpParams, SmoothingParams,
                                    FlipParams, TrendParams, SplitParams>;

/// One operator's best parameterization. `transformed` is the post-operator
/// series; absent for Occlusion and Warping, which modify the distance
/// rather than the series.
struct OperatorResult {
    OperatorKind kind = OperatorKind::Occlusion;
    double improvement = 0.0;
    OperatorParams params;
    std::optional<TimeSeries> transformed;
};

/// Search bounds and the enable list for the operator suite.
struct OperatorConfig {
    double scaling_min = 0.80;  // shortest admissible anomaly rescale
    double scaling_max = 1.20;  // longest admissible anomaly rescale
    double dtw_band_frac = 0.10;
    std::size_t smoothing_window = 3;
    std::size_t pnd_min_seg = 3;
    std::array<bool, kOperatorCount> enabled = {true, true, true, true, true, true, true, true};

    bool is_enabled(OperatorKind k) const { return enabled[static_cast<std::size_t>(k)]; }
    void set_enabled(OperatorKind k, bool on) { enabled[static_cast<std::size_t>(k)] = on; }
    std::size_t enabled_count() const;
    void validate() const;  // throws std::invalid_argument on out-of-range bounds
};

/// Raw involutions used by the flip operators.
TimeSeries reverse_series(const TimeSeries& s);
TimeSeries negate_series(const TimeSeries& s);

// Every operator shares the signature (anomaly A, nearest neighbor T_N,
// config) and reports improvement = post-operator distance / znorm ED(A, T_N).
// All throw std::domain_error when that denominator is zero.
OperatorResult op_uniform_scaling(const TimeSeries& anomaly, const TimeSeries& neighbor,
                                  const OperatorConfig& cfg);
OperatorResult op_occlusion(const TimeSeries& anomaly, const TimeSeries& neighbor,
                            const OperatorConfig& cfg);
OperatorResult op_warping(const TimeSeries& anomaly, const TimeSeries& neighbor,
                          const OperatorConfig& cfg);
OperatorResult op_smoothing(const TimeSeries& anomaly, const TimeSeries& neighbor,
                            const OperatorConfig& cfg);
OperatorResult op_lr_flip(const TimeSeries& anomaly, const TimeSeries& neighbor,
                          const OperatorConfig& cfg);
OperatorResult op_ud_flip(const TimeSeries& anomaly, const TimeSeries& neighbor,
                          const OperatorConfig& cfg);
OperatorResult op_linear_trend(const TimeSeries& anomaly, const TimeSeries& neighbor,
                               const OperatorConfig& cfg);
OperatorResult op_piecewise_norm(const TimeSeries& anomaly, const TimeSeries& neighbor,
                                 const OperatorConfig& cfg);

OperatorResult run_operator(OperatorKind kind, const TimeSeries& anomaly,
                            const TimeSeries& neighbor, const OperatorConfig& cfg);

/// Every enabled operator, evaluated in priority order.
std::vector<OperatorResult> run_suite(const TimeSeries& anomaly, const TimeSeries& neighbor,
                                      const OperatorConfig& cfg);

}  // namespace tsexplain
