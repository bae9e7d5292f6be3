#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tsexplain/corrupt.hpp"
#include "tsexplain/detect.hpp"
#include "tsexplain/explain.hpp"
#include "tsexplain/series.hpp"

namespace tsexplain {

/// Occlusion-recovery study: inject a region spike/dropout/noise of random
/// location and length into a random exemplar, then ask the occlusion grid
/// search to recover where and how long.
struct RecoveryReport {
    std::size_t trials = 0;
    std::size_t nonzero_length_trials = 0;
    std::size_t zero_length_trials = 0;
    /// Fraction of nonzero-length trials whose recovered location is within
    /// +-3 samples of the truth.
    double location_within3 = 0.0;
    /// Fraction of all trials whose recovered length is within +-3.
    double length_within3 = 0.0;
    /// Fraction of zero-length trials recovered as length <= 2.
    double zero_length_small = 0.0;
    std::map<long, std::size_t> location_error_hist;  // nonzero-length trials only
    std::map<long, std::size_t> length_error_hist;
};

/// Exemplars must share one length (>= 8) and there must be at least two of
/// them. Magnitudes are drawn uniformly from [magnitude_lo, magnitude_hi]
/// sigma-units of the host exemplar.
RecoveryReport occlusion_recovery_bench(const std::vector<TimeSeries>& exemplars,
                                        std::size_t trials, double magnitude_lo,
                                        double magnitude_hi, std::uint64_t seed);

/// End-to-end detect-then-explain study over synthetic quasi-periodic
/// sources (or user-supplied ones).
struct BenchConfig {
    std::size_t n = 1200;
    std::size_t n_train = 400;
    std::size_t window = 64;
    std::size_t trials_per_class = 50;
    std::vector<CorruptionKind> classes = {
        CorruptionKind::LRFlip,       CorruptionKind::LinearTrend,
        CorruptionKind::UniformScale, CorruptionKind::NoisyGlobal,
        CorruptionKind::UDFlip,       CorruptionKind::Step,
        CorruptionKind::Warp,         CorruptionKind::Spike,
    };
    double magnitude_lo = 3.0;
    double magnitude_hi = 6.0;
    double noise_magnitude_lo = 1.5;  // NoisyRegion/NoisyGlobal noise std, sigma-units
    double noise_magnitude_hi = 3.0;
    double warp_displacement_lo = 0.03;  // fraction of the window
    double warp_displacement_hi = 0.08;
    std::size_t region_length = 0;  // injected region length; 0 means = window
    ThresholdMode threshold_mode = ThresholdMode::MuSigma;
    ExplainConfig explain;
    std::uint64_t seed = 1;
    std::size_t workers = 1;
    /// Optional anomaly-free source series (each at least n long); when empty
    /// a fresh synthetic series is generated per trial.
    std::vector<TimeSeries> sources;

    void validate() const;
};

struct BenchReport {
    std::vector<CorruptionKind> classes;  // row order of the run
    /// Full kind-by-kind counts, rows = injected, columns = explained
    /// (indices follow kAllCorruptionKinds).
    std::vector<std::vector<std::size_t>> confusion;
    std::vector<std::size_t> misses_per_class;  // not detected
    std::size_t detected = 0;
    std::size_t missed = 0;
    std::vector<double> per_class_accuracy;  // correct / detected, per class row
    double overall_accuracy = 0.0;
    double detection_rate = 0.0;
    std::size_t trials_per_class = 0;
    std::uint64_t seed = 0;
};

BenchReport run_benchmark(const BenchConfig& cfg);

/// The label an explanation maps back to when tallying the confusion matrix.
CorruptionKind explained_label(const OperatorResult& best);

/// Table-style text rendering of the confusion matrix (rows: injected class,
/// columns: every kind that received at least one count).
std::string format_confusion_table(const BenchReport& report);

}  // namespace tsexplain
