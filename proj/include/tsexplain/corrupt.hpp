#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tsexplain/rng.hpp"
#include "tsexplain/series.hpp"

namespace tsexplain {

enum class CorruptionKind {
    Spike,
    Dropout,
    NoisyRegion,
    NoisyGlobal,
    LRFlip,
    UDFlip,
    UniformScale,
    Step,
    LinearTrend,
    Warp,
};
constexpr std::size_t kCorruptionKindCount = 10;
constexpr std::array<CorruptionKind, kCorruptionKindCount> kAllCorruptionKinds = {
    CorruptionKind::Spike,      CorruptionKind::Dropout,     CorruptionKind::NoisyRegion,
    CorruptionKind::NoisyGlobal, CorruptionKind::LRFlip,     CorruptionKind::UDFlip,
    CorruptionKind::UniformScale, CorruptionKind::Step,      CorruptionKind::LinearTrend,
    CorruptionKind::Warp,
};

std::string corruption_kind_name(CorruptionKind kind);
std::optional<CorruptionKind> corruption_kind_from_name(const std::string& name);

/// What to inject where. `magnitude` is in units of the host window's
/// standard deviation, except for Warp where it is the maximum index
/// displacement in samples. The affected region is [location,
/// location+length); Spike touches only `location`.
struct CorruptionSpec {
    CorruptionKind kind = CorruptionKind::Spike;
    std::size_t location = 0;
    std::size_t length = 1;
    double magnitude = 4.0;
    std::uint64_t seed = 0;
};

/// The benchmark label: what was actually done to the host.
struct GroundTruth {
    CorruptionKind kind = CorruptionKind::Spike;
    std::size_t location = 0;
    std::size_t length = 0;
    double magnitude = 0.0;
    double sigma = 0.0;                // host sigma the magnitude was scaled by
    double scale_factor = 1.0;         // UniformScale only
    std::size_t warp_displacement = 0; // Warp only
};

/// Applies the corruption. Deterministic given (host, spec). Throws
/// std::invalid_argument when the spec does not fit the host.
std::pair<TimeSeries, GroundTruth> corrupt(const TimeSeries& host, const CorruptionSpec& spec);

/// Quasi-periodic synthetic source: two harmonics with slow phase jitter,
/// mild amplitude modulation and a little observation noise. Anomaly-free by
/// construction.
struct SynthSpec {
    std::size_t length = 1200;
    double period = 64.0;
    double harmonic2 = 0.3;      // relative amplitude of the second harmonic
    double phase_jitter = 0.015; // radians per sample, random-walk increments
    double noise_std = 0.03;
};
TimeSeries synth_series(const SynthSpec& spec, Rng& rng);

}  // namespace tsexplain
