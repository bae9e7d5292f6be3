#include "tsexplain/corrupt.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tsexplain/metrics.hpp"

namespace tsexplain {

namespace {

constexpr double kPi = 3.14159265358979323846;

}  // namespace

std::string corruption_kind_name(CorruptionKind kind) {
    switch (kind) {
        case CorruptionKind::Spike: return "Spike";
        case CorruptionKind::Dropout: return "Dropout";
        case CorruptionKind::NoisyRegion: return "NoisyRegion";
        case CorruptionKind::NoisyGlobal: return "NoisyGlobal";
        case CorruptionKind::LRFlip: return "LRFlip";
        case CorruptionKind::UDFlip: return "UDFlip";
        case CorruptionKind::UniformScale: return "UniformScale";
        case CorruptionKind::Step: return "Step";
        case CorruptionKind::LinearTrend: return "LinearTrend";
        case CorruptionKind::Warp: return "Warp";
    }
    return "Unknown";
}

std::optional<CorruptionKind> corruption_kind_from_name(const std::string& name) {
    for (CorruptionKind k : kAllCorruptionKinds) {
        if (corruption_kind_name(k) == name) {
            return k;
        }
    }
    return std::nullopt;
}

std::pair<TimeSeries, GroundTruth> corrupt(const TimeSeries& host, const CorruptionSpec& spec) {
    const std::size_t n = host.size();
    const std::size_t len = spec.kind == CorruptionKind::Spike ? 1 : spec.length;
    if (len == 0 || spec.location + len > n) {
        throw std::invalid_argument("corrupt: region out of host bounds");
    }
    const std::size_t loc = spec.location;
    const double sigma = stddev_pop(host.span());  // magnitudes are in host-sigma units

    TimeSeries out = host;
    GroundTruth truth;
    truth.kind = spec.kind;
    truth.location = loc;
    truth.length = len;
    truth.magnitude = spec.magnitude;
    truth.sigma = sigma;

    Rng rng(spec.seed);
    auto region = [&](std::size_t k) -> double& { return out.values[loc + k]; };

    switch (spec.kind) {
        case CorruptionKind::Spike:
            out.values[loc] += spec.magnitude * sigma;
            break;
        case CorruptionKind::Dropout:
            for (std::size_t k = 0; k < len; ++k) {
                region(k) -= spec.magnitude * sigma;
            }
            break;
        case CorruptionKind::NoisyRegion:
        case CorruptionKind::NoisyGlobal:
            for (std::size_t k = 0; k < len; ++k) {
                region(k) += rng.normal(0.0, spec.magnitude * sigma);
            }
            break;
        case CorruptionKind::LRFlip:
            std::reverse(out.values.begin() + static_cast<std::ptrdiff_t>(loc),
                         out.values.begin() + static_cast<std::ptrdiff_t>(loc + len));
            break;
        case CorruptionKind::UDFlip: {
            const double mu = mean(host.span().subspan(loc, len));
            for (std::size_t k = 0; k < len; ++k) {
                region(k) = 2.0 * mu - region(k);
            }
            break;
        }
        case CorruptionKind::UniformScale: {
            if (len < 4) {
                throw std::invalid_argument("corrupt: UniformScale region too short");
            }
            const double frac = rng.uniform(0.05, 0.15);
            const double factor = rng.coin() ? 1.0 + frac : 1.0 - frac;
            const std::size_t source_len = std::max<std::size_t>(
                4, static_cast<std::size_t>(std::llround(factor * static_cast<double>(len))));
            if (loc + source_len > n) {
                throw std::invalid_argument("corrupt: UniformScale source exceeds host");
            }
            const std::vector<double> rescaled =
                resample(host.span().subspan(loc, source_len), len);
            for (std::size_t k = 0; k < len; ++k) {
                region(k) = rescaled[k];
            }
            truth.scale_factor = factor;
            break;
        }
        case CorruptionKind::Step:
            for (std::size_t k = len / 2; k < len; ++k) {
                region(k) += spec.magnitude * sigma;
            }
            break;
        case CorruptionKind::LinearTrend:
            for (std::size_t k = 0; k < len; ++k) {
                region(k) += spec.magnitude * sigma * static_cast<double>(k) /
                             static_cast<double>(len - 1);
            }
            break;
        case CorruptionKind::Warp: {
            if (len < 8) {
                throw std::invalid_argument("corrupt: Warp region too short");
            }
            // Full-cycle displacement (ahead then behind, or the reverse):
            // local timing shifts with zero net drift, like a short beat
            // followed by a long one. Monotone while d < (len-1)/(2*pi).
            const std::size_t d_max = (len - 1) / 7;
            const std::size_t d = std::min<std::size_t>(
                d_max, std::max<std::size_t>(
                           1, static_cast<std::size_t>(std::llround(spec.magnitude))));
            const double direction = rng.coin() ? 1.0 : -1.0;
            const std::vector<double> original(out.values.begin() + static_cast<std::ptrdiff_t>(loc),
                                               out.values.begin() +
                                                   static_cast<std::ptrdiff_t>(loc + len));
            const double span = static_cast<double>(len - 1);
            for (std::size_t k = 0; k < len; ++k) {
                const double pos = static_cast<double>(k) +
                                   direction * static_cast<double>(d) *
                                       std::sin(2.0 * kPi * static_cast<double>(k) / span);
                const double clamped = std::min(span, std::max(0.0, pos));
                const std::size_t lo = static_cast<std::size_t>(clamped);
                const double f = clamped - static_cast<double>(lo);
                region(k) = lo + 1 < len ? original[lo] + f * (original[lo + 1] - original[lo])
                                         : original[lo];
            }
            truth.warp_displacement = d;
            break;
        }
    }
    return {std::move(out), truth};
}

TimeSeries synth_series(const SynthSpec& spec, Rng& rng) {
    if (spec.length < 2 || !(spec.period > 2.0)) {
        throw std::invalid_argument("synth_series: bad spec");
    }
    TimeSeries out;
    out.values.resize(spec.length);
    const double w = 2.0 * kPi / spec.period;
    const double phase2 = rng.uniform(0.0, 2.0 * kPi);
    const double mod_phase = rng.uniform(0.0, 2.0 * kPi);
    const double mod_rate = 2.0 * kPi / (7.3 * spec.period);
    double phi = rng.uniform(0.0, 2.0 * kPi);
    for (std::size_t t = 0; t < spec.length; ++t) {
        phi += rng.normal(0.0, spec.phase_jitter);
        const double base = w * static_cast<double>(t) + phi;
        const double amp = 1.0 + 0.05 * std::sin(mod_rate * static_cast<double>(t) + mod_phase);
        out.values[t] = amp * (std::sin(base) + spec.harmonic2 * std::sin(2.0 * base + phase2)) +
                        rng.normal(0.0, spec.noise_std);
    }
    return out;
}

}  // namespace tsexplain
