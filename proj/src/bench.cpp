#include "tsexplain/bench.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "tsexplain/metrics.hpp"

namespace tsexplain {

namespace {

std::uint64_t stream_seed(std::uint64_t master, std::uint64_t stream) {
    return mix_seed(master ^ mix_seed(stream + 1));
}

std::size_t kind_index(CorruptionKind k) { return static_cast<std::size_t>(k); }

}  // namespace

RecoveryReport occlusion_recovery_bench(const std::vector<TimeSeries>& exemplars,
                                        std::size_t trials, double magnitude_lo,
                                        double magnitude_hi, std::uint64_t seed) {
    if (exemplars.size() < 2) {
        throw std::invalid_argument("recovery bench: need at least 2 exemplars");
    }
    const std::size_t m = exemplars.front().size();
    if (m < 8) {
        throw std::invalid_argument("recovery bench: exemplars too short");
    }
    for (const TimeSeries& e : exemplars) {
        if (e.size() != m) {
            throw std::invalid_argument("recovery bench: exemplar lengths differ");
        }
    }
    if (trials < 1) {
        throw std::invalid_argument("recovery bench: trials must be >= 1");
    }

    // The study runs on z-normalized exemplars: corruption magnitudes are in
    // exemplar-sigma units, which are absolute units after normalization, and
    // the corrupted series is deliberately not re-normalized (re-normalizing
    // would rescale the clean remainder by the corruption's own energy).
    std::vector<std::vector<double>> normed;
    normed.reserve(exemplars.size());
    for (const TimeSeries& e : exemplars) {
        normed.push_back(znormalize(e.span()));
    }

    RecoveryReport rep;
    rep.trials = trials;
    std::size_t loc_ok = 0;
    std::size_t len_ok = 0;
    std::size_t zero_small = 0;

    for (std::size_t t = 0; t < trials; ++t) {
        Rng rng(stream_seed(seed, t));
        const std::size_t host_idx =
            static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(normed.size()) - 1));
        const int kind = static_cast<int>(rng.uniform_int(0, 2));  // 0 noise, 1 spike, 2 dropout
        const std::size_t loc =
            static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(m / 2) - 1));
        const std::size_t len =
            static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(m / 4)));
        const double magnitude = rng.uniform(magnitude_lo, magnitude_hi);

        std::vector<double> corrupted = normed[host_idx];
        for (std::size_t k = 0; k < len; ++k) {
            double& x = corrupted[loc + k];
            if (kind == 0) {
                x += rng.normal(0.0, magnitude);
            } else if (kind == 1) {
                x += magnitude;
            } else {
                x -= magnitude;
            }
        }

        // Non-self nearest neighbor of the corrupted series.
        std::size_t best_j = normed.size();
        double best_d = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < normed.size(); ++j) {
            if (j == host_idx) {
                continue;
            }
            const double d = euclidean(corrupted, normed[j]);
            if (d < best_d) {
                best_d = d;
                best_j = j;
            }
        }

        const OcclusionResult r = oed(normed[best_j], corrupted);

        const long len_err = static_cast<long>(r.length) - static_cast<long>(len);
        rep.length_error_hist[len_err]++;
        if (std::labs(len_err) <= 3) {
            ++len_ok;
        }
        if (len == 0) {
            ++rep.zero_length_trials;
            if (r.length <= 2) {
                ++zero_small;
            }
        } else {
            ++rep.nonzero_length_trials;
            const long loc_err = static_cast<long>(r.location) - static_cast<long>(loc);
            rep.location_error_hist[loc_err]++;
            if (std::labs(loc_err) <= 3) {
                ++loc_ok;
            }
        }
    }

    rep.location_within3 = rep.nonzero_length_trials == 0
                               ? 1.0
                               : static_cast<double>(loc_ok) /
                                     static_cast<double>(rep.nonzero_length_trials);
    rep.length_within3 = static_cast<double>(len_ok) / static_cast<double>(trials);
    rep.zero_length_small = rep.zero_length_trials == 0
                                ? 1.0
                                : static_cast<double>(zero_small) /
                                      static_cast<double>(rep.zero_length_trials);
    return rep;
}

void BenchConfig::validate() const {
    if (window < 8) {
        throw std::invalid_argument("bench: window must be >= 8");
    }
    if (n_train < 2 * window + 10) {
        throw std::invalid_argument("bench: training region too short for the window");
    }
    if (n <= n_train + 2 * window) {
        throw std::invalid_argument("bench: test region too short");
    }
    if (trials_per_class < 1) {
        throw std::invalid_argument("bench: trials_per_class must be >= 1");
    }
    if (classes.empty()) {
        throw std::invalid_argument("bench: no corruption classes configured");
    }
    if (!(magnitude_lo > 0.0 && magnitude_hi >= magnitude_lo)) {
        throw std::invalid_argument("bench: bad magnitude range");
    }
    if (workers < 1) {
        throw std::invalid_argument("bench: workers must be >= 1");
    }
    for (const TimeSeries& s : sources) {
        if (s.size() < n) {
            throw std::invalid_argument("bench: source series shorter than n");
        }
    }
    explain.operators.validate();
}

CorruptionKind explained_label(const OperatorResult& best) {
    switch (best.kind) {
        case OperatorKind::Occlusion: {
            const auto& p = std::get<OcclusionParams>(best.params);
            switch (p.subkind) {
                case OcclusionSubkind::Spike: return CorruptionKind::Spike;
                case OcclusionSubkind::Dropout: return CorruptionKind::Dropout;
                case OcclusionSubkind::Noise: return CorruptionKind::NoisyRegion;
            }
            return CorruptionKind::NoisyRegion;
        }
        case OperatorKind::Smoothing: return CorruptionKind::NoisyGlobal;
        case OperatorKind::LRFlip: return CorruptionKind::LRFlip;
        case OperatorKind::UDFlip: return CorruptionKind::UDFlip;
        case OperatorKind::UniformScaling: return CorruptionKind::UniformScale;
        case OperatorKind::PiecewiseNorm: return CorruptionKind::Step;
        case OperatorKind::LinearTrend: return CorruptionKind::LinearTrend;
        case OperatorKind::Warping: return CorruptionKind::Warp;
    }
    return CorruptionKind::NoisyRegion;
}

namespace {

struct TrialOutcome {
    bool detected = false;
    CorruptionKind label = CorruptionKind::Spike;  // valid only when detected
};

TrialOutcome run_trial(const BenchConfig& cfg, std::size_t class_idx, std::size_t trial_idx) {
    const CorruptionKind kind = cfg.classes[class_idx];
    const std::uint64_t stream =
        static_cast<std::uint64_t>(class_idx) * cfg.trials_per_class + trial_idx;
    Rng rng(stream_seed(cfg.seed, stream));

    // Source series: synthetic per trial, or a random slice of a user source.
    TimeSeries series;
    if (cfg.sources.empty()) {
        SynthSpec sspec;
        sspec.length = cfg.n;
        // A few cycles per window keeps segment means phase-stable.
        sspec.period = rng.uniform(0.30, 0.50) * static_cast<double>(cfg.window);
        sspec.harmonic2 = rng.uniform(0.2, 0.4);
        series = synth_series(sspec, rng);
    } else {
        const std::size_t src = static_cast<std::size_t>(
            rng.uniform_int(0, static_cast<std::int64_t>(cfg.sources.size()) - 1));
        const std::size_t max_off = cfg.sources[src].size() - cfg.n;
        const std::size_t off = max_off == 0
                                    ? 0
                                    : static_cast<std::size_t>(rng.uniform_int(
                                          0, static_cast<std::int64_t>(max_off)));
        series = cfg.sources[src].slice(off, cfg.n);
    }

    const std::size_t m = cfg.window;
    const TimeSeries train = series.slice(0, cfg.n_train);
    const TimeSeries clean_test = series.slice(cfg.n_train, cfg.n - cfg.n_train);

    // Injection spec for this trial's class.
    CorruptionSpec spec;
    spec.kind = kind;
    spec.seed = rng.next_u64();
    std::size_t region = cfg.region_length == 0 ? m : cfg.region_length;
    switch (kind) {
        case CorruptionKind::Spike: {
            spec.length = 1;
            const double lo = std::max(4.0, cfg.magnitude_lo);
            spec.magnitude = rng.uniform(lo, std::max(lo, cfg.magnitude_hi));
            break;
        }
        case CorruptionKind::NoisyRegion:
            region = std::max<std::size_t>(4, region / 3);
            spec.length = region;
            spec.magnitude = rng.uniform(cfg.noise_magnitude_lo, cfg.noise_magnitude_hi);
            break;
        case CorruptionKind::NoisyGlobal:
            spec.length = region;
            spec.magnitude = rng.uniform(cfg.noise_magnitude_lo, cfg.noise_magnitude_hi);
            break;
        case CorruptionKind::Warp: {
            spec.length = region;
            const double disp = rng.uniform(cfg.warp_displacement_lo, cfg.warp_displacement_hi) *
                                static_cast<double>(m);
            spec.magnitude = std::max(1.0, std::round(disp));
            break;
        }
        case CorruptionKind::UniformScale:
        case CorruptionKind::LRFlip:
        case CorruptionKind::UDFlip:
            spec.length = region;
            spec.magnitude = rng.uniform(cfg.magnitude_lo, cfg.magnitude_hi);
            break;
        case CorruptionKind::Step:
        case CorruptionKind::LinearTrend:
        case CorruptionKind::Dropout:
            spec.length = region;
            spec.magnitude = rng.uniform(cfg.magnitude_lo, cfg.magnitude_hi);
            break;
    }

    // Admissible start in the test region, in absolute coordinates
    // (n_train, n - m]; UniformScale additionally needs its source span.
    const std::size_t n_test = clean_test.size();
    std::size_t max_start = n_test - std::max(spec.length, m);
    if (kind == CorruptionKind::UniformScale) {
        const std::size_t span =
            static_cast<std::size_t>(std::llround(1.20 * static_cast<double>(spec.length)));
        max_start = n_test - span;
    }
    spec.location = static_cast<std::size_t>(
        rng.uniform_int(1, static_cast<std::int64_t>(max_start)));

    auto [test, truth] = corrupt(clean_test, spec);

    const double threshold = train_threshold(train, m, cfg.threshold_mode);
    const std::vector<AnomalyCandidate> candidates =
        find_anomalies(test, train, m, threshold, m);

    // Detection succeeds when a candidate window overlaps the injected region.
    const std::size_t inj_lo = truth.location;
    const std::size_t inj_hi = truth.location + truth.length;
    const AnomalyCandidate* pick = nullptr;
    for (const AnomalyCandidate& c : candidates) {
        if (c.location < inj_hi && inj_lo < c.location + m) {
            if (pick == nullptr || c.score > pick->score) {
                pick = &c;
            }
        }
    }
    TrialOutcome outcome;
    if (pick == nullptr) {
        return outcome;
    }
    const Explanation e =
        explain(pick->window, pick->location, train, cfg.explain, std::nullopt);
    outcome.detected = true;
    outcome.label = explained_label(e.best);
    return outcome;
}

}  // namespace

BenchReport run_benchmark(const BenchConfig& cfg) {
    cfg.validate();
    const std::size_t n_classes = cfg.classes.size();
    const std::size_t total = n_classes * cfg.trials_per_class;
    std::vector<TrialOutcome> outcomes(total);

    auto work = [&](std::size_t worker) {
        for (std::size_t t = worker; t < total; t += cfg.workers) {
            outcomes[t] = run_trial(cfg, t / cfg.trials_per_class, t % cfg.trials_per_class);
        }
    };
    if (cfg.workers <= 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(cfg.workers);
        for (std::size_t w = 0; w < cfg.workers; ++w) {
            pool.emplace_back(work, w);
        }
        for (std::thread& th : pool) {
            th.join();
        }
    }

    BenchReport rep;
    rep.classes = cfg.classes;
    rep.trials_per_class = cfg.trials_per_class;
    rep.seed = cfg.seed;
    rep.confusion.assign(kCorruptionKindCount,
                         std::vector<std::size_t>(kCorruptionKindCount, 0));
    rep.misses_per_class.assign(n_classes, 0);

    std::size_t correct = 0;
    std::vector<std::size_t> class_detected(n_classes, 0);
    std::vector<std::size_t> class_correct(n_classes, 0);
    for (std::size_t t = 0; t < total; ++t) {
        const std::size_t c = t / cfg.trials_per_class;
        if (!outcomes[t].detected) {
            ++rep.misses_per_class[c];
            ++rep.missed;
            continue;
        }
        ++rep.detected;
        ++class_detected[c];
        rep.confusion[kind_index(cfg.classes[c])][kind_index(outcomes[t].label)]++;
        if (outcomes[t].label == cfg.classes[c]) {
            ++correct;
            ++class_correct[c];
        }
    }
    rep.per_class_accuracy.assign(n_classes, 0.0);
    for (std::size_t c = 0; c < n_classes; ++c) {
        rep.per_class_accuracy[c] =
            class_detected[c] == 0 ? 0.0
                                   : static_cast<double>(class_correct[c]) /
                                         static_cast<double>(class_detected[c]);
    }
    rep.overall_accuracy =
        rep.detected == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(rep.detected);
    rep.detection_rate = static_cast<double>(rep.detected) / static_cast<double>(total);
    return rep;
}

std::string format_confusion_table(const BenchReport& report) {
    // Columns: kinds that received at least one count, plus every class.
    std::vector<bool> col_used(kCorruptionKindCount, false);
    for (CorruptionKind c : report.classes) {
        col_used[kind_index(c)] = true;
    }
    for (const auto& row : report.confusion) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (row[j] > 0) {
                col_used[j] = true;
            }
        }
    }
    std::vector<std::size_t> cols;
    for (std::size_t j = 0; j < kCorruptionKindCount; ++j) {
        if (col_used[j]) {
            cols.push_back(j);
        }
    }

    std::ostringstream os;
    os << "injected\\explained";
    for (std::size_t j : cols) {
        os << '\t' << corruption_kind_name(kAllCorruptionKinds[j]);
    }
    os << "\tmissed\n";
    for (std::size_t c = 0; c < report.classes.size(); ++c) {
        const std::size_t row = kind_index(report.classes[c]);
        os << corruption_kind_name(report.classes[c]);
        for (std::size_t j : cols) {
            os << '\t' << report.confusion[row][j];
        }
        os << '\t' << report.misses_per_class[c] << '\n';
    }
    os << "detected\t" << report.detected << "\nmissed\t" << report.missed
       << "\ndetection_rate\t" << report.detection_rate << "\noverall_accuracy\t"
       << report.overall_accuracy << '\n';
    return os.str();
}

}  // namespace tsexplain
