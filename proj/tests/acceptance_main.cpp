// Acceptance suite: one pass/fail line per criterion. Run with no arguments
// for all criteria, or with a criterion number (1..8) for one.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "tsexplain/bench.hpp"
#include "tsexplain/corrupt.hpp"
#include "tsexplain/detect.hpp"
#include "tsexplain/explain.hpp"
#include "tsexplain/json_io.hpp"
#include "tsexplain/metrics.hpp"
#include "tsexplain/rng.hpp"

using namespace tsexplain;

namespace {

std::vector<double> random_series(Rng& rng, std::size_t n) {
    std::vector<double> v(n);
    for (double& x : v) {
        x = rng.normal(0.0, 1.0);
    }
    return v;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---------------------------------------------------------------- criterion 1

bool criterion_oracle_exactness(std::string& detail) {
    const auto t0 = std::chrono::steady_clock::now();
    Rng rng(20240811);
    std::size_t checked = 0;

    // left matrix profile
    for (int rep = 0; rep < 1000; ++rep) {
        const std::size_t m = static_cast<std::size_t>(rng.uniform_int(4, 32));
        const std::size_t n = rep % 50 == 0
                                  ? 512
                                  : static_cast<std::size_t>(
                                        rng.uniform_int(static_cast<int>(2 * m + 4), 256));
        const auto v = random_series(rng, n);
        const auto naive = oracle::left_mp(v, m, m);
        const MatrixProfile mp = left_matrix_profile(v, m, m);
        for (std::size_t i = 0; i < naive.size(); ++i) {
            if (mp.distances[i] != naive[i].distance || mp.indices[i] != naive[i].index) {
                detail = "left_matrix_profile mismatch at rep " + std::to_string(rep);
                return false;
            }
        }
        ++checked;
    }

    // nn_search
    for (int rep = 0; rep < 1000; ++rep) {
        const std::size_t m = static_cast<std::size_t>(rng.uniform_int(2, 32));
        const std::size_t n =
            static_cast<std::size_t>(rng.uniform_int(static_cast<int>(m), 512));
        const auto q = random_series(rng, m);
        const auto t = random_series(rng, n);
        const auto [oi, od] = oracle::nn_scan(q, t);
        const NnResult r = nn_search(q, t);
        if (r.location != oi || r.distance != od) {
            detail = "nn_search mismatch at rep " + std::to_string(rep);
            return false;
        }
        ++checked;
    }

    // oed (full surface argmin)
    for (int rep = 0; rep < 1000; ++rep) {
        const std::size_t n = rep % 100 == 0
                                  ? 128
                                  : static_cast<std::size_t>(rng.uniform_int(8, 96));
        const auto t = random_series(rng, n);
        const auto a = random_series(rng, n);
        const auto surf = oracle::oed(t, a);
        const OcclusionResult r = oed(t, a);
        if (r.distance != surf.distance || r.location != surf.location ||
            r.length != surf.length) {
            detail = "oed mismatch at rep " + std::to_string(rep);
            return false;
        }
        ++checked;
    }

    // pnd
    for (int rep = 0; rep < 1000; ++rep) {
        const std::size_t n = static_cast<std::size_t>(rng.uniform_int(8, 256));
        const auto a = random_series(rng, n);
        const auto b = random_series(rng, n);
        const auto [oi, od] = oracle::pnd(a, b, 3);
        const SplitResult r = pnd(a, b, 3);
        if (r.split_index != oi || r.distance != od) {
            detail = "pnd mismatch at rep " + std::to_string(rep);
            return false;
        }
        ++checked;
    }

    // dtw (distance and path)
    for (int rep = 0; rep < 1000; ++rep) {
        const std::size_t n = rep % 100 == 0
                                  ? 512
                                  : static_cast<std::size_t>(rng.uniform_int(8, 160));
        const std::size_t band =
            static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(n)));
        const auto a = random_series(rng, n);
        const auto b = random_series(rng, n);
        const auto naive = oracle::dtw(a, b, band);
        const WarpResult w = dtw(a, b, band);
        if (w.distance != naive.distance || w.path != naive.path) {
            detail = "dtw mismatch at rep " + std::to_string(rep);
            return false;
        }
        ++checked;
    }

    const double elapsed = seconds_since(t0);
    detail = std::to_string(checked) + " instances, " + std::to_string(elapsed) + " s";
    return elapsed < 120.0;
}

// ---------------------------------------------------------------- criterion 2

bool criterion_dtw_dominance(std::string& detail) {
    Rng rng(7);
    std::size_t violations = 0;
    for (int rep = 0; rep < 1000; ++rep) {
        const std::size_t n = static_cast<std::size_t>(rng.uniform_int(4, 128));
        const std::size_t band =
            static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(n)));
        const auto a = znormalize(random_series(rng, n));
        const auto b = znormalize(random_series(rng, n));
        if (dtw(a, b, band).distance > znorm_euclidean(a, b)) {
            ++violations;
        }
    }
    detail = std::to_string(violations) + " violations over 1000 pairs";
    return violations == 0;
}

// ---------------------------------------------------------------- criterion 3

bool criterion_threshold_arithmetic(std::string& detail) {
    std::vector<double> population;
    for (int i = 0; i < 5; ++i) {
        population.push_back(2.105 - 0.114);
        population.push_back(2.105 + 0.114);
    }
    const double got = threshold_from_distances(population, ThresholdMode::MuSigma);
    detail = "threshold " + std::to_string(got) + " (want 2.447 +- 0.001)";
    return std::abs(got - 2.447) <= 0.001;
}

// ---------------------------------------------------------------- criterion 4

bool criterion_occlusion_recovery(std::string& detail) {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<TimeSeries> exemplars;
    for (std::uint64_t k = 0; k < 12; ++k) {
        Rng rng(4000 + k);
        SynthSpec spec;
        spec.length = 128;
        spec.period = rng.uniform(28.0, 44.0);
        spec.noise_std = 0.01;
        spec.phase_jitter = 0.004;
        exemplars.push_back(synth_series(spec, rng));
    }
    const RecoveryReport rep = occlusion_recovery_bench(exemplars, 200, 4.0, 6.0, 99);
    const double elapsed = seconds_since(t0);
    std::ostringstream os;
    os << "loc_within3 " << rep.location_within3 << " (>=0.90), len_within3 "
       << rep.length_within3 << " (>=0.85), zero_len<=2 " << rep.zero_length_small
       << " (>=0.80), " << elapsed << " s";
    detail = os.str();
    return rep.location_within3 >= 0.90 && rep.length_within3 >= 0.85 &&
           rep.zero_length_small >= 0.80 && elapsed < 300.0;
}

// ---------------------------------------------------------------- criterion 5

bool criterion_confusion_matrix(std::string& detail) {
    const auto t0 = std::chrono::steady_clock::now();
    BenchConfig cfg;  // defaults: 8 classes x 50 trials, synthetic sources
    const BenchReport rep = run_benchmark(cfg);
    const double elapsed = seconds_since(t0);

    // The two most frequent off-diagonal confusions.
    struct Cell {
        CorruptionKind from;
        CorruptionKind to;
        std::size_t count;
    };
    std::vector<Cell> cells;
    for (CorruptionKind from : rep.classes) {
        for (std::size_t j = 0; j < kCorruptionKindCount; ++j) {
            const CorruptionKind to = kAllCorruptionKinds[j];
            if (to == from) {
                continue;
            }
            const std::size_t c = rep.confusion[static_cast<std::size_t>(from)][j];
            if (c > 0) {
                cells.push_back({from, to, c});
            }
        }
    }
    std::sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) {
        return a.count > b.count;
    });
    auto mandated = [](const Cell& c) {
        return (c.from == CorruptionKind::Warp && c.to == CorruptionKind::UniformScale) ||
               (c.from == CorruptionKind::Step && c.to == CorruptionKind::LinearTrend);
    };
    bool top2_ok = true;
    std::string top2_text;
    for (std::size_t i = 0; i < cells.size() && i < 2; ++i) {
        top2_ok = top2_ok && mandated(cells[i]);
        top2_text += corruption_kind_name(cells[i].from) + "->" +
                     corruption_kind_name(cells[i].to) + "(" +
                     std::to_string(cells[i].count) + ") ";
    }

    std::ostringstream os;
    os << "accuracy " << rep.overall_accuracy << " (>=0.70), detection " << rep.detection_rate
       << " (>=0.75), top confusions " << (top2_text.empty() ? "none " : top2_text) << "("
       << elapsed << " s)";
    detail = os.str();
    return rep.overall_accuracy >= 0.70 && rep.detection_rate >= 0.75 && top2_ok &&
           elapsed < 900.0;
}

// ---------------------------------------------------------------- criterion 6

bool criterion_ratio_spot_checks(std::string& detail) {
    OperatorConfig cfg;
    std::ostringstream os;
    bool ok = true;

    // LR-flip corruption: dramatic improvement, like 0.54 / 17.6.
    {
        Rng rng(61);
        SynthSpec spec;
        spec.length = 128;
        spec.period = 36.0;
        const TimeSeries neighbor = synth_series(spec, rng);
        const TimeSeries anomaly = reverse_series(neighbor);
        const double i = op_lr_flip(anomaly, neighbor, cfg).improvement;
        os << "lr_flip I " << i << " (<0.05)";
        ok = ok && i < 0.05;
    }
    // UD-flip corruption, like 1.95 / 23.27.
    {
        Rng rng(62);
        SynthSpec spec;
        spec.length = 128;
        spec.period = 30.0;
        const TimeSeries neighbor = synth_series(spec, rng);
        const TimeSeries anomaly = negate_series(neighbor);
        const double i = op_ud_flip(anomaly, neighbor, cfg).improvement;
        os << ", ud_flip I " << i << " (<0.15)";
        ok = ok && i < 0.15;
    }
    // Identity-direction bounds on a near-identical pair.
    {
        Rng rng(63);
        SynthSpec spec;
        spec.length = 96;
        spec.period = 32.0;
        const TimeSeries neighbor = synth_series(spec, rng);
        TimeSeries anomaly = neighbor;
        Rng jitter(64);
        for (double& x : anomaly.values) {
            x += jitter.normal(0.0, 1e-7);
        }
        const double i_scale = op_uniform_scaling(anomaly, neighbor, cfg).improvement;
        const double i_occl = op_occlusion(anomaly, neighbor, cfg).improvement;
        const double i_trend = op_linear_trend(anomaly, neighbor, cfg).improvement;
        const double i_smooth = op_smoothing(anomaly, neighbor, cfg).improvement;
        os << ", identity: scaling " << i_scale << " occl " << i_occl << " trend " << i_trend
           << " smooth " << i_smooth;
        ok = ok && i_scale <= 1.0 && i_occl <= 1.0 && i_trend <= 1.0 && i_smooth > 0.8 &&
             i_smooth < 1.2;
    }
    detail = os.str();
    return ok;
}

// ---------------------------------------------------------------- criterion 7

bool criterion_worker_determinism(std::string& detail) {
    BenchConfig cfg;
    cfg.n = 900;
    cfg.n_train = 320;
    cfg.window = 48;
    cfg.trials_per_class = 5;
    cfg.seed = 20240812;
    cfg.workers = 1;
    const std::string a = to_json(run_benchmark(cfg)).dump(2);
    cfg.workers = 3;
    const std::string b = to_json(run_benchmark(cfg)).dump(2);
    detail = a == b ? "reports byte-identical across workers 1 and 3"
                    : "reports differ between workers 1 and 3";
    return a == b;
}

// ---------------------------------------------------------------- criterion 8

bool params_equal(const OperatorResult& a, const OperatorResult& b) {
    if (a.kind != b.kind) {
        return false;
    }
    auto close = [](double x, double y) {
        const double scale = std::max({std::abs(x), std::abs(y), 1e-12});
        return std::abs(x - y) <= 1e-6 * scale;
    };
    switch (a.kind) {
        case OperatorKind::UniformScaling:
            return std::get<ScalingParams>(a.params).percent ==
                   std::get<ScalingParams>(b.params).percent;
        case OperatorKind::Occlusion: {
            const auto& pa = std::get<OcclusionParams>(a.params);
            const auto& pb = std::get<OcclusionParams>(b.params);
            return pa.location == pb.location && pa.length == pb.length &&
                   pa.subkind == pb.subkind;
        }
        case OperatorKind::Warping: {
            const auto& pa = std::get<WarpParams>(a.params);
            const auto& pb = std::get<WarpParams>(b.params);
            return pa.band == pb.band && pa.max_deviation == pb.max_deviation &&
                   pa.path_length == pb.path_length;
        }
        case OperatorKind::Smoothing:
            return std::get<SmoothingParams>(a.params).window ==
                   std::get<SmoothingParams>(b.params).window;
        case OperatorKind::LinearTrend:
            return close(std::get<TrendParams>(a.params).rise_sigma,
                         std::get<TrendParams>(b.params).rise_sigma);
        case OperatorKind::PiecewiseNorm:
            return std::get<SplitParams>(a.params).split_index ==
                   std::get<SplitParams>(b.params).split_index;
        case OperatorKind::LRFlip:
        case OperatorKind::UDFlip:
            return true;
    }
    return false;
}

bool criterion_argmax_invariance(std::string& detail) {
    const std::vector<CorruptionKind> classes = {
        CorruptionKind::Spike,  CorruptionKind::Dropout,     CorruptionKind::NoisyGlobal,
        CorruptionKind::LRFlip, CorruptionKind::UDFlip,      CorruptionKind::UniformScale,
        CorruptionKind::Step,   CorruptionKind::LinearTrend, CorruptionKind::Warp,
    };
    ExplainConfig cfg;
    std::size_t mismatches = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        Rng rng(9000 + seed);
        SynthSpec spec;
        spec.length = 760;
        spec.period = rng.uniform(26.0, 40.0);
        const TimeSeries train = synth_series(spec, rng);
        TimeSeries window = train.slice(350, 64);

        CorruptionSpec cspec;
        cspec.kind = classes[seed % classes.size()];
        cspec.seed = rng.next_u64();
        cspec.location = 0;
        cspec.length = 64;
        cspec.magnitude = rng.uniform(3.5, 6.0);
        if (cspec.kind == CorruptionKind::Spike) {
            cspec.location = 20;
            cspec.length = 1;
        } else if (cspec.kind == CorruptionKind::Dropout) {
            cspec.location = 18;
            cspec.length = 20;
        } else if (cspec.kind == CorruptionKind::Warp) {
            cspec.magnitude = 4.0;
        } else if (cspec.kind == CorruptionKind::UniformScale) {
            // needs source span; corrupt a longer slice and cut the window
            TimeSeries wide = train.slice(350, 96);
            cspec.length = 64;
            auto [cw, tw] = corrupt(wide, cspec);
            window = cw.slice(0, 64);
        }
        if (cspec.kind != CorruptionKind::UniformScale) {
            auto [cw, tw] = corrupt(window, cspec);
            window = cw;
        }

        TimeSeries train_t = train;
        for (double& x : train_t.values) {
            x = 3.7 * x - 12.0;
        }
        TimeSeries window_t = window;
        for (double& x : window_t.values) {
            x = 3.7 * x - 12.0;
        }

        const Explanation a = explain(window, 350, train, cfg);
        const Explanation b = explain(window_t, 350, train_t, cfg);
        if (!params_equal(a.best, b.best)) {
            ++mismatches;
        }
    }
    detail = std::to_string(mismatches) + " mismatches over 100 cases";
    return mismatches == 0;
}

struct Criterion {
    int id;
    const char* name;
    std::function<bool(std::string&)> run;
};

}  // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> criteria = {
        {1, "oracle exactness (leftMP, nn_search, oed, pnd, dtw)", criterion_oracle_exactness},
        {2, "dtw <= znorm euclidean over 1000 pairs", criterion_dtw_dominance},
        {3, "mu+3sigma threshold arithmetic", criterion_threshold_arithmetic},
        {4, "occlusion recovery at desk scale", criterion_occlusion_recovery},
        {5, "confusion-matrix replication at desk scale", criterion_confusion_matrix},
        {6, "improvement-ratio spot checks", criterion_ratio_spot_checks},
        {7, "benchmark determinism across workers", criterion_worker_determinism},
        {8, "explanation invariance under scale and offset", criterion_argmax_invariance},
    };

    int only = 0;
    if (argc > 1) {
        only = std::atoi(argv[1]);
    }
    bool all_ok = true;
    for (const Criterion& c : criteria) {
        if (only != 0 && c.id != only) {
            continue;
        }
        std::string detail;
        const bool ok = c.run(detail);
        all_ok = all_ok && ok;
        std::printf("%s criterion %d: %s — %s\n", ok ? "PASS" : "FAIL", c.id, c.name,
                    detail.c_str());
        std::fflush(stdout);
    }
    return all_ok ? 0 : 1;
}
