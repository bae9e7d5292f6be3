#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "tsexplain/corrupt.hpp"
#include "tsexplain/detect.hpp"
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

TimeSeries make_series(std::vector<double> v) {
    TimeSeries s;
    s.values = std::move(v);
    return s;
}

}  // namespace

TEST_SUITE_BEGIN("detect");

TEST_CASE("left profile peaks on an injected spike in a periodic series") {
    std::vector<double> v(512);
    for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] = std::sin(2.0 * 3.14159265358979 * static_cast<double>(i) / 32.0);
    }
    v[300] += 8.0;
    const MatrixProfile mp = left_matrix_profile(v, 16, 16);
    // Startup windows lack an in-phase left neighbor; judge the discord among
    // windows with at least two periods of left context.
    std::size_t argmax = 64;
    for (std::size_t i = 64; i < mp.distances.size(); ++i) {
        if (mp.distances[i] > mp.distances[argmax]) {
            argmax = i;
        }
    }
    CHECK(argmax <= 300);
    CHECK(argmax + 16 > 300);  // peak window covers the spike
}

TEST_CASE("two identical halves give near-zero second-half distances") {
    Rng rng(5);
    auto half = random_series(rng, 128);
    std::vector<double> v = half;
    v.insert(v.end(), half.begin(), half.end());
    const MatrixProfile mp = left_matrix_profile(v, 16, 16);
    for (std::size_t i = 128; i + 16 <= 256; ++i) {
        CHECK(mp.distances[i] == doctest::Approx(0.0).epsilon(1e-9));
        CHECK(mp.indices[i] == i - 128);
    }
}

TEST_CASE("left profile equals the naive oracle bit-for-bit") {
    Rng rng(7);
    for (int rep = 0; rep < 25; ++rep) {
        const auto m = static_cast<std::size_t>(rng.uniform_int(4, 16));
        const auto n = static_cast<std::size_t>(rng.uniform_int(2 * m + 4, 160));
        const auto v = random_series(rng, n);
        const auto naive = oracle::left_mp(v, m, m);
        const MatrixProfile mp = left_matrix_profile(v, m, m);
        REQUIRE(mp.distances.size() == naive.size());
        for (std::size_t i = 0; i < naive.size(); ++i) {
            REQUIRE(mp.distances[i] == naive[i].distance);
            REQUIRE(mp.indices[i] == naive[i].index);
        }
    }
}

TEST_CASE("profile neighbor indices respect the exclusion zone") {
    Rng rng(11);
    const auto v = random_series(rng, 200);
    const MatrixProfile mp = left_matrix_profile(v, 8, 8);
    for (std::size_t i = 0; i < mp.distances.size(); ++i) {
        if (std::isfinite(mp.distances[i])) {
            CHECK(mp.indices[i] + 8 <= i);
        } else {
            CHECK(mp.indices[i] == MatrixProfile::npos);
        }
    }
}

TEST_CASE("threshold arithmetic on a fixed distance population") {
    // Mean 2.105, population std 0.114.
    std::vector<double> dists;
    for (int i = 0; i < 5; ++i) {
        dists.push_back(2.105 - 0.114);
        dists.push_back(2.105 + 0.114);
    }
    CHECK(threshold_from_distances(dists, ThresholdMode::MuSigma) ==
          doctest::Approx(2.447).epsilon(1e-4));
    CHECK(threshold_from_distances(dists, ThresholdMode::MaxPlusSigma) ==
          doctest::Approx(2.105 + 0.114 + 0.114).epsilon(1e-9));
}

TEST_CASE("MaxPlusSigma of a constant population is that constant") {
    const std::vector<double> dists(12, 1.75);
    CHECK(threshold_from_distances(dists, ThresholdMode::MaxPlusSigma) == doctest::Approx(1.75));
}

TEST_CASE("threshold separates clean training windows from a spiked one") {
    Rng rng(13);
    SynthSpec spec;
    spec.length = 800;
    spec.period = 16.0;
    TimeSeries train = synth_series(spec, rng);
    const double threshold = train_threshold(train, 32, ThresholdMode::MuSigma);

    // Nearly every training window sits below mu + 3 sigma (the distance
    // distribution is right-skewed, so allow a few percent in the tail).
    const MatrixProfile mp = full_matrix_profile(train.span(), 32, 32);
    std::size_t above = 0;
    for (double d : mp.distances) {
        if (std::isfinite(d) && d > threshold) {
            ++above;
        }
    }
    CHECK(above <= mp.distances.size() * 3 / 100 + 1);

    // A 5-sigma spiked copy of a window lands above it.
    TimeSeries test = train.slice(100, 200);
    CorruptionSpec cspec;
    cspec.kind = CorruptionKind::Spike;
    cspec.location = 100;
    cspec.magnitude = 5.0;
    cspec.seed = 9;
    auto [spiked, truth] = corrupt(test, cspec);
    const auto candidates = find_anomalies(spiked, train, 32, threshold, 32);
    REQUIRE(!candidates.empty());
}

TEST_CASE("find_anomalies: clean test from the training process stays quiet") {
    // mu + 3 sigma flags a few-per-thousand of clean windows by construction,
    // so false-positive calibration uses the max-plus-sigma detection mode.
    std::size_t clean_runs = 0;
    const int trials = 40;
    for (int rep = 0; rep < trials; ++rep) {
        Rng rng(1000 + rep);
        SynthSpec spec;
        spec.length = 700;
        spec.period = 24.0;
        const TimeSeries s = synth_series(spec, rng);
        const TimeSeries train = s.slice(0, 400);
        const TimeSeries test = s.slice(400, 300);
        const double threshold = train_threshold(train, 24, ThresholdMode::MaxPlusSigma);
        if (find_anomalies(test, train, 24, threshold, 24).empty()) {
            ++clean_runs;
        }
    }
    CHECK(clean_runs >= trials * 95 / 100);
}

TEST_CASE("find_anomalies flags an injected corruption and merges the excursion") {
    Rng rng(17);
    SynthSpec spec;
    spec.length = 900;
    spec.period = 28.0;
    const TimeSeries s = synth_series(spec, rng);
    const TimeSeries train = s.slice(0, 400);
    TimeSeries test = s.slice(400, 500);

    CorruptionSpec cspec;
    cspec.kind = CorruptionKind::Dropout;
    cspec.location = 200;
    cspec.length = 28;
    cspec.magnitude = 4.0;
    cspec.seed = 3;
    auto [corrupted, truth] = corrupt(test, cspec);

    const double threshold = train_threshold(train, 28, ThresholdMode::MuSigma);
    const auto candidates = find_anomalies(corrupted, train, 28, threshold, 28);
    REQUIRE(candidates.size() == 1);
    CHECK(candidates[0].location < 228);
    CHECK(candidates[0].location + 28 > 200);
}

TEST_CASE("two distant anomalies give two candidates") {
    Rng rng(19);
    SynthSpec spec;
    spec.length = 1100;
    spec.period = 30.0;
    const TimeSeries s = synth_series(spec, rng);
    const TimeSeries train = s.slice(0, 400);
    TimeSeries test = s.slice(400, 700);

    CorruptionSpec one;
    one.kind = CorruptionKind::Spike;
    one.location = 150;
    one.magnitude = 6.0;
    one.seed = 4;
    auto [step1, t1] = corrupt(test, one);
    CorruptionSpec two;
    two.kind = CorruptionKind::Dropout;
    two.location = 500;
    two.length = 30;
    two.magnitude = 5.0;
    two.seed = 5;
    auto [both, t2] = corrupt(step1, two);

    const double threshold = train_threshold(train, 30, ThresholdMode::MaxPlusSigma);
    const auto candidates = find_anomalies(both, train, 30, threshold, 30);
    REQUIRE(candidates.size() == 2);
    CHECK(candidates[0].location < candidates[1].location);
}

TEST_CASE("raising the threshold never increases the candidate count") {
    Rng rng(23);
    SynthSpec spec;
    spec.length = 800;
    spec.period = 26.0;
    const TimeSeries s = synth_series(spec, rng);
    const TimeSeries train = s.slice(0, 350);
    TimeSeries test = s.slice(350, 450);
    CorruptionSpec cspec;
    cspec.kind = CorruptionKind::Step;
    cspec.location = 180;
    cspec.length = 26;
    cspec.magnitude = 5.0;
    cspec.seed = 6;
    auto [corrupted, truth] = corrupt(test, cspec);

    const double base = train_threshold(train, 26, ThresholdMode::MuSigma);
    std::size_t prev = find_anomalies(corrupted, train, 26, base * 0.5, 26).size();
    for (double f : {0.75, 1.0, 1.5, 2.5, 5.0}) {
        const std::size_t count = find_anomalies(corrupted, train, 26, base * f, 26).size();
        CHECK(count <= prev);
        prev = count;
    }
}

TEST_CASE("find_anomalies is deterministic") {
    Rng rng(29);
    SynthSpec spec;
    spec.length = 700;
    spec.period = 20.0;
    const TimeSeries s = synth_series(spec, rng);
    const TimeSeries train = s.slice(0, 300);
    TimeSeries test = s.slice(300, 400);
    test.values[200] += 5.0;
    const double threshold = train_threshold(train, 20, ThresholdMode::MuSigma);
    const auto a = find_anomalies(test, train, 20, threshold, 20);
    const auto b = find_anomalies(test, train, 20, threshold, 20);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].location == b[i].location);
        CHECK(a[i].score == b[i].score);
        CHECK(a[i].neighbor_location == b[i].neighbor_location);
        CHECK(a[i].neighbor_distance == b[i].neighbor_distance);
    }
}

TEST_CASE("profile rejects series shorter than two windows") {
    Rng rng(31);
    const auto v = random_series(rng, 20);
    CHECK_THROWS_AS(left_matrix_profile(v, 16, 16), std::invalid_argument);
    CHECK_THROWS_AS(left_matrix_profile(v, 3, 3), std::invalid_argument);
    CHECK(make_series(v).size() == 20);
}

TEST_SUITE_END();
