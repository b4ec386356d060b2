#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "ure/errors.hpp"
#include "ure/random.hpp"
#include "ure/raster.hpp"

using ure::MetricKind;
using ure::RasterPair;

namespace {

// single-channel pair from foreground probabilities and a binary mask
RasterPair make_c1(int h, int w, std::vector<double> probs, std::vector<std::uint8_t> labels) {
    return RasterPair(h, w, 1, std::move(probs), std::move(labels));
}

} // namespace

TEST_CASE("metric kind parsing") {
    CHECK(ure::parse_metric_kind("f1") == MetricKind::F1);
    CHECK(ure::parse_metric_kind("Dice") == MetricKind::Dice);
    CHECK(ure::parse_metric_kind("pixel-accuracy") == MetricKind::PixelAccuracy);
    CHECK_THROWS_AS(ure::parse_metric_kind("iou"), ure::InputError);
}

TEST_CASE("dice: identical nonempty masks score 1") {
    const auto pair = make_c1(2, 2, {1.0, 0.0, 1.0, 0.0}, {1, 0, 1, 0});
    CHECK(ure::correctness_score(pair, MetricKind::Dice) == 1.0);
    CHECK(ure::correctness_score(pair, MetricKind::F1) == 1.0);
}

TEST_CASE("dice: disjoint nonempty masks score 0") {
    const auto pair = make_c1(2, 2, {1.0, 0.0, 0.0, 0.0}, {0, 1, 0, 0});
    CHECK(ure::correctness_score(pair, MetricKind::Dice) == 0.0);
}

TEST_CASE("dice hand example: 4 predicted, 6 true, 3 overlapping") {
    // 3x4 grid; prediction covers pixels 0-3, ground truth covers 0-2 and 6-8
    std::vector<double> probs(12, 0.0);
    for (int p = 0; p < 4; ++p) probs[p] = 1.0;
    std::vector<std::uint8_t> labels(12, 0);
    for (int p : {0, 1, 2, 6, 7, 8}) labels[p] = 1;
    const auto pair = RasterPair(3, 4, 1, std::move(probs), std::move(labels));
    CHECK(ure::correctness_score(pair, MetricKind::Dice) == doctest::Approx(0.6).epsilon(1e-12));
}

TEST_CASE("dice: empty prediction and ground truth scores 1 with a diagnostic") {
    const auto pair = make_c1(2, 2, {0.0, 0.0, 0.0, 0.0}, {0, 0, 0, 0});
    ure::ScoreDiagnostics diag;
    CHECK(ure::correctness_score(pair, MetricKind::Dice, 0.5, &diag) == 1.0);
    CHECK(diag.empty_pair);

    // nonempty ground truth must not trip the flag
    ure::ScoreDiagnostics diag2;
    const auto pair2 = make_c1(2, 2, {0.0, 0.0, 0.0, 0.0}, {1, 0, 0, 0});
    CHECK(ure::correctness_score(pair2, MetricKind::Dice, 0.5, &diag2) == 0.0);
    CHECK_FALSE(diag2.empty_pair);
}

TEST_CASE("binarization threshold is strict and configurable") {
    const auto pair = make_c1(1, 2, {0.6, 0.6}, {1, 1});
    CHECK(ure::correctness_score(pair, MetricKind::F1, 0.5) == 1.0);
    CHECK(ure::correctness_score(pair, MetricKind::F1, 0.6) == 0.0); // 0.6 > 0.6 is false
    CHECK_THROWS_AS(ure::correctness_score(pair, MetricKind::F1, 0.0), ure::InputError);
    CHECK_THROWS_AS(ure::correctness_score(pair, MetricKind::F1, 1.0), ure::InputError);
}

TEST_CASE("f1 rejects maps with more than two channels") {
    std::vector<double> probs = {0.2, 0.3, 0.5};
    const RasterPair pair(1, 1, 3, std::move(probs), {2});
    CHECK_THROWS_AS(ure::correctness_score(pair, MetricKind::F1), ure::InputError);
    CHECK(ure::correctness_score(pair, MetricKind::PixelAccuracy) == 1.0);
}

TEST_CASE("pixel accuracy uses the argmax class") {
    // C = 3: argmax classes are 2, 0, 1; labels 2, 0, 2
    std::vector<double> probs = {0.1, 0.2, 0.7, 0.8, 0.1, 0.1, 0.3, 0.4, 0.3};
    const RasterPair pair(1, 3, 3, std::move(probs), {2, 0, 2});
    CHECK(ure::correctness_score(pair, MetricKind::PixelAccuracy) ==
          doctest::Approx(2.0 / 3.0).epsilon(1e-12));

    // C = 1: class 1 iff p > 0.5; the tie at 0.5 goes to class 0
    const auto c1 = make_c1(1, 3, {0.75, 0.5, 0.25}, {1, 0, 0});
    CHECK(ure::correctness_score(c1, MetricKind::PixelAccuracy) == 1.0);
}

TEST_CASE("confidence estimate averages the max-channel probability") {
    CHECK(ure::confidence_estimate(make_c1(1, 2, {1.0, 0.0}, {1, 0})) == 1.0);
    CHECK(ure::confidence_estimate(make_c1(1, 2, {0.9, 0.7}, {1, 1})) ==
          doctest::Approx(0.8).epsilon(1e-12));
    // single pixel, C = 2
    const RasterPair two(1, 1, 2, {0.45, 0.55}, {1});
    CHECK(ure::confidence_estimate(two) == 0.55);
    // C = 1 uses max(p, 1-p)
    CHECK(ure::confidence_estimate(make_c1(1, 1, {0.25}, {0})) == 0.75);
}

TEST_CASE("brier hand examples") {
    // exact one-hot agreement
    const RasterPair exact(1, 2, 2, {1.0, 0.0, 0.0, 1.0}, {0, 1});
    CHECK(ure::brier({&exact, 1}) == 0.0);

    const auto p07 = make_c1(1, 1, {0.7}, {1});
    CHECK(ure::brier({&p07, 1}) == doctest::Approx(0.09).epsilon(1e-12));

    const auto p05 = make_c1(1, 1, {0.5}, {0});
    CHECK(ure::brier({&p05, 1}) == 0.25);
}

TEST_CASE("brier: two-channel expansion doubles the single-channel value exactly") {
    ure::RandomStream stream(31);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> probs;
        std::vector<std::uint8_t> labels;
        std::vector<double> expanded;
        for (int p = 0; p < 12; ++p) {
            // dyadic probabilities make all the arithmetic exact
            const double v = static_cast<double>(stream.next_index(1025)) / 1024.0;
            probs.push_back(v);
            expanded.push_back(1.0 - v);
            expanded.push_back(v);
            labels.push_back(static_cast<std::uint8_t>(stream.next_index(2)));
        }
        const RasterPair narrow(3, 4, 1, std::move(probs), labels);
        const RasterPair wide(3, 4, 2, std::move(expanded), labels);
        CHECK(2.0 * ure::brier({&narrow, 1}) == ure::brier({&wide, 1}));
    }
}

TEST_CASE("nll hand examples") {
    const auto perfect = make_c1(1, 2, {1.0, 0.0}, {1, 0});
    CHECK(ure::nll({&perfect, 1}).total == 0.0);

    const auto pair = make_c1(1, 2, {0.5, 0.25}, {1, 1});
    const ure::NllResult result = ure::nll({&pair, 1});
    CHECK(result.total == doctest::Approx(std::log(2.0) + std::log(4.0)).epsilon(1e-12));
    CHECK(result.per_pixel_mean == doctest::Approx(result.total / 2.0).epsilon(1e-12));

    // certainty in the wrong class stays finite through the epsilon floor
    const auto wrong = make_c1(1, 1, {0.0}, {1});
    CHECK(ure::nll({&wrong, 1}).total == doctest::Approx(-std::log(1e-12)).epsilon(1e-12));
    CHECK(std::isfinite(ure::nll({&wrong, 1}).total));
}

TEST_CASE("scores and confidences are permutation-invariant over pixels") {
    ure::RandomStream stream(91);
    std::vector<double> probs;
    std::vector<std::uint8_t> labels;
    for (int p = 0; p < 24; ++p) {
        probs.push_back(static_cast<double>(stream.next_index(1025)) / 1024.0);
        labels.push_back(static_cast<std::uint8_t>(stream.next_index(2)));
    }
    const RasterPair base(4, 6, 1, probs, labels);

    std::vector<std::size_t> perm(24);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    stream.shuffle(perm.data(), perm.size());
    std::vector<double> probs_p(24);
    std::vector<std::uint8_t> labels_p(24);
    for (std::size_t i = 0; i < perm.size(); ++i) {
        probs_p[i] = probs[perm[i]];
        labels_p[i] = labels[perm[i]];
    }
    const RasterPair permuted(4, 6, 1, std::move(probs_p), std::move(labels_p));

    CHECK(ure::correctness_score(base, MetricKind::Dice) ==
          ure::correctness_score(permuted, MetricKind::Dice));
    CHECK(ure::correctness_score(base, MetricKind::PixelAccuracy) ==
          ure::correctness_score(permuted, MetricKind::PixelAccuracy));
    CHECK(ure::confidence_estimate(base) == ure::confidence_estimate(permuted));
}

TEST_CASE("raster pair construction validates its invariants") {
    CHECK_THROWS_AS(RasterPair(0, 2, 1, {}, {}), ure::InputError);
    CHECK_THROWS_AS(RasterPair(1, 2, 1, {0.5}, {0, 0}), ure::InputError);      // probs short
    CHECK_THROWS_AS(RasterPair(1, 2, 1, {0.5, 0.5}, {0}), ure::InputError);    // labels short
    CHECK_THROWS_AS(RasterPair(1, 1, 1, {1.5}, {0}), ure::InputError);         // prob > 1
    CHECK_THROWS_AS(RasterPair(1, 1, 1, {0.5}, {2}), ure::InputError);         // label > 1
    CHECK_THROWS_AS(RasterPair(1, 1, 3, {0.5, 0.4, 0.3}, {0}), ure::InputError); // sum 1.2

    try {
        RasterPair(2, 2, 3, {0.4, 0.3, 0.3, 0.4, 0.3, 0.3, 0.4, 0.3, 0.3, 0.5, 0.4, 0.3},
                   {0, 0, 0, 0});
        FAIL("expected normalization error");
    } catch (const ure::InputError& e) {
        CHECK(std::string(e.what()).find("(row 1, col 1)") != std::string::npos);
    }

    CHECK_THROWS_AS(ure::brier({}), ure::InputError);
    CHECK_THROWS_AS(ure::nll({}), ure::InputError);
}
