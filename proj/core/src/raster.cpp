#include "ure/raster.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "ure/errors.hpp"

namespace ure {

MetricKind parse_metric_kind(std::string_view name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "f1") return MetricKind::F1;
    if (lower == "dice") return MetricKind::Dice;
    if (lower == "pixel-accuracy") return MetricKind::PixelAccuracy;
    throw InputError("unknown metric '" + std::string(name) +
                     "' (valid: f1, dice, pixel-accuracy)");
}

std::string_view metric_kind_name(MetricKind kind) {
    switch (kind) {
        case MetricKind::F1: return "f1";
        case MetricKind::Dice: return "dice";
        case MetricKind::PixelAccuracy: return "pixel-accuracy";
    }
    throw InternalError("metric_kind_name: unhandled enumerator");
}

namespace {

std::string pixel_name(std::int64_t p, int width) {
    return "pixel (row " + std::to_string(p / width) + ", col " + std::to_string(p % width) + ")";
}

} // namespace

RasterPair::RasterPair(int height, int width, int channels,
                       std::vector<double> probabilities, std::vector<std::uint8_t> labels)
    : height_(height), width_(width), channels_(channels),
      probabilities_(std::move(probabilities)), labels_(std::move(labels)) {
    if (height_ < 1 || width_ < 1)
        throw InputError("raster dimensions must be positive, got " + std::to_string(height_) +
                         "x" + std::to_string(width_));
    if (channels_ < 1)
        throw InputError("raster channel count must be >= 1, got " + std::to_string(channels_));
    const auto pixels = static_cast<std::size_t>(pixel_count());
    if (probabilities_.size() != pixels * static_cast<std::size_t>(channels_))
        throw InputError("probability buffer size " + std::to_string(probabilities_.size()) +
                         " does not match shape " + std::to_string(height_) + "x" +
                         std::to_string(width_) + "x" + std::to_string(channels_));
    if (labels_.size() != pixels)
        throw InputError("label buffer size " + std::to_string(labels_.size()) +
                         " does not match shape " + std::to_string(height_) + "x" +
                         std::to_string(width_));

    const int max_label = channels_ == 1 ? 1 : channels_ - 1;
    for (std::int64_t p = 0; p < pixel_count(); ++p) {
        double sum = 0.0;
        for (int c = 0; c < channels_; ++c) {
            const double v = prob(p, c);
            if (!(v >= 0.0 && v <= 1.0))
                throw InputError("probability " + std::to_string(v) + " outside [0, 1] at " +
                                 pixel_name(p, width_));
            sum += v;
        }
        if (channels_ >= 2 && std::abs(sum - 1.0) > 1e-4)
            throw InputError("channel sum " + std::to_string(sum) + " deviates from 1 at " +
                             pixel_name(p, width_));
        if (label(p) > max_label)
            throw InputError("label " + std::to_string(int(label(p))) + " outside [0, " +
                             std::to_string(max_label) + "] at " + pixel_name(p, width_));
    }
}

namespace {

double f1_dice(const RasterPair& pair, double threshold, ScoreDiagnostics* diag) {
    if (pair.channels() > 2)
        throw InputError("f1/dice requires a binary map (C <= 2), got C = " +
                         std::to_string(pair.channels()));
    const int fg_channel = pair.channels() == 1 ? 0 : 1;
    std::int64_t tp = 0;
    std::int64_t fp = 0;
    std::int64_t fn = 0;
    for (std::int64_t p = 0; p < pair.pixel_count(); ++p) {
        const bool pred = pair.prob(p, fg_channel) > threshold;
        const bool truth = pair.label(p) != 0;
        tp += (pred && truth);
        fp += (pred && !truth);
        fn += (!pred && truth);
    }
    const std::int64_t denom = 2 * tp + fp + fn;
    if (denom == 0) {
        if (diag) diag->empty_pair = true;
        return 1.0;
    }
    return static_cast<double>(2 * tp) / static_cast<double>(denom);
}

double pixel_accuracy(const RasterPair& pair) {
    std::int64_t correct = 0;
    for (std::int64_t p = 0; p < pair.pixel_count(); ++p) {
        int argmax = 0;
        if (pair.channels() == 1) {
            argmax = pair.prob(p, 0) > 0.5 ? 1 : 0;
        } else {
            double best = pair.prob(p, 0);
            for (int c = 1; c < pair.channels(); ++c) {
                const double v = pair.prob(p, c);
                if (v > best) {
                    best = v;
                    argmax = c;
                }
            }
        }
        correct += (argmax == pair.label(p));
    }
    return static_cast<double>(correct) / static_cast<double>(pair.pixel_count());
}

} // namespace

double correctness_score(const RasterPair& pair, MetricKind metric,
                         double threshold, ScoreDiagnostics* diag) {
    if (metric != MetricKind::PixelAccuracy && !(threshold > 0.0 && threshold < 1.0))
        throw InputError("binarization threshold must lie in (0, 1), got " +
                         std::to_string(threshold));
    switch (metric) {
        case MetricKind::F1:
        case MetricKind::Dice:
            return f1_dice(pair, threshold, diag);
        case MetricKind::PixelAccuracy:
            return pixel_accuracy(pair);
    }
    throw InternalError("correctness_score: unhandled metric kind");
}

double confidence_estimate(const RasterPair& pair) {
    double acc = 0.0;
    for (std::int64_t p = 0; p < pair.pixel_count(); ++p) {
        double best = pair.prob(p, 0);
        if (pair.channels() == 1) {
            best = std::max(best, 1.0 - best);
        } else {
            for (int c = 1; c < pair.channels(); ++c) best = std::max(best, pair.prob(p, c));
        }
        acc += best;
    }
    return acc / static_cast<double>(pair.pixel_count());
}

double brier(std::span<const RasterPair> pairs) {
    if (pairs.empty()) throw InputError("brier: no raster pairs");
    double acc = 0.0;
    std::int64_t pixels = 0;
    for (const auto& pair : pairs) {
        for (std::int64_t p = 0; p < pair.pixel_count(); ++p) {
            if (pair.channels() == 1) {
                const double d = pair.prob(p, 0) - static_cast<double>(pair.label(p));
                acc += d * d;
            } else {
                for (int c = 0; c < pair.channels(); ++c) {
                    const double one_hot = c == pair.label(p) ? 1.0 : 0.0;
                    const double d = pair.prob(p, c) - one_hot;
                    acc += d * d;
                }
            }
        }
        pixels += pair.pixel_count();
    }
    return acc / static_cast<double>(pixels);
}

NllResult nll(std::span<const RasterPair> pairs, double epsilon) {
    if (pairs.empty()) throw InputError("nll: no raster pairs");
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw InputError("nll: epsilon must lie in (0, 1)");
    NllResult out;
    std::int64_t pixels = 0;
    for (const auto& pair : pairs) {
        for (std::int64_t p = 0; p < pair.pixel_count(); ++p) {
            double p_true;
            if (pair.channels() == 1)
                p_true = pair.label(p) != 0 ? pair.prob(p, 0) : 1.0 - pair.prob(p, 0);
            else
                p_true = pair.prob(p, pair.label(p));
            out.total += -std::log(std::max(p_true, epsilon));
        }
        pixels += pair.pixel_count();
    }
    out.per_pixel_mean = out.total / static_cast<double>(pixels);
    return out;
}

} // namespace ure
