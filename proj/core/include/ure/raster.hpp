#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ure {

/// Per-sample correctness metric.
enum class MetricKind {
    F1,            ///< 2*TP / (2*TP + FP + FN) over binarized pixels
    Dice,          ///< identical to F1 on binary masks; both names accepted
    PixelAccuracy, ///< fraction of pixels whose argmax class equals the label
};

/// Parses "f1", "dice" or "pixel-accuracy" (case-insensitive).
MetricKind parse_metric_kind(std::string_view name);
std::string_view metric_kind_name(MetricKind kind);

/// A per-pixel class-probability map paired with its ground-truth label mask.
///
/// The probability map has shape H x W x C in row-major order. For C = 1 the
/// single channel is the foreground probability and labels are binary; for
/// C >= 2 every pixel's channel values must sum to 1 within 1e-4 and labels
/// lie in [0, C-1]. Construction validates all invariants and throws
/// InputError naming the first offending pixel.
class RasterPair {
public:
    RasterPair(int height, int width, int channels,
               std::vector<double> probabilities, std::vector<std::uint8_t> labels);

    int height() const { return height_; }
    int width() const { return width_; }
    int channels() const { return channels_; }
    std::int64_t pixel_count() const {
        return static_cast<std::int64_t>(height_) * width_;
    }

    /// Probability of channel `c` at linear pixel `p` (p = row * width + col).
    double prob(std::int64_t p, int c) const {
        return probabilities_[static_cast<std::size_t>(p) * channels_ + c];
    }
    std::uint8_t label(std::int64_t p) const {
        return labels_[static_cast<std::size_t>(p)];
    }

    std::span<const double> probabilities() const { return probabilities_; }
    std::span<const std::uint8_t> labels() const { return labels_; }

private:
    int height_;
    int width_;
    int channels_;
    std::vector<double> probabilities_; // H*W*C, row-major
    std::vector<std::uint8_t> labels_;  // H*W
};

/// Set when a metric was evaluated on a degenerate input.
struct ScoreDiagnostics {
    /// Prediction and ground truth were both empty after binarization
    /// (TP + FP + FN = 0); the score was defined as 1.0.
    bool empty_pair = false;
};

/// Correctness score of a prediction under `metric`, in [0, 1].
///
/// F1/Dice binarize the foreground probability with `threshold` (strictly
/// greater than) and require C <= 2. When both binarized prediction and
/// ground truth are empty the score is defined as 1.0 and flagged in `diag`.
/// PixelAccuracy uses the argmax class per pixel (first channel wins ties;
/// for C = 1 the implied classes are (1-p, p)).
double correctness_score(const RasterPair& pair, MetricKind metric,
                         double threshold = 0.5, ScoreDiagnostics* diag = nullptr);

/// Mean over pixels of the max-channel probability (for C = 1: max(p, 1-p)),
/// accumulated in row-major order.
double confidence_estimate(const RasterPair& pair);

/// Brier score pooled over all pixels of all pairs. For C = 1 each pixel
/// contributes (p - y)^2; for C >= 2 it contributes the squared distance
/// between the probability vector and the one-hot label, summed over
/// channels (so a single pixel contributes at most 2).
double brier(std::span<const RasterPair> pairs);

struct NllResult {
    double total = 0.0;          // sum over all pixels, in nats
    double per_pixel_mean = 0.0; // total / pixel count
};

/// Negative log-likelihood of the true labels: sum over pixels of
/// -ln(max(p_true, epsilon)), natural logarithm, with the probability floored
/// at `epsilon` to keep the value finite.
NllResult nll(std::span<const RasterPair> pairs, double epsilon = 1e-12);

} // namespace ure
