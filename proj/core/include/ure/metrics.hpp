#pragma once

#include <span>
#include <vector>

#include "ure/records.hpp"

namespace ure {

/// Average (fractional) ranks of `values`, 1-based; tied values receive the
/// mean of the rank positions they occupy.
std::vector<double> average_ranks(std::span<const double> values);

/// Spearman rank correlation of two equally sized lists, computed as the
/// Pearson correlation of their average-rank vectors. Throws
/// UndefinedCorrelationError when n < 2 or either list is constant.
double spearman(std::span<const double> a, std::span<const double> b);

/// Correctness-confidence rank correlation: Spearman correlation between the
/// records' score list and confidence list. The value lies in [-1, 1]; a
/// coefficient of 1 means confidences order samples exactly as correctness
/// does.
double ccrc(std::span<const EvaluationRecord> records);

/// Per-sample expected calibration error: mean of |score - confidence|.
double ece_per_sample(std::span<const EvaluationRecord> records);

/// Binned expected calibration error over `bins` equal-width confidence bins
/// spanning [0, 1]: sum over bins of (occupancy / n) * |mean score - mean
/// confidence|. A record's bin index is floor(confidence * bins) clamped to
/// the last bin; empty bins contribute nothing.
double ece_binned(std::span<const EvaluationRecord> records, int bins);

} // namespace ure
