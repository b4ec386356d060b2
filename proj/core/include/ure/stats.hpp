#pragma once

#include <cstddef>
#include <span>

#include "ure/errors.hpp"

namespace ure {

/// Mean of `values`, accumulated left to right relative to the first element:
///   mean = values[0] + (sum_i (values[i] - values[0])) / n
/// The anchored form makes the mean of a constant list exactly that constant,
/// which plain summation does not guarantee in floating point.
inline double anchored_mean(std::span<const double> values) {
    if (values.empty()) throw InputError("anchored_mean: empty input");
    const double anchor = values[0];
    double acc = 0.0;
    for (const double v : values) acc += v - anchor;
    return anchor + acc / static_cast<double>(values.size());
}

/// Percentile of an ascending-sorted list with linear interpolation between
/// the closest order statistics:
///   pos = (q / 100) * (n - 1),  lo = floor(pos)
///   value = sorted[lo] + (pos - lo) * (sorted[lo + 1] - sorted[lo])
/// q must lie in [0, 100].
inline double percentile_sorted(std::span<const double> sorted, double q) {
    if (sorted.empty()) throw InputError("percentile_sorted: empty input");
    if (!(q >= 0.0 && q <= 100.0)) throw InputError("percentile_sorted: q out of [0, 100]");
    const std::size_t n = sorted.size();
    const double pos = (q / 100.0) * static_cast<double>(n - 1);
    const auto lo = static_cast<std::size_t>(pos);
    if (lo + 1 >= n) return sorted[n - 1];
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

} // namespace ure
