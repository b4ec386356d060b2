#include "ure/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ure/errors.hpp"

namespace ure {

std::vector<double> average_ranks(std::span<const double> values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

    std::vector<double> ranks(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
        // positions i..j (0-based) share the value; assign the mean 1-based rank
        const double rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
        i = j + 1;
    }
    return ranks;
}

namespace {

double pearson(std::span<const double> a, std::span<const double> b) {
    const std::size_t n = a.size();
    double mean_a = 0.0;
    double mean_b = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mean_a += a[i];
        mean_b += b[i];
    }
    mean_a /= static_cast<double>(n);
    mean_b /= static_cast<double>(n);

    double cov = 0.0;
    double var_a = 0.0;
    double var_b = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double da = a[i] - mean_a;
        const double db = b[i] - mean_b;
        cov += da * db;
        var_a += da * da;
        var_b += db * db;
    }
    if (var_a == 0.0 || var_b == 0.0)
        throw UndefinedCorrelationError("correlation undefined: a list has zero rank variance");
    return cov / std::sqrt(var_a * var_b);
}

} // namespace

double spearman(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size())
        throw InputError("spearman: list sizes differ");
    if (a.size() < 2)
        throw UndefinedCorrelationError("correlation undefined: fewer than two samples");
    const std::vector<double> ra = average_ranks(a);
    const std::vector<double> rb = average_ranks(b);
    return pearson(ra, rb);
}

double ccrc(std::span<const EvaluationRecord> records) {
    std::vector<double> scores;
    std::vector<double> confidences;
    scores.reserve(records.size());
    confidences.reserve(records.size());
    for (const auto& r : records) {
        scores.push_back(r.score);
        confidences.push_back(r.confidence);
    }
    return spearman(scores, confidences);
}

double ece_per_sample(std::span<const EvaluationRecord> records) {
    if (records.empty()) throw InputError("ece_per_sample: empty record set");
    double acc = 0.0;
    for (const auto& r : records) acc += std::abs(r.score - r.confidence);
    return acc / static_cast<double>(records.size());
}

double ece_binned(std::span<const EvaluationRecord> records, int bins) {
    if (records.empty()) throw InputError("ece_binned: empty record set");
    if (bins < 1) throw InputError("ece_binned: bins must be >= 1");

    const auto nbins = static_cast<std::size_t>(bins);
    std::vector<double> score_sum(nbins, 0.0);
    std::vector<double> conf_sum(nbins, 0.0);
    std::vector<std::size_t> count(nbins, 0);

    for (const auto& r : records) {
        auto idx = static_cast<std::size_t>(r.confidence * static_cast<double>(bins));
        if (idx >= nbins) idx = nbins - 1;
        score_sum[idx] += r.score;
        conf_sum[idx] += r.confidence;
        ++count[idx];
    }

    const auto n = static_cast<double>(records.size());
    double acc = 0.0;
    for (std::size_t b = 0; b < nbins; ++b) {
        if (count[b] == 0) continue;
        const auto c = static_cast<double>(count[b]);
        acc += (c / n) * std::abs(score_sum[b] / c - conf_sum[b] / c);
    }
    return acc;
}

} // namespace ure
