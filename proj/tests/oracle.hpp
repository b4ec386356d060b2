// Independent reference implementations used as test oracles. Everything here
// is written from the documented contracts alone and must stay decoupled from
// the library code it checks: only <ure/records.hpp> is pulled in for the
// record struct itself.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "ure/records.hpp"

namespace oracle {

// --- random stream, retyped from the documented draw contract -------------

struct SplitMix64 {
    std::uint64_t s;

    std::uint64_t next() {
        s += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = s;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::size_t index(std::size_t bound) {
        return static_cast<std::size_t>(
            (static_cast<unsigned __int128>(next()) * bound) >> 64);
    }
};

inline std::uint64_t seed_for(std::uint64_t root, std::uint64_t n) {
    std::uint64_t z = root + n * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// --- percentile with linear interpolation ----------------------------------

inline double percentile(std::vector<double> values, double q) {
    std::sort(values.begin(), values.end());
    const double pos = (q / 100.0) * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(pos);
    if (lo + 1 >= values.size()) return values.back();
    return values[lo] + (pos - static_cast<double>(lo)) * (values[lo + 1] - values[lo]);
}

// --- straight-line rewrite of the usable-region scan ------------------------
// Sort indices by confidence descending (ties: ascending id). For each prefix
// 1..n resample B times on the prefix's own stream, collect the statistic
// (anchored mean, or the q-th percentile of the sorted resample), take the
// ci-percentile of the statistics, and overwrite (tau, p) whenever the bound
// meets the requirement.

struct UreParams {
    double requirement = 0.9;
    int replicates = 99;
    double ci_percentile = 2.5;
    bool statistic_is_mean = true;
    double statistic_q = 2.0;
    std::uint64_t seed = 0;
};

struct UreOutput {
    double tau = 1.0;
    double p = 0.0;
    std::vector<double> ci_lower; // per prefix, for selection-logic checks
};

inline UreOutput ure(const std::vector<ure::EvaluationRecord>& records, const UreParams& params) {
    const std::size_t n = records.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (records[a].confidence != records[b].confidence)
            return records[a].confidence > records[b].confidence;
        return records[a].id < records[b].id;
    });

    UreOutput out;
    std::vector<double> pool;
    for (std::size_t k = 1; k <= n; ++k) {
        pool.clear();
        for (std::size_t i = 0; i < k; ++i) pool.push_back(records[order[i]].score);

        SplitMix64 stream{seed_for(params.seed, k)};
        std::vector<double> statistics;
        for (int b = 0; b < params.replicates; ++b) {
            if (params.statistic_is_mean) {
                double acc = 0.0;
                for (std::size_t j = 0; j < k; ++j) acc += pool[stream.index(k)] - pool[0];
                statistics.push_back(pool[0] + acc / static_cast<double>(k));
            } else {
                std::vector<double> resample;
                for (std::size_t j = 0; j < k; ++j) resample.push_back(pool[stream.index(k)]);
                statistics.push_back(percentile(std::move(resample), params.statistic_q));
            }
        }
        const double lower = percentile(statistics, params.ci_percentile);
        out.ci_lower.push_back(lower);
        if (lower >= params.requirement) {
            out.tau = records[order[k - 1]].confidence;
            out.p = static_cast<double>(k) / static_cast<double>(n);
        }
    }
    return out;
}

// --- closed-form Spearman coefficient for tie-free lists --------------------

inline double spearman_tie_free(const std::vector<double>& a, const std::vector<double>& b) {
    const std::size_t n = a.size();
    auto ranks = [n](const std::vector<double>& values) {
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(),
                  [&](std::size_t x, std::size_t y) { return values[x] < values[y]; });
        std::vector<double> r(n);
        for (std::size_t i = 0; i < n; ++i) r[order[i]] = static_cast<double>(i + 1);
        return r;
    };
    const std::vector<double> ra = ranks(a);
    const std::vector<double> rb = ranks(b);
    double d2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) d2 += (ra[i] - rb[i]) * (ra[i] - rb[i]);
    const auto nn = static_cast<double>(n);
    return 1.0 - 6.0 * d2 / (nn * (nn * nn - 1.0));
}

} // namespace oracle
