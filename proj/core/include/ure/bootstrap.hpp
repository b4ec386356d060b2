#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "ure/random.hpp"

namespace ure {

/// Statistic computed on each bootstrap resample.
struct Statistic {
    enum class Kind { Mean, Percentile };

    Kind kind = Kind::Mean;
    double q = 2.0; // percentile level, only meaningful for Kind::Percentile

    static Statistic mean() { return {Kind::Mean, 0.0}; }
    static Statistic percentile(double q) { return {Kind::Percentile, q}; }

    bool operator==(const Statistic&) const = default;
};

/// Parses "mean", "p2" or "p5".
Statistic parse_statistic(std::string_view name);
std::string statistic_name(const Statistic& stat);

struct BootstrapConfig {
    int replicates = 99;        // resample count B
    double ci_percentile = 2.5; // lower-tail percentile of the replicate statistics
    Statistic statistic = Statistic::mean();
    std::uint64_t seed = 0;     // root seed; per-pool streams are derived from it

    /// Throws InputError unless replicates >= 1, 0 < ci_percentile < 50 and,
    /// for the percentile statistic, 0 < q < 100.
    void validate() const;
};

/// Lower confidence bound of `config.statistic` over `pool`, estimated by
/// bootstrap resampling.
///
/// Draws `config.replicates` resamples of size |pool| with replacement, using
/// `stream` for every index draw (resamples are drawn back to back; each
/// picks |pool| indices via stream.next_index(|pool|)). The statistic of a
/// resample is either its anchored mean (see stats.hpp; the anchor is the
/// first *pool* element, so resampling a constant pool yields that constant
/// exactly) or the linearly interpolated q-th percentile of the sorted
/// resample. Returns the ci_percentile-th percentile of the replicate
/// statistics, again linearly interpolated.
double bootstrap_ci_lower(std::span<const double> pool, const BootstrapConfig& config,
                          RandomStream& stream);

} // namespace ure
