#include "ure/bootstrap.hpp"

#include <algorithm>
#include <vector>

#include "ure/errors.hpp"
#include "ure/stats.hpp"

namespace ure {

Statistic parse_statistic(std::string_view name) {
    if (name == "mean") return Statistic::mean();
    if (name == "p2") return Statistic::percentile(2.0);
    if (name == "p5") return Statistic::percentile(5.0);
    throw InputError("unknown statistic '" + std::string(name) + "' (valid: mean, p2, p5)");
}

std::string statistic_name(const Statistic& stat) {
    if (stat.kind == Statistic::Kind::Mean) return "mean";
    return "p" + std::to_string(stat.q);
}

void BootstrapConfig::validate() const {
    if (replicates < 1)
        throw InputError("bootstrap replicates must be >= 1, got " + std::to_string(replicates));
    if (!(ci_percentile > 0.0 && ci_percentile < 50.0))
        throw InputError("ci percentile must lie in (0, 50), got " + std::to_string(ci_percentile));
    if (statistic.kind == Statistic::Kind::Percentile && !(statistic.q > 0.0 && statistic.q < 100.0))
        throw InputError("statistic percentile must lie in (0, 100), got " +
                         std::to_string(statistic.q));
}

double bootstrap_ci_lower(std::span<const double> pool, const BootstrapConfig& config,
                          RandomStream& stream) {
    if (pool.empty()) throw InputError("bootstrap_ci_lower: empty pool");
    config.validate();

    const std::size_t k = pool.size();
    std::vector<double> stats(static_cast<std::size_t>(config.replicates));

    if (config.statistic.kind == Statistic::Kind::Mean) {
        const double anchor = pool[0];
        for (auto& stat : stats) {
            double acc = 0.0;
            for (std::size_t j = 0; j < k; ++j) acc += pool[stream.next_index(k)] - anchor;
            stat = anchor + acc / static_cast<double>(k);
        }
    } else {
        std::vector<double> resample(k);
        for (auto& stat : stats) {
            for (std::size_t j = 0; j < k; ++j) resample[j] = pool[stream.next_index(k)];
            std::sort(resample.begin(), resample.end());
            stat = percentile_sorted(resample, config.statistic.q);
        }
    }

    std::sort(stats.begin(), stats.end());
    return percentile_sorted(stats, config.ci_percentile);
}

} // namespace ure
