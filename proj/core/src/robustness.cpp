#include "ure/robustness.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "ure/errors.hpp"
#include "ure/parallel.hpp"
#include "ure/stats.hpp"

namespace ure {

void RobustnessConfig::validate() const {
    if (splits_per_round < 1)
        throw InputError("splits per round must be >= 1, got " + std::to_string(splits_per_round));
    if (rounds < 1) throw InputError("rounds must be >= 1, got " + std::to_string(rounds));
    if (!(requirement >= 0.0 && requirement <= 1.0))
        throw InputError("requirement must lie in [0, 1], got " + std::to_string(requirement));
    bootstrap.validate();
}

namespace {

struct SplitOutcome {
    enum class Kind { Counted, EmptyRegion, NoQualifying } kind = Kind::Counted;
    bool pooled_violation = false;
    double per_sample_violation_rate = 0.0; // fraction of qualifying records below requirement
};

// One estimate-and-test split. All randomness comes from split_seed.
SplitOutcome run_split(std::span<const EvaluationRecord> records, const RobustnessConfig& config,
                       std::uint64_t split_seed) {
    const std::size_t n = records.size();
    std::vector<std::uint32_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<std::uint32_t>(i);
    RandomStream shuffle_stream(derive_seed(split_seed, 0));
    shuffle_stream.shuffle(order.data(), order.size());

    const std::size_t estimate_size = (n + 1) / 2; // odd n: extra record estimates

    std::vector<EvaluationRecord> estimate_half;
    estimate_half.reserve(estimate_size);
    for (std::size_t i = 0; i < estimate_size; ++i) estimate_half.push_back(records[order[i]]);

    BootstrapConfig split_bootstrap = config.bootstrap;
    split_bootstrap.seed = derive_seed(split_seed, 1);

    const SortedScores sorted = sort_by_confidence_descending(estimate_half);
    std::vector<PrefixEvaluation> trace =
        scan_prefixes(sorted.scores, sorted.confidences, split_bootstrap, config.use_bootstrap,
                      /*threads=*/1);
    const UsableRegion region =
        select_region(trace, sorted.confidences, config.requirement, TiePolicy::Prefix);

    SplitOutcome outcome;
    if (region.empty) {
        outcome.kind = SplitOutcome::Kind::EmptyRegion;
        return outcome;
    }

    std::vector<double> qualifying;
    qualifying.reserve(n - estimate_size);
    std::size_t below = 0;
    for (std::size_t i = estimate_size; i < n; ++i) {
        const EvaluationRecord& r = records[order[i]];
        if (r.confidence >= region.tau_star) {
            qualifying.push_back(r.score);
            below += (r.score < config.requirement);
        }
    }
    if (qualifying.empty()) {
        outcome.kind = SplitOutcome::Kind::NoQualifying;
        return outcome;
    }
    outcome.pooled_violation = anchored_mean(qualifying) < config.requirement;
    outcome.per_sample_violation_rate =
        static_cast<double>(below) / static_cast<double>(qualifying.size());
    return outcome;
}

struct MeanStd {
    double mean = 0.0;
    double std = 0.0; // sample standard deviation; 0 when n < 2
};

MeanStd mean_std(std::span<const double> values) {
    MeanStd out;
    out.mean = anchored_mean(values);
    if (values.size() < 2) return out;
    double acc = 0.0;
    for (const double v : values) acc += (v - out.mean) * (v - out.mean);
    out.std = std::sqrt(acc / static_cast<double>(values.size() - 1));
    return out;
}

} // namespace

RobustnessReport estimate_and_test(std::span<const EvaluationRecord> records,
                                   const RobustnessConfig& config, int threads) {
    config.validate();
    validate_records(records);
    if (records.size() < 4)
        throw InputError("estimate-and-test needs at least 4 records, got " +
                         std::to_string(records.size()));

    RobustnessReport report;
    report.config = config;
    report.rounds.resize(static_cast<std::size_t>(config.rounds));

    const auto splits = static_cast<std::size_t>(config.splits_per_round);
    for (std::size_t round = 0; round < report.rounds.size(); ++round) {
        const std::uint64_t round_seed = derive_seed(config.seed, round);
        std::vector<SplitOutcome> outcomes(splits);
        parallel_for(splits, threads, [&](std::size_t split) {
            outcomes[split] = run_split(records, config, derive_seed(round_seed, split));
        });

        RoundStats& stats = report.rounds[round];
        int violations = 0;
        double rate_sum = 0.0;
        for (const auto& outcome : outcomes) {
            switch (outcome.kind) {
                case SplitOutcome::Kind::EmptyRegion: ++stats.excluded_empty_region; break;
                case SplitOutcome::Kind::NoQualifying: ++stats.excluded_no_qualifying; break;
                case SplitOutcome::Kind::Counted:
                    ++stats.counted;
                    violations += outcome.pooled_violation;
                    rate_sum += outcome.per_sample_violation_rate;
                    break;
            }
        }
        if (stats.counted == 0)
            throw InputError("degenerate robustness run: every split of round " +
                             std::to_string(round) + " was excluded (" +
                             std::to_string(stats.excluded_empty_region) + " empty regions, " +
                             std::to_string(stats.excluded_no_qualifying) +
                             " without qualifying held-out records)");
        stats.pooled_violation_pct =
            100.0 * static_cast<double>(violations) / static_cast<double>(stats.counted);
        stats.per_sample_violation_pct = 100.0 * rate_sum / static_cast<double>(stats.counted);
        report.per_round_frequencies.push_back(stats.pooled_violation_pct);
    }

    std::vector<double> per_sample;
    per_sample.reserve(report.rounds.size());
    for (const auto& stats : report.rounds) per_sample.push_back(stats.per_sample_violation_pct);

    const MeanStd pooled = mean_std(report.per_round_frequencies);
    report.violation_mean = pooled.mean;
    report.violation_std = pooled.std;
    const MeanStd sample_level = mean_std(per_sample);
    report.per_sample_violation_mean = sample_level.mean;
    report.per_sample_violation_std = sample_level.std;
    return report;
}

namespace {

nlohmann::json statistic_to_json(const Statistic& stat) {
    nlohmann::json j;
    j["kind"] = stat.kind == Statistic::Kind::Mean ? "mean" : "percentile";
    if (stat.kind == Statistic::Kind::Percentile) j["q"] = stat.q;
    return j;
}

} // namespace

std::string report_to_json(const RobustnessReport& report) {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["violation_mean_pct"] = report.violation_mean;
    j["violation_std_pct"] = report.violation_std;
    j["per_sample_violation_mean_pct"] = report.per_sample_violation_mean;
    j["per_sample_violation_std_pct"] = report.per_sample_violation_std;
    j["per_round_frequencies_pct"] = report.per_round_frequencies;

    nlohmann::json rounds = nlohmann::json::array();
    for (const auto& stats : report.rounds) {
        rounds.push_back({{"pooled_violation_pct", stats.pooled_violation_pct},
                          {"per_sample_violation_pct", stats.per_sample_violation_pct},
                          {"counted", stats.counted},
                          {"excluded_empty_region", stats.excluded_empty_region},
                          {"excluded_no_qualifying", stats.excluded_no_qualifying}});
    }
    j["rounds"] = rounds;

    const RobustnessConfig& c = report.config;
    j["config"] = {{"splits_per_round", c.splits_per_round},
                   {"rounds", c.rounds},
                   {"requirement", c.requirement},
                   {"use_bootstrap", c.use_bootstrap},
                   {"seed", c.seed},
                   {"bootstrap",
                    {{"replicates", c.bootstrap.replicates},
                     {"ci_percentile", c.bootstrap.ci_percentile},
                     {"statistic", statistic_to_json(c.bootstrap.statistic)}}}};
    return j.dump(2) + "\n";
}

std::string report_to_csv(const RobustnessReport& report) {
    std::string out =
        "round,pooled_violation_pct,per_sample_violation_pct,counted,"
        "excluded_empty_region,excluded_no_qualifying\n";
    for (std::size_t i = 0; i < report.rounds.size(); ++i) {
        const auto& stats = report.rounds[i];
        out += fmt::format("{},{},{},{},{},{}\n", i, stats.pooled_violation_pct,
                           stats.per_sample_violation_pct, stats.counted,
                           stats.excluded_empty_region, stats.excluded_no_qualifying);
    }
    return out;
}

void SyntheticModelSpec::validate() const {
    if (n_samples < 1)
        throw InputError("synthetic spec: n_samples must be >= 1, got " +
                         std::to_string(n_samples));
    if (!(noise_sigma >= 0.0)) throw InputError("synthetic spec: noise_sigma must be >= 0");
    if (!(primary_weight >= 0.0 && primary_weight <= 1.0))
        throw InputError("synthetic spec: primary_weight must lie in [0, 1]");
    auto check_range = [](double lo, double hi, const char* name) {
        if (!(lo >= 0.0 && hi <= 1.0 && lo <= hi))
            throw InputError(std::string("synthetic spec: invalid ") + name + " range");
    };
    check_range(primary_low, primary_high, "primary confidence");
    check_range(secondary_low, secondary_high, "secondary confidence");
    if (link == LinkKind::Logistic) {
        if (!(link_floor >= 0.0 && link_ceil <= 1.0 && link_floor <= link_ceil))
            throw InputError("synthetic spec: logistic link floor/ceil must satisfy "
                             "0 <= floor <= ceil <= 1");
        if (!(link_gain > 0.0)) throw InputError("synthetic spec: link_gain must be > 0");
    }
}

std::vector<EvaluationRecord> generate_synthetic(const SyntheticModelSpec& spec) {
    spec.validate();
    RandomStream stream(spec.seed);

    int width = 1;
    for (int v = spec.n_samples - 1; v >= 10; v /= 10) ++width;

    std::vector<EvaluationRecord> records;
    records.reserve(static_cast<std::size_t>(spec.n_samples));
    for (int i = 0; i < spec.n_samples; ++i) {
        const bool primary = stream.next_unit() < spec.primary_weight;
        const double lo = primary ? spec.primary_low : spec.secondary_low;
        const double hi = primary ? spec.primary_high : spec.secondary_high;
        const double confidence = lo + stream.next_unit() * (hi - lo);

        double expected = confidence;
        if (spec.link == LinkKind::Logistic) {
            expected = spec.link_floor + (spec.link_ceil - spec.link_floor) /
                                             (1.0 + std::exp(-spec.link_gain *
                                                             (confidence - spec.link_center)));
        }
        double score = expected;
        if (spec.noise_sigma > 0.0) score += spec.noise_sigma * stream.next_gaussian();
        score = std::clamp(score, 0.0, 1.0);

        std::string index = std::to_string(i);
        if (static_cast<int>(index.size()) < width)
            index.insert(0, static_cast<std::size_t>(width - index.size()), '0');
        records.push_back({"s" + index, score, confidence});
    }
    return records;
}

} // namespace ure
