#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ure/bootstrap.hpp"
#include "ure/records.hpp"
#include "ure/usable_region.hpp"

namespace ure {

struct RobustnessConfig {
    int splits_per_round = 100;
    int rounds = 20;
    double requirement = 0.9;
    bool use_bootstrap = true; // false: ablation that substitutes the pool mean for ci_lower
    BootstrapConfig bootstrap; // bootstrap.seed is ignored; per-split seeds derive from `seed`
    std::uint64_t seed = 0;

    void validate() const;
};

/// Split-level outcomes aggregated per round.
struct RoundStats {
    double pooled_violation_pct = 0.0;     // splits whose qualifying half-2 mean fell short
    double per_sample_violation_pct = 0.0; // mean per-sample violation rate over counted splits
    int counted = 0;
    int excluded_empty_region = 0;  // estimation found no usable region
    int excluded_no_qualifying = 0; // no held-out record reached tau_star
};

struct RobustnessReport {
    double violation_mean = 0.0; // mean over rounds of pooled_violation_pct
    double violation_std = 0.0;  // sample standard deviation over rounds
    double per_sample_violation_mean = 0.0;
    double per_sample_violation_std = 0.0;
    std::vector<double> per_round_frequencies; // pooled, length = rounds
    std::vector<RoundStats> rounds;
    RobustnessConfig config;
};

/// Estimate-and-test: per split, shuffle the records, estimate the usable
/// region on the first half (the extra record of an odd set goes to this
/// half) and test the second half. A split counts a violation when the mean
/// correctness of held-out records with confidence >= tau_star falls below
/// the requirement; splits with an empty region or no qualifying held-out
/// record are excluded from the denominator and tallied separately. Splits
/// run on derived seeds (round, then split), so any thread count produces
/// identical output.
///
/// Throws InputError when |records| < 4 or when every split of a round is
/// excluded (degenerate configuration).
RobustnessReport estimate_and_test(std::span<const EvaluationRecord> records,
                                   const RobustnessConfig& config, int threads = 1);

std::string report_to_json(const RobustnessReport& report);
std::string report_to_csv(const RobustnessReport& report);

/// Link from confidence to expected correctness.
enum class LinkKind {
    Identity, ///< expected score = confidence
    Logistic, ///< floor + (ceil - floor) * sigmoid(gain * (confidence - center))
};

/// Synthetic record generator for desk-scale validation. Confidence is drawn
/// from a two-component uniform mixture; the score is the link of the
/// confidence plus clipped Gaussian noise:
///   score = clip(link(confidence) + sigma * gaussian, 0, 1)
/// Draw order per record: mixture branch, confidence, then (when sigma > 0)
/// one gaussian. Ids are "s" + zero-padded index, so id order equals
/// generation order.
struct SyntheticModelSpec {
    int n_samples = 1000;
    LinkKind link = LinkKind::Logistic;
    double link_center = 0.45;
    double link_gain = 6.0;
    double link_floor = 0.2;
    double link_ceil = 0.98;
    double noise_sigma = 0.08;
    // confidence law: with probability primary_weight ~ U[primary_low, primary_high],
    // otherwise ~ U[secondary_low, secondary_high]
    double primary_low = 0.5;
    double primary_high = 1.0;
    double secondary_low = 0.2;
    double secondary_high = 0.8;
    double primary_weight = 0.7;
    std::uint64_t seed = 0;

    void validate() const;
};

std::vector<EvaluationRecord> generate_synthetic(const SyntheticModelSpec& spec);

} // namespace ure
