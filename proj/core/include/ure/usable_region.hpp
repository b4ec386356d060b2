#pragma once

#include <span>
#include <string>
#include <vector>

#include "ure/bootstrap.hpp"
#include "ure/records.hpp"

namespace ure {

/// How confidence ties at the region boundary are counted.
enum class TiePolicy {
    /// Count exactly the satisfying prefix, even if records outside it share
    /// the boundary confidence. Faithful to the reference scan.
    Prefix,
    /// Extend the region to every record with confidence >= tau_star, so the
    /// reported size matches the deployment rule "use predictions with
    /// confidence >= tau_star".
    Expand,
};

TiePolicy parse_tie_policy(std::string_view name);
std::string_view tie_policy_name(TiePolicy policy);

/// Diagnostics for one confidence-ordered prefix.
struct PrefixEvaluation {
    int prefix_size = 0;     // count of records in the prefix
    double threshold = 0.0;  // confidence of the prefix's last record
    double mu = 0.0;         // mean correctness of the prefix pool
    double ci_lower = 0.0;   // bootstrap lower bound of the configured statistic
    bool satisfied = false;  // ci_lower >= requirement

    bool operator==(const PrefixEvaluation&) const = default;
};

/// Result of the usable-region scan for one requirement.
struct UsableRegion {
    double tau_star = 1.0;    // lowest usable confidence threshold
    double p_star = 0.0;      // usable fraction of the test set
    double requirement = 0.0; // correctness requirement the region satisfies
    int n_usable = 0;         // record count inside the region
    bool empty = true;        // no prefix satisfied the requirement

    bool operator==(const UsableRegion&) const = default;
};

struct UreResult {
    UsableRegion region;
    std::vector<PrefixEvaluation> trace; // one entry per prefix size 1..n
};

/// Usable Region Estimate.
///
/// Sorts records by confidence descending (ties by ascending id) and scans
/// every prefix of size k = 1..n. For each prefix the bootstrap lower bound
/// of the configured statistic over the prefix's scores is computed on a
/// stream seeded with derive_seed(config.seed, k); prefixes are therefore
/// independent and the output is identical for every thread count. The
/// region is defined by the largest prefix whose lower bound meets the
/// requirement -- intermediate failing prefixes do not stop the scan -- with
/// tau_star the confidence of that prefix's last record and p_star = k/n.
/// When no prefix satisfies the requirement the region is empty with
/// tau_star = 1 and p_star = 0.
UreResult ure(std::span<const EvaluationRecord> records, double requirement,
              const BootstrapConfig& config, TiePolicy tie_policy = TiePolicy::Prefix,
              int threads = 1);

/// One model's usable regions over an increasing requirement grid.
struct UsabilityDiagram {
    std::string model_label;
    std::vector<UsableRegion> rows; // one per requirement, ascending
};

/// Sweeps `requirements` (strictly increasing, each in [0, 1]) over a single
/// set of per-prefix bootstrap evaluations: replicate draws are keyed only by
/// seed and prefix index and are shared across requirements, which makes
/// p_star non-increasing and tau_star non-decreasing along the grid.
UsabilityDiagram usability_diagram(std::span<const EvaluationRecord> records,
                                   std::span<const double> requirements,
                                   const BootstrapConfig& config, std::string model_label,
                                   TiePolicy tie_policy = TiePolicy::Prefix, int threads = 1);

// Requirement-independent pieces of the scan, exposed for reuse by the
// robustness harness and for property tests that operate on raw score lists
// (no [0, 1] validation is applied here).

/// Per-prefix threshold, mean and bootstrap lower bound over scores already
/// sorted by confidence descending. `satisfied` is left false. When
/// `use_bootstrap` is false the mean substitutes for the lower bound.
std::vector<PrefixEvaluation> scan_prefixes(std::span<const double> scores_desc,
                                            std::span<const double> confidences_desc,
                                            const BootstrapConfig& config, bool use_bootstrap,
                                            int threads);

/// Applies `requirement` to a scanned trace: fills `satisfied` flags and
/// returns the region of the largest satisfying prefix under `tie_policy`.
UsableRegion select_region(std::vector<PrefixEvaluation>& trace,
                           std::span<const double> confidences_desc, double requirement,
                           TiePolicy tie_policy);

/// Serializes a trace as CSV with header `prefix_size,threshold,mu,ci_lower,
/// satisfied`; floats use the shortest round-trip decimal form.
std::string trace_to_csv(std::span<const PrefixEvaluation> trace);

} // namespace ure
