#include "ure/usable_region.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "ure/errors.hpp"
#include "ure/parallel.hpp"
#include "ure/stats.hpp"

namespace ure {

TiePolicy parse_tie_policy(std::string_view name) {
    if (name == "prefix") return TiePolicy::Prefix;
    if (name == "expand") return TiePolicy::Expand;
    throw InputError("unknown tie policy '" + std::string(name) + "' (valid: prefix, expand)");
}

std::string_view tie_policy_name(TiePolicy policy) {
    return policy == TiePolicy::Prefix ? "prefix" : "expand";
}

std::vector<PrefixEvaluation> scan_prefixes(std::span<const double> scores_desc,
                                            std::span<const double> confidences_desc,
                                            const BootstrapConfig& config, bool use_bootstrap,
                                            int threads) {
    if (scores_desc.empty()) throw InputError("scan_prefixes: empty record set");
    if (scores_desc.size() != confidences_desc.size())
        throw InternalError("scan_prefixes: score/confidence size mismatch");
    config.validate();

    const std::size_t n = scores_desc.size();
    std::vector<PrefixEvaluation> trace(n);
    parallel_for(n, threads, [&](std::size_t i) {
        const std::size_t k = i + 1;
        const auto pool = scores_desc.first(k);
        PrefixEvaluation& row = trace[i];
        row.prefix_size = static_cast<int>(k);
        row.threshold = confidences_desc[i];
        row.mu = anchored_mean(pool);
        if (use_bootstrap) {
            RandomStream stream(derive_seed(config.seed, k));
            row.ci_lower = bootstrap_ci_lower(pool, config, stream);
        } else {
            row.ci_lower = row.mu;
        }
    });
    return trace;
}

UsableRegion select_region(std::vector<PrefixEvaluation>& trace,
                           std::span<const double> confidences_desc, double requirement,
                           TiePolicy tie_policy) {
    if (!(requirement >= 0.0 && requirement <= 1.0))
        throw InputError("requirement must lie in [0, 1], got " + std::to_string(requirement));

    std::size_t best = 0; // prefix size of the largest satisfying prefix, 0 = none
    for (auto& row : trace) {
        row.satisfied = row.ci_lower >= requirement;
        if (row.satisfied) best = static_cast<std::size_t>(row.prefix_size);
    }

    UsableRegion region;
    region.requirement = requirement;
    if (best == 0) return region;

    const std::size_t n = trace.size();
    region.empty = false;
    region.tau_star = confidences_desc[best - 1];
    std::size_t usable = best;
    if (tie_policy == TiePolicy::Expand) {
        while (usable < n && confidences_desc[usable] >= region.tau_star) ++usable;
    }
    region.n_usable = static_cast<int>(usable);
    region.p_star = static_cast<double>(usable) / static_cast<double>(n);
    return region;
}

UreResult ure(std::span<const EvaluationRecord> records, double requirement,
              const BootstrapConfig& config, TiePolicy tie_policy, int threads) {
    if (!(requirement >= 0.0 && requirement <= 1.0))
        throw InputError("requirement must lie in [0, 1], got " + std::to_string(requirement));
    if (records.empty()) throw InputError("ure: empty record set");
    validate_records(records);
    const SortedScores sorted = sort_by_confidence_descending(records);

    UreResult out;
    out.trace = scan_prefixes(sorted.scores, sorted.confidences, config, true, threads);
    out.region = select_region(out.trace, sorted.confidences, requirement, tie_policy);
    return out;
}

UsabilityDiagram usability_diagram(std::span<const EvaluationRecord> records,
                                   std::span<const double> requirements,
                                   const BootstrapConfig& config, std::string model_label,
                                   TiePolicy tie_policy, int threads) {
    if (requirements.empty()) throw InputError("usability_diagram: empty requirement grid");
    for (std::size_t i = 0; i < requirements.size(); ++i) {
        if (!(requirements[i] >= 0.0 && requirements[i] <= 1.0))
            throw InputError("requirement " + std::to_string(requirements[i]) +
                             " outside [0, 1]");
        if (i > 0 && !(requirements[i] > requirements[i - 1]))
            throw InputError("requirement grid must be strictly increasing");
    }
    if (records.empty()) throw InputError("usability_diagram: empty record set");
    validate_records(records);
    const SortedScores sorted = sort_by_confidence_descending(records);

    // One scan; every requirement reuses the same replicate draws.
    std::vector<PrefixEvaluation> trace =
        scan_prefixes(sorted.scores, sorted.confidences, config, true, threads);

    UsabilityDiagram diagram;
    diagram.model_label = std::move(model_label);
    diagram.rows.reserve(requirements.size());
    for (const double requirement : requirements)
        diagram.rows.push_back(select_region(trace, sorted.confidences, requirement, tie_policy));
    return diagram;
}

std::string trace_to_csv(std::span<const PrefixEvaluation> trace) {
    std::string out = "prefix_size,threshold,mu,ci_lower,satisfied\n";
    for (const auto& row : trace) {
        out += fmt::format("{},{},{},{},{}\n", row.prefix_size, row.threshold, row.mu,
                           row.ci_lower, row.satisfied ? "true" : "false");
    }
    return out;
}

} // namespace ure
