#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "ure/raster.hpp"
#include "ure/records.hpp"

namespace ure {

struct SkipEntry {
    std::string filename;
    std::string reason;

    bool operator==(const SkipEntry&) const = default;
};

struct ExtractResult {
    std::vector<EvaluationRecord> records;   // sorted by id
    std::vector<SkipEntry> skipped;          // unmatched or unreadable files, sorted
    std::vector<std::string> empty_pair_ids; // pairs scored 1.0 with nothing segmented
};

struct MatchedPair {
    std::string stem;
    std::filesystem::path pred;
    std::filesystem::path gt;
};

struct MatchResult {
    std::vector<MatchedPair> matched;  // sorted by stem
    std::vector<SkipEntry> unmatched; // files present on only one side
};

/// Pairs the regular files of two directories by file stem. A duplicate stem
/// within one directory is a hard error.
MatchResult match_pairs(const std::filesystem::path& pred_dir,
                        const std::filesystem::path& gt_dir);

/// Pairs prediction and ground-truth tensors by file stem and evaluates one
/// record per pair: score = correctness_score, confidence =
/// confidence_estimate, id = stem. Unmatched and unreadable files land in the
/// skip report; a duplicate stem within one directory is a hard error (silent
/// mispairing would be worse), as is an empty match set. Output order is by
/// id, independent of filesystem enumeration order.
ExtractResult extract_records(const std::filesystem::path& pred_dir,
                              const std::filesystem::path& gt_dir, MetricKind metric,
                              double threshold = 0.5);

/// Renders skip entries and diagnostics in the skip-report format:
/// one `skipped<TAB>file<TAB>reason` or `diagnostic<TAB>id<TAB>message` line
/// per event.
std::string skip_report(const ExtractResult& result);

} // namespace ure
