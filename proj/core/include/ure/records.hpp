#pragma once

#include <span>
#include <string>
#include <vector>

namespace ure {

/// One test sample: correctness score and model confidence, both in [0, 1].
struct EvaluationRecord {
    std::string id;
    double score = 0.0;
    double confidence = 0.0;

    bool operator==(const EvaluationRecord&) const = default;
};

/// Checks record invariants: non-empty unique ids, score and confidence in
/// [0, 1]. Throws InputError naming the first offending record.
void validate_records(std::span<const EvaluationRecord> records);

/// Scores and confidences of `records` sorted by confidence descending,
/// ties broken by ascending id. Index i of both vectors refers to the same
/// record.
struct SortedScores {
    std::vector<double> scores;
    std::vector<double> confidences;
};

SortedScores sort_by_confidence_descending(std::span<const EvaluationRecord> records);

} // namespace ure
