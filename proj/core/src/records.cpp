#include "ure/records.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

#include "ure/errors.hpp"

namespace ure {

void validate_records(std::span<const EvaluationRecord> records) {
    std::unordered_set<std::string_view> seen;
    seen.reserve(records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& r = records[i];
        if (r.id.empty())
            throw InputError("record " + std::to_string(i) + ": empty id");
        if (!(r.score >= 0.0 && r.score <= 1.0))
            throw InputError("record '" + r.id + "': score " + std::to_string(r.score) +
                             " outside [0, 1]");
        if (!(r.confidence >= 0.0 && r.confidence <= 1.0))
            throw InputError("record '" + r.id + "': confidence " + std::to_string(r.confidence) +
                             " outside [0, 1]");
        if (!seen.insert(r.id).second)
            throw InputError("duplicate record id '" + r.id + "'");
    }
}

SortedScores sort_by_confidence_descending(std::span<const EvaluationRecord> records) {
    std::vector<std::size_t> order(records.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (records[a].confidence != records[b].confidence)
            return records[a].confidence > records[b].confidence;
        return records[a].id < records[b].id;
    });
    SortedScores out;
    out.scores.reserve(records.size());
    out.confidences.reserve(records.size());
    for (const std::size_t i : order) {
        out.scores.push_back(records[i].score);
        out.confidences.push_back(records[i].confidence);
    }
    return out;
}

} // namespace ure
