#include "ure/extract.hpp"

#include <algorithm>
#include <map>

#include "ure/errors.hpp"
#include "ure/tensor_file.hpp"

namespace ure {

namespace {

// stem -> filename, sorted by stem
std::map<std::string, std::filesystem::path> list_by_stem(const std::filesystem::path& dir) {
    if (!std::filesystem::is_directory(dir))
        throw InputError("'" + dir.string() + "' is not a directory");
    std::map<std::string, std::filesystem::path> out;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        const std::string stem = entry.path().stem().string();
        auto [it, inserted] = out.emplace(stem, entry.path());
        if (!inserted)
            throw InputError("ambiguous stem '" + stem + "' in '" + dir.string() + "': '" +
                             it->second.filename().string() + "' vs '" +
                             entry.path().filename().string() + "'");
    }
    return out;
}

} // namespace

MatchResult match_pairs(const std::filesystem::path& pred_dir,
                        const std::filesystem::path& gt_dir) {
    const auto preds = list_by_stem(pred_dir);
    const auto gts = list_by_stem(gt_dir);

    MatchResult result;
    for (const auto& [stem, pred_path] : preds) {
        const auto gt = gts.find(stem);
        if (gt == gts.end())
            result.unmatched.push_back({pred_path.filename().string(),
                                        "no matching ground truth"});
        else
            result.matched.push_back({stem, pred_path, gt->second});
    }
    for (const auto& [stem, gt_path] : gts) {
        if (!preds.contains(stem))
            result.unmatched.push_back({gt_path.filename().string(), "no matching prediction"});
    }
    return result;
}

ExtractResult extract_records(const std::filesystem::path& pred_dir,
                              const std::filesystem::path& gt_dir, MetricKind metric,
                              double threshold) {
    MatchResult match = match_pairs(pred_dir, gt_dir);

    ExtractResult result;
    result.skipped = std::move(match.unmatched);
    for (const auto& pair_paths : match.matched) {
        try {
            const RasterPair pair = load_pair(pair_paths.pred, pair_paths.gt);
            ScoreDiagnostics diag;
            const double score = correctness_score(pair, metric, threshold, &diag);
            if (diag.empty_pair) result.empty_pair_ids.push_back(pair_paths.stem);
            result.records.push_back({pair_paths.stem, score, confidence_estimate(pair)});
        } catch (const InputError& e) {
            result.skipped.push_back({pair_paths.pred.filename().string(), e.what()});
        }
    }

    if (result.records.empty()) throw InputError("zero matched pairs");

    // match_pairs iterates in stem order already; keep the contract explicit
    std::sort(result.records.begin(), result.records.end(),
              [](const auto& a, const auto& b) { return a.id < b.id; });
    std::sort(result.skipped.begin(), result.skipped.end(), [](const auto& a, const auto& b) {
        return a.filename != b.filename ? a.filename < b.filename : a.reason < b.reason;
    });
    std::sort(result.empty_pair_ids.begin(), result.empty_pair_ids.end());
    return result;
}

std::string skip_report(const ExtractResult& result) {
    std::string out;
    for (const auto& entry : result.skipped)
        out += "skipped\t" + entry.filename + "\t" + entry.reason + "\n";
    for (const auto& id : result.empty_pair_ids)
        out += "diagnostic\t" + id + "\tempty prediction and ground-truth masks; scored 1.0\n";
    return out;
}

} // namespace ure
