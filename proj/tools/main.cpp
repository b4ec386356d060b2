// ure: usable-region and calibration evaluation for prediction models.
//
// Exit codes: 0 success, 2 invalid input or configuration, 3 internal error.
// Diagnostics are written to stderr as machine-parseable `error: ...` lines.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "manifest.hpp"
#include "ure/bootstrap.hpp"
#include "ure/errors.hpp"
#include "ure/extract.hpp"
#include "ure/metrics.hpp"
#include "ure/records_io.hpp"
#include "ure/report.hpp"
#include "ure/robustness.hpp"
#include "ure/stats.hpp"
#include "ure/tensor_file.hpp"
#include "ure/usable_region.hpp"
#include "ure/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct BootstrapFlags {
    int replicates = 99;
    double ci_percentile = 2.5;
    std::string statistic = "mean";
    std::uint64_t seed = 0;
    std::string tie_policy = "prefix";

    void attach(CLI::App* cmd, bool with_tie_policy = true) {
        cmd->add_option("--replicates", replicates, "bootstrap resample count B")
            ->capture_default_str();
        cmd->add_option("--ci-percentile", ci_percentile,
                        "lower-tail percentile of the replicate statistics, in (0, 50)")
            ->capture_default_str();
        cmd->add_option("--statistic", statistic, "resample statistic: mean, p2 or p5")
            ->capture_default_str();
        cmd->add_option("--seed", seed, "root seed for all randomness")->capture_default_str();
        if (with_tie_policy)
            cmd->add_option("--tie-policy", tie_policy,
                            "boundary-tie handling: prefix or expand")
                ->capture_default_str();
    }

    ure::BootstrapConfig config() const {
        ure::BootstrapConfig cfg;
        cfg.replicates = replicates;
        cfg.ci_percentile = ci_percentile;
        cfg.statistic = ure::parse_statistic(statistic);
        cfg.seed = seed;
        cfg.validate();
        return cfg;
    }

    json config_json() const {
        return {{"replicates", replicates},
                {"ci_percentile", ci_percentile},
                {"statistic", statistic},
                {"seed", seed}};
    }
};

std::vector<fs::path> directory_files(const fs::path& dir) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file()) files.push_back(entry.path());
    return files;
}

std::vector<double> parse_requirement_grid(const std::string& text) {
    const std::size_t c1 = text.find(':');
    const std::size_t c2 = c1 == std::string::npos ? std::string::npos : text.find(':', c1 + 1);
    if (c2 == std::string::npos || text.find(':', c2 + 1) != std::string::npos)
        throw ure::InputError("requirement grid must be start:stop:step, got '" + text + "'");
    double start = 0.0;
    double stop = 0.0;
    double step = 0.0;
    try {
        start = std::stod(text.substr(0, c1));
        stop = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
        step = std::stod(text.substr(c2 + 1));
    } catch (const std::exception&) {
        throw ure::InputError("requirement grid must be numeric start:stop:step, got '" + text +
                              "'");
    }
    if (!(step > 0.0)) throw ure::InputError("requirement grid step must be > 0");
    if (!(start <= stop)) throw ure::InputError("requirement grid start must be <= stop");

    // inclusive of stop within 1e-9
    std::vector<double> grid;
    for (int i = 0;; ++i) {
        const double value = start + static_cast<double>(i) * step;
        if (value > stop + 1e-9) break;
        grid.push_back(value);
    }
    return grid;
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> parts;
    std::size_t begin = 0;
    while (begin <= text.size()) {
        const std::size_t comma = text.find(',', begin);
        const std::size_t end = comma == std::string::npos ? text.size() : comma;
        parts.push_back(text.substr(begin, end - begin));
        if (comma == std::string::npos) break;
        begin = comma + 1;
    }
    return parts;
}

// ---------------------------------------------------------------------------
// scores

struct ScoresOptions {
    std::string pred_dir;
    std::string gt_dir;
    std::string metric = "f1";
    double threshold = 0.5;
    std::string out;
    std::string skip_out;
    std::string manifest_out;
};

void run_scores(const ScoresOptions& opt) {
    const ure::MetricKind metric = ure::parse_metric_kind(opt.metric);
    const ure::ExtractResult result =
        ure::extract_records(opt.pred_dir, opt.gt_dir, metric, opt.threshold);

    const std::string skip_out =
        opt.skip_out.empty() ? opt.out + ".report.txt" : opt.skip_out;
    const std::string manifest_out =
        opt.manifest_out.empty() ? opt.out + ".manifest.json" : opt.manifest_out;

    ure::write_records(result.records, opt.out);
    ure::cli::write_text_file(skip_out, ure::skip_report(result));

    json config = {{"pred_dir", opt.pred_dir}, {"gt_dir", opt.gt_dir},
                   {"metric", opt.metric},     {"threshold", opt.threshold},
                   {"out", opt.out},           {"skip_out", skip_out}};
    std::vector<fs::path> inputs = directory_files(opt.pred_dir);
    for (auto& path : directory_files(opt.gt_dir)) inputs.push_back(std::move(path));
    ure::cli::write_text_file(
        manifest_out, ure::cli::manifest_json("scores", config, std::move(inputs),
                                              {opt.out, skip_out}));

    std::cout << fmt::format("records={} skipped={} empty_pairs={}\n", result.records.size(),
                             result.skipped.size(), result.empty_pair_ids.size());
}

// ---------------------------------------------------------------------------
// eval

struct EvalOptions {
    std::string records;
    std::string metrics = "ccrc,ece,ece-binned";
    int bins = 15;
    std::string format = "json";
    std::string label;
    std::string pred_dir;
    std::string gt_dir;
    double threshold = 0.5;
    std::string out;
    std::string manifest_out;
};

void run_eval(const EvalOptions& opt) {
    if (opt.format != "json" && opt.format != "csv")
        throw ure::InputError("unknown format '" + opt.format + "' (valid: json, csv)");

    const std::vector<ure::EvaluationRecord> records = ure::read_records(opt.records);
    if (records.empty()) throw ure::InputError("'" + opt.records + "' holds no records");

    ure::ModelSummary summary;
    summary.label = opt.label.empty() ? fs::path(opt.records).stem().string() : opt.label;
    summary.n = static_cast<int>(records.size());
    std::vector<double> scores;
    scores.reserve(records.size());
    for (const auto& r : records) scores.push_back(r.score);
    summary.score_mean = ure::anchored_mean(scores);

    bool needs_rasters = false;
    for (const std::string& name : split_list(opt.metrics)) {
        if (name == "ccrc") {
            summary.ccrc = ure::ccrc(records);
        } else if (name == "ece") {
            summary.ece = ure::ece_per_sample(records);
        } else if (name == "ece-binned") {
            summary.ece_binned = ure::ece_binned(records, opt.bins);
        } else if (name == "brier" || name == "nll") {
            needs_rasters = true;
        } else {
            throw ure::InputError("unknown metric '" + name +
                                  "' (valid: ccrc, ece, ece-binned, brier, nll)");
        }
    }

    std::vector<fs::path> inputs = {opt.records};
    if (needs_rasters) {
        if (opt.pred_dir.empty() || opt.gt_dir.empty())
            throw ure::InputError(
                "brier/nll need probability maps: provide --pred-dir and --gt-dir");
        const ure::MatchResult match = ure::match_pairs(opt.pred_dir, opt.gt_dir);
        if (match.matched.empty()) throw ure::InputError("zero matched pairs");
        std::vector<ure::RasterPair> pairs;
        pairs.reserve(match.matched.size());
        for (const auto& m : match.matched) pairs.push_back(ure::load_pair(m.pred, m.gt));
        for (const std::string& name : split_list(opt.metrics)) {
            if (name == "brier") summary.brier = ure::brier(pairs);
            if (name == "nll") {
                const ure::NllResult result = ure::nll(pairs);
                summary.nll_total = result.total;
                summary.nll_per_pixel = result.per_pixel_mean;
            }
        }
        for (auto& path : directory_files(opt.pred_dir)) inputs.push_back(std::move(path));
        for (auto& path : directory_files(opt.gt_dir)) inputs.push_back(std::move(path));
    }

    ure::ComparisonTable table;
    table.models.push_back(std::move(summary));
    const std::string rendered =
        opt.format == "json" ? ure::summary_to_json(table) : ure::summary_to_csv(table);
    ure::cli::write_text_file(opt.out, rendered);

    json config = {{"records", opt.records}, {"metrics", opt.metrics}, {"bins", opt.bins},
                   {"format", opt.format},   {"label", summary.label}, {"out", opt.out}};
    if (!opt.pred_dir.empty()) config["pred_dir"] = opt.pred_dir;
    if (!opt.gt_dir.empty()) config["gt_dir"] = opt.gt_dir;
    const std::string manifest_out =
        opt.manifest_out.empty() ? opt.out + ".manifest.json" : opt.manifest_out;
    ure::cli::write_text_file(
        manifest_out, ure::cli::manifest_json("eval", config, std::move(inputs), {opt.out}));
}

// ---------------------------------------------------------------------------
// ure

struct UreOptions {
    std::string records;
    double requirement = 0.9;
    BootstrapFlags bootstrap;
    std::string trace_out;
    std::string manifest_out;
};

void run_ure(const UreOptions& opt, int threads) {
    const std::vector<ure::EvaluationRecord> records = ure::read_records(opt.records);
    const ure::UreResult result =
        ure::ure(records, opt.requirement, opt.bootstrap.config(),
                 ure::parse_tie_policy(opt.bootstrap.tie_policy), threads);

    std::cout << fmt::format("tau_star={}\np_star={}\nn_usable={}\nempty={}\n",
                             result.region.tau_star, result.region.p_star,
                             result.region.n_usable, result.region.empty ? "true" : "false");

    std::vector<std::string> outputs;
    if (!opt.trace_out.empty()) {
        ure::cli::write_text_file(opt.trace_out, ure::trace_to_csv(result.trace));
        outputs.push_back(opt.trace_out);
    }

    std::string manifest_out = opt.manifest_out;
    if (manifest_out.empty() && !opt.trace_out.empty())
        manifest_out = opt.trace_out + ".manifest.json";
    if (!manifest_out.empty()) {
        json config = opt.bootstrap.config_json();
        config["records"] = opt.records;
        config["requirement"] = opt.requirement;
        config["tie_policy"] = opt.bootstrap.tie_policy;
        if (!opt.trace_out.empty()) config["trace_out"] = opt.trace_out;
        ure::cli::write_text_file(
            manifest_out, ure::cli::manifest_json("ure", config, {opt.records}, outputs));
    }
}

// ---------------------------------------------------------------------------
// diagram

struct DiagramOptions {
    std::vector<std::string> records;
    std::vector<std::string> labels;
    std::string requirements;
    BootstrapFlags bootstrap;
    std::string out_csv;
    std::string out_svg;
    std::string manifest_out;
};

void run_diagram(const DiagramOptions& opt, int threads) {
    if (!opt.labels.empty() && opt.labels.size() != opt.records.size())
        throw ure::InputError("--label count must match --records count");
    const std::vector<double> grid = parse_requirement_grid(opt.requirements);
    const ure::BootstrapConfig config = opt.bootstrap.config();
    const ure::TiePolicy tie_policy = ure::parse_tie_policy(opt.bootstrap.tie_policy);

    std::vector<std::string> labels;
    for (std::size_t i = 0; i < opt.records.size(); ++i) {
        std::string label =
            i < opt.labels.size() ? opt.labels[i] : fs::path(opt.records[i]).stem().string();
        for (const auto& existing : labels)
            if (existing == label) throw ure::InputError("duplicate model label '" + label + "'");
        labels.push_back(std::move(label));
    }

    std::vector<ure::UsabilityDiagram> diagrams;
    for (std::size_t i = 0; i < opt.records.size(); ++i) {
        const std::vector<ure::EvaluationRecord> records = ure::read_records(opt.records[i]);
        diagrams.push_back(
            ure::usability_diagram(records, grid, config, labels[i], tie_policy, threads));
    }

    ure::cli::write_text_file(opt.out_csv, ure::diagram_to_csv(diagrams));
    std::vector<std::string> outputs = {opt.out_csv};
    if (!opt.out_svg.empty()) {
        ure::cli::write_text_file(opt.out_svg, ure::render_diagram_svg(diagrams));
        outputs.push_back(opt.out_svg);
    }

    json config_json = opt.bootstrap.config_json();
    config_json["records"] = opt.records;
    config_json["labels"] = labels;
    config_json["requirements"] = opt.requirements;
    config_json["requirement_grid"] = grid;
    config_json["tie_policy"] = opt.bootstrap.tie_policy;
    config_json["out_csv"] = opt.out_csv;
    if (!opt.out_svg.empty()) config_json["out_svg"] = opt.out_svg;
    const std::string manifest_out =
        opt.manifest_out.empty() ? opt.out_csv + ".manifest.json" : opt.manifest_out;
    std::vector<fs::path> inputs(opt.records.begin(), opt.records.end());
    ure::cli::write_text_file(manifest_out, ure::cli::manifest_json("diagram", config_json,
                                                                    std::move(inputs), outputs));
}

// ---------------------------------------------------------------------------
// robustness

struct RobustnessOptions {
    std::string records;
    double requirement = 0.9;
    int splits = 100;
    int rounds = 20;
    bool no_bootstrap = false;
    BootstrapFlags bootstrap;
    std::string out;
    std::string manifest_out;
};

void run_robustness(const RobustnessOptions& opt, int threads) {
    const std::vector<ure::EvaluationRecord> records = ure::read_records(opt.records);

    ure::RobustnessConfig config;
    config.splits_per_round = opt.splits;
    config.rounds = opt.rounds;
    config.requirement = opt.requirement;
    config.use_bootstrap = !opt.no_bootstrap;
    config.bootstrap = opt.bootstrap.config();
    config.seed = opt.bootstrap.seed;

    const ure::RobustnessReport report = ure::estimate_and_test(records, config, threads);
    ure::cli::write_text_file(opt.out, ure::report_to_json(report));

    json config_json = opt.bootstrap.config_json();
    config_json["records"] = opt.records;
    config_json["requirement"] = opt.requirement;
    config_json["splits"] = opt.splits;
    config_json["rounds"] = opt.rounds;
    config_json["use_bootstrap"] = config.use_bootstrap;
    config_json["out"] = opt.out;
    const std::string manifest_out =
        opt.manifest_out.empty() ? opt.out + ".manifest.json" : opt.manifest_out;
    ure::cli::write_text_file(manifest_out, ure::cli::manifest_json("robustness", config_json,
                                                                    {opt.records}, {opt.out}));

    std::cout << fmt::format("violation_mean_pct={}\nviolation_std_pct={}\n",
                             report.violation_mean, report.violation_std);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"usable-region and calibration evaluation for prediction models"};
    app.set_version_flag("--version", std::string(ure::kToolVersion));
    app.require_subcommand(1);

    int threads = 1;
    app.add_option("--threads", threads, "worker threads; changes speed, never output")
        ->envname("URE_THREADS")
        ->capture_default_str();

    ScoresOptions scores;
    CLI::App* scores_cmd =
        app.add_subcommand("scores", "score prediction/ground-truth pairs into a records CSV");
    scores_cmd->add_option("--pred-dir", scores.pred_dir, "directory of probability-map tensors")
        ->required();
    scores_cmd->add_option("--gt-dir", scores.gt_dir, "directory of ground-truth mask tensors")
        ->required();
    scores_cmd->add_option("--metric", scores.metric, "f1, dice or pixel-accuracy")
        ->capture_default_str();
    scores_cmd->add_option("--threshold", scores.threshold, "foreground binarization threshold")
        ->capture_default_str();
    scores_cmd->add_option("--out", scores.out, "output records CSV")->required();
    scores_cmd->add_option("--skip-out", scores.skip_out,
                           "skip report path (default: <out>.report.txt)");
    scores_cmd->add_option("--manifest-out", scores.manifest_out,
                           "manifest path (default: <out>.manifest.json)");
    scores_cmd->callback([&] { run_scores(scores); });

    EvalOptions eval;
    CLI::App* eval_cmd = app.add_subcommand("eval", "summarize reliability metrics of a records CSV");
    eval_cmd->add_option("--records", eval.records, "records CSV")->required();
    eval_cmd->add_option("--metrics", eval.metrics,
                         "comma list of ccrc, ece, ece-binned, brier, nll")
        ->capture_default_str();
    eval_cmd->add_option("--bins", eval.bins, "bin count for ece-binned")->capture_default_str();
    eval_cmd->add_option("--format", eval.format, "json or csv")->capture_default_str();
    eval_cmd->add_option("--label", eval.label, "model label (default: records file stem)");
    eval_cmd->add_option("--pred-dir", eval.pred_dir, "probability maps, needed for brier/nll");
    eval_cmd->add_option("--gt-dir", eval.gt_dir, "ground-truth masks, needed for brier/nll");
    eval_cmd->add_option("--out", eval.out, "output summary file")->required();
    eval_cmd->add_option("--manifest-out", eval.manifest_out,
                         "manifest path (default: <out>.manifest.json)");
    eval_cmd->callback([&] { run_eval(eval); });

    UreOptions ure_opt;
    CLI::App* ure_cmd = app.add_subcommand("ure", "estimate the usable region of a records CSV");
    ure_cmd->add_option("--records", ure_opt.records, "records CSV")->required();
    ure_cmd->add_option("--requirement", ure_opt.requirement, "correctness requirement in [0, 1]")
        ->required();
    ure_opt.bootstrap.attach(ure_cmd);
    ure_cmd->add_option("--trace-out", ure_opt.trace_out, "per-prefix trace CSV path");
    ure_cmd->add_option("--manifest-out", ure_opt.manifest_out,
                        "manifest path (default: <trace-out>.manifest.json when tracing)");
    ure_cmd->callback([&] { run_ure(ure_opt, threads); });

    DiagramOptions diagram;
    CLI::App* diagram_cmd =
        app.add_subcommand("diagram", "usable regions over a requirement grid, per model");
    diagram_cmd->add_option("--records", diagram.records, "records CSV (repeat per model)")
        ->required();
    diagram_cmd->add_option("--label", diagram.labels, "model label (repeat per model)");
    diagram_cmd
        ->add_option("--requirements", diagram.requirements,
                     "requirement grid start:stop:step, stop inclusive")
        ->required();
    diagram.bootstrap.attach(diagram_cmd);
    diagram_cmd->add_option("--out-csv", diagram.out_csv, "diagram rows CSV")->required();
    diagram_cmd->add_option("--out-svg", diagram.out_svg, "line-chart SVG");
    diagram_cmd->add_option("--manifest-out", diagram.manifest_out,
                            "manifest path (default: <out-csv>.manifest.json)");
    diagram_cmd->callback([&] { run_diagram(diagram, threads); });

    RobustnessOptions robustness;
    CLI::App* robustness_cmd =
        app.add_subcommand("robustness", "estimate-and-test splits with violation frequencies");
    robustness_cmd->add_option("--records", robustness.records, "records CSV")->required();
    robustness_cmd
        ->add_option("--requirement", robustness.requirement, "correctness requirement in [0, 1]")
        ->required();
    robustness_cmd->add_option("--splits", robustness.splits, "splits per round")
        ->capture_default_str();
    robustness_cmd->add_option("--rounds", robustness.rounds, "independent rounds")
        ->capture_default_str();
    robustness_cmd->add_flag("--no-bootstrap", robustness.no_bootstrap,
                             "ablation: substitute the pool mean for the bootstrap lower bound");
    robustness.bootstrap.attach(robustness_cmd, /*with_tie_policy=*/false);
    robustness_cmd->add_option("--out", robustness.out, "report JSON path")->required();
    robustness_cmd->add_option("--manifest-out", robustness.manifest_out,
                               "manifest path (default: <out>.manifest.json)");
    robustness_cmd->callback([&] { run_robustness(robustness, threads); });

    try {
        app.parse(argc, argv);
        return 0;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ure::InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ure::InternalError& e) {
        std::cerr << "error: internal: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: internal: " << e.what() << "\n";
        return 3;
    }
}
