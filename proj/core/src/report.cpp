#include "ure/report.hpp"

#include <algorithm>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "ure/errors.hpp"

namespace ure {

namespace {

void require_shared_grid(std::span<const UsabilityDiagram> diagrams) {
    if (diagrams.empty()) throw InputError("no diagrams to render");
    const auto& first = diagrams.front().rows;
    for (const auto& diagram : diagrams) {
        if (diagram.rows.size() != first.size())
            throw InputError("diagram '" + diagram.model_label +
                             "' uses a different requirement grid");
        for (std::size_t i = 0; i < first.size(); ++i)
            if (diagram.rows[i].requirement != first[i].requirement)
                throw InputError("diagram '" + diagram.model_label +
                                 "' uses a different requirement grid");
    }
}

nlohmann::json region_to_json(const UsableRegion& region) {
    return {{"tau_star", region.tau_star},
            {"p_star", region.p_star},
            {"requirement", region.requirement},
            {"n_usable", region.n_usable},
            {"empty", region.empty}};
}

UsableRegion region_from_json(const nlohmann::json& j) {
    UsableRegion region;
    region.tau_star = j.at("tau_star").get<double>();
    region.p_star = j.at("p_star").get<double>();
    region.requirement = j.at("requirement").get<double>();
    region.n_usable = j.at("n_usable").get<int>();
    region.empty = j.at("empty").get<bool>();
    return region;
}

template <typename T>
void put_optional(nlohmann::json& j, const char* key, const std::optional<T>& value) {
    if (value) j[key] = *value;
}

std::optional<double> get_optional(const nlohmann::json& j, const char* key) {
    if (!j.contains(key)) return std::nullopt;
    return j.at(key).get<double>();
}

} // namespace

std::string summary_to_json(const ComparisonTable& table) {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["requirements"] = table.requirements;
    nlohmann::json models = nlohmann::json::array();
    for (const auto& model : table.models) {
        nlohmann::json m;
        m["label"] = model.label;
        m["n"] = model.n;
        m["score_mean"] = model.score_mean;
        put_optional(m, "ece", model.ece);
        put_optional(m, "ece_binned", model.ece_binned);
        put_optional(m, "ccrc", model.ccrc);
        put_optional(m, "brier", model.brier);
        put_optional(m, "nll_total", model.nll_total);
        put_optional(m, "nll_per_pixel", model.nll_per_pixel);
        nlohmann::json regions = nlohmann::json::array();
        for (const auto& region : model.regions) regions.push_back(region_to_json(region));
        m["regions"] = regions;
        models.push_back(std::move(m));
    }
    j["models"] = models;
    return j.dump(2) + "\n";
}

ComparisonTable summary_from_json(const std::string& json_text) {
    nlohmann::json j = nlohmann::json::parse(json_text, nullptr, false);
    if (j.is_discarded() || !j.is_object())
        throw InputError("summary: not a JSON object");
    if (!j.contains("schema_version") || j["schema_version"] != 1)
        throw InputError("summary: unsupported schema version");

    ComparisonTable table;
    table.requirements = j.at("requirements").get<std::vector<double>>();
    for (const auto& m : j.at("models")) {
        ModelSummary model;
        model.label = m.at("label").get<std::string>();
        model.n = m.at("n").get<int>();
        model.score_mean = m.at("score_mean").get<double>();
        model.ece = get_optional(m, "ece");
        model.ece_binned = get_optional(m, "ece_binned");
        model.ccrc = get_optional(m, "ccrc");
        model.brier = get_optional(m, "brier");
        model.nll_total = get_optional(m, "nll_total");
        model.nll_per_pixel = get_optional(m, "nll_per_pixel");
        for (const auto& r : m.at("regions")) model.regions.push_back(region_from_json(r));
        if (model.regions.size() != table.requirements.size())
            throw InputError("summary: model '" + model.label +
                             "' has a region count differing from the requirement grid");
        table.models.push_back(std::move(model));
    }
    return table;
}

std::string summary_to_csv(const ComparisonTable& table) {
    std::string out = "label,n,score_mean,ece,ece_binned,ccrc,brier,nll_total,nll_per_pixel";
    for (const double r : table.requirements)
        out += fmt::format(",tau_star@{0},p_star@{0}", r);
    out += "\n";

    auto field = [](const std::optional<double>& v) {
        return v ? fmt::format("{}", *v) : std::string();
    };
    for (const auto& model : table.models) {
        out += fmt::format("{},{},{}", model.label, model.n, model.score_mean);
        for (const auto& v : {model.ece, model.ece_binned, model.ccrc, model.brier,
                              model.nll_total, model.nll_per_pixel})
            out += "," + field(v);
        for (const auto& region : model.regions)
            out += fmt::format(",{},{}", region.tau_star, region.p_star);
        out += "\n";
    }
    return out;
}

std::string diagram_to_csv(std::span<const UsabilityDiagram> diagrams) {
    require_shared_grid(diagrams);
    std::string out = "requirement,model,tau_star,p_star,n_usable,empty\n";
    for (const auto& diagram : diagrams) {
        for (const auto& row : diagram.rows) {
            out += fmt::format("{},{},{},{},{},{}\n", row.requirement, diagram.model_label,
                               row.tau_star, row.p_star, row.n_usable,
                               row.empty ? "true" : "false");
        }
    }
    return out;
}

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 480.0;
constexpr double kPlotLeft = 70.0;
constexpr double kPlotTop = 30.0;
constexpr double kPlotRight = 530.0;
constexpr double kPlotBottom = 430.0;

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string xml_escape(const std::string& text) {
    std::string out;
    for (const char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

} // namespace

std::string render_diagram_svg(std::span<const UsabilityDiagram> diagrams) {
    require_shared_grid(diagrams);
    const auto& grid_rows = diagrams.front().rows;
    const double r_min = grid_rows.front().requirement;
    const double r_max = grid_rows.back().requirement;
    const double r_span = r_max - r_min;

    const auto x_of = [&](double requirement) {
        if (r_span <= 0.0) return (kPlotLeft + kPlotRight) / 2.0;
        return kPlotLeft + (requirement - r_min) / r_span * (kPlotRight - kPlotLeft);
    };
    const auto y_of = [&](double p_star) {
        return kPlotBottom - p_star * (kPlotBottom - kPlotTop);
    };

    std::string svg = fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" "
        "viewBox=\"0 0 {0} {1}\" font-family=\"sans-serif\" font-size=\"13\">\n",
        kWidth, kHeight);
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // horizontal gridlines and y tick labels at p* = 0, 0.2, ..., 1
    for (int i = 0; i <= 5; ++i) {
        const double p = static_cast<double>(i) / 5.0;
        const double y = y_of(p);
        svg += fmt::format(
            "<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" "
            "stroke=\"#dddddd\"/>\n",
            kPlotLeft, y, kPlotRight, y);
        svg += fmt::format(
            "<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"end\">{}</text>\n",
            kPlotLeft - 8.0, y + 4.0, p);
    }

    // x ticks on the requirement grid, thinned to at most 10
    const std::size_t stride = (grid_rows.size() + 9) / 10;
    for (std::size_t i = 0; i < grid_rows.size(); i += stride) {
        const double r = grid_rows[i].requirement;
        const double x = x_of(r);
        svg += fmt::format(
            "<line x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{0:.2f}\" y2=\"{2:.2f}\" "
            "stroke=\"#dddddd\"/>\n",
            x, kPlotBottom, kPlotTop);
        svg += fmt::format(
            "<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\">{}</text>\n",
            x, kPlotBottom + 20.0, r);
    }

    // axes
    svg += fmt::format(
        "<line x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{0:.2f}\" y2=\"{2:.2f}\" stroke=\"black\"/>\n",
        kPlotLeft, kPlotTop, kPlotBottom);
    svg += fmt::format(
        "<line x1=\"{0:.2f}\" y1=\"{2:.2f}\" x2=\"{1:.2f}\" y2=\"{2:.2f}\" stroke=\"black\"/>\n",
        kPlotLeft, kPlotRight, kPlotBottom);
    svg += fmt::format(
        "<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\">correctness requirement</text>\n",
        (kPlotLeft + kPlotRight) / 2.0, kHeight - 10.0);
    svg += fmt::format(
        "<text x=\"{0:.2f}\" y=\"{1:.2f}\" text-anchor=\"middle\" "
        "transform=\"rotate(-90 {0:.2f} {1:.2f})\">usable fraction p*</text>\n",
        18.0, (kPlotTop + kPlotBottom) / 2.0);

    // one polyline and one legend entry per model
    for (std::size_t m = 0; m < diagrams.size(); ++m) {
        const char* color = kPalette[m % std::size(kPalette)];
        std::string points;
        for (const auto& row : diagrams[m].rows)
            points += fmt::format("{:.2f},{:.2f} ", x_of(row.requirement), y_of(row.p_star));
        if (!points.empty()) points.pop_back();
        svg += fmt::format(
            "<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"2\" points=\"{}\"/>\n", color,
            points);

        const double ly = kPlotTop + 10.0 + 22.0 * static_cast<double>(m);
        svg += fmt::format(
            "<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"14\" height=\"14\" fill=\"{}\"/>\n",
            kPlotRight + 25.0, ly - 11.0, color);
        svg += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\">{}</text>\n", kPlotRight + 45.0, ly,
                           xml_escape(diagrams[m].model_label));
    }

    svg += "</svg>\n";
    return svg;
}

} // namespace ure
