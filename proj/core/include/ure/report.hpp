#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ure/usable_region.hpp"

namespace ure {

/// One evaluated model in a comparison table.
struct ModelSummary {
    std::string label;
    int n = 0;                // record count
    double score_mean = 0.0;  // overall correctness
    std::optional<double> ece;
    std::optional<double> ece_binned;
    std::optional<double> ccrc;
    std::optional<double> brier;
    std::optional<double> nll_total;
    std::optional<double> nll_per_pixel;
    std::vector<UsableRegion> regions; // one per table requirement, same order

    bool operator==(const ModelSummary&) const = default;
};

/// Models evaluated on one record schema and one requirement grid.
struct ComparisonTable {
    std::vector<double> requirements; // may be empty (metrics-only table)
    std::vector<ModelSummary> models;

    bool operator==(const ComparisonTable&) const = default;
};

/// Lossless JSON serialization (schema_version 1). summary_from_json is the
/// exact inverse.
std::string summary_to_json(const ComparisonTable& table);
ComparisonTable summary_from_json(const std::string& json_text);

/// CSV rendering. Column order: label,n,score_mean,ece,ece_binned,ccrc,
/// brier,nll_total,nll_per_pixel, then per requirement r the pair
/// tau_star@r,p_star@r. Absent optional metrics render as empty fields;
/// empty regions render tau_star=1, p_star=0.
std::string summary_to_csv(const ComparisonTable& table);

/// Diagram rows as CSV with header `requirement,model,tau_star,p_star,
/// n_usable,empty`, model-major. All diagrams must share one requirement
/// grid.
std::string diagram_to_csv(std::span<const UsabilityDiagram> diagrams);

/// Line chart of p_star versus requirement, one polyline per model, as a
/// standalone SVG document. Byte-deterministic for fixed input. All diagrams
/// must share one requirement grid.
std::string render_diagram_svg(std::span<const UsabilityDiagram> diagrams);

} // namespace ure
