#include <doctest.h>

#include <string>
#include <vector>

#include "ure/errors.hpp"
#include "ure/report.hpp"

using ure::ComparisonTable;
using ure::ModelSummary;
using ure::UsableRegion;
using ure::UsabilityDiagram;

namespace {

UsableRegion region(double requirement, double tau, double p, int n, bool empty = false) {
    return {tau, p, requirement, n, empty};
}

ComparisonTable sample_table() {
    ComparisonTable table;
    table.requirements = {0.8, 0.9};
    ModelSummary a;
    a.label = "unet";
    a.n = 20;
    a.score_mean = 0.85;
    a.ece = 0.11;
    a.ccrc = 0.72;
    a.regions = {region(0.8, 0.6, 0.75, 15), region(0.9, 1.0, 0.0, 0, true)};
    ModelSummary b;
    b.label = "dcn";
    b.n = 20;
    b.score_mean = 0.8;
    b.ece = 0.09;
    b.ece_binned = 0.07;
    b.ccrc = 0.81;
    b.brier = 0.04;
    b.nll_total = 123.5;
    b.nll_per_pixel = 0.12;
    b.regions = {region(0.8, 0.55, 0.8, 16), region(0.9, 0.9, 0.25, 5)};
    table.models = {a, b};
    return table;
}

UsabilityDiagram diagram(const std::string& label, std::vector<double> p_stars) {
    UsabilityDiagram d;
    d.model_label = label;
    const std::vector<double> grid = {0.7, 0.8, 0.9};
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const int n = static_cast<int>(p_stars[i] * 20);
        d.rows.push_back(region(grid[i], 1.0 - p_stars[i], p_stars[i], n, p_stars[i] == 0.0));
    }
    return d;
}

} // namespace

TEST_CASE("summary JSON round-trips losslessly") {
    const ComparisonTable table = sample_table();
    const std::string json_text = ure::summary_to_json(table);
    CHECK(json_text.find("\"schema_version\": 1") != std::string::npos);
    CHECK(ure::summary_from_json(json_text) == table);

    CHECK_THROWS_AS(ure::summary_from_json("[]"), ure::InputError);
    CHECK_THROWS_AS(ure::summary_from_json("{\"schema_version\": 2}"), ure::InputError);
}

TEST_CASE("summary CSV column order and empty-region serialization") {
    const std::string csv = ure::summary_to_csv(sample_table());
    CHECK(csv.rfind("label,n,score_mean,ece,ece_binned,ccrc,brier,nll_total,nll_per_pixel,"
                    "tau_star@0.8,p_star@0.8,tau_star@0.9,p_star@0.9\n",
                    0) == 0);
    // absent optional metrics render as empty fields; the empty region as 1, 0
    CHECK(csv.find("unet,20,0.85,0.11,,0.72,,,,0.6,0.75,1,0\n") != std::string::npos);
    CHECK(csv.find("dcn,20,0.8,0.09,0.07,0.81,0.04,123.5,0.12,0.55,0.8,0.9,0.25\n") !=
          std::string::npos);
}

TEST_CASE("diagram CSV is model-major with the documented header") {
    const std::vector<UsabilityDiagram> diagrams = {diagram("a", {1.0, 0.8, 0.2}),
                                                    diagram("b", {0.9, 0.5, 0.0})};
    const std::string csv = ure::diagram_to_csv(diagrams);
    const std::string expected =
        "requirement,model,tau_star,p_star,n_usable,empty\n"
        "0.7,a,0,1,20,false\n"
        "0.8,a,0.19999999999999996,0.8,16,false\n"
        "0.9,a,0.8,0.2,4,false\n"
        "0.7,b,0.09999999999999998,0.9,18,false\n"
        "0.8,b,0.5,0.5,10,false\n"
        "0.9,b,1,0,0,true\n";
    CHECK(csv == expected);
}

TEST_CASE("diagram rendering validates the shared grid") {
    std::vector<UsabilityDiagram> diagrams = {diagram("a", {1.0, 0.8, 0.2})};
    UsabilityDiagram off = diagram("b", {0.9, 0.5, 0.0});
    off.rows[1].requirement = 0.81;
    diagrams.push_back(off);
    CHECK_THROWS_AS(ure::diagram_to_csv(diagrams), ure::InputError);
    CHECK_THROWS_AS(ure::render_diagram_svg(diagrams), ure::InputError);
    CHECK_THROWS_AS(ure::render_diagram_svg({}), ure::InputError);
}

TEST_CASE("SVG rendering is byte-deterministic and keeps dominance visible") {
    const std::vector<UsabilityDiagram> diagrams = {diagram("top", {1.0, 1.0, 1.0}),
                                                    diagram("low", {0.5, 0.4, 0.0})};
    const std::string svg = ure::render_diagram_svg(diagrams);
    CHECK(svg == ure::render_diagram_svg(diagrams));
    CHECK(svg.rfind("<svg ", 0) == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(svg.find(">top</text>") != std::string::npos);
    CHECK(svg.find(">low</text>") != std::string::npos);

    // the all-ones model draws a horizontal line at the top of the plot area
    CHECK(svg.find("points=\"70.00,30.00 300.00,30.00 530.00,30.00\"") != std::string::npos);
    CHECK(std::count(svg.begin(), svg.end(), '\n') > 10);
}

TEST_CASE("SVG escapes labels") {
    const std::vector<UsabilityDiagram> diagrams = {diagram("<a&b>", {1.0, 0.5, 0.0})};
    const std::string svg = ure::render_diagram_svg(diagrams);
    CHECK(svg.find("&lt;a&amp;b&gt;") != std::string::npos);
    CHECK(svg.find("<a&b>") == std::string::npos);
}

TEST_CASE("single-requirement diagrams still render") {
    UsabilityDiagram d;
    d.model_label = "solo";
    d.rows = {region(0.9, 0.7, 0.5, 10)};
    const std::string svg = ure::render_diagram_svg({&d, 1});
    CHECK(svg.find("polyline") != std::string::npos);
}
