#include <doctest.h>

#include <random>

#include "narrative/cluster.hpp"
#include "narrative/error.hpp"
#include "narrative/svg.hpp"

using namespace narrative;

TEST_CASE("line_chart output is deterministic and well-formed") {
    svg::Series s;
    s.name = "arc";
    s.values = {0.1, 0.4, 0.2, 0.9, 0.5};

    svg::ChartOptions opt;
    opt.title = "Title <with> & markup";

    const std::string a = svg::line_chart({s}, opt);
    const std::string b = svg::line_chart({s}, opt);
    CHECK(a == b);
    CHECK(a.find("<svg") != std::string::npos);
    CHECK(a.find("</svg>") != std::string::npos);
    CHECK(a.find("<polyline") != std::string::npos);
    CHECK(a.find("&lt;with&gt;") != std::string::npos);
    CHECK(a.find("&amp;") != std::string::npos);
}

TEST_CASE("line_chart rejects empty input") {
    CHECK_THROWS_AS(svg::line_chart({}, {}), InvalidArgument);
    svg::Series empty;
    CHECK_THROWS_AS(svg::line_chart({empty}, {}), InvalidArgument);
}

TEST_CASE("dendrogram renders and respects truncation") {
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> uniform(-1.0, 1.0);
    std::vector<arcshape::NormalizedArc> arcs(12);
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < arcs.size(); ++i) {
        arcs[i].doc = "d" + std::to_string(i);
        arcs[i].values.resize(6);
        for (double& v : arcs[i].values) v = uniform(rng);
        labels.push_back(arcs[i].doc);
    }
    const auto linkage = cluster::ward_linkage(cluster::distance_matrix(arcs));

    svg::DendrogramOptions opt;
    const std::string full = svg::dendrogram(linkage, labels, opt);
    CHECK(full == svg::dendrogram(linkage, labels, opt));
    CHECK(full.find("<polyline") != std::string::npos);

    opt.max_depth = 2;
    const std::string truncated = svg::dendrogram(linkage, labels, opt);
    // Collapsed subtrees are labeled with their sizes.
    CHECK(truncated.find("(") != std::string::npos);
    CHECK(truncated.size() < full.size());

    CHECK_THROWS_AS(svg::dendrogram(linkage, {"too", "few"}, opt), InvalidArgument);
}
