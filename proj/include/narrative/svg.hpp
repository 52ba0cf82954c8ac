#pragma once

#include <optional>
#include <string>
#include <vector>

#include "narrative/cluster.hpp"

// Deterministic SVG rendering: fixed canvas, fixed number formatting, no
// timestamps. Identical inputs produce byte-identical files.

namespace narrative::svg {

struct Series {
    std::string name;
    std::vector<double> values;  // x is the index
    std::string color = "#1f77b4";
    double stroke_width = 1.5;
};

struct ChartOptions {
    std::string title;
    std::string x_label = "segment";
    std::string y_label = "score";
    int width = 800;
    int height = 400;
    std::optional<double> y_min;  // default: data range with padding
    std::optional<double> y_max;
};

/// Line chart of one or more series over the segment index.
std::string line_chart(const std::vector<Series>& series, const ChartOptions& options);

struct DendrogramOptions {
    std::string title;
    int width = 800;
    int height = 400;
    // Collapse subtrees deeper than this many levels from the root; each
    // collapsed subtree draws as one leaf marked with its size. 0 = full tree.
    std::size_t max_depth = 0;
    bool leaf_labels = true;  // suppressed automatically for > 40 leaves
};

/// Merge height on the vertical axis, leaves along the horizontal axis.
std::string dendrogram(const cluster::Linkage& linkage,
                       const std::vector<std::string>& leaf_labels,
                       const DendrogramOptions& options);

}  // namespace narrative::svg
