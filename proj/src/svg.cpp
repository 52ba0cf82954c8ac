#include "narrative/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "narrative/error.hpp"

namespace narrative::svg {

namespace {

// Fixed-precision formatting keeps output byte-stable across runs.
std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string fmt_tick(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

std::string escape_xml(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

struct Frame {
    double x0, y0, x1, y1;  // plot area in pixel coordinates, y grows downward

    double map_x(double v, double vmin, double vmax) const {
        if (vmax == vmin) return (x0 + x1) / 2.0;
        return x0 + (v - vmin) / (vmax - vmin) * (x1 - x0);
    }
    double map_y(double v, double vmin, double vmax) const {
        if (vmax == vmin) return (y0 + y1) / 2.0;
        return y1 - (v - vmin) / (vmax - vmin) * (y1 - y0);
    }
};

void open_svg(std::string& out, int width, int height) {
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) +
           "\" height=\"" + std::to_string(height) + "\" viewBox=\"0 0 " +
           std::to_string(width) + " " + std::to_string(height) + "\">\n";
    out += "<rect width=\"" + std::to_string(width) + "\" height=\"" + std::to_string(height) +
           "\" fill=\"white\"/>\n";
}

void draw_title(std::string& out, const std::string& title, int width) {
    if (title.empty()) return;
    out += "<text x=\"" + fmt(width / 2.0) +
           "\" y=\"18\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">" +
           escape_xml(title) + "</text>\n";
}

void draw_axes(std::string& out, const Frame& f, double xmin, double xmax, double ymin,
               double ymax, const std::string& x_label, const std::string& y_label) {
    out += "<line x1=\"" + fmt(f.x0) + "\" y1=\"" + fmt(f.y1) + "\" x2=\"" + fmt(f.x1) +
           "\" y2=\"" + fmt(f.y1) + "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    out += "<line x1=\"" + fmt(f.x0) + "\" y1=\"" + fmt(f.y0) + "\" x2=\"" + fmt(f.x0) +
           "\" y2=\"" + fmt(f.y1) + "\" stroke=\"black\" stroke-width=\"1\"/>\n";

    constexpr int kTicks = 5;
    for (int i = 0; i <= kTicks; ++i) {
        const double tx = xmin + (xmax - xmin) * i / kTicks;
        const double px = f.map_x(tx, xmin, xmax);
        out += "<line x1=\"" + fmt(px) + "\" y1=\"" + fmt(f.y1) + "\" x2=\"" + fmt(px) +
               "\" y2=\"" + fmt(f.y1 + 4) + "\" stroke=\"black\" stroke-width=\"1\"/>\n";
        out += "<text x=\"" + fmt(px) + "\" y=\"" + fmt(f.y1 + 16) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">" +
               fmt_tick(tx) + "</text>\n";

        const double ty = ymin + (ymax - ymin) * i / kTicks;
        const double py = f.map_y(ty, ymin, ymax);
        out += "<line x1=\"" + fmt(f.x0 - 4) + "\" y1=\"" + fmt(py) + "\" x2=\"" + fmt(f.x0) +
               "\" y2=\"" + fmt(py) + "\" stroke=\"black\" stroke-width=\"1\"/>\n";
        out += "<text x=\"" + fmt(f.x0 - 6) + "\" y=\"" + fmt(py + 3) +
               "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">" +
               fmt_tick(ty) + "</text>\n";
    }

    if (!x_label.empty()) {
        out += "<text x=\"" + fmt((f.x0 + f.x1) / 2.0) + "\" y=\"" + fmt(f.y1 + 32) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" +
               escape_xml(x_label) + "</text>\n";
    }
    if (!y_label.empty()) {
        out += "<text x=\"14\" y=\"" + fmt((f.y0 + f.y1) / 2.0) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
               "transform=\"rotate(-90 14 " +
               fmt((f.y0 + f.y1) / 2.0) + ")\">" + escape_xml(y_label) + "</text>\n";
    }
}

}  // namespace

std::string line_chart(const std::vector<Series>& series, const ChartOptions& options) {
    if (series.empty()) throw InvalidArgument("line chart needs at least one series");
    std::size_t longest = 0;
    double ymin = std::numeric_limits<double>::infinity();
    double ymax = -std::numeric_limits<double>::infinity();
    for (const Series& s : series) {
        longest = std::max(longest, s.values.size());
        for (double v : s.values) {
            ymin = std::min(ymin, v);
            ymax = std::max(ymax, v);
        }
    }
    if (longest == 0) throw InvalidArgument("line chart series are empty");

    if (options.y_min.has_value()) ymin = *options.y_min;
    if (options.y_max.has_value()) ymax = *options.y_max;
    if (ymin == ymax) {  // flat data still needs a visible band
        ymin -= 0.5;
        ymax += 0.5;
    } else if (!options.y_min.has_value() && !options.y_max.has_value()) {
        const double pad = (ymax - ymin) * 0.05;
        ymin -= pad;
        ymax += pad;
    }

    const double xmax = longest > 1 ? static_cast<double>(longest - 1) : 1.0;
    const Frame frame{56.0, 28.0, options.width - 16.0, options.height - 44.0};

    std::string out;
    open_svg(out, options.width, options.height);
    draw_title(out, options.title, options.width);
    draw_axes(out, frame, 0.0, xmax, ymin, ymax, options.x_label, options.y_label);

    for (const Series& s : series) {
        if (s.values.empty()) continue;
        std::string points;
        for (std::size_t i = 0; i < s.values.size(); ++i) {
            if (!points.empty()) points += ' ';
            points += fmt(frame.map_x(static_cast<double>(i), 0.0, xmax));
            points += ',';
            points += fmt(frame.map_y(s.values[i], ymin, ymax));
        }
        out += "<polyline fill=\"none\" stroke=\"" + s.color + "\" stroke-width=\"" +
               fmt(s.stroke_width) + "\" points=\"" + points + "\"/>\n";
    }
    out += "</svg>\n";
    return out;
}

namespace {

struct DendroNode {
    std::size_t id = 0;
    bool collapsed = false;   // subtree drawn as a single pseudo-leaf
    std::size_t size = 1;
    double x = 0.0;           // leaf slot units
    double height = 0.0;
};

}  // namespace

std::string dendrogram(const cluster::Linkage& linkage,
                       const std::vector<std::string>& leaf_labels,
                       const DendrogramOptions& options) {
    const std::size_t n = linkage.n_leaves;
    if (leaf_labels.size() != n) throw InvalidArgument("label count does not match leaf count");

    const std::size_t root = 2 * n - 2;
    const auto is_leaf = [&](std::size_t id) { return id < n; };
    const auto step_of = [&](std::size_t id) -> const cluster::MergeStep& {
        return linkage.merges[id - n];
    };

    // Depth-limited traversal: order the (possibly collapsed) leaves left to
    // right, then position internal nodes at the midpoint of their children.
    std::vector<DendroNode> drawn_leaves;
    std::vector<std::pair<std::size_t, std::size_t>> visible_internal;  // id, depth
    std::vector<double> node_x(2 * n - 1, -1.0);
    std::vector<bool> drawn_as_leaf(2 * n - 1, false);

    struct Item {
        std::size_t id;
        std::size_t depth;
        bool expanded;
    };
    std::vector<Item> stack{{root, 0, false}};
    std::vector<std::size_t> post_order;
    while (!stack.empty()) {
        Item item = stack.back();
        stack.pop_back();
        const bool collapse =
            !is_leaf(item.id) && options.max_depth > 0 && item.depth >= options.max_depth;
        if (is_leaf(item.id) || collapse) {
            DendroNode leaf;
            leaf.id = item.id;
            leaf.collapsed = collapse;
            leaf.size = is_leaf(item.id) ? 1 : step_of(item.id).size;
            leaf.x = static_cast<double>(drawn_leaves.size());
            node_x[item.id] = leaf.x;
            drawn_as_leaf[item.id] = true;
            drawn_leaves.push_back(leaf);
            continue;
        }
        if (item.expanded) {
            post_order.push_back(item.id);
            visible_internal.emplace_back(item.id, item.depth);
            continue;
        }
        stack.push_back({item.id, item.depth, true});
        // Right child pushed first so the left child is drawn first.
        stack.push_back({step_of(item.id).right, item.depth + 1, false});
        stack.push_back({step_of(item.id).left, item.depth + 1, false});
    }
    for (std::size_t id : post_order) {
        node_x[id] = (node_x[step_of(id).left] + node_x[step_of(id).right]) / 2.0;
    }

    double max_height = 0.0;
    for (const cluster::MergeStep& m : linkage.merges) max_height = std::max(max_height, m.height);
    if (max_height == 0.0) max_height = 1.0;

    const Frame frame{56.0, 28.0, options.width - 16.0, options.height - 44.0};
    const double slots = std::max<double>(1.0, static_cast<double>(drawn_leaves.size()) - 1.0);
    const auto px = [&](double slot) { return frame.map_x(slot, 0.0, slots); };
    const auto py = [&](double h) { return frame.map_y(h, 0.0, max_height * 1.05); };

    std::string out;
    open_svg(out, options.width, options.height);
    draw_title(out, options.title, options.width);

    // Vertical axis carries the merge height.
    out += "<line x1=\"" + fmt(frame.x0) + "\" y1=\"" + fmt(frame.y0) + "\" x2=\"" +
           fmt(frame.x0) + "\" y2=\"" + fmt(frame.y1) + "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    constexpr int kTicks = 5;
    for (int i = 0; i <= kTicks; ++i) {
        const double h = max_height * 1.05 * i / kTicks;
        out += "<line x1=\"" + fmt(frame.x0 - 4) + "\" y1=\"" + fmt(py(h)) + "\" x2=\"" +
               fmt(frame.x0) + "\" y2=\"" + fmt(py(h)) + "\" stroke=\"black\" stroke-width=\"1\"/>\n";
        out += "<text x=\"" + fmt(frame.x0 - 6) + "\" y=\"" + fmt(py(h) + 3) +
               "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">" +
               fmt_tick(h) + "</text>\n";
    }
    out += "<text x=\"14\" y=\"" + fmt((frame.y0 + frame.y1) / 2.0) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
           "transform=\"rotate(-90 14 " +
           fmt((frame.y0 + frame.y1) / 2.0) + ")\">merge height</text>\n";

    // Elbow per visible internal node. Collapsed subtrees sit on the
    // baseline like leaves.
    const auto node_top = [&](std::size_t id) {
        if (is_leaf(id) || drawn_as_leaf[id]) return 0.0;
        return step_of(id).height;
    };
    for (const auto& [id, depth] : visible_internal) {
        const cluster::MergeStep& m = step_of(id);
        const double y = py(m.height);
        const double xl = px(node_x[m.left]);
        const double xr = px(node_x[m.right]);
        out += "<polyline fill=\"none\" stroke=\"#444444\" stroke-width=\"1\" points=\"" +
               fmt(xl) + "," + fmt(py(node_top(m.left))) + " " + fmt(xl) + "," + fmt(y) + " " +
               fmt(xr) + "," + fmt(y) + " " + fmt(xr) + "," + fmt(py(node_top(m.right))) +
               "\"/>\n";
    }

    // Leaf labels (or collapsed sizes) when the tree is small enough.
    if (options.leaf_labels && drawn_leaves.size() <= 40) {
        for (const DendroNode& leaf : drawn_leaves) {
            const std::string label =
                leaf.collapsed ? "(" + std::to_string(leaf.size) + ")" : leaf_labels[leaf.id];
            out += "<text x=\"" + fmt(px(leaf.x)) + "\" y=\"" + fmt(frame.y1 + 14) +
                   "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"9\">" +
                   escape_xml(label) + "</text>\n";
        }
    }
    out += "</svg>\n";
    return out;
}

}  // namespace narrative::svg
