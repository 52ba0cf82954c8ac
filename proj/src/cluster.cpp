#include "narrative/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "narrative/error.hpp"
#include "narrative/kernels.hpp"

namespace narrative::cluster {

std::size_t DistanceMatrix::condensed_index(std::size_t n, std::size_t i, std::size_t j) {
    if (i > j) std::swap(i, j);
    return i * n - i * (i + 1) / 2 + (j - i - 1);
}

double DistanceMatrix::at(std::size_t i, std::size_t j) const {
    if (i == j) return 0.0;
    return condensed[condensed_index(n, i, j)];
}

DistanceMatrix distance_matrix(const std::vector<arcshape::NormalizedArc>& arcs) {
    if (arcs.size() < 2) throw InvalidArgument("need at least 2 arcs for a distance matrix");
    const std::size_t L = arcs.front().values.size();
    for (const auto& arc : arcs) {
        if (arc.values.size() != L) {
            throw InvalidArgument("arcs have mixed lengths; resample to a common L first");
        }
    }

    DistanceMatrix d;
    d.n = arcs.size();
    d.condensed.reserve(d.n * (d.n - 1) / 2);
    for (std::size_t i = 0; i < d.n; ++i) {
        for (std::size_t j = i + 1; j < d.n; ++j) {
            d.condensed.push_back(
                std::sqrt(kernels::squared_distance(arcs[i].values, arcs[j].values)));
        }
    }
    return d;
}

Linkage ward_linkage(const DistanceMatrix& d) {
    const std::size_t n = d.n;
    if (n < 2) throw InvalidArgument("need at least 2 items to cluster");

    // Work on squared distances in a full matrix; the Lance-Williams update
    // for Ward is linear in them. Heights are reported on the original scale.
    std::vector<double> d2(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double v = d.at(i, j);
            d2[i * n + j] = d2[j * n + i] = v * v;
        }
    }

    std::vector<std::size_t> active(n);
    std::iota(active.begin(), active.end(), 0);
    std::vector<std::size_t> cluster_id(n);
    std::iota(cluster_id.begin(), cluster_id.end(), 0);
    std::vector<std::size_t> cluster_size(n, 1);

    Linkage linkage;
    linkage.n_leaves = n;
    linkage.merges.reserve(n - 1);

    for (std::size_t step = 0; step + 1 < n; ++step) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t best_ai = 0, best_aj = 1;
        std::size_t best_lo = 0, best_hi = 0;

        for (std::size_t ai = 0; ai + 1 < active.size(); ++ai) {
            const std::size_t si = active[ai];
            const double* row = d2.data() + si * n;
            for (std::size_t aj = ai + 1; aj < active.size(); ++aj) {
                const std::size_t sj = active[aj];
                const double v = row[sj];
                if (v > best) continue;
                std::size_t lo = cluster_id[si];
                std::size_t hi = cluster_id[sj];
                if (lo > hi) std::swap(lo, hi);
                if (v < best || lo < best_lo || (lo == best_lo && hi < best_hi)) {
                    best = v;
                    best_ai = ai;
                    best_aj = aj;
                    best_lo = lo;
                    best_hi = hi;
                }
            }
        }

        const std::size_t si = active[best_ai];
        const std::size_t sj = active[best_aj];
        const double ni = static_cast<double>(cluster_size[si]);
        const double nj = static_cast<double>(cluster_size[sj]);

        linkage.merges.push_back({best_lo, best_hi, std::sqrt(best),
                                  cluster_size[si] + cluster_size[sj]});

        for (std::size_t slot : active) {
            if (slot == si || slot == sj) continue;
            const double nk = static_cast<double>(cluster_size[slot]);
            const double denom = ni + nj + nk;
            const double v = ((ni + nk) / denom) * d2[slot * n + si] +
                             ((nj + nk) / denom) * d2[slot * n + sj] -
                             (nk / denom) * best;
            d2[slot * n + si] = d2[si * n + slot] = v;
        }

        cluster_size[si] += cluster_size[sj];
        cluster_id[si] = n + step;
        active.erase(active.begin() + static_cast<std::ptrdiff_t>(best_aj));
    }
    return linkage;
}

ClusterAssignment cut(const Linkage& linkage, std::size_t k) {
    const std::size_t n = linkage.n_leaves;
    if (k < 1 || k > n) throw InvalidArgument("k must be in [1, n]");

    // Apply the first n-k merges; the remaining subtrees are the clusters.
    std::vector<std::size_t> parent(2 * n - 1);
    std::iota(parent.begin(), parent.end(), 0);
    const std::size_t applied = n - k;
    for (std::size_t t = 0; t < applied; ++t) {
        parent[linkage.merges[t].left] = n + t;
        parent[linkage.merges[t].right] = n + t;
    }

    const auto find_root = [&](std::size_t id) {
        while (parent[id] != id) id = parent[id];
        return id;
    };

    // Clusters take labels 1..k in order of their smallest member.
    ClusterAssignment assignment;
    assignment.k = k;
    assignment.labels.resize(n);
    std::map<std::size_t, std::size_t> root_to_label;
    for (std::size_t leaf = 0; leaf < n; ++leaf) {
        const std::size_t root = find_root(leaf);
        auto [it, inserted] = root_to_label.emplace(root, root_to_label.size() + 1);
        assignment.labels[leaf] = it->second;
    }
    return assignment;
}

std::map<std::size_t, std::vector<double>> cluster_means(
    const std::vector<arcshape::NormalizedArc>& arcs,
    const ClusterAssignment& assignment) {
    if (arcs.size() != assignment.labels.size()) {
        throw InvalidArgument("assignment length does not match arc count");
    }

    std::map<std::size_t, std::vector<double>> sums;
    std::map<std::size_t, std::size_t> counts;
    for (std::size_t i = 0; i < arcs.size(); ++i) {
        const std::size_t label = assignment.labels[i];
        auto& acc = sums[label];
        if (acc.empty()) acc.assign(arcs[i].values.size(), 0.0);
        kernels::add_scaled(acc, arcs[i].values, 1.0);
        ++counts[label];
    }
    for (auto& [label, acc] : sums) {
        const double inv = 1.0 / static_cast<double>(counts[label]);
        for (double& v : acc) v *= inv;
    }
    return sums;
}

namespace {

nlohmann::json node_json(const Linkage& linkage, const std::vector<std::string>& labels,
                         std::size_t id) {
    const std::size_t n = linkage.n_leaves;
    if (id < n) {
        nlohmann::json leaf;
        leaf["id"] = id;
        leaf["label"] = labels[id];
        leaf["size"] = 1;
        return leaf;
    }
    const MergeStep& step = linkage.merges[id - n];
    nlohmann::json node;
    node["id"] = id;
    node["height"] = step.height;
    node["size"] = step.size;
    node["children"] = nlohmann::json::array(
        {node_json(linkage, labels, step.left), node_json(linkage, labels, step.right)});
    return node;
}

}  // namespace

nlohmann::json dendrogram_json(const Linkage& linkage,
                               const std::vector<std::string>& leaf_labels) {
    if (leaf_labels.size() != linkage.n_leaves) {
        throw InvalidArgument("label count does not match leaf count");
    }
    nlohmann::json j;
    j["schema"] = "narrative-dendrogram";
    j["version"] = 1;
    j["n_leaves"] = linkage.n_leaves;
    j["tree"] = node_json(linkage, leaf_labels, 2 * linkage.n_leaves - 2);
    return j;
}

namespace {

struct ParsedTree {
    std::vector<std::pair<std::size_t, MergeStep>> internal;  // id -> step
    std::vector<std::pair<std::size_t, std::string>> leaves;
};

ParsedTree parse_tree(const nlohmann::json& j) {
    if (!j.is_object() || j.value("schema", "") != "narrative-dendrogram") {
        throw FormatError("not a dendrogram JSON document");
    }
    ParsedTree parsed;

    // Walk iteratively; deep chain dendrograms would overflow a recursive walk.
    std::vector<const nlohmann::json*> stack{&j.at("tree")};
    while (!stack.empty()) {
        const nlohmann::json* node = stack.back();
        stack.pop_back();
        if (!node->contains("children")) {
            parsed.leaves.emplace_back(node->at("id").get<std::size_t>(),
                                       node->value("label", ""));
            continue;
        }
        const auto& children = node->at("children");
        if (!children.is_array() || children.size() != 2) {
            throw FormatError("dendrogram node must have exactly 2 children");
        }
        MergeStep step;
        step.left = children[0].at("id").get<std::size_t>();
        step.right = children[1].at("id").get<std::size_t>();
        if (step.left > step.right) std::swap(step.left, step.right);
        step.height = node->at("height").get<double>();
        step.size = node->at("size").get<std::size_t>();
        parsed.internal.emplace_back(node->at("id").get<std::size_t>(), step);
        stack.push_back(&children[0]);
        stack.push_back(&children[1]);
    }
    return parsed;
}

}  // namespace

Linkage linkage_from_json(const nlohmann::json& j) {
    ParsedTree parsed = parse_tree(j);
    const std::size_t n = parsed.leaves.size();
    if (n < 2 || parsed.internal.size() != n - 1) {
        throw FormatError("dendrogram tree is not a full binary merge tree");
    }

    std::sort(parsed.internal.begin(), parsed.internal.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    Linkage linkage;
    linkage.n_leaves = n;
    linkage.merges.reserve(n - 1);
    for (std::size_t t = 0; t < parsed.internal.size(); ++t) {
        if (parsed.internal[t].first != n + t) {
            throw FormatError("dendrogram internal node ids must be contiguous from n");
        }
        linkage.merges.push_back(parsed.internal[t].second);
    }
    return linkage;
}

std::vector<std::string> leaf_labels_from_json(const nlohmann::json& j) {
    ParsedTree parsed = parse_tree(j);
    std::vector<std::string> labels(parsed.leaves.size());
    for (const auto& [id, label] : parsed.leaves) {
        if (id >= labels.size()) throw FormatError("leaf id out of range");
        labels[id] = label;
    }
    return labels;
}

}  // namespace narrative::cluster
