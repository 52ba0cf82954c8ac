#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "narrative/arcshape.hpp"

namespace narrative::cluster {

/// Pairwise Euclidean distances in condensed row-major order:
/// entry (i, j), i < j, lives at i*n - i*(i+1)/2 + (j - i - 1).
struct DistanceMatrix {
    std::size_t n = 0;
    std::vector<double> condensed;

    static std::size_t condensed_index(std::size_t n, std::size_t i, std::size_t j);
    double at(std::size_t i, std::size_t j) const;  // at(i,i) == 0
};

DistanceMatrix distance_matrix(const std::vector<arcshape::NormalizedArc>& arcs);

/// One agglomerative merge. Ids 0..n-1 are leaves; merge t creates id n+t.
struct MergeStep {
    std::size_t left = 0;   // smaller id
    std::size_t right = 0;  // larger id
    double height = 0.0;    // Ward distance, same scale as the input metric
    std::size_t size = 0;   // leaves under the new cluster
};

struct Linkage {
    std::size_t n_leaves = 0;
    std::vector<MergeStep> merges;  // n-1 steps, heights non-decreasing
};

/// Ward's method: each step merges the pair with the smallest variance
/// increase, with remaining distances updated by the Lance-Williams
/// recurrence on squared distances. Ties break on the smallest
/// (left id, right id) pair. Input distances must be Euclidean.
Linkage ward_linkage(const DistanceMatrix& d);

/// Flat clustering. labels[i] in 1..k; label order follows the smallest
/// member index of each cluster.
struct ClusterAssignment {
    std::vector<std::size_t> labels;
    std::size_t k = 0;
};

/// Undoes the last k-1 merges; the surviving subtrees are the clusters.
ClusterAssignment cut(const Linkage& linkage, std::size_t k);

/// Pointwise mean of member arcs, keyed by cluster id.
std::map<std::size_t, std::vector<double>> cluster_means(
    const std::vector<arcshape::NormalizedArc>& arcs,
    const ClusterAssignment& assignment);

// Dendrogram serialization. The JSON schema is documented in
// docs/formats.md; parsing the emitted tree reproduces the Linkage exactly.
nlohmann::json dendrogram_json(const Linkage& linkage,
                               const std::vector<std::string>& leaf_labels);
Linkage linkage_from_json(const nlohmann::json& tree);
std::vector<std::string> leaf_labels_from_json(const nlohmann::json& tree);

}  // namespace narrative::cluster
