#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "s3vm/numerics.hpp"
#include "s3vm/svm.hpp"

namespace s3vm {

struct Partition {
    std::vector<std::size_t> assignments;
    std::size_t k = 0;

    std::vector<std::vector<std::size_t>> members() const;
};

struct KmeansResult {
    Partition partition;
    std::vector<double> sse_trace;  // within-cluster SSE after each Lloyd iteration
    std::size_t iterations = 0;
};

// Lloyd's algorithm with k-means++ seeding. Stops at an assignment fixpoint
// or after max_iterations; empty clusters take the point farthest from its
// centroid.
KmeansResult kmeans_run(const Matrix& X, std::size_t k, std::uint64_t seed, std::size_t max_iterations = 300);
Partition kmeans(const Matrix& X, std::size_t k, std::uint64_t seed);

// Merge step s (1-based) joins nodes left < right into node n + s - 1.
// Leaves are nodes 0..n-1.
struct Merge {
    std::size_t left;
    std::size_t right;
    double height;
};

struct Dendrogram {
    std::size_t n = 0;
    std::vector<Merge> merges;
};

// Single-linkage agglomerative clustering. Ties in inter-cluster distance go
// to the lexicographically smallest (left, right) node pair.
Dendrogram single_linkage(const Matrix& X);
Dendrogram single_linkage_from_distances(const Matrix& D);

// 1-based merge step at which leaves i and j first share a cluster.
std::size_t cophenetic_step(const Dendrogram& d, std::size_t i, std::size_t j);

// Height of the merge at which leaves i and j first share a cluster.
double cophenetic_height(const Dendrogram& d, std::size_t i, std::size_t j);

struct LabelSteps {
    std::size_t index;     // instance index in the dataset
    std::size_t positive;  // p_i: merge step reaching the nearest positive labeled instance
    std::size_t negative;  // n_i: same for the nearest negative labeled instance
    long long t() const { return static_cast<long long>(negative) - static_cast<long long>(positive); }
};

// For every unlabeled instance (state 0), the merge steps at which it first
// joins a positive and a negative labeled instance. label_state holds +1/-1
// for labeled instances and 0 for unlabeled ones. Results follow index order.
std::vector<LabelSteps> nearest_label_steps(const Dendrogram& d, const LabelVector& label_state);

}  // namespace s3vm
