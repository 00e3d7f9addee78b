#pragma once

#include <cstddef>
#include <cstdint>
#include <variant>
#include <vector>

#include "s3vm/clustering.hpp"
#include "s3vm/data.hpp"
#include "s3vm/labelprop.hpp"

namespace s3vm {

enum class Source { svm, s3vm };

struct ClusterVote {
    int bias_svm;    // sign of the summed labels, 0 for a tie
    int bias_s3vm;
    long long confidence_svm;  // |sum of labels|
    long long confidence_s3vm;
    bool use_s3vm;
};

struct ClusterDiagnostics {
    Partition partition;
    std::vector<ClusterVote> votes;
};

struct PropagationDiagnostics {
    RankedConfidence ranking;  // indexed like SelectionOutcome::indices
    std::size_t adopted = 0;   // min(floor(eta * u), c)
};

struct HierarchyDiagnostics {
    std::vector<LabelSteps> steps;        // disagreement set S only
    std::vector<std::size_t> b_set;       // dataset indices in B
    double threshold = 0.0;               // epsilon * (l + u)
    long long vote_s3vm = 0;              // sum over B of y_s3vm * t
    long long vote_svm = 0;               // sum over B of y_svm * t
    bool b_uses_s3vm = false;
};

// Fused predictions for the unlabeled instances of a dataset.
struct SelectionOutcome {
    std::vector<std::size_t> indices;  // unlabeled dataset indices, ascending
    LabelVector final_labels;
    std::vector<Source> source;
    std::variant<ClusterDiagnostics, PropagationDiagnostics, HierarchyDiagnostics> diagnostics;

    std::size_t adopted_count() const;
};

// All selectors take y_svm and y_s3vm over every dataset instance (length m);
// only the unlabeled entries are consulted, except where noted.

// Cluster vote: S3VM predictions are used on a k-means cluster when both
// methods share its label bias and S3VM is strictly more confident.
// Labeled members vote with their true labels for both methods.
SelectionOutcome select_c(const LabelVector& y_svm, const LabelVector& y_s3vm, const Dataset& D, std::size_t k,
                          std::uint64_t seed);
SelectionOutcome select_c(const LabelVector& y_svm, const LabelVector& y_s3vm, const Dataset& D,
                          const Partition& partition);

// Propagation confidence: S3VM predictions are used on the top
// min(floor(eta * u), c) instances ranked by signed confidence.
SelectionOutcome select_p(const LabelVector& y_svm, const LabelVector& y_s3vm, const Dataset& D, const Matrix& W,
                          double eta);

// Hierarchy vote: disagreements whose merge-step margin |t| reaches
// epsilon * (l + u) form B; B follows S3VM when the t-weighted vote favors
// it (ties included), everything else follows SVM.
SelectionOutcome select_us(const LabelVector& y_svm, const LabelVector& y_s3vm, const Dataset& D, double epsilon);
SelectionOutcome select_us(const LabelVector& y_svm, const LabelVector& y_s3vm, const Dataset& D,
                           const Dendrogram& dendrogram, double epsilon);

}  // namespace s3vm
