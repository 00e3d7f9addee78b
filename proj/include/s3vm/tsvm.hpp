#pragma once

#include <optional>
#include <vector>

#include "s3vm/data.hpp"
#include "s3vm/svm.hpp"

namespace s3vm {

struct TsvmOptions {
    // Fraction of unlabeled instances labeled positive; unset means the
    // labeled positive proportion clamped to [1/u, 1 - 1/u].
    std::optional<double> pos_fraction;
    double initial_ratio = 1e-5;  // first unlabeled penalty as a fraction of C
    SmoOptions smo{1e-6, 10'000'000};
};

struct TsvmStage {
    double C_u;
    std::vector<double> objective;  // after the initial fit, then after each accepted swap
};

struct TsvmResult {
    SvmModel model;
    LabelVector unlabeled_labels;  // in D.unlabeled_indices() order
    std::vector<TsvmStage> trace;
};

// Transductive SVM by label switching with an annealed unlabeled penalty.
TsvmResult train_tsvm(const Dataset& D, const KernelSpec& kernel, double C, const TsvmOptions& options = {});

// 1/2 |w|^2 + C * labeled hinge + C_u * unlabeled hinge, with the unlabeled
// hinge taken against labels_u (ordered as D.unlabeled_indices()).
double tsvm_objective(const SvmModel& model, const Dataset& D, const LabelVector& labels_u, double C, double C_u);

// Number of unlabeled instances that end up positive.
std::size_t tsvm_positive_target(const Dataset& D, const TsvmOptions& options);

}  // namespace s3vm
