#pragma once

// Brute-force transductive SVM: every labeling of the unlabeled block with
// the required number of positives, each solved with the projected-gradient
// QP oracle. By strong duality the dual optimum equals the primal objective
// minimized over the model for that labeling.

#include <cstddef>
#include <limits>
#include <vector>

#include "oracles.hpp"
#include "s3vm/data.hpp"
#include "s3vm/numerics.hpp"

namespace oracle {

inline double labeling_objective(const s3vm::Dataset& D, const std::vector<int>& labels_u, const s3vm::KernelSpec& kernel,
                                 double C, double C_u) {
    std::vector<std::size_t> order = D.labeled_indices();
    const auto unl = D.unlabeled_indices();
    order.insert(order.end(), unl.begin(), unl.end());
    const s3vm::Matrix K = s3vm::gram(D.X.select_rows(order), kernel);
    std::vector<int> y = D.labeled_labels();
    y.insert(y.end(), labels_u.begin(), labels_u.end());
    std::vector<double> upper(y.size(), C);
    for (std::size_t i = D.l(); i < y.size(); ++i) upper[i] = C_u;
    return svm_dual_qp(K, y, upper, 20000).objective;
}

struct BruteForce {
    std::vector<int> labels;
    double objective = std::numeric_limits<double>::infinity();
};

inline BruteForce brute_force_tsvm(const s3vm::Dataset& D, std::size_t positives, const s3vm::KernelSpec& kernel,
                                   double C, double C_u) {
    const std::size_t u = D.u();
    BruteForce best;
    for (unsigned mask = 0; mask < (1u << u); ++mask) {
        if (static_cast<std::size_t>(__builtin_popcount(mask)) != positives) continue;
        std::vector<int> labels(u);
        for (std::size_t k = 0; k < u; ++k) labels[k] = (mask >> k) & 1u ? 1 : -1;
        const double obj = labeling_objective(D, labels, kernel, C, C_u);
        if (obj < best.objective) best = {labels, obj};
    }
    return best;
}

}  // namespace oracle
