#pragma once

#include <cstddef>
#include <vector>

#include "s3vm/numerics.hpp"
#include "s3vm/svm.hpp"

namespace s3vm {

struct PropagationResult {
    Matrix F_u;                      // u x 2; column 0 is the positive class
    LabelVector y_lp;                // sign(F_u[i,0] - F_u[i,1]), sign(0) = +1
    std::vector<double> confidence;  // |F_u[i,0] - F_u[i,1]|
};

// Dense Gaussian affinities exp(-|xi - xj|^2 / (2 width^2)) with a zero diagonal.
Matrix gaussian_weights(const Matrix& X, double width);

// Harmonic solution F_u = Lap_uu^{-1} W_ul F_l. W is ordered with the l
// labeled nodes first; labels_l holds their +1/-1 labels.
PropagationResult harmonic_solve(const Matrix& W, const LabelVector& labels_l);

// Same, for W in dataset order: label_state holds +1/-1 for labeled nodes
// and 0 for unlabeled ones. Rows of the result follow the unlabeled nodes
// in index order.
PropagationResult harmonic_solve_masked(const Matrix& W, const LabelVector& label_state);

struct RankedConfidence {
    std::vector<double> h;     // y_s3vm * y_lp * confidence
    std::size_t nonnegative;   // entries with h >= 0
};

// Signs each confidence by agreement between S3VM and propagation.
RankedConfidence lp_confidence_ranking(const PropagationResult& prop, const LabelVector& y_s3vm);

}  // namespace s3vm
