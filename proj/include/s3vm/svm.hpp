#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "s3vm/numerics.hpp"

namespace s3vm {

// Binary labels are stored as ints holding +1 or -1.
using LabelVector = std::vector<int>;

// sign with the library-wide convention sign(0) = +1.
inline int sign_label(double v) { return v >= 0.0 ? 1 : -1; }

struct SvmModel {
    std::vector<double> alphas;  // one per support vector, in (0, C]
    double bias = 0.0;
    KernelSpec kernel;
    Matrix support_X;
    LabelVector support_y;
    double C = 1.0;

    std::size_t dimension() const { return support_X.cols(); }

    // sum_ij alpha_i alpha_j y_i y_j K(x_i, x_j)
    double weight_norm_sq() const;

    friend bool operator==(const SvmModel&, const SvmModel&) = default;
};

struct SmoOptions {
    double tolerance = 1e-3;  // stop when the maximal KKT violation drops below this
    std::uint64_t max_updates = 10'000'000;
};

struct DualSolution {
    std::vector<double> alphas;
    double bias = 0.0;
    std::uint64_t updates = 0;
    double violation = 0.0;  // maximal KKT violation at exit
};

// SMO on the soft-margin dual
//   min 1/2 a'Qa - sum a,  0 <= a_i <= upper_i,  y'a = 0,  Q_ij = y_i y_j K_ij
// with the maximal-violating-pair working set. `warm_start`, when non-empty,
// must be feasible for the bounds and the equality constraint.
DualSolution solve_dual(const Matrix& K, std::span<const int> y, std::span<const double> upper,
                        const SmoOptions& options = {}, std::span<const double> warm_start = {});

// Dual objective sum a - 1/2 a'Qa (the maximization form).
double dual_objective(const Matrix& K, std::span<const int> y, std::span<const double> alphas);

// Packs a dual solution into a model that keeps only the support vectors.
SvmModel make_model(const Matrix& X, std::span<const int> y, const DualSolution& sol, const KernelSpec& kernel,
                    double C);

// Inductive soft-margin SVM on labeled data.
SvmModel train_svc(const Matrix& X, std::span<const int> y, const KernelSpec& kernel, double C,
                   const SmoOptions& options = {});

std::vector<double> decision_values(const SvmModel& model, const Matrix& X);
LabelVector predict_labels(const SvmModel& model, const Matrix& X);

}  // namespace s3vm
