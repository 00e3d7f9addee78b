#include "s3vm/svm.hpp"

#include <cmath>
#include <limits>

#include "s3vm/error.hpp"

namespace s3vm {

namespace {

constexpr double kTau = 1e-12;

void check_labels(std::span<const int> y) {
    for (int v : y)
        if (v != 1 && v != -1) throw InvalidArgument("labels must be +1 or -1");
}

}  // namespace

double SvmModel::weight_norm_sq() const {
    const std::size_t n = alphas.size();
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double ai = alphas[i] * support_y[i];
        s += ai * ai * kernel(support_X.row(i), support_X.row(i));
        for (std::size_t j = i + 1; j < n; ++j)
            s += 2.0 * ai * alphas[j] * support_y[j] * kernel(support_X.row(i), support_X.row(j));
    }
    return s;
}

DualSolution solve_dual(const Matrix& K, std::span<const int> y, std::span<const double> upper,
                        const SmoOptions& options, std::span<const double> warm_start) {
    const std::size_t n = y.size();
    if (K.rows() != n || K.cols() != n || upper.size() != n) throw InvalidArgument("solve_dual: size mismatch");
    check_labels(y);

    DualSolution sol;
    sol.alphas.assign(n, 0.0);
    std::vector<double> G(n, -1.0);
    if (!warm_start.empty()) {
        if (warm_start.size() != n) throw InvalidArgument("solve_dual: warm start has wrong length");
        sol.alphas.assign(warm_start.begin(), warm_start.end());
        for (std::size_t j = 0; j < n; ++j) {
            const double aj = sol.alphas[j];
            if (aj == 0.0) continue;
            for (std::size_t k = 0; k < n; ++k) G[k] += y[k] * y[j] * K(k, j) * aj;
        }
    }
    auto& a = sol.alphas;

    auto in_up = [&](std::size_t t) { return y[t] == 1 ? a[t] < upper[t] : a[t] > 0.0; };
    auto in_low = [&](std::size_t t) { return y[t] == 1 ? a[t] > 0.0 : a[t] < upper[t]; };

    while (true) {
        std::size_t i = n, j = n;
        double g_max = -std::numeric_limits<double>::infinity();
        double g_min = std::numeric_limits<double>::infinity();
        for (std::size_t t = 0; t < n; ++t) {
            const double v = -y[t] * G[t];
            if (in_up(t) && v > g_max) {
                g_max = v;
                i = t;
            }
            if (in_low(t) && v < g_min) {
                g_min = v;
                j = t;
            }
        }
        sol.violation = (i == n || j == n) ? 0.0 : g_max - g_min;
        if (sol.violation < options.tolerance || sol.updates >= options.max_updates) break;
        ++sol.updates;

        const double Ci = upper[i], Cj = upper[j];
        const double old_ai = a[i], old_aj = a[j];
        const double Kij = K(i, j);
        if (y[i] != y[j]) {
            double quad = K(i, i) + K(j, j) - 2.0 * Kij;
            if (quad <= 0.0) quad = kTau;
            const double delta = (-G[i] - G[j]) / quad;
            const double diff = a[i] - a[j];
            a[i] += delta;
            a[j] += delta;
            if (diff > 0.0) {
                if (a[j] < 0.0) {
                    a[j] = 0.0;
                    a[i] = diff;
                }
            } else if (a[i] < 0.0) {
                a[i] = 0.0;
                a[j] = -diff;
            }
            if (diff > Ci - Cj) {
                if (a[i] > Ci) {
                    a[i] = Ci;
                    a[j] = Ci - diff;
                }
            } else if (a[j] > Cj) {
                a[j] = Cj;
                a[i] = Cj + diff;
            }
        } else {
            double quad = K(i, i) + K(j, j) - 2.0 * Kij;
            if (quad <= 0.0) quad = kTau;
            const double delta = (G[i] - G[j]) / quad;
            const double sum = a[i] + a[j];
            a[i] -= delta;
            a[j] += delta;
            if (sum > Ci) {
                if (a[i] > Ci) {
                    a[i] = Ci;
                    a[j] = sum - Ci;
                }
            } else if (a[j] < 0.0) {
                a[j] = 0.0;
                a[i] = sum;
            }
            if (sum > Cj) {
                if (a[j] > Cj) {
                    a[j] = Cj;
                    a[i] = sum - Cj;
                }
            } else if (a[i] < 0.0) {
                a[i] = 0.0;
                a[j] = sum;
            }
        }

        const double dai = a[i] - old_ai, daj = a[j] - old_aj;
        for (std::size_t k = 0; k < n; ++k)
            G[k] += y[k] * (y[i] * K(k, i) * dai + y[j] * K(k, j) * daj);
    }

    // Bias from free vectors, or the midpoint of the feasible bracket.
    double ub = std::numeric_limits<double>::infinity();
    double lb = -std::numeric_limits<double>::infinity();
    double free_sum = 0.0;
    std::size_t n_free = 0;
    for (std::size_t t = 0; t < n; ++t) {
        const double yG = y[t] * G[t];
        if (a[t] >= upper[t]) {
            if (y[t] == -1) ub = std::min(ub, yG);
            else lb = std::max(lb, yG);
        } else if (a[t] <= 0.0) {
            if (y[t] == 1) ub = std::min(ub, yG);
            else lb = std::max(lb, yG);
        } else {
            ++n_free;
            free_sum += yG;
        }
    }
    double rho;
    if (n_free > 0) rho = free_sum / static_cast<double>(n_free);
    else if (std::isfinite(ub) && std::isfinite(lb)) rho = (ub + lb) / 2.0;
    else rho = std::isfinite(ub) ? ub : (std::isfinite(lb) ? lb : 0.0);
    sol.bias = -rho;
    return sol;
}

double dual_objective(const Matrix& K, std::span<const int> y, std::span<const double> alphas) {
    const std::size_t n = y.size();
    double lin = 0.0, quad = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        lin += alphas[i];
        if (alphas[i] == 0.0) continue;
        for (std::size_t j = 0; j < n; ++j) quad += alphas[i] * alphas[j] * y[i] * y[j] * K(i, j);
    }
    return lin - 0.5 * quad;
}

SvmModel make_model(const Matrix& X, std::span<const int> y, const DualSolution& sol, const KernelSpec& kernel,
                    double C) {
    SvmModel model;
    model.kernel = kernel;
    model.bias = sol.bias;
    model.C = C;
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < sol.alphas.size(); ++i)
        if (sol.alphas[i] > 0.0) keep.push_back(i);
    model.support_X = X.select_rows(keep);
    for (std::size_t i : keep) {
        model.alphas.push_back(sol.alphas[i]);
        model.support_y.push_back(y[i]);
    }
    return model;
}

SvmModel train_svc(const Matrix& X, std::span<const int> y, const KernelSpec& kernel, double C,
                   const SmoOptions& options) {
    if (X.rows() == 0) throw InvalidArgument("train_svc: empty labeled set");
    if (y.size() != X.rows()) throw InvalidArgument("train_svc: label count does not match instances");
    if (!(C > 0.0) || !std::isfinite(C)) throw InvalidArgument("train_svc: C must be positive");
    check_labels(y);
    bool has_pos = false, has_neg = false;
    for (int v : y) (v == 1 ? has_pos : has_neg) = true;
    if (!has_pos || !has_neg) throw InvalidArgument("train_svc: degenerate labels (single class)");

    const Matrix K = gram(X, kernel);
    const std::vector<double> upper(y.size(), C);
    return make_model(X, y, solve_dual(K, y, upper, options), kernel, C);
}

std::vector<double> decision_values(const SvmModel& model, const Matrix& X) {
    if (X.rows() > 0 && X.cols() != model.dimension())
        throw InvalidArgument("decision_values: feature dimension does not match the model");
    std::vector<double> f(X.rows(), model.bias);
    for (std::size_t r = 0; r < X.rows(); ++r) {
        double s = 0.0;
        for (std::size_t i = 0; i < model.alphas.size(); ++i)
            s += model.alphas[i] * model.support_y[i] * model.kernel(model.support_X.row(i), X.row(r));
        f[r] += s;
    }
    return f;
}

LabelVector predict_labels(const SvmModel& model, const Matrix& X) {
    LabelVector out;
    for (double v : decision_values(model, X)) out.push_back(sign_label(v));
    return out;
}

}  // namespace s3vm
