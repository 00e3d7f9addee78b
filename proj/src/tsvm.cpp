#include "s3vm/tsvm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "s3vm/error.hpp"

namespace s3vm {

namespace {

double hinge(double f, int y) { return std::max(0.0, 1.0 - y * f); }

// Working state over the combined training set: labeled block first, then
// the unlabeled block in D.unlabeled_indices() order.
struct Problem {
    Matrix X;
    Matrix K;
    LabelVector y;
    std::size_t l = 0;
    std::size_t u = 0;
};

struct Fit {
    DualSolution sol;
    std::vector<double> f;
    double objective = 0.0;
};

Fit fit(const Problem& p, double C, double C_u, const SmoOptions& smo, std::span<const double> warm) {
    const std::size_t n = p.l + p.u;
    std::vector<double> upper(n, C);
    std::fill(upper.begin() + static_cast<std::ptrdiff_t>(p.l), upper.end(), C_u);

    Fit out;
    out.sol = solve_dual(p.K, p.y, upper, smo, warm);
    out.f.assign(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        const double c = out.sol.alphas[j] * p.y[j];
        if (c == 0.0) continue;
        for (std::size_t i = 0; i < n; ++i) out.f[i] += c * p.K(i, j);
    }
    double wsq = 0.0;
    for (std::size_t i = 0; i < n; ++i) wsq += out.sol.alphas[i] * p.y[i] * out.f[i];
    double obj = 0.5 * wsq;
    for (std::size_t i = 0; i < n; ++i) {
        out.f[i] += out.sol.bias;
        obj += (i < p.l ? C : C_u) * hinge(out.f[i], p.y[i]);
    }
    out.objective = obj;
    return out;
}

}  // namespace

std::size_t tsvm_positive_target(const Dataset& D, const TsvmOptions& options) {
    const std::size_t u = D.u();
    double fraction;
    if (options.pos_fraction) {
        fraction = *options.pos_fraction;
        if (!(fraction > 0.0 && fraction < 1.0)) throw InvalidArgument("pos_fraction must lie in (0, 1)");
    } else {
        const auto yl = D.labeled_labels();
        const auto pos = std::count(yl.begin(), yl.end(), 1);
        fraction = static_cast<double>(pos) / static_cast<double>(yl.size());
        if (u >= 2) {
            const double lo = 1.0 / static_cast<double>(u);
            fraction = std::clamp(fraction, lo, 1.0 - lo);
        }
    }
    return static_cast<std::size_t>(std::lround(fraction * static_cast<double>(u)));
}

TsvmResult train_tsvm(const Dataset& D, const KernelSpec& kernel, double C, const TsvmOptions& options) {
    D.validate();
    if (!(C > 0.0)) throw InvalidArgument("train_tsvm: C must be positive");
    const auto lab = D.labeled_indices();
    const auto unl = D.unlabeled_indices();
    const Matrix XL = D.X.select_rows(lab);
    const LabelVector yL = D.labeled_labels();

    TsvmResult result;
    if (unl.empty()) {
        result.model = train_svc(XL, yL, kernel, C);
        return result;
    }

    const std::size_t target = tsvm_positive_target(D, options);
    const SvmModel inductive = train_svc(XL, yL, kernel, C, options.smo);
    const Matrix XU = D.X.select_rows(unl);
    const std::vector<double> fU = decision_values(inductive, XU);

    Problem p;
    p.l = lab.size();
    p.u = unl.size();
    std::vector<std::size_t> order(lab);
    order.insert(order.end(), unl.begin(), unl.end());
    p.X = D.X.select_rows(order);
    p.K = gram(p.X, kernel);
    p.y = yL;

    // Highest-scoring unlabeled instances start positive; ties keep index order.
    std::vector<std::size_t> rank(p.u);
    std::iota(rank.begin(), rank.end(), 0);
    std::stable_sort(rank.begin(), rank.end(), [&](std::size_t a, std::size_t b) { return fU[a] > fU[b]; });
    LabelVector yU(p.u, -1);
    for (std::size_t r = 0; r < target; ++r) yU[rank[r]] = 1;
    p.y.insert(p.y.end(), yU.begin(), yU.end());

    double C_u = std::min(options.initial_ratio * C, C);
    std::vector<double> warm;
    Fit current;
    while (true) {
        current = fit(p, C, C_u, options.smo, warm);
        TsvmStage stage{C_u, {current.objective}};

        // Best swap: the positive and the negative whose relabeling lowers the
        // unlabeled hinge the most. The change separates into independent
        // per-instance terms, so each side is minimized on its own.
        const std::size_t max_swaps = 4 * p.u * p.u + 16;
        for (std::size_t swaps = 0; swaps < max_swaps; ++swaps) {
            std::size_t best_pos = 0, best_neg = 0;
            double gain_pos = 0.0, gain_neg = 0.0;
            bool have_pos = false, have_neg = false;
            for (std::size_t k = 0; k < p.u; ++k) {
                const std::size_t t = p.l + k;
                const double f = current.f[t];
                if (p.y[t] == 1) {
                    const double g = hinge(f, -1) - hinge(f, 1);
                    if (!have_pos || g < gain_pos) {
                        gain_pos = g;
                        best_pos = t;
                        have_pos = true;
                    }
                } else {
                    const double g = hinge(f, 1) - hinge(f, -1);
                    if (!have_neg || g < gain_neg) {
                        gain_neg = g;
                        best_neg = t;
                        have_neg = true;
                    }
                }
            }
            if (!have_pos || !have_neg) break;
            const double delta = C_u * (gain_pos + gain_neg);
            if (!(delta < -1e-12 * std::max(1.0, current.objective))) break;

            p.y[best_pos] = -1;
            p.y[best_neg] = 1;
            // Exchanging the two multipliers keeps y'a = 0 for the warm start.
            warm = current.sol.alphas;
            std::swap(warm[best_pos], warm[best_neg]);
            current = fit(p, C, C_u, options.smo, warm);
            stage.objective.push_back(current.objective);
        }
        result.trace.push_back(std::move(stage));
        warm = current.sol.alphas;
        if (C_u >= C) break;
        C_u = std::min(2.0 * C_u, C);
    }

    result.model = make_model(p.X, p.y, current.sol, kernel, C);
    result.unlabeled_labels.assign(p.y.begin() + static_cast<std::ptrdiff_t>(p.l), p.y.end());
    return result;
}

double tsvm_objective(const SvmModel& model, const Dataset& D, const LabelVector& labels_u, double C, double C_u) {
    const auto lab = D.labeled_indices();
    const auto unl = D.unlabeled_indices();
    if (labels_u.size() != unl.size()) throw InvalidArgument("tsvm_objective: label vector length differs from u");
    const std::vector<double> f = decision_values(model, D.X);
    double obj = 0.5 * model.weight_norm_sq();
    for (std::size_t i : lab) obj += C * hinge(f[i], D.y_true[i]);
    for (std::size_t k = 0; k < unl.size(); ++k) obj += C_u * hinge(f[unl[k]], labels_u[k]);
    return obj;
}

}  // namespace s3vm
