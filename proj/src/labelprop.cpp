#include "s3vm/labelprop.hpp"

#include <cmath>
#include <string>

#include "s3vm/error.hpp"

namespace s3vm {

Matrix gaussian_weights(const Matrix& X, double width) {
    if (!(width > 0.0) || !std::isfinite(width)) throw InvalidArgument("gaussian_weights: width must be positive");
    if (X.rows() < 2) throw InvalidArgument("gaussian_weights: need at least two instances");
    const std::size_t m = X.rows();
    const double scale = 1.0 / (2.0 * width * width);
    Matrix W(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            const double w = std::exp(-squared_distance(X.row(i), X.row(j)) * scale);
            W(i, j) = w;
            W(j, i) = w;
        }
    return W;
}

namespace {

PropagationResult solve_blocks(const Matrix& W, const std::vector<std::size_t>& lab,
                               const std::vector<std::size_t>& unl, const LabelVector& labels_l) {
    const std::size_t m = W.rows();
    if (W.cols() != m) throw InvalidArgument("harmonic_solve: weight matrix is not square");
    for (std::size_t i = 0; i < m; ++i) {
        if (W(i, i) != 0.0) throw InvalidArgument("harmonic_solve: weight matrix needs a zero diagonal");
        for (std::size_t j = i + 1; j < m; ++j) {
            if (std::abs(W(i, j) - W(j, i)) > 1e-12) throw InvalidArgument("harmonic_solve: weight matrix is asymmetric");
            if (W(i, j) < 0.0) throw InvalidArgument("harmonic_solve: negative weight");
        }
    }

    // Every unlabeled node must reach a labeled one, or Lap_uu is singular.
    std::vector<bool> reached(m, false);
    std::vector<std::size_t> frontier(lab);
    for (std::size_t i : lab) reached[i] = true;
    while (!frontier.empty()) {
        const std::size_t v = frontier.back();
        frontier.pop_back();
        for (std::size_t w = 0; w < m; ++w)
            if (!reached[w] && W(v, w) > 0.0) {
                reached[w] = true;
                frontier.push_back(w);
            }
    }
    for (std::size_t i : unl)
        if (!reached[i]) throw InvalidArgument("harmonic_solve: unlabeled node " + std::to_string(i) + " is disconnected from all labeled nodes");

    const std::size_t u = unl.size();
    Matrix A = W.block(unl, unl);
    for (std::size_t r = 0; r < u; ++r) {
        double degree = 0.0;
        for (std::size_t j = 0; j < m; ++j) degree += W(unl[r], j);
        for (std::size_t c = 0; c < u; ++c) A(r, c) = -A(r, c);
        A(r, r) = degree;
    }
    Matrix F_l(lab.size(), 2);
    for (std::size_t r = 0; r < lab.size(); ++r) {
        F_l(r, 0) = (labels_l[r] + 1) / 2;
        F_l(r, 1) = (1 - labels_l[r]) / 2;
    }
    const Matrix rhs = W.block(unl, lab) * F_l;

    PropagationResult out;
    out.F_u = solve_spd(A, rhs);
    for (std::size_t r = 0; r < u; ++r) {
        const double diff = out.F_u(r, 0) - out.F_u(r, 1);
        out.y_lp.push_back(sign_label(diff));
        out.confidence.push_back(std::abs(diff));
    }
    return out;
}

void check_labels(const LabelVector& labels) {
    for (int v : labels)
        if (v != 1 && v != -1) throw InvalidArgument("harmonic_solve: labels must be +1 or -1");
}

}  // namespace

PropagationResult harmonic_solve(const Matrix& W, const LabelVector& labels_l) {
    const std::size_t l = labels_l.size();
    if (l == 0 || l > W.rows()) throw InvalidArgument("harmonic_solve: labeled count out of range");
    check_labels(labels_l);
    std::vector<std::size_t> lab(l), unl;
    for (std::size_t i = 0; i < l; ++i) lab[i] = i;
    for (std::size_t i = l; i < W.rows(); ++i) unl.push_back(i);
    return solve_blocks(W, lab, unl, labels_l);
}

PropagationResult harmonic_solve_masked(const Matrix& W, const LabelVector& label_state) {
    if (label_state.size() != W.rows()) throw InvalidArgument("harmonic_solve: label state length differs from W");
    std::vector<std::size_t> lab, unl;
    LabelVector labels_l;
    for (std::size_t i = 0; i < label_state.size(); ++i) {
        if (label_state[i] == 0) {
            unl.push_back(i);
        } else {
            lab.push_back(i);
            labels_l.push_back(label_state[i]);
        }
    }
    if (lab.empty()) throw InvalidArgument("harmonic_solve: no labeled nodes");
    check_labels(labels_l);
    return solve_blocks(W, lab, unl, labels_l);
}

RankedConfidence lp_confidence_ranking(const PropagationResult& prop, const LabelVector& y_s3vm) {
    if (y_s3vm.size() != prop.y_lp.size()) throw InvalidArgument("lp_confidence_ranking: length mismatch");
    RankedConfidence out;
    out.nonnegative = 0;
    for (std::size_t i = 0; i < y_s3vm.size(); ++i) {
        const double h = y_s3vm[i] * prop.y_lp[i] * prop.confidence[i];
        out.h.push_back(h);
        if (h >= 0.0) ++out.nonnegative;
    }
    return out;
}

}  // namespace s3vm
