#include "s3vm/selectors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "s3vm/error.hpp"

namespace s3vm {

std::size_t SelectionOutcome::adopted_count() const {
    return static_cast<std::size_t>(std::count(source.begin(), source.end(), Source::s3vm));
}

namespace {

void check_predictions(const LabelVector& y_svm, const LabelVector& y_s3vm, const Dataset& D) {
    if (y_svm.size() != D.m() || y_s3vm.size() != D.m())
        throw InvalidArgument("selector: prediction vectors must cover every instance");
    for (std::size_t i = 0; i < D.m(); ++i)
        if (!D.labeled_mask[i] && ((y_svm[i] != 1 && y_svm[i] != -1) || (y_s3vm[i] != 1 && y_s3vm[i] != -1)))
            throw InvalidArgument("selector: predictions must be +1 or -1");
}

// Starts every unlabeled instance on the SVM prediction.
SelectionOutcome svm_outcome(const LabelVector& y_svm, const Dataset& D) {
    SelectionOutcome out;
    out.indices = D.unlabeled_indices();
    for (std::size_t i : out.indices) out.final_labels.push_back(y_svm[i]);
    out.source.assign(out.indices.size(), Source::svm);
    return out;
}

void adopt(SelectionOutcome& out, std::size_t slot, const LabelVector& y_s3vm) {
    out.final_labels[slot] = y_s3vm[out.indices[slot]];
    out.source[slot] = Source::s3vm;
}

int vote_sign(long long s) { return s > 0 ? 1 : (s < 0 ? -1 : 0); }

}  // namespace

SelectionOutcome select_c(const LabelVector& y_svm, const LabelVector& y_s3vm, const Dataset& D,
                          const Partition& partition) {
    check_predictions(y_svm, y_s3vm, D);
    if (partition.assignments.size() != D.m()) throw InvalidArgument("select_c: partition does not cover the dataset");

    std::vector<long long> sum_svm(partition.k, 0), sum_s3vm(partition.k, 0);
    for (std::size_t i = 0; i < D.m(); ++i) {
        const std::size_t c = partition.assignments[i];
        sum_svm[c] += D.labeled_mask[i] ? D.y_true[i] : y_svm[i];
        sum_s3vm[c] += D.labeled_mask[i] ? D.y_true[i] : y_s3vm[i];
    }

    ClusterDiagnostics diag{partition, {}};
    for (std::size_t c = 0; c < partition.k; ++c) {
        ClusterVote v{vote_sign(sum_svm[c]), vote_sign(sum_s3vm[c]), std::llabs(sum_svm[c]), std::llabs(sum_s3vm[c]), false};
        v.use_s3vm = v.bias_svm == v.bias_s3vm && v.confidence_s3vm > v.confidence_svm;
        diag.votes.push_back(v);
    }

    SelectionOutcome out = svm_outcome(y_svm, D);
    for (std::size_t slot = 0; slot < out.indices.size(); ++slot)
        if (diag.votes[partition.assignments[out.indices[slot]]].use_s3vm) adopt(out, slot, y_s3vm);
    out.diagnostics = std::move(diag);
    return out;
}

SelectionOutcome select_c(const LabelVector& y_svm, const LabelVector& y_s3vm, const Dataset& D, std::size_t k,
                          std::uint64_t seed) {
    if (k < 1 || k > D.m()) throw InvalidArgument("select_c: k must lie in [1, m]");
    return select_c(y_svm, y_s3vm, D, kmeans(D.X, k, seed));
}

SelectionOutcome select_p(const LabelVector& y_svm, const LabelVector& y_s3vm, const Dataset& D, const Matrix& W,
                          double eta) {
    check_predictions(y_svm, y_s3vm, D);
    if (!(eta > 0.0 && eta <= 1.0)) throw InvalidArgument("select_p: eta must lie in (0, 1]");
    if (W.rows() != D.m()) throw InvalidArgument("select_p: weight matrix does not match the dataset");

    SelectionOutcome out = svm_outcome(y_svm, D);
    const PropagationResult prop = harmonic_solve_masked(W, D.label_state());
    LabelVector s3vm_u;
    for (std::size_t i : out.indices) s3vm_u.push_back(y_s3vm[i]);

    PropagationDiagnostics diag;
    diag.ranking = lp_confidence_ranking(prop, s3vm_u);
    const std::size_t u = out.indices.size();
    const auto quota = static_cast<std::size_t>(std::floor(eta * static_cast<double>(u)));
    diag.adopted = std::min(quota, diag.ranking.nonnegative);

    std::vector<std::size_t> order(u);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return diag.ranking.h[a] > diag.ranking.h[b]; });
    for (std::size_t r = 0; r < diag.adopted; ++r) adopt(out, order[r], y_s3vm);
    out.diagnostics = std::move(diag);
    return out;
}

SelectionOutcome select_us(const LabelVector& y_svm, const LabelVector& y_s3vm, const Dataset& D,
                           const Dendrogram& dendrogram, double epsilon) {
    check_predictions(y_svm, y_s3vm, D);
    if (!(epsilon > 0.0)) throw InvalidArgument("select_us: epsilon must be positive");
    if (dendrogram.n != D.m()) throw InvalidArgument("select_us: dendrogram does not match the dataset");

    SelectionOutcome out = svm_outcome(y_svm, D);
    HierarchyDiagnostics diag;
    diag.threshold = epsilon * static_cast<double>(D.m());

    const LabelVector state = D.label_state();
    for (const LabelSteps& s : nearest_label_steps(dendrogram, state)) {
        if (y_svm[s.index] == y_s3vm[s.index]) continue;
        diag.steps.push_back(s);
        const long long t = s.t();
        if (static_cast<double>(std::llabs(t)) >= diag.threshold) {
            diag.b_set.push_back(s.index);
            diag.vote_s3vm += y_s3vm[s.index] * t;
            diag.vote_svm += y_svm[s.index] * t;
        }
    }
    diag.b_uses_s3vm = diag.vote_s3vm >= diag.vote_svm;
    if (diag.b_uses_s3vm) {
        for (std::size_t slot = 0; slot < out.indices.size(); ++slot)
            if (std::binary_search(diag.b_set.begin(), diag.b_set.end(), out.indices[slot])) adopt(out, slot, y_s3vm);
    }
    out.diagnostics = std::move(diag);
    return out;
}

SelectionOutcome select_us(const LabelVector& y_svm, const LabelVector& y_s3vm, const Dataset& D, double epsilon) {
    D.validate();
    return select_us(y_svm, y_s3vm, D, single_linkage(D.X), epsilon);
}

}  // namespace s3vm
