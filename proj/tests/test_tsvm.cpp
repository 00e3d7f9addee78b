#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "s3vm/error.hpp"
#include "s3vm/rng.hpp"
#include "s3vm/tsvm.hpp"
#include "tsvm_oracle.hpp"

using namespace s3vm;

namespace {

// Labeled points first, then the unlabeled ones; 1-D.
Dataset line_dataset(const std::vector<std::pair<double, int>>& labeled, const std::vector<double>& unlabeled) {
    Dataset d;
    std::vector<double> xs;
    for (auto [x, y] : labeled) {
        xs.push_back(x);
        d.y_true.push_back(y);
        d.labeled_mask.push_back(true);
    }
    for (double x : unlabeled) {
        xs.push_back(x);
        d.y_true.push_back(0);
        d.labeled_mask.push_back(false);
    }
    d.X = Matrix(xs.size(), 1, xs);
    return d;
}

}  // namespace

TEST_CASE("train_tsvm: without unlabeled data it is the inductive SVM") {
    const Dataset d = line_dataset({{-1.0, -1}, {1.0, 1}, {0.4, 1}}, {});
    const TsvmResult r = train_tsvm(d, KernelSpec::linear(), 2.0);
    CHECK(r.unlabeled_labels.empty());
    CHECK(r.model == train_svc(d.X, LabelVector{-1, 1, 1}, KernelSpec::linear(), 2.0));
}

TEST_CASE("train_tsvm: single-class labeled set is rejected") {
    const Dataset d = line_dataset({{-1.0, 1}, {1.0, 1}}, {0.0});
    CHECK_THROWS_AS(train_tsvm(d, KernelSpec::linear(), 1.0), InvalidArgument);
}

TEST_CASE("train_tsvm: two unlabeled points next to the labeled ones") {
    const Dataset d = line_dataset({{-2.0, -1}, {2.0, 1}}, {-1.9, 1.9});
    TsvmOptions opt;
    opt.pos_fraction = 0.5;
    const TsvmResult r = train_tsvm(d, KernelSpec::linear(), 1.0, opt);
    CHECK(r.unlabeled_labels == LabelVector{-1, 1});
    const auto bf = oracle::brute_force_tsvm(d, 1, KernelSpec::linear(), 1.0, 1.0);
    CHECK(bf.labels == r.unlabeled_labels);
}

TEST_CASE("train_tsvm: four unlabeled points split at the origin") {
    const Dataset d = line_dataset({{-2.0, -1}, {2.0, 1}}, {-1.0, -0.5, 0.5, 1.0});
    TsvmOptions opt;
    opt.pos_fraction = 0.5;
    const TsvmResult r = train_tsvm(d, KernelSpec::linear(), 1.0, opt);
    CHECK(r.unlabeled_labels == LabelVector{-1, -1, 1, 1});
    const auto bf = oracle::brute_force_tsvm(d, 2, KernelSpec::linear(), 1.0, 1.0);
    CHECK(bf.labels == LabelVector{-1, -1, 1, 1});

    // The chosen labeling beats its mirror image under the final model.
    const double good = tsvm_objective(r.model, d, LabelVector{-1, -1, 1, 1}, 1.0, 1.0);
    const double bad = tsvm_objective(r.model, d, LabelVector{1, 1, -1, -1}, 1.0, 1.0);
    CHECK(good <= bad);
}

TEST_CASE("tsvm_objective: special cases") {
    const Dataset d = line_dataset({{-2.0, -1}, {2.0, 1}}, {-3.0, 3.0});
    const SvmModel m = train_svc(Matrix(2, 1, {-2.0, 2.0}), LabelVector{-1, 1}, KernelSpec::linear(), 10.0);
    const double half_wsq = 0.5 * m.weight_norm_sq();
    // Every margin is at least 1.
    CHECK(tsvm_objective(m, d, LabelVector{-1, 1}, 10.0, 10.0) == doctest::Approx(half_wsq));
    // With C_u = 0 the unlabeled labels do not matter.
    CHECK(tsvm_objective(m, d, LabelVector{1, -1}, 10.0, 0.0) == doctest::Approx(tsvm_objective(m, d, LabelVector{-1, 1}, 10.0, 0.0)));
    CHECK_THROWS_AS(tsvm_objective(m, d, LabelVector{1}, 1.0, 1.0), InvalidArgument);
}

TEST_CASE("train_tsvm: balance, stage monotonicity and determinism") {
    Rng rng(17);
    for (int trial = 0; trial < 15; ++trial) {
        const std::size_t n = 30;
        Matrix X(n, 2);
        LabelVector y(n);
        std::vector<bool> mask(n, false);
        for (std::size_t i = 0; i < n; ++i) {
            y[i] = i % 2 ? 1 : -1;
            X(i, 0) = y[i] * 1.0 + 0.8 * rng.normal();
            X(i, 1) = rng.normal();
        }
        for (std::size_t i = 0; i < 4; ++i) mask[i] = true;
        const Dataset d{X, y, mask};
        const auto kernel = trial % 2 ? KernelSpec::linear() : KernelSpec::gaussian(1.5);
        const TsvmResult r = train_tsvm(d, kernel, 1.0);
        const TsvmResult again = train_tsvm(d, kernel, 1.0);
        CHECK(r.unlabeled_labels == again.unlabeled_labels);
        CHECK(r.model == again.model);

        const auto pos = std::count(r.unlabeled_labels.begin(), r.unlabeled_labels.end(), 1);
        CHECK(static_cast<std::size_t>(pos) == tsvm_positive_target(d, {}));
        CHECK(r.trace.back().C_u == 1.0);
        for (const auto& stage : r.trace)
            for (std::size_t k = 1; k < stage.objective.size(); ++k)
                CHECK(stage.objective[k] <= stage.objective[k - 1] + 1e-9);
    }
}

TEST_CASE("tsvm_positive_target: auto uses the clamped labeled proportion") {
    Dataset d = line_dataset({{-1.0, -1}, {1.0, 1}, {2.0, 1}, {3.0, 1}}, {0.0, 0.1, 0.2, 0.3, 0.4});
    CHECK(tsvm_positive_target(d, {}) == 4);  // round(0.75 * 5)
    d = line_dataset({{-1.0, -1}, {1.0, 1}, {2.0, 1}, {3.0, 1}, {4.0, 1}, {5.0, 1}, {6.0, 1}, {7.0, 1}, {8.0, 1}, {9.0, 1}},
                     {0.0, 0.1, 0.2});
    CHECK(tsvm_positive_target(d, {}) == 2);  // 0.9 clamped to 2/3
    TsvmOptions opt;
    opt.pos_fraction = 0.0;
    CHECK_THROWS_AS(tsvm_positive_target(d, opt), InvalidArgument);
}
