#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "s3vm/error.hpp"
#include "s3vm/harness.hpp"

using namespace s3vm;

namespace {

ExperimentConfig moons_config(std::size_t repeats) {
    ExperimentConfig c;
    auto [X, y] = make_moons(MoonVariant::two, 30, 0.1, 2);
    c.name = "moons";
    c.X = std::move(X);
    c.y = std::move(y);
    c.kernels = {KernelKind::linear, KernelKind::gaussian};
    c.split.n_labeled = 4;
    c.split.repeats = repeats;
    c.split.seed = 9;
    c.k = 6;
    c.apply(Preset::uci10);
    return c;
}

const MethodRun& row(const SettingResult& s, const std::string& name) {
    return *std::find_if(s.runs.begin(), s.runs.end(), [&](const MethodRun& r) { return r.method == name; });
}

}  // namespace

TEST_CASE("separable toy: five rows, accuracies in range, repeatable") {
    ExperimentConfig c;
    c.X = Matrix(10, 1, {-5, -4, -3, -2, -1, 1, 2, 3, 4, 5});
    c.y = {-1, -1, -1, -1, -1, 1, 1, 1, 1, 1};
    c.kernels = {KernelKind::linear};
    c.split.n_labeled = 2;
    c.split.repeats = 1;
    c.k = 3;
    const Report a = run_experiment(c), b = run_experiment(c);
    REQUIRE(a.settings.size() == 1);
    CHECK_FALSE(a.settings[0].failed());
    REQUIRE(a.settings[0].runs.size() == kMethodCount);
    for (std::size_t k = 0; k < kMethodCount; ++k) {
        CHECK(a.settings[0].runs[k].method == kMethodNames[k]);
        for (double acc : a.settings[0].runs[k].accuracies) CHECK((acc >= 0.0 && acc <= 1.0));
    }
    CHECK(a.settings[0].runs[0].accuracies == b.settings[0].runs[0].accuracies);
}

TEST_CASE("thread count does not change the report") {
    ExperimentConfig c = moons_config(6);
    const std::string serial = run_experiment(c).to_tsv();
    c.threads = 4;
    CHECK(run_experiment(c).to_tsv() == serial);
}

TEST_CASE("epsilon above one makes S3VM-us equal SVM in every repeat") {
    ExperimentConfig c = moons_config(5);
    c.epsilon = 2.0;
    for (const auto& s : run_experiment(c).settings)
        CHECK(row(s, "S3VM-us").accuracies == row(s, "SVM").accuracies);
}

TEST_CASE("the SVM row ignores selector parameters") {
    ExperimentConfig c = moons_config(4);
    const Report base = run_experiment(c);
    c.k = 3;
    c.eta = 0.3;
    c.epsilon = 0.25;
    const Report other = run_experiment(c);
    for (std::size_t s = 0; s < base.settings.size(); ++s)
        CHECK(row(base.settings[s], "SVM").accuracies == row(other.settings[s], "SVM").accuracies);
}

TEST_CASE("report totals and renderings") {
    const Report r = run_experiment(moons_config(5));
    const auto totals = r.totals();
    REQUIRE(totals.size() == kMethodCount - 1);
    for (const auto& t : totals) CHECK(t.win + t.tie + t.loss == r.settings.size());
    const std::string tsv = r.to_tsv();
    CHECK(tsv.rfind("setting\tkernel\tmethod\tmean_acc\tstd_acc\tt_stat\tvs_svm\n", 0) == 0);
    CHECK(tsv.find("method\twin\ttie\tloss") != std::string::npos);
    CHECK(r.to_text().find("S3VM-us") != std::string::npos);
}

TEST_CASE("epsilon sweep") {
    ExperimentConfig c = moons_config(4);
    c.kernels = {KernelKind::gaussian};
    const auto sweep = epsilon_sweep(c, {0.1, 0.2, 1.0});
    REQUIRE(sweep.size() == 3);
    for (double d : sweep[2].improvements) CHECK(d == 0.0);
    CHECK(sweep[2].mean_improvement == 0.0);
    const std::string tsv = sweep_to_tsv(sweep);
    CHECK(std::count(tsv.begin(), tsv.end(), '\n') == 4);
    CHECK_THROWS_AS(epsilon_sweep(c, {}), InvalidArgument);
    CHECK_THROWS_AS(epsilon_sweep(c, {1.5}), InvalidArgument);
}

TEST_CASE("invalid configs are rejected") {
    ExperimentConfig c = moons_config(0);
    CHECK_THROWS_AS(c.validate(), InvalidArgument);
    c = moons_config(2);
    c.eta = 0.0;
    CHECK_THROWS_AS(c.validate(), InvalidArgument);
    CHECK(parse_preset("benchmark10") == Preset::benchmark10);
    CHECK_FALSE(parse_preset("bogus").has_value());
}
