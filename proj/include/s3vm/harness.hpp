#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "s3vm/data.hpp"
#include "s3vm/eval.hpp"
#include "s3vm/numerics.hpp"

namespace s3vm {

inline constexpr const char* kMethodNames[] = {"SVM", "TSVM", "S3VM-c", "S3VM-p", "S3VM-us"};
inline constexpr std::size_t kMethodCount = 5;

struct CRule {
    enum class Kind { fixed, m_over_sumsq } kind = Kind::fixed;
    double value = 1.0;  // fixed only
};

// Named hyperparameter presets for the 10-label regime.
enum class Preset { benchmark10, uci10 };
std::optional<Preset> parse_preset(const std::string& name);

struct ExperimentConfig {
    std::string name = "data";
    Matrix X;           // all instances
    LabelVector y;      // ground truth, +1/-1 for every instance
    std::vector<KernelKind> kernels{KernelKind::gaussian};
    SplitSpec split;    // n_labeled, seed, repeats and optional class counts
    CRule c_rule;
    double width_factor = 1.0;  // gaussian width = factor * average pairwise distance
    std::size_t k = 50;
    double eta = 0.1;
    double epsilon = 0.1;
    std::optional<double> tsvm_pos_fraction;
    std::size_t threads = 1;

    void apply(Preset preset);
    void validate() const;
};

struct SettingResult {
    std::string name;
    KernelKind kernel = KernelKind::gaussian;
    std::vector<MethodRun> runs;            // kMethodNames order, one accuracy per repeat
    std::vector<Comparison> vs_svm;         // TSVM, S3VM-c, S3VM-p, S3VM-us against SVM
    std::vector<std::string> errors;        // one per failed repeat
    bool failed() const { return !errors.empty(); }
};

struct Report {
    std::vector<SettingResult> settings;
    std::vector<WtlCount> totals() const;  // over settings that did not fail

    std::string to_tsv() const;
    std::string to_text() const;
};

// Accuracies of all five methods on the unlabeled part of one split.
struct RepeatOutcome {
    double accuracy[kMethodCount] = {};
    std::vector<double> sweep_us;  // S3VM-us accuracy for each requested epsilon
};

RepeatOutcome run_repeat(const ExperimentConfig& config, KernelKind kernel, std::size_t repeat,
                         const std::vector<double>& sweep_epsilons = {});

Report run_experiment(const ExperimentConfig& config);
// Several datasets in one report, one setting per (config, kernel).
Report run_suite(const std::vector<ExperimentConfig>& configs, std::size_t threads = 1);

struct SweepPoint {
    double epsilon;
    double mean_improvement;              // mean over repeats of acc(S3VM-us) - acc(SVM)
    std::vector<double> improvements;     // per repeat
};

// Uses the first kernel of the config.
std::vector<SweepPoint> epsilon_sweep(const ExperimentConfig& config, const std::vector<double>& epsilons);
std::string sweep_to_tsv(const std::vector<SweepPoint>& sweep);

const char* to_string(KernelKind kind);

}  // namespace s3vm
