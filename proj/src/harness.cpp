#include "s3vm/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <thread>

#include "s3vm/clustering.hpp"
#include "s3vm/error.hpp"
#include "s3vm/labelprop.hpp"
#include "s3vm/rng.hpp"
#include "s3vm/selectors.hpp"
#include "s3vm/svm.hpp"
#include "s3vm/tsvm.hpp"

namespace s3vm {

std::optional<Preset> parse_preset(const std::string& name) {
    if (name == "benchmark10") return Preset::benchmark10;
    if (name == "uci10") return Preset::uci10;
    return std::nullopt;
}

const char* to_string(KernelKind kind) { return kind == KernelKind::linear ? "linear" : "gaussian"; }

void ExperimentConfig::apply(Preset preset) {
    width_factor = 1.0;
    if (preset == Preset::benchmark10) c_rule = {CRule::Kind::m_over_sumsq, 0.0};
    else c_rule = {CRule::Kind::fixed, 1.0};
}

void ExperimentConfig::validate() const {
    if (X.rows() != y.size()) throw InvalidArgument("config: label count does not match instances");
    if (kernels.empty()) throw InvalidArgument("config: no kernel selected");
    if (split.repeats < 1) throw InvalidArgument("config: repeats must be at least 1");
    if (c_rule.kind == CRule::Kind::fixed && !(c_rule.value > 0.0)) throw InvalidArgument("config: C must be positive");
    if (!(width_factor > 0.0)) throw InvalidArgument("config: width factor must be positive");
    if (k < 1) throw InvalidArgument("config: k must be positive");
    if (!(eta > 0.0 && eta <= 1.0)) throw InvalidArgument("config: eta must lie in (0, 1]");
    if (!(epsilon > 0.0)) throw InvalidArgument("config: epsilon must be positive");
}

namespace {

// Calls fn(i) for i in [0, count) on up to `threads` workers. Each index
// writes only its own result slot, so the outcome is independent of
// scheduling.
void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& fn) {
    threads = std::max<std::size_t>(1, std::min(threads, count));
    if (threads == 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) fn(i);
        });
    for (auto& th : pool) th.join();
}

double resolve_C(const ExperimentConfig& config) {
    if (config.c_rule.kind == CRule::Kind::fixed) return config.c_rule.value;
    double sumsq = 0.0;
    for (double v : config.X.data()) sumsq += v * v;
    if (!(sumsq > 0.0)) throw InvalidArgument("C rule m/sum|x|^2 undefined: all instances are zero");
    return static_cast<double>(config.X.rows()) / sumsq;
}

LabelVector restrict(const LabelVector& v, const std::vector<std::size_t>& idx) {
    LabelVector out;
    for (std::size_t i : idx) out.push_back(v[i]);
    return out;
}

std::string fmt(const char* pattern, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, pattern, v);
    return buf;
}

std::string fmt_t(double t) {
    if (std::isinf(t)) return t > 0 ? "inf" : "-inf";
    return fmt("%.4f", t);
}

}  // namespace

RepeatOutcome run_repeat(const ExperimentConfig& config, KernelKind kind, std::size_t repeat,
                         const std::vector<double>& sweep_epsilons) {
    const Dataset D = make_split(config.X, config.y, config.split, repeat);
    const double delta = average_pairwise_distance(config.X);
    const double C = resolve_C(config);
    const KernelSpec kernel = kind == KernelKind::linear ? KernelSpec::linear()
                                                         : KernelSpec::gaussian(config.width_factor * delta);

    const auto lab = D.labeled_indices();
    const auto unl = D.unlabeled_indices();
    const SvmModel svm = train_svc(D.X.select_rows(lab), D.labeled_labels(), kernel, C);
    const LabelVector y_svm = predict_labels(svm, D.X);

    TsvmOptions topt;
    topt.pos_fraction = config.tsvm_pos_fraction;
    const TsvmResult tsvm = train_tsvm(D, kernel, C, topt);
    LabelVector y_s3vm = D.y_true;
    for (std::size_t k = 0; k < unl.size(); ++k) y_s3vm[unl[k]] = tsvm.unlabeled_labels[k];

    const LabelVector truth = restrict(D.y_true, unl);
    RepeatOutcome out;
    out.accuracy[0] = accuracy(restrict(y_svm, unl), truth);
    out.accuracy[1] = accuracy(restrict(y_s3vm, unl), truth);

    const std::uint64_t stream = mix_seed(config.split.seed, repeat);
    out.accuracy[2] = accuracy(select_c(y_svm, y_s3vm, D, config.k, mix_seed(stream, 1)).final_labels, truth);
    out.accuracy[3] = accuracy(select_p(y_svm, y_s3vm, D, gaussian_weights(D.X, delta), config.eta).final_labels, truth);

    const Dendrogram tree = single_linkage(D.X);
    out.accuracy[4] = accuracy(select_us(y_svm, y_s3vm, D, tree, config.epsilon).final_labels, truth);
    for (double eps : sweep_epsilons)
        out.sweep_us.push_back(accuracy(select_us(y_svm, y_s3vm, D, tree, eps).final_labels, truth));
    return out;
}

Report run_suite(const std::vector<ExperimentConfig>& configs, std::size_t threads) {
    struct Job {
        std::size_t setting, config, repeat;
        KernelKind kernel;
    };
    Report report;
    std::vector<Job> jobs;
    for (std::size_t c = 0; c < configs.size(); ++c) {
        configs[c].validate();
        for (KernelKind kind : configs[c].kernels) {
            SettingResult s;
            s.name = configs[c].name;
            s.kernel = kind;
            for (std::size_t r = 0; r < configs[c].split.repeats; ++r)
                jobs.push_back({report.settings.size(), c, r, kind});
            report.settings.push_back(std::move(s));
        }
    }

    std::vector<RepeatOutcome> results(jobs.size());
    std::vector<std::string> errors(jobs.size());
    parallel_for(jobs.size(), threads, [&](std::size_t j) {
        try {
            results[j] = run_repeat(configs[jobs[j].config], jobs[j].kernel, jobs[j].repeat);
        } catch (const std::exception& e) {
            errors[j] = e.what();
            if (errors[j].empty()) errors[j] = "unknown error";
        }
    });

    for (auto& s : report.settings)
        for (const char* name : kMethodNames) s.runs.push_back({name, {}});
    for (std::size_t j = 0; j < jobs.size(); ++j) {
        SettingResult& s = report.settings[jobs[j].setting];
        if (!errors[j].empty()) {
            s.errors.push_back("repeat " + std::to_string(jobs[j].repeat) + ": " + errors[j]);
            continue;
        }
        for (std::size_t m = 0; m < kMethodCount; ++m) s.runs[m].accuracies.push_back(results[j].accuracy[m]);
    }
    for (auto& s : report.settings) {
        if (s.failed() || s.runs[0].accuracies.size() < 2) continue;
        std::vector<MethodRun> others(s.runs.begin() + 1, s.runs.end());
        s.vs_svm = wtl_table(others, s.runs[0]);
    }
    return report;
}

Report run_experiment(const ExperimentConfig& config) { return run_suite({config}, config.threads); }

std::vector<WtlCount> Report::totals() const {
    std::vector<Comparison> all;
    for (const auto& s : settings)
        if (!s.failed()) all.insert(all.end(), s.vs_svm.begin(), s.vs_svm.end());
    return tally(all);
}

std::string Report::to_tsv() const {
    std::string out = "setting\tkernel\tmethod\tmean_acc\tstd_acc\tt_stat\tvs_svm\n";
    for (const auto& s : settings) {
        for (std::size_t m = 0; m < s.runs.size(); ++m) {
            out += s.name + '\t' + to_string(s.kernel) + '\t' + s.runs[m].method + '\t';
            if (s.failed()) {
                out += "-\t-\t-\tfailed\n";
                continue;
            }
            out += fmt("%.6f", mean(s.runs[m].accuracies)) + '\t' + fmt("%.6f", stddev(s.runs[m].accuracies)) + '\t';
            if (m == 0 || s.vs_svm.empty()) out += std::string("-\t") + (m == 0 ? "baseline" : "-") + '\n';
            else out += fmt_t(s.vs_svm[m - 1].t) + '\t' + to_string(s.vs_svm[m - 1].outcome) + '\n';
        }
    }
    out += "\nmethod\twin\ttie\tloss\n";
    for (const auto& w : totals())
        out += w.method + '\t' + std::to_string(w.win) + '\t' + std::to_string(w.tie) + '\t' + std::to_string(w.loss) + '\n';
    return out;
}

std::string Report::to_text() const {
    std::string out;
    char line[256];
    for (const auto& s : settings) {
        out += s.name + " (" + to_string(s.kernel) + ", " + std::to_string(s.runs.empty() ? 0 : s.runs[0].accuracies.size()) +
               " repeats)\n";
        if (s.failed()) {
            for (const auto& e : s.errors) out += "  failed: " + e + '\n';
            continue;
        }
        std::snprintf(line, sizeof line, "  %-8s  %-17s  %s\n", "method", "accuracy (%)", "vs SVM");
        out += line;
        for (std::size_t m = 0; m < s.runs.size(); ++m) {
            const char* verdict = m == 0 ? "baseline" : (s.vs_svm.empty() ? "-" : to_string(s.vs_svm[m - 1].outcome));
            std::snprintf(line, sizeof line, "  %-8s  %6.2f +/- %6.2f    %s\n", s.runs[m].method.c_str(),
                          100.0 * mean(s.runs[m].accuracies), 100.0 * stddev(s.runs[m].accuracies), verdict);
            out += line;
        }
    }
    const auto totals_row = totals();
    if (!totals_row.empty()) {
        out += "win/tie/loss against SVM\n";
        for (const auto& w : totals_row) {
            std::snprintf(line, sizeof line, "  %-8s  %zu/%zu/%zu\n", w.method.c_str(), w.win, w.tie, w.loss);
            out += line;
        }
    }
    return out;
}

std::vector<SweepPoint> epsilon_sweep(const ExperimentConfig& config, const std::vector<double>& epsilons) {
    config.validate();
    if (epsilons.empty()) throw InvalidArgument("epsilon_sweep: no epsilon values");
    for (double e : epsilons)
        if (!(e > 0.0 && e <= 1.0)) throw InvalidArgument("epsilon_sweep: epsilon values must lie in (0, 1]");

    const std::size_t repeats = config.split.repeats;
    std::vector<RepeatOutcome> results(repeats);
    std::vector<std::exception_ptr> failures(repeats);
    parallel_for(repeats, config.threads, [&](std::size_t r) {
        try {
            results[r] = run_repeat(config, config.kernels.front(), r, epsilons);
        } catch (...) {
            failures[r] = std::current_exception();
        }
    });
    for (const auto& f : failures)
        if (f) std::rethrow_exception(f);

    std::vector<SweepPoint> out;
    for (std::size_t e = 0; e < epsilons.size(); ++e) {
        SweepPoint p{epsilons[e], 0.0, {}};
        for (const auto& r : results) p.improvements.push_back(r.sweep_us[e] - r.accuracy[0]);
        p.mean_improvement = mean(p.improvements);
        out.push_back(std::move(p));
    }
    return out;
}

std::string sweep_to_tsv(const std::vector<SweepPoint>& sweep) {
    std::string out = "epsilon\tmean_improvement\n";
    for (const auto& p : sweep) out += fmt("%g", p.epsilon) + '\t' + fmt("%.6f", p.mean_improvement) + '\n';
    return out;
}

}  // namespace s3vm
