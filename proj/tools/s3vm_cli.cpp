// Command-line front end: gen, run, bench and sweep.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "s3vm/data.hpp"
#include "s3vm/error.hpp"
#include "s3vm/harness.hpp"

namespace {

struct CommonFlags {
    std::string data;
    std::string format = "csv";
    std::size_t labeled = 10;
    std::vector<std::string> kernels{"gaussian"};
    std::string preset = "uci10";
    std::uint64_t seed = 0;
    std::size_t k = 50;
    double eta = 0.1;
    double epsilon = 0.1;
    std::size_t positives = 0;
    double pos_fraction = 0.0;
    std::size_t threads = 1;
};

void add_common(CLI::App* cmd, CommonFlags& f, bool multi_kernel) {
    cmd->add_option("--data", f.data, "Dataset file; every label must be +1 or -1")->required();
    cmd->add_option("--format", f.format, "Dataset format")->check(CLI::IsMember({"csv", "sparse"}))->capture_default_str();
    cmd->add_option("--labeled", f.labeled, "Labeled instances per split")->capture_default_str();
    auto* kernel = cmd->add_option("--kernel", f.kernels, multi_kernel ? "Kernels, comma separated" : "Kernel")
                       ->check(CLI::IsMember({"linear", "gaussian"}))
                       ->capture_default_str();
    if (multi_kernel) kernel->delimiter(',');
    else kernel->expected(1);
    cmd->add_option("--preset", f.preset, "Hyperparameter preset: benchmark10 (C = m/sum|x|^2) or uci10 (C = 1)")
        ->check(CLI::IsMember({"benchmark10", "uci10"}))
        ->capture_default_str();
    cmd->add_option("--seed", f.seed, "Seed for splits and clustering")->capture_default_str();
    cmd->add_option("--k", f.k, "Clusters for S3VM-c")->capture_default_str();
    cmd->add_option("--eta", f.eta, "Adoption fraction for S3VM-p")->capture_default_str();
    cmd->add_option("--epsilon", f.epsilon, "Threshold factor for S3VM-us")->capture_default_str();
    cmd->add_option("--positives", f.positives, "Draw exactly this many labeled positives (0: unconstrained)");
    cmd->add_option("--pos-fraction", f.pos_fraction, "TSVM positive fraction (0: labeled proportion)");
    cmd->add_option("--threads", f.threads, "Worker threads for repeats")->capture_default_str();
}

s3vm::ExperimentConfig make_config(const CommonFlags& f, std::size_t repeats) {
    const auto format = f.format == "sparse" ? s3vm::FileFormat::sparse : s3vm::FileFormat::csv;
    const s3vm::Dataset data = s3vm::load_dataset(f.data, format);
    for (int v : data.y_true)
        if (v == 0) throw s3vm::DataError("benchmarking needs ground truth for every instance; found '?' labels");

    s3vm::ExperimentConfig config;
    config.name = f.data;
    config.X = data.X;
    config.y = data.y_true;
    config.kernels.clear();
    for (const auto& k : f.kernels)
        config.kernels.push_back(k == "linear" ? s3vm::KernelKind::linear : s3vm::KernelKind::gaussian);
    config.apply(*s3vm::parse_preset(f.preset));
    config.split.n_labeled = f.labeled;
    config.split.seed = f.seed;
    config.split.repeats = repeats;
    if (f.positives > 0) config.split.n_positive = f.positives;
    if (f.pos_fraction > 0.0) config.tsvm_pos_fraction = f.pos_fraction;
    config.k = f.k;
    config.eta = f.eta;
    config.epsilon = f.epsilon;
    config.threads = f.threads;
    return config;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw s3vm::DataError("cannot write " + path);
    out << text;
    if (!out) throw s3vm::DataError("write failed for " + path);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Safe semi-supervised SVM toolkit"};
    app.require_subcommand(1);

    std::string variant, out_path;
    std::size_t n_per_moon = 100;
    double noise = 0.1;
    std::uint64_t gen_seed = 0;
    auto* gen = app.add_subcommand("gen", "Write a synthetic moons dataset as CSV");
    gen->add_option("--variant", variant, "two or three")->required()->check(CLI::IsMember({"two", "three"}));
    gen->add_option("--n", n_per_moon, "Points per moon")->required()->check(CLI::PositiveNumber);
    gen->add_option("--noise", noise, "Gaussian noise standard deviation")->capture_default_str()->check(CLI::NonNegativeNumber);
    gen->add_option("--seed", gen_seed, "Noise seed")->capture_default_str();
    gen->add_option("--out", out_path, "Output CSV path")->required();

    CommonFlags run_flags;
    auto* run = app.add_subcommand("run", "Run every method on one split and print the table");
    add_common(run, run_flags, true);

    CommonFlags bench_flags;
    std::size_t repeats = 30;
    std::string bench_out;
    auto* bench = app.add_subcommand("bench", "Repeat over random splits and write the TSV report");
    add_common(bench, bench_flags, true);
    bench->add_option("--repeats", repeats, "Number of random splits")->capture_default_str()->check(CLI::PositiveNumber);
    bench->add_option("--out", bench_out, "TSV report path")->required();

    CommonFlags sweep_flags;
    std::size_t sweep_repeats = 30;
    std::vector<double> epsilons{0.1, 0.2, 0.3};
    std::string sweep_out;
    auto* sweep = app.add_subcommand("sweep", "Mean S3VM-us improvement over SVM for several epsilons");
    add_common(sweep, sweep_flags, false);
    sweep->add_option("--repeats", sweep_repeats, "Number of random splits")->capture_default_str()->check(CLI::PositiveNumber);
    sweep->add_option("--epsilons", epsilons, "Comma-separated epsilon values")->delimiter(',')->capture_default_str();
    sweep->add_option("--out", sweep_out, "TSV output path (stdout when omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n\n" << app.help();
        return 1;
    }

    try {
        if (gen->parsed()) {
            auto [X, y] = s3vm::make_moons(variant == "two" ? s3vm::MoonVariant::two : s3vm::MoonVariant::three,
                                           n_per_moon, noise, gen_seed);
            s3vm::Dataset d{std::move(X), y, std::vector<bool>(y.size(), true)};
            s3vm::save_dataset(d, out_path, s3vm::FileFormat::csv);
        } else if (run->parsed()) {
            const auto report = s3vm::run_experiment(make_config(run_flags, 1));
            std::cout << report.to_text();
            for (const auto& s : report.settings)
                if (s.failed()) return 2;
        } else if (bench->parsed()) {
            const auto report = s3vm::run_experiment(make_config(bench_flags, repeats));
            write_file(bench_out, report.to_tsv());
            std::cout << report.to_text();
            for (const auto& s : report.settings)
                if (s.failed()) return 2;
        } else if (sweep->parsed()) {
            const auto series = s3vm::epsilon_sweep(make_config(sweep_flags, sweep_repeats), epsilons);
            const std::string tsv = s3vm::sweep_to_tsv(series);
            if (sweep_out.empty()) std::cout << tsv;
            else write_file(sweep_out, tsv);
        }
    } catch (const s3vm::InvalidArgument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
