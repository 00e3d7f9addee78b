#include "s3vm/eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/distributions/students_t.hpp>

#include "s3vm/error.hpp"

namespace s3vm {

double accuracy(const LabelVector& predicted, const LabelVector& truth) {
    if (predicted.size() != truth.size()) throw InvalidArgument("accuracy: length mismatch");
    if (predicted.empty()) throw InvalidArgument("accuracy: empty input");
    std::size_t hits = 0;
    for (std::size_t i = 0; i < predicted.size(); ++i) hits += predicted[i] == truth[i];
    return static_cast<double>(hits) / static_cast<double>(predicted.size());
}

double mean(const std::vector<double>& v) {
    if (v.empty()) return 0.0;
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double stddev(const std::vector<double>& v) {
    if (v.size() < 2) return 0.0;
    const double mu = mean(v);
    double s = 0.0;
    for (double x : v) s += (x - mu) * (x - mu);
    return std::sqrt(s / static_cast<double>(v.size() - 1));
}

const char* to_string(Outcome o) {
    switch (o) {
        case Outcome::win: return "win";
        case Outcome::loss: return "loss";
        default: return "tie";
    }
}

double t_critical(double df, double alpha) {
    if (!(df > 0.0)) throw InvalidArgument("t_critical: degrees of freedom must be positive");
    if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("t_critical: alpha must lie in (0, 1)");
    return boost::math::quantile(boost::math::students_t(df), 1.0 - alpha / 2.0);
}

TTestResult paired_t_test(const std::vector<double>& a, const std::vector<double>& b, double alpha) {
    if (a.size() != b.size()) throw InvalidArgument("paired_t_test: samples differ in length");
    const std::size_t n = a.size();
    if (n < 2) throw InvalidArgument("paired_t_test: need at least two pairs");

    std::vector<double> d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = a[i] - b[i];
    const double mu = mean(d);
    const double sd = stddev(d);

    TTestResult r;
    r.critical = t_critical(static_cast<double>(n - 1), alpha);
    // Differences equal up to rounding are treated as constant.
    const double scale = std::max({1.0, std::abs(mu)}) * 1e-12;
    if (sd <= scale) {
        if (std::abs(mu) <= scale) {
            r.t = 0.0;
            r.outcome = Outcome::tie;
        } else {
            r.t = mu > 0 ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
            r.outcome = mu > 0 ? Outcome::win : Outcome::loss;
        }
        return r;
    }
    r.t = mu / (sd / std::sqrt(static_cast<double>(n)));
    if (std::abs(r.t) > r.critical) r.outcome = mu > 0 ? Outcome::win : Outcome::loss;
    return r;
}

std::vector<Comparison> wtl_table(const std::vector<MethodRun>& runs, const MethodRun& baseline, double alpha) {
    std::vector<Comparison> out;
    for (const MethodRun& run : runs) {
        if (run.accuracies.size() != baseline.accuracies.size())
            throw InvalidArgument("wtl_table: repeat count of '" + run.method + "' differs from the baseline");
        const TTestResult r = paired_t_test(run.accuracies, baseline.accuracies, alpha);
        out.push_back({run.method, baseline.method, r.outcome, r.t, alpha});
    }
    return out;
}

std::vector<WtlCount> tally(const std::vector<Comparison>& comparisons) {
    std::vector<WtlCount> out;
    for (const Comparison& c : comparisons) {
        auto it = std::find_if(out.begin(), out.end(), [&](const WtlCount& w) { return w.method == c.method; });
        if (it == out.end()) {
            out.push_back({c.method});
            it = out.end() - 1;
        }
        switch (c.outcome) {
            case Outcome::win: ++it->win; break;
            case Outcome::tie: ++it->tie; break;
            case Outcome::loss: ++it->loss; break;
        }
    }
    return out;
}

}  // namespace s3vm
