#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "s3vm/svm.hpp"

namespace s3vm {

double accuracy(const LabelVector& predicted, const LabelVector& truth);

double mean(const std::vector<double>& v);
// Sample standard deviation (n - 1 denominator); 0 for fewer than two values.
double stddev(const std::vector<double>& v);

enum class Outcome { win, tie, loss };
const char* to_string(Outcome o);

// Two-sided critical value of Student's t with `df` degrees of freedom.
double t_critical(double df, double alpha = 0.05);

struct TTestResult {
    Outcome outcome = Outcome::tie;
    double t = 0.0;         // +/-inf for zero-variance differences with nonzero mean, 0 when d is identically 0
    double critical = 0.0;
};

// Paired two-sided t-test on d = a - b. A win means a is significantly larger.
TTestResult paired_t_test(const std::vector<double>& a, const std::vector<double>& b, double alpha = 0.05);

struct MethodRun {
    std::string method;
    std::vector<double> accuracies;
};

struct Comparison {
    std::string method;
    std::string baseline;
    Outcome outcome = Outcome::tie;
    double t = 0.0;
    double alpha = 0.05;
};

// One comparison per run against the baseline.
std::vector<Comparison> wtl_table(const std::vector<MethodRun>& runs, const MethodRun& baseline, double alpha = 0.05);

struct WtlCount {
    std::string method;
    std::size_t win = 0, tie = 0, loss = 0;
};

// Totals per method, in order of first appearance.
std::vector<WtlCount> tally(const std::vector<Comparison>& comparisons);

}  // namespace s3vm
