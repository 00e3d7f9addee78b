#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace s3vm {

// Dense row-major matrix of doubles.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
    Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);

    static Matrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return data_.empty(); }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
    std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

    const std::vector<double>& data() const noexcept { return data_; }

    // Rows listed in `indices`, in that order.
    Matrix select_rows(std::span<const std::size_t> indices) const;
    // Sub-block with the given row and column index lists.
    Matrix block(std::span<const std::size_t> row_idx, std::span<const std::size_t> col_idx) const;

    Matrix operator*(const Matrix& rhs) const;

    double max_abs() const;
    bool all_finite() const;

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

enum class KernelKind { linear, gaussian };

struct KernelSpec {
    KernelKind kind = KernelKind::linear;
    double width = 1.0;  // gaussian only

    static KernelSpec linear() { return {KernelKind::linear, 1.0}; }
    static KernelSpec gaussian(double width) { return {KernelKind::gaussian, width}; }

    void validate() const;
    double operator()(std::span<const double> a, std::span<const double> b) const;

    friend bool operator==(const KernelSpec&, const KernelSpec&) = default;
};

double squared_distance(std::span<const double> a, std::span<const double> b);

// Pairwise Euclidean distances, n x n.
Matrix distance_matrix(const Matrix& X);

// Kernel matrix between the rows of X.
Matrix gram(const Matrix& X, const KernelSpec& kernel);

// Mean Euclidean distance over all unordered pairs of rows. Throws when
// there are fewer than two rows or every row is identical.
double average_pairwise_distance(const Matrix& X);

// Solves A X = B for symmetric positive-definite A using a Cholesky
// factorization. If the first attempt breaks down, the diagonal is bumped
// once by 1e-10 * trace(A) / n and the factorization retried; a second
// failure throws NumericalError with the offending pivot.
Matrix solve_spd(const Matrix& A, const Matrix& B);

}  // namespace s3vm
