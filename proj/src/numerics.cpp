#include "s3vm/numerics.hpp"

#include <cmath>
#include <optional>

#include "s3vm/error.hpp"

namespace s3vm {

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) {
        throw InvalidArgument("matrix data size does not match its shape");
    }
}

Matrix Matrix::identity(std::size_t n) {
    Matrix I(n, n);
    for (std::size_t i = 0; i < n; ++i) I(i, i) = 1.0;
    return I;
}

Matrix Matrix::select_rows(std::span<const std::size_t> indices) const {
    Matrix out(indices.size(), cols_);
    for (std::size_t r = 0; r < indices.size(); ++r) {
        auto src = row(indices[r]);
        std::copy(src.begin(), src.end(), out.row(r).begin());
    }
    return out;
}

Matrix Matrix::block(std::span<const std::size_t> row_idx, std::span<const std::size_t> col_idx) const {
    Matrix out(row_idx.size(), col_idx.size());
    for (std::size_t r = 0; r < row_idx.size(); ++r)
        for (std::size_t c = 0; c < col_idx.size(); ++c) out(r, c) = (*this)(row_idx[r], col_idx[c]);
    return out;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
    if (cols_ != rhs.rows_) throw InvalidArgument("matrix product: inner dimensions differ");
    Matrix out(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const double a = (*this)(i, k);
            if (a == 0.0) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
        }
    return out;
}

double Matrix::max_abs() const {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::abs(v));
    return m;
}

bool Matrix::all_finite() const {
    for (double v : data_)
        if (!std::isfinite(v)) return false;
    return true;
}

void KernelSpec::validate() const {
    if (kind == KernelKind::gaussian && !(width > 0.0 && std::isfinite(width))) {
        throw InvalidArgument("gaussian kernel width must be positive and finite");
    }
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

double KernelSpec::operator()(std::span<const double> a, std::span<const double> b) const {
    if (kind == KernelKind::linear) {
        double s = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
        return s;
    }
    return std::exp(-squared_distance(a, b) / (2.0 * width * width));
}

Matrix distance_matrix(const Matrix& X) {
    const std::size_t n = X.rows();
    Matrix D(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = std::sqrt(squared_distance(X.row(i), X.row(j)));
            D(i, j) = d;
            D(j, i) = d;
        }
    return D;
}

Matrix gram(const Matrix& X, const KernelSpec& kernel) {
    kernel.validate();
    if (X.rows() == 0) throw InvalidArgument("gram: no instances");
    if (!X.all_finite()) throw InvalidArgument("gram: non-finite feature value");
    const std::size_t n = X.rows();
    Matrix K(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            const double v = (kernel.kind == KernelKind::gaussian && i == j) ? 1.0 : kernel(X.row(i), X.row(j));
            K(i, j) = v;
            K(j, i) = v;
        }
    return K;
}

double average_pairwise_distance(const Matrix& X) {
    const std::size_t n = X.rows();
    if (n < 2) throw InvalidArgument("average distance needs at least two instances");
    if (!X.all_finite()) throw InvalidArgument("average distance: non-finite feature value");
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) sum += std::sqrt(squared_distance(X.row(i), X.row(j)));
    const double mean = sum / (static_cast<double>(n) * static_cast<double>(n - 1) / 2.0);
    if (!(mean > 0.0)) throw InvalidArgument("average distance is zero: all instances identical");
    return mean;
}

namespace {

// Lower-triangular Cholesky factor, or the index of the failing pivot.
std::optional<std::size_t> cholesky(const Matrix& A, double jitter, Matrix& L) {
    const std::size_t n = A.rows();
    L = Matrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        double d = A(j, j) + jitter;
        for (std::size_t k = 0; k < j; ++k) d -= L(j, k) * L(j, k);
        if (!(d > 0.0) || !std::isfinite(d)) return j;
        const double ljj = std::sqrt(d);
        L(j, j) = ljj;
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = A(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= L(i, k) * L(j, k);
            L(i, j) = s / ljj;
        }
    }
    return std::nullopt;
}

}  // namespace

Matrix solve_spd(const Matrix& A, const Matrix& B) {
    const std::size_t n = A.rows();
    if (A.cols() != n) throw InvalidArgument("solve_spd: matrix is not square");
    if (B.rows() != n) throw InvalidArgument("solve_spd: right-hand side has wrong row count");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(A(i, j) - A(j, i)) > 1e-10) throw InvalidArgument("solve_spd: matrix is not symmetric");

    Matrix L;
    if (auto pivot = cholesky(A, 0.0, L)) {
        double trace = 0.0;
        for (std::size_t i = 0; i < n; ++i) trace += A(i, i);
        const double jitter = 1e-10 * trace / static_cast<double>(n);
        if (!(jitter > 0.0) || cholesky(A, jitter, L)) {
            throw NumericalError("matrix is not positive definite", *pivot);
        }
    }

    const std::size_t m = B.cols();
    Matrix X = B;
    for (std::size_t c = 0; c < m; ++c) {
        for (std::size_t i = 0; i < n; ++i) {
            double s = X(i, c);
            for (std::size_t k = 0; k < i; ++k) s -= L(i, k) * X(k, c);
            X(i, c) = s / L(i, i);
        }
        for (std::size_t i = n; i-- > 0;) {
            double s = X(i, c);
            for (std::size_t k = i + 1; k < n; ++k) s -= L(k, i) * X(k, c);
            X(i, c) = s / L(i, i);
        }
    }
    return X;
}

}  // namespace s3vm
