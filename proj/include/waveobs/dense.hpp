#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace waveobs {

/// Row-major dense matrix.
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static DenseMatrix identity(std::size_t n);

    [[nodiscard]] std::size_t rows() const { return rows_; }
    [[nodiscard]] std::size_t cols() const { return cols_; }
    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    [[nodiscard]] std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    [[nodiscard]] std::span<const double> row(std::size_t r) const {
        return {data_.data() + r * cols_, cols_};
    }
    [[nodiscard]] std::vector<double>& data() { return data_; }
    [[nodiscard]] const std::vector<double>& data() const { return data_; }

    [[nodiscard]] std::vector<double> multiply(std::span<const double> v) const;
    [[nodiscard]] DenseMatrix multiply(const DenseMatrix& b) const;
    [[nodiscard]] DenseMatrix transpose() const;
    [[nodiscard]] double max_asymmetry() const;

    friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

struct EigenDecomposition {
    std::vector<double> values;  ///< ascending
    DenseMatrix vectors;         ///< column k belongs to values[k]; empty unless requested
    int sweeps = 0;
};

/// Cyclic Jacobi rotations until the off-diagonal Frobenius norm drops below
/// `tol` (relative to the Frobenius norm of A when A is nonzero).
[[nodiscard]] EigenDecomposition jacobi_eigen(const DenseMatrix& a, bool want_vectors = false,
                                              double tol = 1e-12, int max_sweeps = 100);

/// Lower Cholesky factor of an SPD matrix; throws std::domain_error otherwise.
[[nodiscard]] DenseMatrix cholesky(const DenseMatrix& a);
[[nodiscard]] std::vector<double> cholesky_solve(const DenseMatrix& l, std::span<const double> b);

[[nodiscard]] double dot(std::span<const double> a, std::span<const double> b);

/// Solves a tridiagonal system (sub, diag, super) by the Thomas algorithm.
[[nodiscard]] std::vector<double> thomas_solve(std::span<const double> sub,
                                               std::span<const double> diag,
                                               std::span<const double> super,
                                               std::span<const double> rhs);

}  // namespace waveobs
