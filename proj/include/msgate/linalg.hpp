#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace msgate {

/// Dense square matrix, row-major.
class Matrix {
public:
    Matrix() = default;
    explicit Matrix(std::size_t n, double fill = 0.0) : n_(n), data_(n * n, fill) {}

    static Matrix identity(std::size_t n);

    std::size_t size() const { return n_; }
    double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

    std::vector<double> column(std::size_t j) const;
    Matrix transposed() const;
    Matrix operator*(const Matrix& rhs) const;

    /// Frobenius norm.
    double norm() const;
    double max_asymmetry() const;

private:
    std::size_t n_ = 0;
    std::vector<double> data_;
};

struct SymmetricEigen {
    std::vector<double> values;  // ascending
    Matrix vectors;              // column k belongs to values[k]
    int sweeps = 0;
};

/// Cyclic Jacobi rotations until the off-diagonal norm falls below
/// rel_threshold * ||A||. Columns are sorted by ascending eigenvalue and sign-fixed
/// so the first entry with |v| > 1e-12 is positive.
SymmetricEigen jacobi_eigen(const Matrix& a, double rel_threshold = 1e-14, int max_sweeps = 100);

/// Solve A x = b by Gaussian elimination with partial pivoting.
std::vector<double> solve_linear(Matrix a, std::vector<double> b);

/// Flip signs so the first entry whose magnitude exceeds tol is positive.
void fix_sign(std::span<double> v, double tol = 1e-12);

}  // namespace msgate
