#pragma once

#include <cstddef>
#include <vector>

namespace efekit {

/// Small dense row-major matrix. Probability matrices here follow the
/// column-as-conditioner layout: column c of a likelihood is P(o | s = c),
/// so applying the matrix to a state simplex vector is a plain matvec.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
    Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);

    static Matrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    double& operator()(std::size_t r, std::size_t c) {
        return data_[r * cols_ + c];
    }
    double operator()(std::size_t r, std::size_t c) const {
        return data_[r * cols_ + c];
    }
    const std::vector<double>& data() const { return data_; }

    std::vector<double> col(std::size_t c) const;
    std::vector<double> row(std::size_t r) const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// y = M x. Throws DimMismatchError on shape mismatch.
std::vector<double> matvec(const Matrix& m, const std::vector<double>& x);

/// Maximum absolute column sum.
double norm1(const Matrix& m);

/// Solves M x = b by Gaussian elimination with partial pivoting.
/// Returns false when M is numerically singular (pivot below tol).
bool solve_linear(const Matrix& m, const std::vector<double>& b,
                  std::vector<double>& x, double tol = 1e-13);

/// Inverse via column-by-column solves. Returns false when singular.
bool invert(const Matrix& m, Matrix& inv, double tol = 1e-13);

/// 1-norm condition number, +infinity when singular.
double cond1(const Matrix& m);

} // namespace efekit
