#include "efekit/linalg.hpp"

#include "efekit/errors.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace efekit {

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) {
        std::ostringstream msg;
        msg << "matrix data length " << data_.size() << " does not match "
            << rows_ << "x" << cols_;
        throw DimMismatchError(msg.str());
    }
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

std::vector<double> Matrix::col(std::size_t c) const {
    std::vector<double> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
}

std::vector<double> Matrix::row(std::size_t r) const {
    std::vector<double> out(cols_);
    for (std::size_t c = 0; c < cols_; ++c) out[c] = (*this)(r, c);
    return out;
}

std::vector<double> matvec(const Matrix& m, const std::vector<double>& x) {
    if (x.size() != m.cols()) {
        throw DimMismatchError("matvec: vector length does not match columns");
    }
    std::vector<double> y(m.rows(), 0.0);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        double acc = 0.0;
        for (std::size_t c = 0; c < m.cols(); ++c) acc += m(r, c) * x[c];
        y[r] = acc;
    }
    return y;
}

double norm1(const Matrix& m) {
    double best = 0.0;
    for (std::size_t c = 0; c < m.cols(); ++c) {
        double s = 0.0;
        for (std::size_t r = 0; r < m.rows(); ++r) s += std::abs(m(r, c));
        best = std::max(best, s);
    }
    return best;
}

bool solve_linear(const Matrix& m, const std::vector<double>& b,
                  std::vector<double>& x, double tol) {
    if (m.rows() != m.cols() || b.size() != m.rows()) {
        throw DimMismatchError("solve_linear: wants square system");
    }
    std::size_t n = m.rows();
    Matrix a = m;
    std::vector<double> rhs = b;

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        double best = std::abs(a(k, k));
        for (std::size_t r = k + 1; r < n; ++r) {
            if (std::abs(a(r, k)) > best) {
                best = std::abs(a(r, k));
                pivot = r;
            }
        }
        if (best < tol) return false;
        if (pivot != k) {
            for (std::size_t c = 0; c < n; ++c) std::swap(a(k, c), a(pivot, c));
            std::swap(rhs[k], rhs[pivot]);
        }
        for (std::size_t r = k + 1; r < n; ++r) {
            double f = a(r, k) / a(k, k);
            if (f == 0.0) continue;
            for (std::size_t c = k; c < n; ++c) a(r, c) -= f * a(k, c);
            rhs[r] -= f * rhs[k];
        }
    }

    x.assign(n, 0.0);
    for (std::size_t k = n; k-- > 0;) {
        double acc = rhs[k];
        for (std::size_t c = k + 1; c < n; ++c) acc -= a(k, c) * x[c];
        x[k] = acc / a(k, k);
    }
    return true;
}

bool invert(const Matrix& m, Matrix& inv, double tol) {
    if (m.rows() != m.cols()) {
        throw DimMismatchError("invert: wants square matrix");
    }
    std::size_t n = m.rows();
    inv = Matrix(n, n, 0.0);
    std::vector<double> e(n, 0.0), x;
    for (std::size_t c = 0; c < n; ++c) {
        e.assign(n, 0.0);
        e[c] = 1.0;
        if (!solve_linear(m, e, x, tol)) return false;
        for (std::size_t r = 0; r < n; ++r) inv(r, c) = x[r];
    }
    return true;
}

double cond1(const Matrix& m) {
    Matrix inv;
    if (!invert(m, inv)) return std::numeric_limits<double>::infinity();
    return norm1(m) * norm1(inv);
}

} // namespace efekit
