// Copyright 2025 The gqms authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gqms::num {

using cplx = std::complex<double>;
using RealVector = std::vector<double>;
using ComplexVector = std::vector<cplx>;

/// Thrown when a numerical routine cannot produce a result within its
/// contract (singular system, residual too large, horizon cap exceeded).
class SolverFailure : public std::runtime_error {
public:
    explicit SolverFailure(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {
inline bool finite(double x) { return std::isfinite(x); }
inline bool finite(const cplx& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }
inline double abs2(double x) { return x * x; }
inline double abs2(const cplx& z) { return std::norm(z); }
} // namespace detail

/// Small dense row-major matrix. Everything in this library is at most
/// 16x16 (64x64 for the vectorized Lyapunov system), so no attempt is
/// made at blocking or allocation tricks.
template <typename T>
class Mat {
public:
    Mat() = default;
    Mat(std::size_t rows, std::size_t cols, T fill = T{})
        : rows_(rows), cols_(cols), a_(rows * cols, fill) {}

    static Mat identity(std::size_t n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
        return m;
    }
    static Mat diagonal(const std::vector<T>& d) {
        Mat m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    T& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    const std::vector<T>& entries() const { return a_; }
    std::vector<T>& entries() { return a_; }

    bool all_finite() const {
        for (const auto& v : a_)
            if (!detail::finite(v)) return false;
        return true;
    }

    Mat transpose() const {
        Mat r(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (const auto& v : a_) s += detail::abs2(v);
        return std::sqrt(s);
    }
    double max_abs() const {
        double s = 0.0;
        for (const auto& v : a_) s = std::max(s, std::abs(v));
        return s;
    }
    // maximum absolute column sum
    double one_norm() const {
        double s = 0.0;
        for (std::size_t j = 0; j < cols_; ++j) {
            double c = 0.0;
            for (std::size_t i = 0; i < rows_; ++i) c += std::abs((*this)(i, j));
            s = std::max(s, c);
        }
        return s;
    }

    Mat& operator+=(const Mat& o) {
        for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
        return *this;
    }
    Mat& operator-=(const Mat& o) {
        for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
        return *this;
    }
    Mat& operator*=(T s) {
        for (auto& v : a_) v *= s;
        return *this;
    }

    friend Mat operator+(Mat a, const Mat& b) { return a += b; }
    friend Mat operator-(Mat a, const Mat& b) { return a -= b; }
    friend Mat operator*(Mat a, T s) { return a *= s; }
    friend Mat operator*(T s, Mat a) { return a *= s; }
    friend Mat operator-(Mat a) { return a *= T{-1}; }

    friend Mat operator*(const Mat& a, const Mat& b) {
        Mat r(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T aik = a(i, k);
                if (aik == T{}) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += aik * b(k, j);
            }
        return r;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<T> a_;
};

using RealMatrix = Mat<double>;
using ComplexMatrix = Mat<cplx>;

template <typename T>
Mat<T> from_rows(std::initializer_list<std::initializer_list<T>> rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r ? rows.begin()->size() : 0;
    Mat<T> m(r, c);
    std::size_t i = 0;
    for (const auto& row : rows) {
        if (row.size() != c) throw std::invalid_argument("from_rows: ragged rows");
        std::size_t j = 0;
        for (const auto& v : row) m(i, j++) = v;
        ++i;
    }
    return m;
}

inline ComplexMatrix conj(const ComplexMatrix& m) {
    ComplexMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = std::conj(m(i, j));
    return r;
}
inline ComplexMatrix adjoint(const ComplexMatrix& m) { return conj(m).transpose(); }

inline RealMatrix real_part(const ComplexMatrix& m) {
    RealMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).real();
    return r;
}
inline RealMatrix imag_part(const ComplexMatrix& m) {
    RealMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).imag();
    return r;
}
inline ComplexMatrix complexify(const RealMatrix& m) {
    ComplexMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = cplx(m(i, j), 0.0);
    return r;
}

template <typename T>
double symmetry_error(const Mat<T>& m) {
    double e = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) e = std::max(e, std::abs(m(i, j) - m(j, i)));
    return e;
}
inline double hermiticity_error(const ComplexMatrix& m) {
    double e = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            e = std::max(e, std::abs(m(i, j) - std::conj(m(j, i))));
    return e;
}
template <typename T>
Mat<T> symmetrized(const Mat<T>& m) {
    Mat<T> r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = (m(i, j) + m(j, i)) / T{2};
    return r;
}

/// Assemble [[A, B], [C, D]] from equally sized blocks.
template <typename T>
Mat<T> from_blocks(const Mat<T>& A, const Mat<T>& B, const Mat<T>& C, const Mat<T>& D) {
    const std::size_t r = A.rows(), c = A.cols();
    if (B.rows() != r || C.cols() != c || B.cols() != D.cols() || C.rows() != D.rows())
        throw std::invalid_argument("from_blocks: inconsistent block sizes");
    Mat<T> m(r + C.rows(), c + B.cols());
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = A(i, j);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < B.cols(); ++j) m(i, c + j) = B(i, j);
    for (std::size_t i = 0; i < C.rows(); ++i)
        for (std::size_t j = 0; j < c; ++j) m(r + i, j) = C(i, j);
    for (std::size_t i = 0; i < C.rows(); ++i)
        for (std::size_t j = 0; j < D.cols(); ++j) m(r + i, c + j) = D(i, j);
    return m;
}

template <typename T>
std::vector<T> mat_vec(const Mat<T>& m, const std::vector<T>& v) {
    if (m.cols() != v.size()) throw std::invalid_argument("mat_vec: size mismatch");
    std::vector<T> r(m.rows(), T{});
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r[i] += m(i, j) * v[j];
    return r;
}

/// Solve A x = b by LU with partial pivoting. Throws SolverFailure when a
/// pivot collapses relative to the matrix scale.
template <typename T>
std::vector<T> lu_solve(Mat<T> A, std::vector<T> b) {
    if (!A.square() || A.rows() != b.size()) throw std::invalid_argument("lu_solve: shape mismatch");
    const std::size_t n = A.rows();
    const double scale = std::max(A.max_abs(), 1e-300);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double best = std::abs(A(k, k));
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(A(i, k)) > best) { best = std::abs(A(i, k)); piv = i; }
        if (best <= scale * 1e-14)
            throw SolverFailure("lu_solve: singular linear system (pivot " + std::to_string(best) + ")");
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(A(k, j), A(piv, j));
            std::swap(b[k], b[piv]);
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            const T f = A(i, k) / A(k, k);
            if (f == T{}) continue;
            A(i, k) = f;
            for (std::size_t j = k + 1; j < n; ++j) A(i, j) -= f * A(k, j);
            b[i] -= f * b[k];
        }
    }
    std::vector<T> x(n);
    for (std::size_t ii = n; ii-- > 0;) {
        T s = b[ii];
        for (std::size_t j = ii + 1; j < n; ++j) s -= A(ii, j) * x[j];
        x[ii] = s / A(ii, ii);
    }
    return x;
}

/// Solve A X = B column by column.
template <typename T>
Mat<T> lu_solve_matrix(const Mat<T>& A, const Mat<T>& B) {
    Mat<T> X(B.rows(), B.cols());
    for (std::size_t j = 0; j < B.cols(); ++j) {
        std::vector<T> col(B.rows());
        for (std::size_t i = 0; i < B.rows(); ++i) col[i] = B(i, j);
        auto x = lu_solve(A, col);
        for (std::size_t i = 0; i < B.rows(); ++i) X(i, j) = x[i];
    }
    return X;
}

// Determinants by direct cofactor expansion, used for the 4x4 witness.
template <typename T>
T det2(const Mat<T>& m, std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) {
    return m(r0, c0) * m(r1, c1) - m(r0, c1) * m(r1, c0);
}
template <typename T>
T det3(const Mat<T>& m, const std::size_t r[3], const std::size_t c[3]) {
    return m(r[0], c[0]) * (m(r[1], c[1]) * m(r[2], c[2]) - m(r[1], c[2]) * m(r[2], c[1]))
         - m(r[0], c[1]) * (m(r[1], c[0]) * m(r[2], c[2]) - m(r[1], c[2]) * m(r[2], c[0]))
         + m(r[0], c[2]) * (m(r[1], c[0]) * m(r[2], c[1]) - m(r[1], c[1]) * m(r[2], c[0]));
}
template <typename T>
T det4(const Mat<T>& m) {
    if (m.rows() != 4 || m.cols() != 4) throw std::invalid_argument("det4: expected 4x4");
    T d{};
    T sign{1};
    for (std::size_t k = 0; k < 4; ++k) {
        std::size_t r[3], c[3];
        std::size_t ri = 0;
        for (std::size_t i = 1; i < 4; ++i) r[ri++] = i;
        std::size_t ci = 0;
        for (std::size_t j = 0; j < 4; ++j)
            if (j != k) c[ci++] = j;
        d += sign * m(0, k) * det3(m, r, c);
        sign = -sign;
    }
    return d;
}

} // namespace gqms::num
