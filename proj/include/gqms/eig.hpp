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

#include <cstdlib>

#include "gqms/matrix.hpp"

namespace gqms::num {

struct Spectrum {
    ComplexVector eigenvalues;
    bool converged = false;
    int iterations = 0;
};

namespace detail {

// Householder reduction to upper Hessenberg form (in place).
inline void hessenberg(RealMatrix& a) {
    const std::size_t n = a.rows();
    if (n < 3) return;
    RealVector v(n);
    for (std::size_t k = 0; k + 2 < n; ++k) {
        double norm2 = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) norm2 += a(i, k) * a(i, k);
        if (norm2 == 0.0) continue;
        double alpha = std::sqrt(norm2);
        if (a(k + 1, k) > 0) alpha = -alpha;
        double v0 = a(k + 1, k) - alpha;
        double vnorm2 = norm2 - a(k + 1, k) * a(k + 1, k) + v0 * v0;
        if (vnorm2 == 0.0) continue;
        v[k + 1] = v0;
        for (std::size_t i = k + 2; i < n; ++i) v[i] = a(i, k);
        const double beta = 2.0 / vnorm2;
        // left: A <- (I - beta v v^T) A
        for (std::size_t j = k; j < n; ++j) {
            double s = 0.0;
            for (std::size_t i = k + 1; i < n; ++i) s += v[i] * a(i, j);
            s *= beta;
            for (std::size_t i = k + 1; i < n; ++i) a(i, j) -= s * v[i];
        }
        // right: A <- A (I - beta v v^T)
        for (std::size_t i = 0; i < n; ++i) {
            double s = 0.0;
            for (std::size_t j = k + 1; j < n; ++j) s += a(i, j) * v[j];
            s *= beta;
            for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= s * v[j];
        }
        a(k + 1, k) = alpha;
        for (std::size_t i = k + 2; i < n; ++i) a(i, k) = 0.0;
    }
}

} // namespace detail

/// Eigenvalues of a general real square matrix (dimension <= 16) via
/// Hessenberg reduction followed by Francis double-shift QR iteration.
/// Complex eigenvalues come out in exact conjugate pairs. Non-convergence
/// is reported through Spectrum::converged, never silently truncated.
inline Spectrum eigenvalues_general(const RealMatrix& M, double tol = 1e-12, int max_iter = 0) {
    if (!M.square()) throw std::invalid_argument("eigenvalues_general: matrix must be square");
    if (M.rows() > 16) throw std::invalid_argument("eigenvalues_general: dimension must be <= 16");
    if (!M.all_finite()) throw std::invalid_argument("eigenvalues_general: non-finite entries");
    const int n = static_cast<int>(M.rows());
    Spectrum sp;
    sp.eigenvalues.assign(n, cplx{});
    if (n == 0) {
        sp.converged = true;
        return sp;
    }
    if (max_iter <= 0) max_iter = 60 * n;
    RealMatrix a = M;
    detail::hessenberg(a);

    double anorm = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = std::max(i - 1, 0); j < n; ++j) anorm += std::abs(a(i, j));
    if (anorm == 0.0) anorm = 1.0;

    auto& wri = sp.eigenvalues;
    int nn = n - 1;
    double t = 0.0;
    int total_its = 0;
    bool ok = true;

    while (nn >= 0 && ok) {
        int its = 0;
        for (;;) {
            int l = nn;
            while (l > 0) {
                double s = std::abs(a(l - 1, l - 1)) + std::abs(a(l, l));
                if (s == 0.0) s = anorm;
                if (std::abs(a(l, l - 1)) <= std::max(tol * s, std::numeric_limits<double>::min()))
                    break;
                --l;
            }
            double x = a(nn, nn);
            if (l == nn) { // one real eigenvalue
                wri[nn--] = cplx(x + t, 0.0);
                break;
            }
            double y = a(nn - 1, nn - 1);
            double w = a(nn, nn - 1) * a(nn - 1, nn);
            if (l == nn - 1) { // trailing 2x2 block
                double p = 0.5 * (y - x);
                double q = p * p + w;
                double z = std::sqrt(std::abs(q));
                x += t;
                if (q >= 0.0) { // real pair
                    z = p + (p >= 0.0 ? z : -z);
                    wri[nn - 1] = wri[nn] = cplx(x + z, 0.0);
                    if (z != 0.0) wri[nn] = cplx(x - w / z, 0.0);
                } else { // exact conjugate pair
                    wri[nn] = cplx(x + p, -z);
                    wri[nn - 1] = std::conj(wri[nn]);
                }
                nn -= 2;
                break;
            }
            if (total_its >= max_iter) {
                ok = false;
                // best available estimates for the unconverged block
                for (int i = 0; i <= nn; ++i) wri[i] = cplx(a(i, i) + t, 0.0);
                break;
            }
            if (its == 10 || its == 20) { // exceptional shift
                t += x;
                for (int i = 0; i <= nn; ++i) a(i, i) -= x;
                double s = std::abs(a(nn, nn - 1)) + std::abs(a(nn - 1, nn - 2));
                y = x = 0.75 * s;
                w = -0.4375 * s * s;
            }
            ++its;
            ++total_its;
            double p = 0.0, q = 0.0, r = 0.0;
            int m;
            for (m = nn - 2; m >= l; --m) {
                double z = a(m, m);
                double rr = x - z;
                double ss = y - z;
                p = (rr * ss - w) / a(m + 1, m) + a(m, m + 1);
                q = a(m + 1, m + 1) - z - rr - ss;
                r = a(m + 2, m + 1);
                double s = std::abs(p) + std::abs(q) + std::abs(r);
                p /= s;
                q /= s;
                r /= s;
                if (m == l) break;
                double u = std::abs(a(m, m - 1)) * (std::abs(q) + std::abs(r));
                double v = std::abs(p)
                         * (std::abs(a(m - 1, m - 1)) + std::abs(z) + std::abs(a(m + 1, m + 1)));
                if (u <= std::numeric_limits<double>::epsilon() * v) break;
            }
            for (int i = m + 2; i <= nn; ++i) {
                a(i, i - 2) = 0.0;
                if (i != m + 2) a(i, i - 3) = 0.0;
            }
            for (int k = m; k <= nn - 1; ++k) { // double QR step, bulge chase
                if (k != m) {
                    p = a(k, k - 1);
                    q = a(k + 1, k - 1);
                    r = (k + 1 != nn) ? a(k + 2, k - 1) : 0.0;
                    x = std::abs(p) + std::abs(q) + std::abs(r);
                    if (x != 0.0) {
                        p /= x;
                        q /= x;
                        r /= x;
                    }
                }
                double s = std::sqrt(p * p + q * q + r * r);
                if (p < 0.0) s = -s;
                if (s == 0.0) continue;
                if (k == m) {
                    if (l != m) a(k, k - 1) = -a(k, k - 1);
                } else {
                    a(k, k - 1) = -s * x;
                }
                p += s;
                x = p / s;
                y = q / s;
                double zz = r / s;
                q /= p;
                r /= p;
                for (int j = k; j <= nn; ++j) {
                    double pp = a(k, j) + q * a(k + 1, j);
                    if (k + 1 != nn) {
                        pp += r * a(k + 2, j);
                        a(k + 2, j) -= pp * zz;
                    }
                    a(k + 1, j) -= pp * y;
                    a(k, j) -= pp * x;
                }
                const int mmin = (nn < k + 3) ? nn : k + 3;
                for (int i = l; i <= mmin; ++i) {
                    double pp = x * a(i, k) + y * a(i, k + 1);
                    if (k + 1 != nn) {
                        pp += zz * a(i, k + 2);
                        a(i, k + 2) -= pp * r;
                    }
                    a(i, k + 1) -= pp * q;
                    a(i, k) -= pp;
                }
            }
        }
    }
    sp.converged = ok;
    sp.iterations = total_its;
    return sp;
}

/// Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations.
inline RealVector jacobi_eigenvalues(RealMatrix A, int max_sweeps = 64) {
    if (!A.square()) throw std::invalid_argument("jacobi_eigenvalues: matrix must be square");
    const std::size_t n = A.rows();
    const double scale = std::max(A.frobenius_norm(), std::numeric_limits<double>::min());
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += A(p, q) * A(p, q);
        if (std::sqrt(2.0 * off) <= 1e-15 * scale) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (std::abs(A(p, q)) <= 1e-300) continue;
                const double theta = (A(q, q) - A(p, p)) / (2.0 * A(p, q));
                double tt = (theta >= 0.0 ? 1.0 : -1.0)
                          / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(tt * tt + 1.0);
                const double s = tt * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = A(k, p), akq = A(k, q);
                    A(k, p) = c * akp - s * akq;
                    A(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = A(p, k), aqk = A(q, k);
                    A(p, k) = c * apk - s * aqk;
                    A(q, k) = s * apk + c * aqk;
                }
            }
        }
    }
    RealVector ev(n);
    for (std::size_t i = 0; i < n; ++i) ev[i] = A(i, i);
    std::sort(ev.begin(), ev.end());
    return ev;
}

/// Real symmetric 2n x 2n embedding [[A, -B], [B, A]] of a Hermitian
/// H = A + iB. Each eigenvalue of H shows up twice in the embedding.
inline RealMatrix hermitian_embedding(const ComplexMatrix& H) {
    RealMatrix A = real_part(H), B = imag_part(H);
    // kill the antisymmetric/symmetric roundoff residue so the embedding
    // is exactly symmetric
    A = symmetrized(A);
    RealMatrix Bs(B.rows(), B.cols());
    for (std::size_t i = 0; i < B.rows(); ++i)
        for (std::size_t j = 0; j < B.cols(); ++j) Bs(i, j) = 0.5 * (B(i, j) - B(j, i));
    return from_blocks(A, -Bs, Bs, A);
}

/// Smallest eigenvalue of a Hermitian matrix via the real embedding and
/// the Jacobi solver.
inline double hermitian_min_eigenvalue(const ComplexMatrix& H) {
    if (!H.square()) throw std::invalid_argument("hermitian_min_eigenvalue: matrix must be square");
    const double scale = std::max(1.0, H.max_abs());
    if (hermiticity_error(H) > 1e-12 * scale)
        throw std::invalid_argument("hermitian_min_eigenvalue: input not Hermitian to tolerance");
    const auto ev = jacobi_eigenvalues(hermitian_embedding(H));
    return ev.front();
}

/// Pivoted Cholesky-style check: succeeds iff no pivot ever drops below
/// -|pivot_tol| and any early-terminated remainder is negligible.
inline bool psd_by_pivoted_cholesky(RealMatrix A, double pivot_tol) {
    if (!A.square()) throw std::invalid_argument("psd_by_pivoted_cholesky: matrix must be square");
    const std::size_t n = A.rows();
    const double band = std::abs(pivot_tol);
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    auto at = [&](std::size_t i, std::size_t j) -> double& { return A(idx[i], idx[j]); };
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (at(i, i) > at(piv, piv)) piv = i;
        std::swap(idx[k], idx[piv]);
        const double d = at(k, k);
        if (d < -band) return false;
        if (d <= band) {
            // remaining block should vanish for a PSD matrix
            double rem = 0.0;
            for (std::size_t i = k; i < n; ++i)
                for (std::size_t j = k; j < n; ++j) rem = std::max(rem, std::abs(at(i, j)));
            return rem <= 10.0 * band;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            const double f = at(i, k) / d;
            for (std::size_t j = k + 1; j <= i; ++j) {
                at(i, j) -= f * at(k, j);
                at(j, i) = at(i, j);
            }
        }
    }
    return true;
}

} // namespace gqms::num
