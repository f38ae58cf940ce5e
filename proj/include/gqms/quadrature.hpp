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

#include "gqms/eig.hpp"
#include "gqms/expm.hpp"
#include "gqms/matrix.hpp"

namespace gqms::num {

namespace detail {

inline std::size_t even_intervals(double length, double step) {
    auto m = static_cast<std::size_t>(std::ceil(length / step));
    if (m < 2) m = 2;
    if (m % 2 == 1) ++m;
    return m;
}

} // namespace detail

/// Composite-Simpson value of  int_0^T e^{s Z^T} C e^{s Z} ds  with node
/// spacing at most `step`. The propagator is advanced one node at a time
/// from a single small matrix exponential.
inline RealMatrix sandwich_integral(const RealMatrix& Z, const RealMatrix& C, double T,
                                    double step = 1.0 / 64.0) {
    const std::size_t n = Z.rows();
    if (T < 0.0) throw std::invalid_argument("sandwich_integral: negative horizon");
    RealMatrix acc(n, n);
    if (T == 0.0) return acc;
    const std::size_t m = detail::even_intervals(T, step);
    const double h = T / static_cast<double>(m);
    const RealMatrix E = expm(Z * h);
    RealMatrix X = RealMatrix::identity(n);
    acc = C; // s = 0, weight 1
    for (std::size_t k = 1; k <= m; ++k) {
        X = X * E;
        const double w = (k == m) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
        acc += w * (X.transpose() * (C * X));
    }
    return symmetrized(acc * (h / 3.0));
}

/// Same integral, refined by step halving until two consecutive levels
/// agree to `tol` (relative to the result size).
inline RealMatrix sandwich_integral_refined(const RealMatrix& Z, const RealMatrix& C, double T,
                                            double tol = 1e-10, double step0 = 1.0 / 64.0,
                                            int max_levels = 7) {
    RealMatrix prev = sandwich_integral(Z, C, T, step0);
    double h = step0;
    for (int lvl = 1; lvl <= max_levels; ++lvl) {
        h *= 0.5;
        RealMatrix cur = sandwich_integral(Z, C, T, h);
        if ((cur - prev).frobenius_norm() <= tol * std::max(1.0, cur.frobenius_norm())) return cur;
        prev = cur;
    }
    throw SolverFailure("sandwich_integral_refined: quadrature did not reach tolerance");
}

/// int_0^T e^{s Z^T} zeta ds, Simpson with step halving as above.
inline RealVector transpose_flow_integral(const RealMatrix& Z, const RealVector& zeta, double T,
                                          double tol = 1e-10, double step0 = 1.0 / 64.0,
                                          int max_levels = 7) {
    const std::size_t n = Z.rows();
    if (zeta.size() != n) throw std::invalid_argument("transpose_flow_integral: size mismatch");
    auto level = [&](double step) {
        const std::size_t m = detail::even_intervals(T, step);
        const double h = T / static_cast<double>(m);
        const RealMatrix Et = expm(Z * h).transpose();
        RealVector v = zeta, acc = zeta;
        for (std::size_t k = 1; k <= m; ++k) {
            v = mat_vec(Et, v);
            const double w = (k == m) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
            for (std::size_t i = 0; i < n; ++i) acc[i] += w * v[i];
        }
        for (auto& x : acc) x *= h / 3.0;
        return acc;
    };
    if (T == 0.0) return RealVector(n, 0.0);
    RealVector prev = level(step0);
    double h = step0;
    for (int lvl = 1; lvl <= max_levels; ++lvl) {
        h *= 0.5;
        RealVector cur = level(h);
        double diff = 0.0, sz = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            diff += (cur[i] - prev[i]) * (cur[i] - prev[i]);
            sz += cur[i] * cur[i];
        }
        if (std::sqrt(diff) <= tol * std::max(1.0, std::sqrt(sz))) return cur;
        prev = cur;
    }
    throw SolverFailure("transpose_flow_integral: quadrature did not reach tolerance");
}

/// Stationary covariance by direct quadrature of int_0^inf e^{sZ^T} C e^{sZ} ds.
/// Composite Simpson with step 1/64; the horizon doubles until the tail
/// bound  ||e^{TZ}||^2 ||C|| / (2 |max Re lambda|)  drops below tol.
/// This is the independent oracle against the Lyapunov solve.
inline RealMatrix stationary_integral_oracle(const RealMatrix& Z, const RealMatrix& C, double tol) {
    if (!Z.square() || !C.square() || Z.rows() != C.rows())
        throw std::invalid_argument("stationary_integral_oracle: dimension mismatch");
    const std::size_t n = Z.rows();
    const Spectrum sp = eigenvalues_general(Z);
    if (!sp.converged)
        throw SolverFailure("stationary_integral_oracle: eigenvalue iteration did not converge");
    double alpha = -std::numeric_limits<double>::infinity();
    for (const auto& ev : sp.eigenvalues) alpha = std::max(alpha, ev.real());
    if (alpha >= 0.0)
        throw SolverFailure("stationary_integral_oracle: Z is not stable (max Re lambda = "
                            + std::to_string(alpha) + ")");

    constexpr double kStep = 1.0 / 64.0;
    constexpr double kHorizonCap = 65536.0;
    const double cnorm = C.frobenius_norm();

    RealMatrix total(n, n);
    RealMatrix Xstart = RealMatrix::identity(n);
    double Tprev = 0.0, T = 1.0;
    for (;;) {
        // integrate the segment [Tprev, T] continuing the propagator
        const double len = T - Tprev;
        const std::size_t m = detail::even_intervals(len, kStep);
        const double h = len / static_cast<double>(m);
        const RealMatrix E = expm(Z * h);
        RealMatrix X = Xstart;
        RealMatrix acc = X.transpose() * (C * X);
        for (std::size_t k = 1; k <= m; ++k) {
            X = X * E;
            const double w = (k == m) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
            acc += w * (X.transpose() * (C * X));
        }
        total += acc * (h / 3.0);
        Xstart = X;

        const double xn = Xstart.frobenius_norm();
        if (xn * xn * cnorm / (2.0 * std::abs(alpha)) < tol) break;
        Tprev = T;
        T *= 2.0;
        if (T > kHorizonCap)
            throw SolverFailure("stationary_integral_oracle: horizon cap exceeded "
                                "(Z marginally stable)");
    }
    return symmetrized(total);
}

} // namespace gqms::num
