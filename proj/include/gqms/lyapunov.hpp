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

#include "gqms/matrix.hpp"

namespace gqms::num {

/// Solve the continuous-time Lyapunov equation  Z^T S + S Z + C = 0  by
/// vectorization: (I (x) Z^T + Z^T (x) I) vec(S) = -vec(C), then one LU
/// solve. The system is at most 64x64 here, where this is both exact and
/// simple. The caller guarantees Z is stable; a singular system surfaces
/// as SolverFailure.
inline RealMatrix solve_lyapunov(const RealMatrix& Z, const RealMatrix& C) {
    if (!Z.square() || !C.square() || Z.rows() != C.rows())
        throw std::invalid_argument("solve_lyapunov: Z and C must be square with equal dimension");
    if (!Z.all_finite() || !C.all_finite())
        throw std::invalid_argument("solve_lyapunov: non-finite entries");
    const double cscale = std::max(1.0, C.max_abs());
    if (symmetry_error(C) > 1e-12 * cscale)
        throw std::invalid_argument("solve_lyapunov: C must be symmetric");

    const std::size_t n = Z.rows();
    const std::size_t N = n * n;
    // column-major vec: index of entry (i, j) is j*n + i
    RealMatrix K(N, N);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k)
                K(j * n + i, j * n + k) += Z(k, i); // (I (x) Z^T)
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t l = 0; l < n; ++l)
            for (std::size_t i = 0; i < n; ++i)
                K(j * n + i, l * n + i) += Z(l, j); // (Z^T (x) I)

    RealVector b(N);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) b[j * n + i] = -C(i, j);

    RealVector x;
    try {
        x = lu_solve(K, b);
    } catch (const SolverFailure&) {
        throw SolverFailure("solve_lyapunov: singular linear system (Z not stable or degenerate)");
    }

    RealMatrix S(n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) S(i, j) = x[j * n + i];
    S = symmetrized(S);

    const RealMatrix R = Z.transpose() * S + S * Z + C;
    const double res = R.frobenius_norm();
    const double bound = 1e-10 * std::max(1.0, C.frobenius_norm());
    if (res > bound)
        throw SolverFailure("solve_lyapunov: residual " + std::to_string(res)
                            + " exceeds bound " + std::to_string(bound));
    return S;
}

} // namespace gqms::num
