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
#include "gqms/matrix.hpp"

namespace gqms::num {

/// Roots of a real-coefficient polynomial of degree <= 4. Coefficients
/// are given highest degree first. Closed form up to degree 2, companion
/// matrix eigenvalues above that.
inline ComplexVector polynomial_roots_real_coeffs(const RealVector& coeffs) {
    if (coeffs.empty()) throw std::invalid_argument("polynomial_roots: empty coefficient list");
    if (coeffs.front() == 0.0)
        throw std::invalid_argument("polynomial_roots: zero leading coefficient");
    const std::size_t deg = coeffs.size() - 1;
    if (deg > 4) throw std::invalid_argument("polynomial_roots: degree must be <= 4");

    if (deg == 0) return {};
    if (deg == 1) return {cplx(-coeffs[1] / coeffs[0], 0.0)};
    if (deg == 2) {
        const double a = coeffs[0], b = coeffs[1], c = coeffs[2];
        const double disc = b * b - 4.0 * a * c;
        if (disc >= 0.0) {
            // cancellation-safe real pair
            const double q = -0.5 * (b + (b >= 0.0 ? 1.0 : -1.0) * std::sqrt(disc));
            const double r1 = q / a;
            const double r2 = (q != 0.0) ? c / q : -b / a - r1;
            return {cplx(r1, 0.0), cplx(r2, 0.0)};
        }
        const double re = -b / (2.0 * a);
        const double im = std::sqrt(-disc) / (2.0 * a);
        return {cplx(re, im), cplx(re, -im)};
    }

    // companion matrix of the monic polynomial
    RealMatrix comp(deg, deg);
    for (std::size_t i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
    for (std::size_t i = 0; i < deg; ++i) comp(i, deg - 1) = -coeffs[deg - i] / coeffs[0];
    const Spectrum sp = eigenvalues_general(comp, 1e-13);
    if (!sp.converged) throw SolverFailure("polynomial_roots: companion eigenvalues did not converge");
    return sp.eigenvalues;
}

/// Coefficients of det(lambda I - M), monic, highest degree first, via
/// power traces and Newton's identities. Serves as an independent
/// cross-check for eigenvalue output (Vieta).
inline RealVector characteristic_polynomial(const RealMatrix& M) {
    if (!M.square()) throw std::invalid_argument("characteristic_polynomial: matrix must be square");
    const std::size_t n = M.rows();
    RealVector traces(n + 1, 0.0);
    RealMatrix P = RealMatrix::identity(n);
    for (std::size_t j = 1; j <= n; ++j) {
        P = M * P;
        for (std::size_t i = 0; i < n; ++i) traces[j] += P(i, i);
    }
    RealVector c(n + 1, 0.0);
    c[0] = 1.0;
    for (std::size_t k = 1; k <= n; ++k) {
        double s = traces[k];
        for (std::size_t j = 1; j < k; ++j) s += c[j] * traces[k - j];
        c[k] = -s / static_cast<double>(k);
    }
    return c;
}

} // namespace gqms::num
