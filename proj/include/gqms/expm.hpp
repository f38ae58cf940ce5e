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

/// Matrix exponential by scaling and squaring around a diagonal [6/6]
/// Pade approximant. The number of squarings is chosen so the scaled
/// 1-norm is at most 0.5, which keeps the approximant error far below
/// 1e-12 for norms up to 50.
inline RealMatrix expm(const RealMatrix& M) {
    if (!M.square()) throw std::invalid_argument("expm: matrix must be square");
    if (!M.all_finite()) throw std::invalid_argument("expm: non-finite entries");
    const std::size_t n = M.rows();
    if (n == 0) return M;

    const double nrm = M.one_norm();
    int s = 0;
    if (nrm > 0.5) s = static_cast<int>(std::ceil(std::log2(nrm / 0.5)));
    RealMatrix A = M * std::ldexp(1.0, -s);

    // [6/6] Pade coefficients
    static constexpr double c[7] = {1.0,          1.0 / 2.0,     5.0 / 44.0, 1.0 / 66.0,
                                    1.0 / 792.0,  1.0 / 15840.0, 1.0 / 665280.0};
    const RealMatrix I = RealMatrix::identity(n);
    const RealMatrix A2 = A * A;
    const RealMatrix A4 = A2 * A2;
    RealMatrix U = A * (c[1] * I + c[3] * A2 + c[5] * A4);
    RealMatrix V = c[0] * I + c[2] * A2 + c[4] * A4 + c[6] * (A4 * A2);

    RealMatrix X = lu_solve_matrix(V - U, V + U);
    for (int k = 0; k < s; ++k) X = X * X;
    return X;
}

} // namespace gqms::num
