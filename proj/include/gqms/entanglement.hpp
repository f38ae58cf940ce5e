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

#include "gqms/core.hpp"

// Reduction of covariance matrices to subsystems and the PPT separability
// decision for two-mode (1|1) bipartite Gaussian states, with determinant
// and logarithmic-negativity witnesses.

namespace gqms::ent {

using num::cplx;
using num::ComplexMatrix;
using num::RealMatrix;

/// Which modes to keep and how the kept modes split into parties A and B.
struct PartitionSpec {
    std::size_t d_total = 0;
    std::vector<std::size_t> keep;    // ordered kept mode indices
    std::vector<std::size_t> party_A; // disjoint partition of keep
    std::vector<std::size_t> party_B;

    void validate() const {
        if (keep.empty()) throw std::invalid_argument("PartitionSpec: keep is empty");
        std::vector<bool> seen(d_total, false);
        for (auto j : keep) {
            if (j >= d_total) throw std::invalid_argument("PartitionSpec: index out of range");
            if (seen[j]) throw std::invalid_argument("PartitionSpec: duplicate index");
            seen[j] = true;
        }
        if (party_A.size() + party_B.size() != keep.size())
            throw std::invalid_argument("PartitionSpec: parties must partition keep");
        std::vector<bool> inkeep(d_total, false);
        for (auto j : keep) inkeep[j] = true;
        std::vector<bool> used(d_total, false);
        for (const auto* party : {&party_A, &party_B})
            for (auto j : *party) {
                if (j >= d_total || !inkeep[j] || used[j])
                    throw std::invalid_argument("PartitionSpec: parties must be disjoint subsets of keep");
                used[j] = true;
            }
    }
};

/// Covariance-level partial trace: keep rows/columns {j, j+d} for kept
/// modes j, re-indexed to the [p | q] ordering of the kept modes.
inline CovarianceMatrix partial_trace(const CovarianceMatrix& S, const PartitionSpec& spec) {
    spec.validate();
    if (S.modes() != spec.d_total) throw std::invalid_argument("partial_trace: mode count mismatch");
    const std::size_t d = spec.d_total, k = spec.keep.size();
    const RealMatrix& M = S.matrix();
    RealMatrix R(2 * k, 2 * k);
    auto row = [&](std::size_t a) { return a < k ? spec.keep[a] : spec.keep[a - k] + d; };
    for (std::size_t a = 0; a < 2 * k; ++a)
        for (std::size_t b = 0; b < 2 * k; ++b) R(a, b) = M(row(a), row(b));
    return CovarianceMatrix(k, R);
}

/// The fixed 4x4 test matrix of the two-mode PPT criterion: S plus the
/// imaginary skew block with entries +i, -i, -i, +i at positions
/// (1,3), (2,4), (3,1), (4,2) in 1-based [p1 p2 q1 q2] indexing.
inline ComplexMatrix s_tilde(const RealMatrix& S4) {
    if (S4.rows() != 4 || S4.cols() != 4) throw std::invalid_argument("s_tilde: expected 4x4");
    ComplexMatrix T = num::complexify(S4);
    T(0, 2) += cplx(0.0, 1.0);
    T(1, 3) += cplx(0.0, -1.0);
    T(2, 0) += cplx(0.0, -1.0);
    T(3, 1) += cplx(0.0, 1.0);
    return T;
}

/// General construction S + i(-J_A (+) J_B) for a 1|...|1 split in [p | q]
/// ordering; kept as a separate path to cross-validate the hard-coded
/// d=2 block (the two differ by complex conjugation, so spectra and
/// determinants coincide).
inline ComplexMatrix s_tilde_general(const RealMatrix& S, std::size_t d_A, std::size_t d_B) {
    const std::size_t d = d_A + d_B;
    if (S.rows() != 2 * d || S.cols() != 2 * d)
        throw std::invalid_argument("s_tilde_general: dimension mismatch");
    ComplexMatrix T = num::complexify(S);
    for (std::size_t j = 0; j < d; ++j) {
        const double sgn = (j < d_A) ? -1.0 : 1.0; // -J_A on party A, +J_B on party B
        T(j, j + d) += cplx(0.0, sgn);
        T(j + d, j) += cplx(0.0, -sgn);
    }
    return T;
}

struct EntanglementVerdict {
    bool separable = false;
    double min_eig_tilde = 0.0;
    double det_tilde = 0.0;
    double log_negativity = 0.0;
    bool input_valid = true; // false when the input was not a valid covariance
};

/// det of the PPT test matrix by direct 4x4 expansion. Negative sign
/// certifies entanglement in the models treated here (a tested property,
/// not assumed for arbitrary covariances).
inline double det_witness(const CovarianceMatrix& S_red) {
    if (S_red.modes() != 2) throw std::invalid_argument("det_witness: expected a two-mode covariance");
    const cplx det = num::det4(s_tilde(S_red.matrix()));
    return det.real();
}

/// Logarithmic negativity from the symplectic eigenvalues nu of the
/// partially transposed covariance (momentum sign flip on party B),
/// obtained as the imaginary parts of the eigenvalues of J^{-1} S_pt:
/// sum_i max(0, -log nu_i), natural logarithm.
inline double log_negativity(const CovarianceMatrix& S_red) {
    if (S_red.modes() != 2)
        throw std::invalid_argument("log_negativity: expected a two-mode covariance");
    RealMatrix Spt = S_red.matrix();
    // flip p_2 (row/column 1 in [p1 p2 q1 q2])
    for (std::size_t j = 0; j < 4; ++j) {
        Spt(1, j) = -Spt(1, j);
        Spt(j, 1) = -Spt(j, 1);
    }
    const RealMatrix J = symplectic_matrix(2);
    const RealMatrix M = -J * Spt; // J^{-1} = -J
    const num::Spectrum sp = num::eigenvalues_general(M);
    if (!sp.converged) throw num::SolverFailure("log_negativity: eigenvalue iteration failed");
    double ln = 0.0;
    for (const auto& ev : sp.eigenvalues) {
        if (ev.imag() <= 0.0) continue; // each nu appears as +-i nu
        const double nu = ev.imag();
        if (nu < 1.0) ln += -std::log(nu);
    }
    return ln;
}

/// Two-mode PPT separability decision with witnesses. The state is
/// separable iff s_tilde(S) is PSD; the boundary dead band classifies as
/// separable (non-strict criterion).
inline EntanglementVerdict ppt_check(const CovarianceMatrix& S_red) {
    if (S_red.modes() != 2) throw std::invalid_argument("ppt_check: expected a two-mode covariance");
    EntanglementVerdict v;
    v.input_valid = is_valid_covariance(S_red).valid;
    const ComplexMatrix T = s_tilde(S_red.matrix());
    v.min_eig_tilde = num::hermitian_min_eigenvalue(T);
    v.separable = v.min_eig_tilde >= -1e-9 * std::max(1.0, T.frobenius_norm());
    v.det_tilde = det_witness(S_red);
    v.log_negativity = log_negativity(S_red);
    return v;
}

} // namespace gqms::ent
