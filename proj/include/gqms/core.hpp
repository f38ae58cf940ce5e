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

#include <optional>

#include "gqms/eig.hpp"
#include "gqms/expm.hpp"
#include "gqms/lyapunov.hpp"
#include "gqms/matrix.hpp"
#include "gqms/quadrature.hpp"

// Core objects of a Gaussian quantum Markov semigroup on d modes:
// the GKLS generator data (Omega, K, U, V, zeta), the induced real
// 2d x 2d drift/diffusion pair (Z, C), Gaussian states (mean, covariance),
// their time evolution, and the action on Weyl operators.
//
// Convention used everywhere: real phase-space vectors are ordered
// [p_1 ... p_d | q_1 ... q_d], i.e. a complex vector z = x + iy embeds as
// [x, y], the momentum block first. For a zero-mean state the stored
// covariance satisfies S_{jj} = 2<p_j^2>, S_{j+d,j+d} = 2<q_j^2> and
// S_{j,k+d} = -<{p_j, q_k}>.

namespace gqms {

using num::cplx;
using num::ComplexMatrix;
using num::ComplexVector;
using num::RealMatrix;
using num::RealVector;

/// No stationary state exists: the drift is not stable. Carries the
/// offending eigenvalues (those with nonnegative real part).
class NoStationaryState : public std::runtime_error {
public:
    NoStationaryState(const std::string& what, ComplexVector offending)
        : std::runtime_error(what), offending_eigenvalues(std::move(offending)) {}
    ComplexVector offending_eigenvalues;
};

/// Symplectic form J on d modes in [p | q] ordering: [[0, I], [-I, 0]].
inline RealMatrix symplectic_matrix(std::size_t d) {
    RealMatrix J(2 * d, 2 * d);
    for (std::size_t j = 0; j < d; ++j) {
        J(j, j + d) = 1.0;
        J(j + d, j) = -1.0;
    }
    return J;
}

/// Real 2d-vector embedding of z = x + iy as [x, y].
inline RealVector embed(const ComplexVector& z) {
    RealVector v(2 * z.size());
    for (std::size_t j = 0; j < z.size(); ++j) {
        v[j] = z[j].real();
        v[j + z.size()] = z[j].imag();
    }
    return v;
}
inline ComplexVector unembed(const RealVector& v) {
    if (v.size() % 2 != 0) throw std::invalid_argument("unembed: odd length");
    const std::size_t d = v.size() / 2;
    ComplexVector z(d);
    for (std::size_t j = 0; j < d; ++j) z[j] = cplx(v[j], v[j + d]);
    return z;
}

/// Real 2d x 2d matrix of the real-linear operator S z = S1 z + S2 conj(z).
inline RealMatrix real_linear_to_matrix(const ComplexMatrix& S1, const ComplexMatrix& S2) {
    if (S1.rows() != S1.cols() || S2.rows() != S2.cols() || S1.rows() != S2.rows())
        throw std::invalid_argument("real_linear_to_matrix: S1, S2 must be square of equal size");
    const RealMatrix re1 = num::real_part(S1), im1 = num::imag_part(S1);
    const RealMatrix re2 = num::real_part(S2), im2 = num::imag_part(S2);
    return num::from_blocks(re1 + re2, im2 - im1, im1 + im2, re1 - re2);
}

/// Inverse of real_linear_to_matrix; exact up to rounding.
inline std::pair<ComplexMatrix, ComplexMatrix> matrix_to_real_linear(const RealMatrix& M) {
    if (!M.square() || M.rows() % 2 != 0)
        throw std::invalid_argument("matrix_to_real_linear: matrix must be square of even dimension");
    const std::size_t d = M.rows() / 2;
    ComplexMatrix S1(d, d), S2(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            const double m11 = M(i, j), m12 = M(i, j + d);
            const double m21 = M(i + d, j), m22 = M(i + d, j + d);
            S1(i, j) = cplx(0.5 * (m11 + m22), 0.5 * (m21 - m12));
            S2(i, j) = cplx(0.5 * (m11 - m22), 0.5 * (m12 + m21));
        }
    return {S1, S2};
}

/// Data of a Gaussian GKLS generator:
///   H = sum Omega_jk a_j^dag a_k + (Kappa_jk/2) a_j^dag a_k^dag + h.c.
///       + linear part from zeta,
///   L_l = sum_k ( conj(V_lk) a_k + U_lk a_k^dag ).
struct GklsGenerator {
    std::size_t d = 0; // mode count
    std::size_t m = 0; // noise operator count, 1 <= m <= 2d
    ComplexMatrix Omega; // d x d Hermitian
    ComplexMatrix Kappa; // d x d symmetric
    ComplexMatrix V;     // m x d
    ComplexMatrix U;     // m x d
    ComplexVector zeta;  // d

    void validate() const {
        if (d == 0) throw std::invalid_argument("GklsGenerator: d must be positive");
        if (m < 1 || m > 2 * d) throw std::invalid_argument("GklsGenerator: need 1 <= m <= 2d");
        if (Omega.rows() != d || Omega.cols() != d || Kappa.rows() != d || Kappa.cols() != d)
            throw std::invalid_argument("GklsGenerator: Omega/Kappa must be d x d");
        if (V.rows() != m || V.cols() != d || U.rows() != m || U.cols() != d)
            throw std::invalid_argument("GklsGenerator: U/V must be m x d");
        if (zeta.size() != d) throw std::invalid_argument("GklsGenerator: zeta must have length d");
        if (num::hermiticity_error(Omega) > 1e-12)
            throw std::invalid_argument("GklsGenerator: Omega not Hermitian");
        if (num::symmetry_error(Kappa) > 1e-12)
            throw std::invalid_argument("GklsGenerator: Kappa not symmetric");
        if (!Omega.all_finite() || !Kappa.all_finite() || !U.all_finite() || !V.all_finite())
            throw std::invalid_argument("GklsGenerator: non-finite entries");
    }
};

/// Real drift/diffusion pair governing means and covariances.
struct DriftDiffusion {
    std::size_t d = 0;
    RealMatrix Z; // 2d x 2d
    RealMatrix C; // 2d x 2d, symmetric PSD
};

/// Blockwise construction of the drift and diffusion matrices from the
/// generator data. With A = U - conj(V), B = U + conj(V):
///   Z = 1/2 [[Re(A* B), Im(A* A)], [-Im(B* B), Re(B* A)]]
///       + [[-Im(Omega+K), Re(K-Omega)], [Re(Omega+K), Im(K-Omega)]]
///   C = [[Re(B* B), Im(B* A)], [-Im(A* B), Re(A* A)]]
/// C comes out exactly symmetric.
inline DriftDiffusion build_drift_diffusion(const GklsGenerator& gen) {
    gen.validate();
    const ComplexMatrix A = gen.U - num::conj(gen.V);
    const ComplexMatrix B = gen.U + num::conj(gen.V);
    const ComplexMatrix AsB = num::adjoint(A) * B;
    const ComplexMatrix AsA = num::adjoint(A) * A;
    const ComplexMatrix BsB = num::adjoint(B) * B;
    const ComplexMatrix BsA = num::adjoint(B) * A;

    RealMatrix Z_noise = num::from_blocks(num::real_part(AsB), num::imag_part(AsA),
                                          -num::imag_part(BsB), num::real_part(BsA));
    Z_noise *= 0.5;

    const ComplexMatrix OpK = gen.Omega + gen.Kappa;
    const ComplexMatrix KmO = gen.Kappa - gen.Omega;
    const RealMatrix Z_ham = num::from_blocks(-num::imag_part(OpK), num::real_part(KmO),
                                              num::real_part(OpK), num::imag_part(KmO));

    const RealMatrix C = num::from_blocks(num::real_part(BsB), num::imag_part(BsA),
                                          -num::imag_part(AsB), num::real_part(AsA));
    return DriftDiffusion{gen.d, Z_noise + Z_ham, C};
}

struct ValidityReport {
    bool valid = false;
    double min_eigenvalue = 0.0; // of S - iJ
};

/// Covariance matrix of a d-mode Gaussian state (hbar = 1). Symmetry is
/// enforced on construction; the quantum validity condition S - iJ >= 0
/// is checked on demand, since user-supplied matrices may violate it.
class CovarianceMatrix {
public:
    CovarianceMatrix() = default;
    CovarianceMatrix(std::size_t d, RealMatrix S) : d_(d), S_(std::move(S)) {
        if (S_.rows() != 2 * d_ || S_.cols() != 2 * d_)
            throw std::invalid_argument("CovarianceMatrix: S must be 2d x 2d");
        if (!S_.all_finite()) throw std::invalid_argument("CovarianceMatrix: non-finite entries");
        if (num::symmetry_error(S_) > 1e-12 * std::max(1.0, S_.max_abs()))
            throw std::invalid_argument("CovarianceMatrix: S must be symmetric");
        S_ = num::symmetrized(S_);
    }

    std::size_t modes() const { return d_; }
    const RealMatrix& matrix() const { return S_; }

private:
    std::size_t d_ = 0;
    RealMatrix S_;
};

/// Heisenberg validity check: S is a quantum covariance iff S - iJ >= 0.
inline ValidityReport is_valid_covariance(const CovarianceMatrix& S) {
    const std::size_t d = S.modes();
    ComplexMatrix H = num::complexify(S.matrix());
    const RealMatrix J = symplectic_matrix(d);
    for (std::size_t i = 0; i < 2 * d; ++i)
        for (std::size_t j = 0; j < 2 * d; ++j) H(i, j) -= cplx(0.0, J(i, j));
    const double mineig = num::hermitian_min_eigenvalue(H);
    const bool valid = mineig >= -1e-9 * std::max(1.0, S.matrix().frobenius_norm());
    return ValidityReport{valid, mineig};
}

/// Build a diagonal-block covariance from specified second moments:
/// p2[j] = <p_j^2>, q2[j] = <q_j^2>, pq[j] = <{p_j, q_j}>.
inline CovarianceMatrix covariance_from_second_moments(const RealVector& p2, const RealVector& q2,
                                                       const RealVector& pq) {
    const std::size_t d = p2.size();
    if (q2.size() != d || pq.size() != d)
        throw std::invalid_argument("covariance_from_second_moments: length mismatch");
    RealMatrix S(2 * d, 2 * d);
    for (std::size_t j = 0; j < d; ++j) {
        S(j, j) = 2.0 * p2[j];
        S(j + d, j + d) = 2.0 * q2[j];
        S(j, j + d) = S(j + d, j) = -pq[j];
    }
    return CovarianceMatrix(d, S);
}

struct GaussianState {
    RealVector mean; // 2d, [p | q] ordering
    CovarianceMatrix cov;
};

struct StabilityReport {
    bool stable = false;
    double max_real_part = 0.0;
    ComplexVector eigenvalues;
};

/// Spectrum-based stability of the drift matrix.
inline StabilityReport stability_check(const RealMatrix& Z) {
    const num::Spectrum sp = num::eigenvalues_general(Z);
    if (!sp.converged) throw num::SolverFailure("stability_check: eigenvalue iteration failed");
    double mx = -std::numeric_limits<double>::infinity();
    for (const auto& ev : sp.eigenvalues) mx = std::max(mx, ev.real());
    return StabilityReport{mx < -1e-12, mx, sp.eigenvalues};
}

/// Covariance of the unique stationary Gaussian state, from the Lyapunov
/// equation Z^T S + S Z + C = 0. Throws NoStationaryState when the drift
/// spectrum touches the closed right half-plane.
inline CovarianceMatrix stationary_covariance(const DriftDiffusion& dd) {
    const StabilityReport st = stability_check(dd.Z);
    if (!st.stable) {
        ComplexVector offending;
        for (const auto& ev : st.eigenvalues)
            if (ev.real() >= -1e-12) offending.push_back(ev);
        throw NoStationaryState("stationary_covariance: drift is not stable (max Re lambda = "
                                    + std::to_string(st.max_real_part) + ")",
                                std::move(offending));
    }
    return CovarianceMatrix(dd.d, num::solve_lyapunov(dd.Z, dd.C));
}

/// Evolve a Gaussian state for time t >= 0:
///   mu_t = e^{t Z^T} mu - int_0^t e^{s Z^T} zeta ds
///   S_t  = e^{t Z^T} S e^{t Z} + int_0^t e^{s Z^T} C e^{s Z} ds
/// The adjoint flow is a plain transpose in the real representation, and
/// the integrals use the Simpson quadrature refined to 1e-10.
inline GaussianState evolve_state(const GaussianState& state, const DriftDiffusion& dd,
                                  const RealVector& zeta, double t) {
    if (t < 0.0) throw std::invalid_argument("evolve_state: negative time");
    const std::size_t n = 2 * dd.d;
    if (state.cov.matrix().rows() != n || state.mean.size() != n || zeta.size() != n)
        throw std::invalid_argument("evolve_state: dimension mismatch");
    if (t == 0.0) return state;

    const RealMatrix Et = num::expm(dd.Z * t);
    RealMatrix St = Et.transpose() * (state.cov.matrix() * Et)
                  + num::sandwich_integral_refined(dd.Z, dd.C, t);

    bool zeta_zero = true;
    for (double z : zeta)
        if (z != 0.0) zeta_zero = false;
    RealVector mu = num::mat_vec(Et.transpose(), state.mean);
    if (!zeta_zero) {
        const RealVector drive = num::transpose_flow_integral(dd.Z, zeta, t);
        for (std::size_t i = 0; i < n; ++i) mu[i] -= drive[i];
    }
    return GaussianState{std::move(mu), CovarianceMatrix(dd.d, num::symmetrized(St))};
}

struct WeylFactor {
    double log_amplitude = 0.0; // <= 0
    double phase = 0.0;
    ComplexVector evolved_z;
};

/// Action of the semigroup on a Weyl operator W(z):
///   T_t(W(z)) = exp( -1/2 int_0^t Re<e^{sZ}z, C e^{sZ}z> ds
///                    + i int_0^t Re<zeta, e^{sZ}z> ds ) W(e^{tZ} z).
/// Returned as the real and imaginary parts of the exponent plus the
/// evolved argument, all computed through the real 2d representation.
inline WeylFactor weyl_evolution_factor(const ComplexVector& z, double t, const DriftDiffusion& dd,
                                        const ComplexVector& zeta) {
    if (t < 0.0) throw std::invalid_argument("weyl_evolution_factor: negative time");
    if (z.size() != dd.d || zeta.size() != dd.d)
        throw std::invalid_argument("weyl_evolution_factor: dimension mismatch");
    const std::size_t n = 2 * dd.d;
    const RealVector zr = embed(z);
    const RealVector zetar = embed(zeta);

    bool z_zero = true;
    for (const auto& v : z)
        if (v != cplx{}) z_zero = false;
    if (z_zero || t == 0.0) return WeylFactor{0.0, 0.0, z};

    auto level = [&](double step) {
        const std::size_t m = num::detail::even_intervals(t, step);
        const double h = t / static_cast<double>(m);
        const RealMatrix E = num::expm(dd.Z * h);
        RealVector w = zr;
        auto quad = [&](const RealVector& v) {
            const RealVector cv = num::mat_vec(dd.C, v);
            double s = 0.0;
            for (std::size_t i = 0; i < n; ++i) s += v[i] * cv[i];
            return s;
        };
        auto dot_zeta = [&](const RealVector& v) {
            double s = 0.0;
            for (std::size_t i = 0; i < n; ++i) s += zetar[i] * v[i];
            return s;
        };
        double amp = quad(w), ph = dot_zeta(w);
        for (std::size_t k = 1; k <= m; ++k) {
            w = num::mat_vec(E, w);
            const double wt = (k == m) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
            amp += wt * quad(w);
            ph += wt * dot_zeta(w);
        }
        return std::pair<double, double>{amp * h / 3.0, ph * h / 3.0};
    };

    double step = 1.0 / 64.0;
    auto prev = level(step);
    std::pair<double, double> cur = prev;
    for (int lvl = 1; lvl <= 7; ++lvl) {
        step *= 0.5;
        cur = level(step);
        const double diff = std::max(std::abs(cur.first - prev.first),
                                     std::abs(cur.second - prev.second));
        if (diff <= 1e-10 * std::max(1.0, std::abs(cur.first))) break;
        prev = cur;
    }

    const RealVector wz = num::mat_vec(num::expm(dd.Z * t), zr);
    return WeylFactor{-0.5 * cur.first, cur.second, unembed(wz)};
}

/// Composition phase of Weyl operators, W(z)W(w) = e^{-i Im<z,w>} W(z+w):
/// returns -Im<z, w>, antisymmetric under swapping the arguments.
inline double weyl_ccr_phase(const ComplexVector& z, const ComplexVector& w) {
    if (z.size() != w.size()) throw std::invalid_argument("weyl_ccr_phase: length mismatch");
    cplx s{};
    for (std::size_t j = 0; j < z.size(); ++j) s += std::conj(z[j]) * w[j];
    return -s.imag();
}

} // namespace gqms
