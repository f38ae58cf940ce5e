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

#include "gqms/entanglement.hpp"

// The two concrete systems: a bipartite pair of modes with a squeezing
// Hamiltonian, coupled to one thermal reservoir mode (3 modes total) or
// to two independent reservoirs (4 modes). Mode 0 is always a reservoir;
// in the two-noise system mode 3 is the second reservoir. Gives the
// explicit drift/diffusion pairs, closed-form stationary covariances,
// stability criteria and the analytic entanglement-region predicates,
// together with the temperature-linearity decomposition and the
// polynomial inequalities backing them.
//
// Temperatures enter through bt = coth(beta/2) > 1 (bt = 1 is the
// zero-temperature limit, accepted but flagged). The system frequency is
// normalized to omega = 1 throughout.

namespace gqms::models {

using num::cplx;
using num::ComplexMatrix;
using num::RealMatrix;
using num::RealVector;

/// coth(beta/2); strictly decreasing in beta, so increasing in temperature.
inline double beta_tilde_from_beta(double beta) {
    if (!(beta > 0.0)) throw std::invalid_argument("beta_tilde_from_beta: need beta > 0");
    return 1.0 / std::tanh(0.5 * beta);
}

struct SingleNoiseParams {
    double kappa = 0.0;      // squeezing strength
    double g = 0.0;          // system-reservoir coupling, nonzero
    double beta_tilde = 1.0; // coth(beta/2) >= 1

    bool zero_temperature() const { return beta_tilde == 1.0; }
    void validate() const {
        if (g == 0.0) throw std::invalid_argument("SingleNoiseParams: g must be nonzero");
        if (!(beta_tilde >= 1.0))
            throw std::invalid_argument("SingleNoiseParams: beta_tilde must be >= 1");
        if (!std::isfinite(kappa) || !std::isfinite(g) || !std::isfinite(beta_tilde))
            throw std::invalid_argument("SingleNoiseParams: non-finite values");
    }
};

struct TwoNoiseParams {
    double kappa = 0.0;
    double g = 0.0;
    double beta0_tilde = 1.0; // reservoir on mode 0
    double beta3_tilde = 1.0; // reservoir on mode 3

    bool zero_temperature() const { return beta0_tilde == 1.0 || beta3_tilde == 1.0; }
    void validate() const {
        if (g == 0.0) throw std::invalid_argument("TwoNoiseParams: g must be nonzero");
        if (!(beta0_tilde >= 1.0) || !(beta3_tilde >= 1.0))
            throw std::invalid_argument("TwoNoiseParams: beta tildes must be >= 1");
        if (!std::isfinite(kappa) || !std::isfinite(g) || !std::isfinite(beta0_tilde)
            || !std::isfinite(beta3_tilde))
            throw std::invalid_argument("TwoNoiseParams: non-finite values");
    }
};

/// Per-point classification record used by sweeps.
struct RegionVerdict {
    bool stable = false;
    std::optional<bool> entangled;                      // absent when unstable
    std::optional<ent::EntanglementVerdict> witnesses;  // present when computed
    std::optional<bool> analytic_entangled;             // theorem predicate, where defined
};

namespace detail {

// Thermal reservoir Lindblad weights: |v|^2 - |u|^2 = 1, |v|^2 + |u|^2 = bt.
inline std::pair<double, double> reservoir_weights(double bt) {
    return {std::sqrt(0.5 * (bt + 1.0)), std::sqrt(0.5 * (bt - 1.0))};
}

} // namespace detail

/// GKLS data of the single-noise system: reservoir mode 0, system modes
/// 1 and 2, hopping g between 0-1, hopping 1 between 1-2 (omega = 1) and
/// squeezing kappa on the system modes.
inline GklsGenerator single_noise_generator(const SingleNoiseParams& p) {
    p.validate();
    GklsGenerator gen;
    gen.d = 3;
    gen.m = 2;
    gen.Omega = ComplexMatrix(3, 3);
    gen.Omega(0, 1) = gen.Omega(1, 0) = 0.5 * p.g;
    gen.Omega(1, 2) = gen.Omega(2, 1) = 0.5;
    // The squeezing quadratic form enters the drift with half the nominal
    // strength; diag(0, kappa/2, kappa/2) reproduces the model matrices.
    gen.Kappa = ComplexMatrix(3, 3);
    gen.Kappa(1, 1) = gen.Kappa(2, 2) = 0.5 * p.kappa;
    const auto [v, u] = detail::reservoir_weights(p.beta_tilde);
    gen.V = ComplexMatrix(2, 3);
    gen.U = ComplexMatrix(2, 3);
    gen.V(0, 0) = v; // L1 = v a_0
    gen.U(1, 0) = u; // L2 = u a_0^dag
    gen.zeta = ComplexVector(3, cplx{});
    return gen;
}

/// The explicit 6x6 drift/diffusion pair of the single-noise system.
/// Built from the hard-coded pattern, then checked entrywise against the
/// blockwise construction from the generator; a mismatch means a broken
/// build and throws.
inline DriftDiffusion single_noise_system(const SingleNoiseParams& p) {
    p.validate();
    const double g = p.g, k = p.kappa, bt = p.beta_tilde;
    RealMatrix Z = num::from_rows<double>({{-1, 0, 0, 0, -g, 0},
                                           {0, 0, 0, -g, k, -1},
                                           {0, 0, 0, 0, -1, k},
                                           {0, g, 0, -1, 0, 0},
                                           {g, k, 1, 0, 0, 0},
                                           {0, 1, k, 0, 0, 0}});
    Z *= 0.5;
    RealMatrix C = RealMatrix::diagonal({bt, 0.0, 0.0, bt, 0.0, 0.0});

    const DriftDiffusion built = build_drift_diffusion(single_noise_generator(p));
    const double scale = std::max(1.0, std::max(Z.max_abs(), C.max_abs()));
    if ((built.Z - Z).max_abs() > 1e-14 * scale || (built.C - C).max_abs() > 1e-14 * scale)
        throw std::logic_error("single_noise_system: generator path disagrees with explicit pair");
    return DriftDiffusion{3, std::move(Z), std::move(C)};
}

/// The two cubic factors of det(lambda I - Z), coefficients highest first.
inline std::pair<RealVector, RealVector> single_noise_char_poly_factors(double kappa, double g) {
    const double k2 = kappa * kappa, g2 = g * g;
    RealVector minus = {1.0, 0.5, 0.25 * (1.0 - k2 + g2), 0.125 * (1.0 - k2 - g2 * kappa)};
    RealVector plus = {1.0, 0.5, 0.25 * (1.0 - k2 + g2), 0.125 * (1.0 - k2 + g2 * kappa)};
    return {minus, plus};
}

/// Routh-Hurwitz for c0 l^3 + c1 l^2 + c2 l + c3: stable iff c0, c1, c3 > 0
/// and c1 c2 > c0 c3.
inline bool routh_hurwitz_cubic(double c0, double c1, double c2, double c3) {
    return c0 > 0.0 && c1 > 0.0 && c3 > 0.0 && c1 * c2 - c0 * c3 > 0.0;
}

/// Routh-Hurwitz for the monic quartic l^4 + a3 l^3 + a2 l^2 + a1 l + a0.
inline bool routh_hurwitz_quartic(double a3, double a2, double a1, double a0) {
    return a3 > 0.0 && a2 > 0.0 && a1 > 0.0 && a0 > 0.0 && a3 * a2 > a1
        && a3 * a2 * a1 > a3 * a3 * a0 + a1 * a1;
}

/// Single-noise drift is stable iff kappa = 0, or 0 < |kappa| < 1 and
/// g^2 < (1 - kappa^2) / |kappa|.
inline bool single_noise_stability(double kappa, double g) {
    if (g == 0.0) throw std::invalid_argument("single_noise_stability: g must be nonzero");
    if (kappa == 0.0) return true;
    const double ak = std::abs(kappa);
    return ak < 1.0 && g * g < (1.0 - kappa * kappa) / ak;
}

/// Closed-form 6x6 stationary covariance of the single-noise system,
/// prefactor bt / ((1-k^2)^3 - k^2 (1-k^2) g^4), delta = 1 - k^2.
inline CovarianceMatrix single_noise_closed_form(const SingleNoiseParams& p) {
    p.validate();
    if (!single_noise_stability(p.kappa, p.g))
        throw NoStationaryState("single_noise_closed_form: parameters outside stability region", {});
    const double k = p.kappa, g = p.g;
    const double k2 = k * k, k3 = k2 * k, g2 = g * g;
    const double d = 1.0 - k2;
    const double pref = p.beta_tilde / (d * d * d - k2 * d * g2 * g2);
    const double a = d - g2;            // delta - g^2
    const double b = d - g2 * k2;       // delta - g^2 k^2
    const double c = d - g2 * k2 * (g2 + k2);
    RealMatrix M = num::from_rows<double>({
        {d * d * d + g2 * k2 * a, g * k3 * a, g * k2 * a, -g2 * k3 * a, g * k2 * b, -g * k * b},
        {g * k3 * a, c, k * b, -g * k2 * b, k * c, -k2 * a},
        {g * k2 * a, k * b, b, -g * k * b, k2 * a, -k * a},
        {-g2 * k3 * a, -g * k2 * b, -g * k * b, d * d * d + g2 * k2 * a, -g * k3 * a, g * k2 * a},
        {g * k2 * a, k * c, k2 * a, -g * k3 * a, c, -k * b},
        {-g * k * b, -k2 * a, -k * a, g * k2 * a, -k * b, b}});
    return CovarianceMatrix(3, pref * M);
}

/// Closed-form reduced (system-only) 4x4 stationary covariance,
/// prefactor bt (1-k^2)^{-1} ((1-k^2)^2 - g^4 k^2)^{-1}.
inline CovarianceMatrix single_noise_reduced_closed_form(const SingleNoiseParams& p) {
    p.validate();
    if (!single_noise_stability(p.kappa, p.g))
        throw NoStationaryState("single_noise_reduced_closed_form: parameters outside stability region",
                                {});
    const double k = p.kappa, g = p.g;
    const double k2 = k * k, k3 = k2 * k, g2 = g * g;
    const double d = 1.0 - k2;
    const double pref = p.beta_tilde / (d * (d * d - g2 * g2 * k2));
    const double m11 = d - g2 * k2 * (g2 + k2);
    const double m12 = k * (d - g2 * k2);
    const double m13 = k * d - g2 * k3 * (1.0 + g2);
    const double m14 = -k2 * (d - g2);
    const double m22 = d - g2 * k2;
    const double m23 = k2 * (d - g2);
    const double m24 = -k * (d - g2);
    const double m34 = -k * (1.0 - k2 * (1.0 + g2));
    RealMatrix M = num::from_rows<double>({{m11, m12, m13, m14},
                                           {m12, m22, m23, m24},
                                           {m13, m23, m11, m34},
                                           {m14, m24, m34, m22}});
    return CovarianceMatrix(2, pref * M);
}

/// Threshold (in the squared temperature variable bt^2) below which the
/// stationary state is entangled:
///   (1-k^2) (1 + k^2 + |k| sqrt(16 - g^4 k^2 (4 - g^4)) / 2 - g^4 k^2 / 2).
/// The det of the PPT matrix is a quadratic in bt^2 whose larger root is
/// exactly this value, so the verdict flips at bt = sqrt(beta_star).
inline double beta_star(double kappa, double g);

/// Existence of an entangling temperature: g != 0, 0 < |kappa| < 1 and
/// g^2 < min{ (1-k^2)/|k|, sqrt(max{4(1-k^2)^2 - k^6, 0}) / (|k| sqrt(1-k^2)) }.
inline bool single_noise_entangled_region(double kappa, double g) {
    if (g == 0.0) throw std::invalid_argument("single_noise_entangled_region: g must be nonzero");
    const double ak = std::abs(kappa);
    if (ak == 0.0 || ak >= 1.0) return false;
    const double k2 = kappa * kappa;
    const double d = 1.0 - k2;
    const double bound_stab = d / ak;
    const double rad = std::max(4.0 * d * d - k2 * k2 * k2, 0.0);
    const double bound_det = std::sqrt(rad) / (ak * std::sqrt(d));
    return g * g < std::min(bound_stab, bound_det);
}

inline double beta_star(double kappa, double g) {
    if (!single_noise_entangled_region(kappa, g))
        throw std::invalid_argument("beta_star: parameters outside the entangled-region bounds");
    const double ak = std::abs(kappa);
    const double k2 = kappa * kappa, g4 = g * g * g * g;
    const double d = 1.0 - k2;
    return d * (1.0 + k2 + 0.5 * ak * std::sqrt(16.0 - g4 * k2 * (4.0 - g4)) - 0.5 * g4 * k2);
}

/// Entanglement of the stationary state at a concrete temperature:
/// inside the region and bt^2 below beta_star.
inline bool single_noise_entangled(double kappa, double g, double beta_tilde) {
    if (g == 0.0) throw std::invalid_argument("single_noise_entangled: g must be nonzero");
    if (!(beta_tilde >= 1.0))
        throw std::invalid_argument("single_noise_entangled: beta_tilde must be >= 1");
    if (!single_noise_entangled_region(kappa, g)) return false;
    return beta_tilde * beta_tilde < beta_star(kappa, g);
}

/// Temperature choice bt(kappa) = 1 + |k|(1-|k|)/4 that entangles across
/// (most of) the stability region.
inline double single_noise_heuristic_beta(double kappa) {
    const double ak = std::abs(kappa);
    return 1.0 + 0.25 * ak * (1.0 - ak);
}

/// GKLS data of the two-noise system: reservoirs on modes 0 and 3 with
/// temperatures bt0 and bt3, system modes 1 and 2.
inline GklsGenerator two_noise_generator(const TwoNoiseParams& p) {
    p.validate();
    GklsGenerator gen;
    gen.d = 4;
    gen.m = 4;
    gen.Omega = ComplexMatrix(4, 4);
    gen.Omega(0, 1) = gen.Omega(1, 0) = 0.5 * p.g;
    gen.Omega(1, 2) = gen.Omega(2, 1) = 0.5;
    gen.Omega(2, 3) = gen.Omega(3, 2) = 0.5 * p.g;
    gen.Kappa = ComplexMatrix(4, 4);
    gen.Kappa(1, 1) = gen.Kappa(2, 2) = 0.5 * p.kappa;
    const auto [v0, u0] = detail::reservoir_weights(p.beta0_tilde);
    const auto [v3, u3] = detail::reservoir_weights(p.beta3_tilde);
    gen.V = ComplexMatrix(4, 4);
    gen.U = ComplexMatrix(4, 4);
    gen.V(0, 0) = v0; // L1 = v0 a_0
    gen.U(1, 0) = u0; // L2 = u0 a_0^dag
    gen.V(2, 3) = v3; // L3 = v3 a_3
    gen.U(3, 3) = u3; // L4 = u3 a_3^dag
    gen.zeta = ComplexVector(4, cplx{});
    return gen;
}

/// The explicit 8x8 drift/diffusion pair of the two-noise system, with
/// the same always-on cross-check against the generator path.
inline DriftDiffusion two_noise_system(const TwoNoiseParams& p) {
    p.validate();
    const double g = p.g, k = p.kappa;
    RealMatrix Z = num::from_rows<double>({{-1, 0, 0, 0, 0, -g, 0, 0},
                                           {0, 0, 0, 0, -g, k, -1, 0},
                                           {0, 0, 0, 0, 0, -1, k, -g},
                                           {0, 0, 0, -1, 0, 0, -g, 0},
                                           {0, g, 0, 0, -1, 0, 0, 0},
                                           {g, k, 1, 0, 0, 0, 0, 0},
                                           {0, 1, k, g, 0, 0, 0, 0},
                                           {0, 0, g, 0, 0, 0, 0, -1}});
    Z *= 0.5;
    RealMatrix C = RealMatrix::diagonal(
        {p.beta0_tilde, 0.0, 0.0, p.beta3_tilde, p.beta0_tilde, 0.0, 0.0, p.beta3_tilde});

    const DriftDiffusion built = build_drift_diffusion(two_noise_generator(p));
    const double scale = std::max(1.0, std::max(Z.max_abs(), C.max_abs()));
    if ((built.Z - Z).max_abs() > 1e-14 * scale || (built.C - C).max_abs() > 1e-14 * scale)
        throw std::logic_error("two_noise_system: generator path disagrees with explicit pair");
    return DriftDiffusion{4, std::move(Z), std::move(C)};
}

/// The quartic whose square is det(lambda I - Z), coefficients highest first.
inline RealVector two_noise_char_poly_quartic(double kappa, double g) {
    const double k2 = kappa * kappa, g2 = g * g;
    return {1.0, 1.0, 0.25 * (2.0 * (1.0 + g2) - k2), 0.25 * (1.0 - k2 + g2),
            0.0625 * (1.0 - k2 + g2 * g2)};
}

/// Two-noise drift is stable iff kappa^2 < min{1 + g^4, 2}.
inline bool two_noise_stability(double kappa, double g) {
    if (g == 0.0) throw std::invalid_argument("two_noise_stability: g must be nonzero");
    const double g4 = g * g * g * g;
    return kappa * kappa < std::min(1.0 + g4, 2.0);
}

/// Reduced stationary covariance at kappa = 0:
///   (bt0+bt3)/2 I4 + (bt0-bt3) g^2 / (4 (1+g^4)) * fixed pattern.
/// Separable for all parameters.
inline CovarianceMatrix two_noise_k0_closed_form(double g, double beta0_tilde, double beta3_tilde) {
    TwoNoiseParams{0.0, g, beta0_tilde, beta3_tilde}.validate();
    const double g2 = g * g;
    const double a = 1.0 - g2, b = 1.0 + g2;
    RealMatrix M = num::from_rows<double>(
        {{-a, 0, 0, -b}, {0, a, b, 0}, {0, b, -a, 0}, {-b, 0, 0, a}});
    const double w = (beta0_tilde - beta3_tilde) * g2 / (4.0 * (1.0 + g2 * g2));
    RealMatrix S = RealMatrix::identity(4) * (0.5 * (beta0_tilde + beta3_tilde)) + w * M;
    return CovarianceMatrix(2, std::move(S));
}

/// Reduced stationary covariance at kappa = 1, with ghat = (1+g^2)/g^4.
inline CovarianceMatrix two_noise_k1_closed_form(const TwoNoiseParams& p) {
    p.validate();
    if (p.kappa != 1.0)
        throw std::invalid_argument("two_noise_k1_closed_form: requires kappa = 1");
    const double g2 = p.g * p.g;
    const double gh = (1.0 + g2) / (g2 * g2);
    const double b0 = p.beta0_tilde, b3 = p.beta3_tilde;
    const double s = b0 + b3, dl = b3 - b0;
    const double A = (2.0 + gh) * s - dl;
    const double B = (2.0 + gh) * s + dl;
    const double E = (1.0 + gh) * s;
    const double F = 2.0 * g2 * gh * b0;
    const double G = 2.0 * g2 * gh * b3;
    const double H = g2 * gh * (b0 - b3);
    RealMatrix M = num::from_rows<double>(
        {{A, E, F, -H}, {E, B, H, G}, {F, H, A, -E}, {-H, G, -E, B}});
    return CovarianceMatrix(2, 0.5 * M);
}

/// Temperature threshold b_max(g) of the equal-temperature kappa = 1
/// system: entangled iff 1 <= b < b_max(g).
inline double two_noise_equal_temp_threshold(double g) {
    const double g2 = g * g, g4 = g2 * g2;
    const double num_ = 1.0 + g2 + g4;
    return (num_ + std::sqrt(num_ * num_ + g4 * (1.0 + 2.0 * g4))) / (1.0 + 2.0 * g4);
}

/// Four-regime predicate for entanglement of the equal-temperature
/// (kappa = 1) stationary state, b = bt0 = bt3:
///   1. 1 < b <= (1+sqrt 3)/2: any g,
///   2. (1+sqrt 3)/2 < b <= 2: g^2 below (b + sqrt(R)) / (2b^2-2b-1),
///   3. 2 < b < 1+sqrt 2: g^2 strictly between the two roots,
///   4. b >= 1+sqrt 2: never,
/// with R = 2 b (b-1) (-b^2 + 2b + 1).
inline bool two_noise_equal_temp_region(double b, double g) {
    if (g == 0.0) throw std::invalid_argument("two_noise_equal_temp_region: g must be nonzero");
    if (!(b > 1.0)) throw std::invalid_argument("two_noise_equal_temp_region: need b > 1");
    const double case1_edge = 0.5 * (1.0 + std::sqrt(3.0));
    const double case4_edge = 1.0 + std::sqrt(2.0);
    if (b <= case1_edge) return true;
    if (b >= case4_edge) return false;
    const double R = 2.0 * b * (b - 1.0) * (-b * b + 2.0 * b + 1.0);
    const double den = 2.0 * b * b - 2.0 * b - 1.0;
    const double root = std::sqrt(std::max(R, 0.0));
    const double g2 = g * g;
    const double hi = (b + root) / den;
    if (b <= 2.0) return g2 < hi;
    const double lo = (b - root) / den;
    return lo < g2 && g2 < hi;
}

/// Splitting of the two-noise diffusion into the temperature-independent
/// parts: C = (bt0+bt3)/2 C1 + (bt0-bt3)/2 C_delta with
/// C1 = diag(1,0,0,1,1,0,0,1) and C_delta = diag(1,0,0,-1,1,0,0,-1).
/// Returns the two Lyapunov solutions (S1, S_delta); the stationary
/// covariance for any temperatures is the same linear combination.
/// At kappa = 0, S1 is the 8x8 identity.
inline std::pair<RealMatrix, RealMatrix> appendix_a_decomposition(double kappa, double g) {
    if (!two_noise_stability(kappa, g))
        throw NoStationaryState("appendix_a_decomposition: parameters outside stability region", {});
    // temperatures do not enter Z; pick valid placeholders
    const DriftDiffusion dd = two_noise_system(TwoNoiseParams{kappa, g, 2.0, 2.0});
    const RealMatrix C1 = RealMatrix::diagonal({1, 0, 0, 1, 1, 0, 0, 1});
    const RealMatrix Cd = RealMatrix::diagonal({1, 0, 0, -1, 1, 0, 0, -1});
    return {num::solve_lyapunov(dd.Z, C1), num::solve_lyapunov(dd.Z, Cd)};
}

struct AppendixBReport {
    bool positive1 = false, positive2 = false, positive3 = false;
    double value1 = 0.0, value2 = 0.0, value3 = 0.0;
    bool all_positive() const { return positive1 && positive2 && positive3; }
};

/// The three polynomial inequalities controlling the signs of the PPT
/// characteristic-polynomial coefficients, evaluated at (kappa, g, bt).
/// All three are positive throughout |kappa| < 1, bt > 1,
/// 0 < g^2 < (1-kappa^2)/|kappa|.
inline AppendixBReport appendix_b_inequalities(double kappa, double g, double beta_tilde) {
    const double ak = std::abs(kappa);
    const double k2 = kappa * kappa;
    const double g2 = g * g, g4 = g2 * g2;
    if (!(ak < 1.0) || !(beta_tilde > 1.0) || !(g2 > 0.0)
        || (ak > 0.0 && !(g2 < (1.0 - k2) / ak)))
        throw std::invalid_argument("appendix_b_inequalities: parameters outside the stated region");
    const double k4 = k2 * k2, k6 = k4 * k2, k8 = k4 * k4;
    const double bt2 = beta_tilde * beta_tilde;
    AppendixBReport r;
    r.value1 = 6.0 - (2.0 + g2) * (2.0 + g2) * k2 + (g4 - 2.0) * k4;
    r.value2 = 4.0 + (2.0 - g2) * (2.0 - g2) * k2 - (3.0 * g4 + 14.0) * k4
             + 2.0 * (g4 + 4.0) * k6 - 2.0 * k8;
    r.value3 = 2.0 * bt2 * (2.0 - g2 * k2)
             + 2.0 * (1.0 - k2) * (g2 * k4 + (g4 + g2 + 2.0) * k2 - 2.0);
    r.positive1 = r.value1 > 0.0;
    r.positive2 = r.value2 > 0.0;
    r.positive3 = r.value3 > 0.0;
    return r;
}

/// Partition keeping the system modes (1 and 2) as parties A and B.
inline ent::PartitionSpec system_partition(std::size_t d_total) {
    return ent::PartitionSpec{d_total, {1, 2}, {1}, {2}};
}

} // namespace gqms::models
