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

#include <chrono>
#include <functional>
#include <random>

#include "gqms/poly.hpp"
#include "gqms/sweep.hpp"

// Built-in verification suites: closed forms against the Lyapunov solver,
// quadrature against the Lyapunov solver, the polynomial inequalities by
// Monte Carlo, and the analytic region predicates against the numerical
// PPT pipeline on coarse grids. Run by `gqms selftest` and by the
// acceptance tests.

namespace gqms::selftest {

struct SuiteResult {
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

struct Options {
    bool quick = false;
    // test-mode fault injection into the stored closed-form matrix
    std::optional<std::tuple<int, int, double>> inject_fault;
    std::uint64_t seed = 20250809;
};

namespace detail {

inline double rel_fro_error(const num::RealMatrix& a, const num::RealMatrix& b) {
    return (a - b).frobenius_norm() / std::max(1.0, b.frobenius_norm());
}

// random stable drift: shift a random matrix left of the imaginary axis
inline num::RealMatrix random_stable(std::mt19937_64& rng, std::size_t n, double margin = 0.3) {
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    num::RealMatrix A(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) A(i, j) = uni(rng);
    const auto sp = num::eigenvalues_general(A);
    double mx = -1e300;
    for (const auto& ev : sp.eigenvalues) mx = std::max(mx, ev.real());
    return A - num::RealMatrix::identity(n) * (mx + margin);
}

inline num::RealMatrix random_symmetric(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    num::RealMatrix C(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) C(i, j) = C(j, i) = uni(rng);
    return C;
}

template <typename F>
SuiteResult timed(const std::string& name, F&& body) {
    SuiteResult r;
    r.name = name;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(r);
    } catch (const std::exception& e) {
        r.pass = false;
        r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

} // namespace detail

/// Stored closed-form stationary covariance vs the Lyapunov solver over a
/// stable (kappa, g) grid at several temperatures. Reports the worst
/// entry coordinates, so a perturbed transcription fails loudly.
inline SuiteResult suite_closed_form_vs_solver(const Options& opt) {
    return detail::timed("closed_form_vs_solver", [&](SuiteResult& r) {
        const int nk = opt.quick ? 8 : 20, ng = opt.quick ? 8 : 20;
        const double bts[3] = {1.05, 1.5, 2.5};
        double worst = 0.0;
        int wi = -1, wj = -1;
        double wk = 0, wg = 0;
        for (int a = 0; a < nk; ++a) {
            const double kappa = -0.9 + 1.8 * a / (nk - 1);
            for (int b = 0; b < ng; ++b) {
                const double bound = kappa == 0.0 ? 4.0 : (1.0 - kappa * kappa) / std::abs(kappa);
                const double g = std::sqrt((0.05 + 0.9 * b / (ng - 1)) * std::min(bound, 4.0));
                for (double bt : bts) {
                    const models::SingleNoiseParams p{kappa, g, bt};
                    num::RealMatrix closed = models::single_noise_closed_form(p).matrix();
                    if (opt.inject_fault) {
                        auto [fi, fj, fd] = *opt.inject_fault;
                        closed(fi, fj) += fd;
                    }
                    const num::RealMatrix solved =
                        stationary_covariance(models::single_noise_system(p)).matrix();
                    for (std::size_t i = 0; i < 6; ++i)
                        for (std::size_t j = 0; j < 6; ++j) {
                            const double e = std::abs(closed(i, j) - solved(i, j))
                                           / std::max(1.0, solved.max_abs());
                            if (e > worst) {
                                worst = e;
                                wi = static_cast<int>(i);
                                wj = static_cast<int>(j);
                                wk = kappa;
                                wg = g;
                            }
                        }
                }
            }
        }
        r.pass = worst <= 1e-9;
        std::ostringstream os;
        os << "worst entry error " << worst << " at entry (" << wi << "," << wj << "), kappa=" << wk
           << ", g=" << wg;
        r.detail = os.str();
    });
}

/// Reduced closed form vs partial trace of the full solve, random draws.
inline SuiteResult suite_reduced_two_path(const Options& opt) {
    return detail::timed("reduced_two_path", [&](SuiteResult& r) {
        std::mt19937_64 rng(opt.seed + 1);
        std::uniform_real_distribution<double> uk(-0.95, 0.95), uf(0.05, 0.95), ub(1.001, 3.0);
        const int n = opt.quick ? 25 : 100;
        double worst = 0.0;
        for (int i = 0; i < n; ++i) {
            double kappa = uk(rng);
            if (std::abs(kappa) < 1e-3) kappa = 0.1;
            const double bound = (1.0 - kappa * kappa) / std::abs(kappa);
            const models::SingleNoiseParams p{kappa, std::sqrt(uf(rng) * bound), ub(rng)};
            const auto red = models::single_noise_reduced_closed_form(p).matrix();
            const auto full = stationary_covariance(models::single_noise_system(p));
            const auto traced = ent::partial_trace(full, models::system_partition(3)).matrix();
            worst = std::max(worst, detail::rel_fro_error(traced, red));
        }
        r.pass = worst <= 1e-9;
        r.detail = "worst relative error " + std::to_string(worst);
    });
}

/// Lyapunov solve vs direct quadrature of the stationary integral on
/// random stable instances and on the model systems.
inline SuiteResult suite_oracle_equivalence(const Options& opt) {
    return detail::timed("oracle_equivalence", [&](SuiteResult& r) {
        std::mt19937_64 rng(opt.seed + 2);
        const int n6 = opt.quick ? 20 : 100, n8 = opt.quick ? 10 : 50;
        double worst = 0.0;
        auto check = [&](const num::RealMatrix& Z, const num::RealMatrix& C) {
            const auto direct = num::solve_lyapunov(Z, C);
            const auto quad = num::stationary_integral_oracle(Z, C, 1e-8);
            worst = std::max(worst, (direct - quad).frobenius_norm()
                                        / std::max(1.0, direct.frobenius_norm()));
        };
        for (int i = 0; i < n6; ++i)
            check(detail::random_stable(rng, 6), detail::random_symmetric(rng, 6));
        for (int i = 0; i < n8; ++i)
            check(detail::random_stable(rng, 8), detail::random_symmetric(rng, 8));
        const auto dd = models::two_noise_system(models::TwoNoiseParams{1.0, 1.0, 1.1, 1.1});
        check(dd.Z, dd.C);
        r.pass = worst <= 1e-6;
        r.detail = "worst relative disagreement " + std::to_string(worst);
    });
}

/// Analytic stability predicates vs the eigenvalue verdict, both models,
/// excluding a dead band around the boundary curves.
inline SuiteResult suite_stability_vs_spectrum(const Options& opt) {
    return detail::timed("stability_vs_spectrum", [&](SuiteResult& r) {
        const int nk = opt.quick ? 40 : 100, ng = opt.quick ? 40 : 100;
        int checked = 0, bad = 0;
        for (int a = 0; a < nk; ++a)
            for (int b = 0; b < ng; ++b) {
                {
                    const double kappa = -0.99 + 1.98 * a / (nk - 1);
                    const double g2 = 1e-3 * std::pow(1e4, static_cast<double>(b) / (ng - 1));
                    const double ak = std::abs(kappa);
                    const double margin =
                        ak < 1.0 && ak > 0.0 ? std::abs(g2 - (1.0 - kappa * kappa) / ak) : 1.0;
                    if (margin > 1e-3 && std::abs(ak - 1.0) > 1e-3) {
                        const auto st = stability_check(
                            models::single_noise_system({kappa, std::sqrt(g2), 1.5}).Z);
                        const bool analytic = models::single_noise_stability(kappa, std::sqrt(g2));
                        if (st.max_real_part < -1e-10 || st.max_real_part > 1e-10) {
                            ++checked;
                            if (analytic != (st.max_real_part < 0.0)) ++bad;
                        }
                    }
                }
                {
                    const double kappa = -1.9 + 3.8 * a / (nk - 1);
                    const double g2 = 1e-3 * std::pow(1e4, static_cast<double>(b) / (ng - 1));
                    const double edge = std::min(1.0 + g2 * g2, 2.0);
                    if (std::abs(kappa * kappa - edge) > 1e-3) {
                        const auto st = stability_check(
                            models::two_noise_system({kappa, std::sqrt(g2), 1.5, 1.5}).Z);
                        const bool analytic = models::two_noise_stability(kappa, std::sqrt(g2));
                        if (st.max_real_part < -1e-10 || st.max_real_part > 1e-10) {
                            ++checked;
                            if (analytic != (st.max_real_part < 0.0)) ++bad;
                        }
                    }
                }
            }
        r.pass = bad == 0 && checked > 0;
        r.detail = std::to_string(bad) + " disagreements over " + std::to_string(checked) + " points";
    });
}

/// Theorem predicate for the single-noise entangled region vs the full
/// numerical pipeline, coarse grid, boundary dead bands excluded.
inline SuiteResult suite_region_vs_ppt(const Options& opt) {
    return detail::timed("region_vs_ppt", [&](SuiteResult& r) {
        const int nk = opt.quick ? 10 : 24, ng = opt.quick ? 6 : 12, nb = opt.quick ? 6 : 12;
        int checked = 0, bad = 0;
        for (int a = 0; a < nk; ++a) {
            const double kappa = 0.05 + 0.9 * a / (nk - 1);
            const double bound = (1.0 - kappa * kappa) / kappa;
            for (int b = 0; b < ng; ++b) {
                const double g = std::sqrt((0.05 + 0.9 * b / (ng - 1)) * bound);
                if (!models::single_noise_stability(kappa, g)) continue;
                for (int c = 0; c < nb; ++c) {
                    const double bt = 1.02 + 1.6 * c / (nb - 1);
                    // dead band around the analytic transition
                    if (models::single_noise_entangled_region(kappa, g)) {
                        const double thr = std::sqrt(models::beta_star(kappa, g));
                        if (std::abs(bt - thr) < 1e-3) continue;
                    }
                    const auto dd = models::single_noise_system({kappa, g, bt});
                    const auto S = stationary_covariance(dd);
                    const auto v =
                        ent::ppt_check(ent::partial_trace(S, models::system_partition(3)));
                    const bool analytic = models::single_noise_entangled(kappa, g, bt);
                    ++checked;
                    if (analytic == v.separable) ++bad;
                }
            }
        }
        r.pass = bad == 0 && checked > 0;
        r.detail = std::to_string(bad) + " disagreements over " + std::to_string(checked) + " points";
    });
}

/// Equal-temperature two-noise region predicate vs the determinant sign.
inline SuiteResult suite_equal_temp_region(const Options& opt) {
    return detail::timed("equal_temp_region_vs_witness", [&](SuiteResult& r) {
        const int nb = opt.quick ? 12 : 30, ng = opt.quick ? 10 : 25;
        int checked = 0, bad = 0;
        for (int a = 0; a < nb; ++a) {
            const double b = 1.02 + (2.55 - 1.02) * a / (nb - 1);
            for (int c = 0; c < ng; ++c) {
                const double g2 = 0.02 * std::pow(400.0, static_cast<double>(c) / (ng - 1));
                const double g = std::sqrt(g2);
                // dead band around the threshold curve in b
                if (std::abs(b - models::two_noise_equal_temp_threshold(g)) < 1e-3) continue;
                const auto Sred = models::two_noise_k1_closed_form({1.0, g, b, b});
                const double det = ent::det_witness(Sred);
                if (std::abs(det) < 1e-9) continue;
                const bool analytic = models::two_noise_equal_temp_region(b, g);
                ++checked;
                if (analytic != (det < 0.0)) ++bad;
            }
        }
        r.pass = bad == 0 && checked > 0;
        r.detail = std::to_string(bad) + " disagreements over " + std::to_string(checked) + " points";
    });
}

/// All kappa = 0 two-noise stationary states are separable with positive
/// determinant witness.
inline SuiteResult suite_two_noise_k0_separability(const Options& opt) {
    return detail::timed("two_noise_k0_separability", [&](SuiteResult& r) {
        const int n = opt.quick ? 5 : 10;
        int bad = 0, checked = 0;
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c) {
                    const double g = 0.1 + 3.0 * a / (n - 1);
                    const double b0 = 1.01 + 1.99 * b / (n - 1);
                    const double b3 = 1.01 + 1.99 * c / (n - 1);
                    const auto Sred = models::two_noise_k0_closed_form(g, b0, b3);
                    const auto v = ent::ppt_check(Sred);
                    ++checked;
                    if (!v.separable || !(v.det_tilde > 0.0)) ++bad;
                }
        r.pass = bad == 0;
        r.detail = std::to_string(bad) + " violations over " + std::to_string(checked) + " points";
    });
}

/// Linearity of the Lyapunov solution in the diffusion matrix, and the
/// identity solution at kappa = 0.
inline SuiteResult suite_appendix_a(const Options& opt) {
    return detail::timed("temperature_linearity", [&](SuiteResult& r) {
        std::mt19937_64 rng(opt.seed + 3);
        std::uniform_real_distribution<double> uk(-1.3, 1.3), ug(0.2, 2.0), ub(1.001, 3.0);
        const int n = opt.quick ? 15 : 50;
        double worst = 0.0;
        int done = 0;
        while (done < n) {
            const double kappa = uk(rng), g = ug(rng);
            if (!models::two_noise_stability(kappa, g)) continue;
            const double b0 = ub(rng), b3 = ub(rng);
            const auto [S1, Sd] = models::appendix_a_decomposition(kappa, g);
            const auto direct =
                stationary_covariance(models::two_noise_system({kappa, g, b0, b3})).matrix();
            const auto recon = 0.5 * (b0 + b3) * S1 + 0.5 * (b0 - b3) * Sd;
            worst = std::max(worst, (direct - recon).frobenius_norm());
            ++done;
        }
        const auto [S1k0, Sdk0] = models::appendix_a_decomposition(0.0, 1.3);
        const double id_err = (S1k0 - num::RealMatrix::identity(8)).max_abs();
        r.pass = worst <= 1e-10 && id_err <= 1e-10;
        r.detail = "worst reconstruction error " + std::to_string(worst) + ", identity error "
                 + std::to_string(id_err);
    });
}

/// Monte-Carlo positivity of the three polynomial inequalities over the
/// stated parameter region.
inline SuiteResult suite_appendix_b(const Options& opt) {
    return detail::timed("inequalities_monte_carlo", [&](SuiteResult& r) {
        std::mt19937_64 rng(opt.seed + 4);
        std::uniform_real_distribution<double> uk(-1.0, 1.0), uf(0.0, 1.0);
        std::exponential_distribution<double> ebt(1.0);
        const int n = opt.quick ? 2000 : 10000;
        int bad = 0;
        for (int i = 0; i < n; ++i) {
            double kappa = uk(rng);
            if (std::abs(kappa) < 1e-9) kappa = 0.5;
            const double bound = (1.0 - kappa * kappa) / std::abs(kappa);
            const double g = std::sqrt(std::max(uf(rng) * bound, 1e-12));
            const double bt = 1.0 + ebt(rng) + 1e-9;
            const auto rep = models::appendix_b_inequalities(kappa, g, bt);
            if (!rep.all_positive()) ++bad;
        }
        r.pass = bad == 0;
        r.detail = std::to_string(bad) + " violations over " + std::to_string(n) + " samples";
    });
}

/// Sign agreement of the three entanglement witnesses outside a shared
/// dead band: det < 0 iff min eigenvalue < 0 iff log-negativity > 0.
inline SuiteResult suite_witness_equivalence(const Options& opt) {
    return detail::timed("witness_equivalence", [&](SuiteResult& r) {
        std::mt19937_64 rng(opt.seed + 5);
        std::uniform_real_distribution<double> uk(0.05, 0.8), uf(0.05, 0.9), ub(1.001, 2.2);
        const int n = opt.quick ? 60 : 250;
        int bad = 0, checked = 0;
        for (int i = 0; i < n; ++i) {
            const double kappa = uk(rng);
            const double bound = (1.0 - kappa * kappa) / kappa;
            const models::SingleNoiseParams p{kappa, std::sqrt(uf(rng) * bound), ub(rng)};
            const auto Sred = models::single_noise_reduced_closed_form(p);
            const auto v = ent::ppt_check(Sred);
            const double db = 1e-9 * std::max(1.0, Sred.matrix().frobenius_norm());
            if (std::abs(v.det_tilde) < db || std::abs(v.min_eig_tilde) < db) continue;
            ++checked;
            const bool by_det = v.det_tilde < 0.0;
            const bool by_eig = v.min_eig_tilde < 0.0;
            const bool by_ln = v.log_negativity > db;
            if (by_det != by_eig || by_eig != by_ln) ++bad;
        }
        r.pass = bad == 0 && checked > 0;
        r.detail = std::to_string(bad) + " disagreements over " + std::to_string(checked) + " points";
    });
}

inline std::vector<SuiteResult> run_all(const Options& opt = {}) {
    return {suite_closed_form_vs_solver(opt), suite_reduced_two_path(opt),
            suite_oracle_equivalence(opt),    suite_stability_vs_spectrum(opt),
            suite_region_vs_ppt(opt),         suite_equal_temp_region(opt),
            suite_two_noise_k0_separability(opt), suite_appendix_a(opt),
            suite_appendix_b(opt),            suite_witness_equivalence(opt)};
}

inline bool all_passed(const std::vector<SuiteResult>& rs) {
    for (const auto& r : rs)
        if (!r.pass) return false;
    return true;
}

} // namespace gqms::selftest
