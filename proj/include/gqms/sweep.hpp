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

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

#include "gqms/models.hpp"

// Parameter-grid sweeps over the model families, evaluated in parallel
// with deterministic row-major ordering, and the CSV/JSON region formats.

namespace gqms::sweep {

inline constexpr const char* kVersion = "0.1.0";

enum class Model { single_noise, two_noise, two_noise_equal_temp, custom_generator };

inline std::string to_string(Model m) {
    switch (m) {
        case Model::single_noise: return "single_noise";
        case Model::two_noise: return "two_noise";
        case Model::two_noise_equal_temp: return "two_noise_equal_temp";
        case Model::custom_generator: return "custom_generator";
    }
    return "?";
}
inline Model model_from_string(const std::string& s) {
    if (s == "single_noise") return Model::single_noise;
    if (s == "two_noise") return Model::two_noise;
    if (s == "two_noise_equal_temp") return Model::two_noise_equal_temp;
    if (s == "custom_generator") return Model::custom_generator;
    throw std::invalid_argument("unknown model '" + s + "'");
}

inline std::vector<std::string> model_parameters(Model m) {
    switch (m) {
        case Model::single_noise: return {"kappa", "g", "beta_tilde"};
        case Model::two_noise: return {"kappa", "g", "beta0_tilde", "beta3_tilde"};
        case Model::two_noise_equal_temp: return {"g", "b"};
        case Model::custom_generator: return {};
    }
    return {};
}

struct Axis {
    std::string name;
    double min = 0.0, max = 0.0;
    int steps = 0;
    bool log = false;

    double value(int i) const {
        if (steps == 1) return min;
        const double f = static_cast<double>(i) / (steps - 1);
        if (log) return min * std::pow(max / min, f);
        return min + f * (max - min);
    }
};

struct OutputFlags {
    bool stability = true;
    bool ppt = true;
    bool det_witness = true;
    bool log_negativity = true;
    bool analytic_region = true;
};

struct SweepConfig {
    Model model = Model::single_noise;
    std::vector<Axis> axes;                  // 0 (single point) to 3
    std::map<std::string, double> fixed;     // remaining parameters
    OutputFlags outputs;
    double dead_band = 1e-3;
    std::optional<GklsGenerator> custom;     // custom_generator only
    std::optional<ent::PartitionSpec> custom_partition;

    void validate() const {
        if (axes.size() > 3) throw std::invalid_argument("config: at most 3 axes");
        const auto names = model_parameters(model);
        auto known = [&](const std::string& n) {
            for (const auto& k : names)
                if (k == n) return true;
            return false;
        };
        std::vector<std::string> seen;
        for (const auto& ax : axes) {
            if (model == Model::custom_generator)
                throw std::invalid_argument("config: custom_generator does not support axes");
            if (!known(ax.name))
                throw std::invalid_argument("config: '" + ax.name + "' is not a parameter of "
                                            + to_string(model));
            for (const auto& s : seen)
                if (s == ax.name) throw std::invalid_argument("config: duplicate axis " + ax.name);
            seen.push_back(ax.name);
            if (fixed.count(ax.name))
                throw std::invalid_argument("config: '" + ax.name + "' is both axis and fixed");
            if (ax.steps < 2) throw std::invalid_argument("config: axis steps must be >= 2");
            if (!(ax.min < ax.max)) throw std::invalid_argument("config: axis needs min < max");
            if (ax.log && !(ax.min > 0.0))
                throw std::invalid_argument("config: log axis needs min > 0");
            if (ax.name == "g" && ax.min <= 0.0 && ax.max >= 0.0)
                throw std::invalid_argument("config: g axis must not cross 0");
            if ((ax.name == "beta_tilde" || ax.name == "beta0_tilde" || ax.name == "beta3_tilde")
                && ax.min < 1.0)
                throw std::invalid_argument("config: temperature axis needs min >= 1");
            if (ax.name == "b" && !(ax.min > 1.0))
                throw std::invalid_argument("config: b axis needs min > 1");
        }
        for (const auto& [k, v] : fixed) {
            (void)v;
            if (!known(k))
                throw std::invalid_argument("config: fixed parameter '" + k
                                            + "' is not a parameter of " + to_string(model));
        }
        // every model parameter must be either an axis or fixed
        for (const auto& n : names) {
            bool on_axis = false;
            for (const auto& ax : axes)
                if (ax.name == n) on_axis = true;
            if (!on_axis && !fixed.count(n))
                throw std::invalid_argument("config: parameter '" + n + "' is neither axis nor fixed");
        }
        if (model == Model::custom_generator) {
            if (!custom) throw std::invalid_argument("config: custom_generator needs generator data");
            custom->validate();
        }
        if (!(dead_band >= 0.0)) throw std::invalid_argument("config: dead_band must be >= 0");
    }

    std::size_t point_count() const {
        std::size_t n = 1;
        for (const auto& ax : axes) n *= static_cast<std::size_t>(ax.steps);
        return n;
    }
};

struct RegionSample {
    std::map<std::string, double> coordinates;
    models::RegionVerdict verdict;
    std::string status; // ok | unstable | solver_failed
};

namespace detail {

inline RegionSample evaluate_model_point(const SweepConfig& cfg,
                                         std::map<std::string, double> coords) {
    RegionSample out;
    out.coordinates = std::move(coords);
    auto param = [&](const char* n) { return out.coordinates.at(n); };

    DriftDiffusion dd;
    std::size_t d_total = 0;
    try {
        switch (cfg.model) {
            case Model::single_noise: {
                const models::SingleNoiseParams p{param("kappa"), param("g"), param("beta_tilde")};
                dd = models::single_noise_system(p);
                d_total = 3;
                if (cfg.outputs.analytic_region)
                    out.verdict.analytic_entangled =
                        models::single_noise_entangled(p.kappa, p.g, p.beta_tilde);
                break;
            }
            case Model::two_noise: {
                const models::TwoNoiseParams p{param("kappa"), param("g"), param("beta0_tilde"),
                                               param("beta3_tilde")};
                dd = models::two_noise_system(p);
                d_total = 4;
                if (cfg.outputs.analytic_region) {
                    if (p.kappa == 0.0)
                        out.verdict.analytic_entangled = false; // separable for all parameters
                    else if (p.kappa == 1.0 && p.beta0_tilde == p.beta3_tilde
                             && p.beta0_tilde > 1.0)
                        out.verdict.analytic_entangled =
                            models::two_noise_equal_temp_region(p.beta0_tilde, p.g);
                }
                break;
            }
            case Model::two_noise_equal_temp: {
                const double b = param("b"), g = param("g");
                const models::TwoNoiseParams p{1.0, g, b, b};
                dd = models::two_noise_system(p);
                d_total = 4;
                if (cfg.outputs.analytic_region && b > 1.0)
                    out.verdict.analytic_entangled = models::two_noise_equal_temp_region(b, g);
                break;
            }
            case Model::custom_generator: {
                dd = build_drift_diffusion(*cfg.custom);
                d_total = cfg.custom->d;
                break;
            }
        }
    } catch (const std::exception&) {
        out.status = "solver_failed";
        return out;
    }

    try {
        const CovarianceMatrix S = stationary_covariance(dd);
        out.verdict.stable = true;
        if (cfg.outputs.ppt || cfg.outputs.det_witness || cfg.outputs.log_negativity) {
            ent::PartitionSpec spec = cfg.model == Model::custom_generator && cfg.custom_partition
                                          ? *cfg.custom_partition
                                          : models::system_partition(d_total);
            if (spec.keep.size() == 2) {
                const CovarianceMatrix Sred = ent::partial_trace(S, spec);
                const ent::EntanglementVerdict v = ent::ppt_check(Sred);
                out.verdict.witnesses = v;
                out.verdict.entangled = !v.separable;
            }
        }
        out.status = "ok";
    } catch (const NoStationaryState&) {
        out.verdict.stable = false;
        out.status = "unstable";
    } catch (const std::exception&) {
        out.status = "solver_failed";
    }
    return out;
}

} // namespace detail

/// Evaluate one parameter point (also the analyze back end).
inline RegionSample evaluate_point(const SweepConfig& cfg, std::map<std::string, double> coords) {
    return detail::evaluate_model_point(cfg, std::move(coords));
}

inline int default_jobs() {
    if (const char* env = std::getenv("GQMS_JOBS")) {
        const int j = std::atoi(env);
        if (j > 0) return j;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

/// Row-major grid evaluation. Grid points are independent tasks claimed
/// from an atomic counter; results land in pre-indexed slots, so the
/// output order never depends on scheduling.
inline std::vector<RegionSample> run_sweep(const SweepConfig& cfg, int jobs = 0) {
    cfg.validate();
    if (jobs <= 0) jobs = default_jobs();
    const std::size_t total = cfg.point_count();
    std::vector<RegionSample> results(total);

    auto coords_of = [&](std::size_t idx) {
        std::map<std::string, double> c = cfg.fixed;
        std::size_t rem = idx;
        for (std::size_t a = cfg.axes.size(); a-- > 0;) {
            const auto& ax = cfg.axes[a];
            const std::size_t n = static_cast<std::size_t>(ax.steps);
            c[ax.name] = ax.value(static_cast<int>(rem % n));
            rem /= n;
        }
        return c;
    };

    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= total) break;
            results[i] = detail::evaluate_model_point(cfg, coords_of(i));
        }
    };
    if (jobs == 1 || total < 2) {
        worker();
    } else {
        std::vector<std::thread> pool;
        const int nthreads = static_cast<int>(std::min<std::size_t>(jobs, total));
        pool.reserve(nthreads);
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return results;
}

namespace detail {

inline std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

} // namespace detail

/// CSV schema: <axis names...>, stable, entangled, det_tilde,
/// min_eig_tilde, log_negativity, analytic_entangled, status.
/// Absent values are empty cells; NaN is never emitted.
inline void write_csv(std::ostream& os, const SweepConfig& cfg,
                      const std::vector<RegionSample>& samples) {
    for (const auto& ax : cfg.axes) os << ax.name << ',';
    os << "stable,entangled,det_tilde,min_eig_tilde,log_negativity,analytic_entangled,status\n";
    for (const auto& s : samples) {
        for (const auto& ax : cfg.axes) os << detail::fmt17(s.coordinates.at(ax.name)) << ',';
        os << (s.verdict.stable ? '1' : '0') << ',';
        if (s.verdict.entangled) os << (*s.verdict.entangled ? '1' : '0');
        os << ',';
        const auto& w = s.verdict.witnesses;
        auto num_cell = [&](double v, bool present) {
            if (present && std::isfinite(v)) os << detail::fmt17(v);
        };
        num_cell(w ? w->det_tilde : 0.0, w.has_value());
        os << ',';
        num_cell(w ? w->min_eig_tilde : 0.0, w.has_value());
        os << ',';
        num_cell(w ? w->log_negativity : 0.0, w.has_value());
        os << ',';
        if (s.verdict.analytic_entangled) os << (*s.verdict.analytic_entangled ? '1' : '0');
        os << ',' << s.status << '\n';
    }
}

struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

inline CsvTable parse_csv(std::istream& is) {
    CsvTable t;
    std::string line;
    auto split = [](const std::string& l) {
        std::vector<std::string> cells;
        std::string cur;
        for (char ch : l) {
            if (ch == ',') {
                cells.push_back(cur);
                cur.clear();
            } else {
                cur += ch;
            }
        }
        cells.push_back(cur);
        return cells;
    };
    if (std::getline(is, line)) t.columns = split(line);
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        t.rows.push_back(split(line));
    }
    return t;
}

} // namespace gqms::sweep
