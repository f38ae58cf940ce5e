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

// Command-line surface: single-point analysis, parameter-grid sweeps and
// the built-in verification suites.
//
//   gqms analyze  --model single_noise --set kappa=0.5 --set g=0.1 --set beta_tilde=1.05
//   gqms sweep    --model two_noise_equal_temp --axis g:0.05:4:200:log --axis b:1.01:2.6:160 \
//                 --out region.csv
//   gqms selftest [--quick]
//
// Exit codes: 0 ok (an unstable point is a valid answer), 1 user error,
// 2 internal failure (including selftest suite failures).

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "gqms/selftest.hpp"
#include "gqms/sweep_json.hpp"

namespace {

using gqms::sweep::Model;
using gqms::sweep::SweepConfig;

struct CommonArgs {
    std::string model = "single_noise";
    std::vector<std::string> sets;
    std::vector<std::string> axes;
    std::string out_path;
    std::string format = "csv";
    std::string generator_file;
    int jobs = 0;
    double dead_band = 1e-3;
};

std::map<std::string, double> parse_sets(const std::vector<std::string>& sets) {
    std::map<std::string, double> fixed;
    for (const auto& s : sets) {
        const auto eq = s.find('=');
        if (eq == std::string::npos)
            throw CLI::ValidationError("--set", "expected name=value, got '" + s + "'");
        const std::string name = s.substr(0, eq);
        std::size_t pos = 0;
        const double v = std::stod(s.substr(eq + 1), &pos);
        if (pos != s.size() - eq - 1)
            throw CLI::ValidationError("--set", "bad numeric value in '" + s + "'");
        fixed[name] = v;
    }
    return fixed;
}

gqms::sweep::Axis parse_axis(const std::string& spec) {
    // name:min:max:steps[:log]
    std::vector<std::string> parts;
    std::string cur;
    for (char c : spec) {
        if (c == ':') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    if (parts.size() < 4 || parts.size() > 5)
        throw CLI::ValidationError("--axis", "expected name:min:max:steps[:log], got '" + spec + "'");
    gqms::sweep::Axis ax;
    ax.name = parts[0];
    ax.min = std::stod(parts[1]);
    ax.max = std::stod(parts[2]);
    ax.steps = std::stoi(parts[3]);
    ax.log = parts.size() == 5 && parts[4] == "log";
    if (parts.size() == 5 && parts[4] != "log" && parts[4] != "linear")
        throw CLI::ValidationError("--axis", "spacing must be 'log' or 'linear'");
    return ax;
}

SweepConfig build_config(const CommonArgs& args) {
    SweepConfig cfg;
    cfg.model = gqms::sweep::model_from_string(args.model);
    cfg.fixed = parse_sets(args.sets);
    for (const auto& a : args.axes) cfg.axes.push_back(parse_axis(a));
    cfg.dead_band = args.dead_band;
    if (cfg.model == Model::custom_generator) {
        if (args.generator_file.empty())
            throw CLI::ValidationError("--generator", "custom_generator requires --generator FILE");
        std::ifstream in(args.generator_file);
        if (!in) throw CLI::ValidationError("--generator", "cannot read " + args.generator_file);
        nlohmann::json j;
        in >> j;
        cfg.custom = gqms::sweep::generator_from_json(j);
        if (j.contains("partition"))
            cfg.custom_partition = gqms::sweep::partition_from_json(j.at("partition"), cfg.custom->d);
    }
    cfg.validate();
    return cfg;
}

void print_matrix(std::ostream& os, const std::string& label, const gqms::num::RealMatrix& M) {
    os << label << " (" << M.rows() << "x" << M.cols() << "):\n";
    for (std::size_t i = 0; i < M.rows(); ++i) {
        os << "  ";
        for (std::size_t j = 0; j < M.cols(); ++j) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "% .10g", M(i, j));
            os << buf << (j + 1 == M.cols() ? "" : "  ");
        }
        os << '\n';
    }
}

int run_analyze(const CommonArgs& args) {
    const SweepConfig cfg = build_config(args);
    if (!cfg.axes.empty()) throw CLI::ValidationError("analyze", "analyze takes no axes");

    // warn on the zero-temperature boundary
    for (const char* key : {"beta_tilde", "beta0_tilde", "beta3_tilde", "b"})
        if (cfg.fixed.count(key) && cfg.fixed.at(key) == 1.0)
            std::cerr << "warning: " << key << " = 1 is the zero-temperature limit\n";

    gqms::DriftDiffusion dd;
    switch (cfg.model) {
        case Model::single_noise:
            dd = gqms::models::single_noise_system({cfg.fixed.at("kappa"), cfg.fixed.at("g"),
                                                    cfg.fixed.at("beta_tilde")});
            break;
        case Model::two_noise:
            dd = gqms::models::two_noise_system({cfg.fixed.at("kappa"), cfg.fixed.at("g"),
                                                 cfg.fixed.at("beta0_tilde"),
                                                 cfg.fixed.at("beta3_tilde")});
            break;
        case Model::two_noise_equal_temp:
            dd = gqms::models::two_noise_system(
                {1.0, cfg.fixed.at("g"), cfg.fixed.at("b"), cfg.fixed.at("b")});
            break;
        case Model::custom_generator: dd = gqms::build_drift_diffusion(*cfg.custom); break;
    }

    std::cout << "model: " << gqms::sweep::to_string(cfg.model) << '\n';
    for (const auto& [k, v] : cfg.fixed) std::cout << "  " << k << " = " << v << '\n';
    print_matrix(std::cout, "Z (drift)", dd.Z);
    print_matrix(std::cout, "C (diffusion)", dd.C);

    const auto st = gqms::stability_check(dd.Z);
    std::cout << "drift eigenvalues:\n";
    for (const auto& ev : st.eigenvalues) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "  % .10g %+.10gi\n", ev.real(), ev.imag());
        std::cout << buf;
    }
    if (!st.stable) {
        std::cout << "verdict: unstable; no stationary state\n";
        return 0;
    }
    std::cout << "verdict: stable (max Re lambda = " << st.max_real_part << ")\n";

    const auto sample = gqms::sweep::evaluate_point(cfg, cfg.fixed);
    const auto S = gqms::stationary_covariance(dd);
    print_matrix(std::cout, "stationary covariance S", S.matrix());
    const auto validity = gqms::is_valid_covariance(S);
    std::cout << "covariance validity: " << (validity.valid ? "ok" : "VIOLATED")
              << " (min eig of S - iJ = " << validity.min_eigenvalue << ")\n";

    if (sample.verdict.witnesses) {
        const auto spec = cfg.model == Model::custom_generator && cfg.custom_partition
                              ? *cfg.custom_partition
                              : gqms::models::system_partition(dd.d);
        print_matrix(std::cout, "reduced covariance S_red",
                     gqms::ent::partial_trace(S, spec).matrix());
        const auto& w = *sample.verdict.witnesses;
        std::cout << (w.separable ? "verdict: separable" : "verdict: ENTANGLED") << '\n';
        std::cout << "  det(S~) = " << w.det_tilde << '\n'
                  << "  min eig(S~) = " << w.min_eig_tilde << '\n'
                  << "  log-negativity = " << w.log_negativity << '\n';
        if (sample.verdict.analytic_entangled)
            std::cout << "  analytic region predicate: "
                      << (*sample.verdict.analytic_entangled ? "entangled" : "separable") << '\n';
    }

    if (!args.out_path.empty()) {
        std::ofstream out(args.out_path);
        if (!out) throw CLI::ValidationError("--out", "cannot write " + args.out_path);
        if (args.format == "json")
            gqms::sweep::write_json(out, cfg, {sample});
        else
            gqms::sweep::write_csv(out, cfg, {sample});
    }
    return 0;
}

int run_sweep_cmd(const CommonArgs& args) {
    const SweepConfig cfg = build_config(args);
    const auto samples = gqms::sweep::run_sweep(cfg, args.jobs);

    std::size_t stable = 0, entangled = 0, failed = 0;
    for (const auto& s : samples) {
        if (s.status == "solver_failed") ++failed;
        if (s.verdict.stable) ++stable;
        if (s.verdict.entangled && *s.verdict.entangled) ++entangled;
    }
    std::cerr << samples.size() << " points: " << stable << " stable, " << entangled
              << " entangled, " << failed << " solver failures\n";

    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!args.out_path.empty()) {
        file.open(args.out_path);
        if (!file) throw CLI::ValidationError("--out", "cannot write " + args.out_path);
        os = &file;
    }
    if (args.format == "json")
        gqms::sweep::write_json(*os, cfg, samples);
    else
        gqms::sweep::write_csv(*os, cfg, samples);
    return 0;
}

int run_selftest(bool quick, const std::string& fault) {
    gqms::selftest::Options opt;
    opt.quick = quick;
    if (!fault.empty()) {
        int r = 0, c = 0;
        double d = 0.0;
        if (std::sscanf(fault.c_str(), "%d,%d,%lf", &r, &c, &d) != 3)
            throw CLI::ValidationError("--inject-fault", "expected row,col,delta");
        opt.inject_fault = {r, c, d};
    }
    const auto results = gqms::selftest::run_all(opt);
    std::size_t wname = 0;
    for (const auto& r : results) wname = std::max(wname, r.name.size());
    for (const auto& r : results) {
        std::cout << (r.pass ? "PASS  " : "FAIL  ") << r.name
                  << std::string(wname + 2 - r.name.size(), ' ') << "[" << r.detail << "]  ("
                  << r.seconds << " s)\n";
    }
    const bool ok = gqms::selftest::all_passed(results);
    std::cout << (ok ? "selftest: all suites passed\n" : "selftest: FAILURES\n");
    return ok ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gaussian quantum Markov semigroup toolkit: stationary covariances, "
                 "PPT entanglement verdicts and parameter-region sweeps"};
    app.set_config("--config");
    app.require_subcommand(1);

    CommonArgs args;
    bool quick = false;
    std::string fault;

    auto add_common = [&](CLI::App* cmd, bool with_axes) {
        cmd->add_option("--model", args.model,
                        "single_noise | two_noise | two_noise_equal_temp | custom_generator");
        cmd->add_option("--set", args.sets, "fixed parameter, name=value (repeatable)");
        if (with_axes)
            cmd->add_option("--axis", args.axes, "axis spec name:min:max:steps[:log] (repeatable)");
        cmd->add_option("--out", args.out_path, "output file path");
        cmd->add_option("--format", args.format, "csv | json")
            ->check(CLI::IsMember({"csv", "json"}));
        cmd->add_option("--generator", args.generator_file, "JSON file for custom_generator");
        cmd->add_option("--dead-band", args.dead_band, "boundary dead band for region flags");
    };

    CLI::App* analyze = app.add_subcommand("analyze", "analyze one parameter point");
    add_common(analyze, false);
    CLI::App* sweep = app.add_subcommand("sweep", "evaluate a parameter grid");
    add_common(sweep, true);
    sweep->add_option("--jobs", args.jobs, "worker threads (default: GQMS_JOBS or all cores)");
    CLI::App* selftest = app.add_subcommand("selftest", "run the built-in verification suites");
    selftest->add_flag("--quick", quick, "coarse grids only");
    selftest->add_option("--inject-fault", fault,
                         "test mode: perturb the stored closed form, row,col,delta")
        ->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (analyze->parsed()) return run_analyze(args);
        if (sweep->parsed()) return run_sweep_cmd(args);
        if (selftest->parsed()) return run_selftest(quick, fault);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal failure: " << e.what() << '\n';
        return 2;
    }
    return 1;
}
