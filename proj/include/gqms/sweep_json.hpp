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

#include <json.hpp>

#include "gqms/sweep.hpp"

// JSON mirror of the CSV region format: an array of sample records plus a
// config echo header. Kept separate so the CSV path does not pull in the
// JSON dependency.

namespace gqms::sweep {

inline nlohmann::json config_to_json(const SweepConfig& cfg) {
    nlohmann::json j;
    j["model"] = to_string(cfg.model);
    j["dead_band"] = cfg.dead_band;
    j["axes"] = nlohmann::json::array();
    for (const auto& ax : cfg.axes)
        j["axes"].push_back({{"name", ax.name},
                             {"min", ax.min},
                             {"max", ax.max},
                             {"steps", ax.steps},
                             {"spacing", ax.log ? "log" : "linear"}});
    j["fixed"] = cfg.fixed;
    return j;
}

inline nlohmann::json sample_to_json(const RegionSample& s) {
    nlohmann::json j;
    j["coordinates"] = s.coordinates;
    j["stable"] = s.verdict.stable;
    j["entangled"] = s.verdict.entangled ? nlohmann::json(*s.verdict.entangled)
                                         : nlohmann::json(nullptr);
    if (s.verdict.witnesses) {
        j["det_tilde"] = s.verdict.witnesses->det_tilde;
        j["min_eig_tilde"] = s.verdict.witnesses->min_eig_tilde;
        j["log_negativity"] = s.verdict.witnesses->log_negativity;
    } else {
        j["det_tilde"] = nullptr;
        j["min_eig_tilde"] = nullptr;
        j["log_negativity"] = nullptr;
    }
    j["analytic_entangled"] = s.verdict.analytic_entangled
                                  ? nlohmann::json(*s.verdict.analytic_entangled)
                                  : nlohmann::json(nullptr);
    j["status"] = s.status;
    return j;
}

inline void write_json(std::ostream& os, const SweepConfig& cfg,
                       const std::vector<RegionSample>& samples) {
    nlohmann::json j;
    j["gqms_version"] = kVersion;
    j["config"] = config_to_json(cfg);
    j["samples"] = nlohmann::json::array();
    for (const auto& s : samples) j["samples"].push_back(sample_to_json(s));
    os << j.dump(2) << '\n';
}

/// Custom-generator description: d, m, complex matrices as [re, im] pair
/// arrays, optional keep/party partition for the reduction step.
inline GklsGenerator generator_from_json(const nlohmann::json& j) {
    GklsGenerator gen;
    gen.d = j.at("d").get<std::size_t>();
    gen.m = j.at("m").get<std::size_t>();
    auto cmat = [&](const char* key, std::size_t rows, std::size_t cols) {
        ComplexMatrix M(rows, cols);
        if (!j.contains(key)) return M;
        const auto& a = j.at(key);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t k = 0; k < cols; ++k) {
                const auto& cell = a.at(i).at(k);
                if (cell.is_array())
                    M(i, k) = cplx(cell.at(0).get<double>(), cell.at(1).get<double>());
                else
                    M(i, k) = cplx(cell.get<double>(), 0.0);
            }
        return M;
    };
    gen.Omega = cmat("Omega", gen.d, gen.d);
    gen.Kappa = cmat("Kappa", gen.d, gen.d);
    gen.V = cmat("V", gen.m, gen.d);
    gen.U = cmat("U", gen.m, gen.d);
    gen.zeta = ComplexVector(gen.d, cplx{});
    if (j.contains("zeta"))
        for (std::size_t i = 0; i < gen.d; ++i) {
            const auto& cell = j.at("zeta").at(i);
            gen.zeta[i] = cell.is_array() ? cplx(cell.at(0).get<double>(), cell.at(1).get<double>())
                                          : cplx(cell.get<double>(), 0.0);
        }
    gen.validate();
    return gen;
}

inline ent::PartitionSpec partition_from_json(const nlohmann::json& j, std::size_t d_total) {
    ent::PartitionSpec spec;
    spec.d_total = d_total;
    spec.keep = j.at("keep").get<std::vector<std::size_t>>();
    spec.party_A = j.at("party_A").get<std::vector<std::size_t>>();
    spec.party_B = j.at("party_B").get<std::vector<std::size_t>>();
    spec.validate();
    return spec;
}

} // namespace gqms::sweep
