// SPDX-License-Identifier: Apache-2.0
//
// eewf - energy-efficient zoned water-filling for massive MIMO downlink
// Copyright (C) 2026 The eewf authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef EEWF_IO_HPP
#define EEWF_IO_HPP

#include "config.hpp"
#include "dual_solver.hpp"
#include "error.hpp"
#include "schemes.hpp"
#include "sweep.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>

namespace eewf {

inline constexpr const char *kVersion = "0.1.0";

// ---- CSV ----------------------------------------------------------------

inline std::string format_number(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

inline const char *kCsvHeader = "variable,value,scheme,ee_mean,ee_stderr,sumrate_mean,ptx_mw_mean,iters_mean,fail_rate";

/// One row per (point, scheme), point-major. EE in Mbit/J, power in mW.
inline std::string format_csv(const SweepResult &result)
{
    if (result.spec.schemes.empty())
        throw std::invalid_argument("emit_csv: no schemes in sweep result");
    if (result.cells.size() != result.spec.values.size() * result.spec.schemes.size())
        throw std::invalid_argument("emit_csv: sweep result is incomplete");

    std::string out = kCsvHeader;
    out += '\n';
    const auto var = std::string(to_string(result.spec.variable));
    for (const auto &c : result.cells) {
        out += var;
        for (const auto &field : {format_number(c.value), std::string(to_string(c.scheme)), format_number(c.ee_mean),
                                  format_number(c.ee_stderr), format_number(c.sumrate_mean),
                                  format_number(c.ptx_mw_mean), format_number(c.iters_mean),
                                  format_number(c.fail_rate)}) {
            out += ',';
            out += field;
        }
        out += '\n';
    }
    return out;
}

inline void write_file(const std::string &path, const std::string &content)
{
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f)
        throw std::runtime_error("cannot open '" + path + "' for writing");
    f << content;
    f.close();
    if (!f)
        throw std::runtime_error("failed writing '" + path + "'");
}

/// Validates before touching the filesystem.
inline void emit_csv(const SweepResult &result, const std::string &path)
{
    write_file(path, format_csv(result));
}

// ---- JSON configuration ---------------------------------------------------
//
// One flat object. Powers are given in dBm and converted to watts here.
// Unknown keys are rejected.

namespace detail {

inline const std::set<std::string> &known_keys()
{
    static const std::set<std::string> keys = {
        "num_bs_antennas", "num_clusters", "users_per_cluster", "user_antennas", "p_max_dbm",
        "p_transmit_dbm", "p_circuit_dbm", "noise_psd", "bandwidth", "cell_radius", "min_distance",
        "path_loss_exponent", "rng_seed", "sweep_variable", "sweep_values", "trials", "schemes", "seed",
        "target_sum_rate", "threads", "tolerance", "max_iterations", "step_rule", "step_scale",
        "feasibility_rtol"};
    return keys;
}

template <class T, class F>
void read_key(const nlohmann::json &j, const char *key, F &&assign)
{
    auto it = j.find(key);
    if (it == j.end())
        return;
    try {
        assign(it->template get<T>());
    } catch (const ConfigError &) {
        throw;
    } catch (const std::exception &e) {
        throw ConfigError(key, std::string(key) + ": " + e.what());
    }
}

} // namespace detail

/// Parses a configuration document into a sweep spec. Sweep keys are optional
/// here; `validate(SweepSpec)` enforces them where a sweep is run.
inline SweepSpec parse_spec(const nlohmann::json &j)
{
    if (!j.is_object())
        throw ConfigError("", "configuration must be a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!detail::known_keys().contains(it.key()))
            throw ConfigError(it.key(), "unknown configuration key '" + it.key() + "'");

    using detail::read_key;
    SweepSpec s;
    auto &c = s.base_config;
    read_key<int>(j, "num_bs_antennas", [&](int v) { c.num_bs_antennas = v; });
    read_key<int>(j, "num_clusters", [&](int v) { c.num_clusters = v; });
    read_key<int>(j, "users_per_cluster", [&](int v) { c.users_per_cluster = v; });
    read_key<int>(j, "user_antennas", [&](int v) { c.user_antennas = v; });
    read_key<double>(j, "p_max_dbm", [&](double v) { c.p_max = dbm_to_watt(v); });
    read_key<double>(j, "p_transmit_dbm", [&](double v) { c.p_transmit = dbm_to_watt(v); });
    read_key<double>(j, "p_circuit_dbm", [&](double v) { c.p_circuit = dbm_to_watt(v); });
    read_key<double>(j, "noise_psd", [&](double v) { c.noise_psd = v; });
    read_key<double>(j, "bandwidth", [&](double v) { c.bandwidth = v; });
    read_key<double>(j, "cell_radius", [&](double v) { c.cell_radius = v; });
    read_key<double>(j, "min_distance", [&](double v) { c.min_distance = v; });
    read_key<double>(j, "path_loss_exponent", [&](double v) { c.path_loss_exponent = v; });
    read_key<std::uint64_t>(j, "rng_seed", [&](std::uint64_t v) { c.rng_seed = v; });

    read_key<std::string>(j, "sweep_variable", [&](const std::string &v) {
        try {
            s.variable = parse_sweep_variable(v);
        } catch (const std::invalid_argument &e) {
            throw ConfigError("sweep_variable", std::string("sweep_variable: ") + e.what());
        }
    });
    read_key<std::vector<double>>(j, "sweep_values", [&](std::vector<double> v) { s.values = std::move(v); });
    read_key<int>(j, "trials", [&](int v) { s.trials = v; });
    read_key<std::vector<std::string>>(j, "schemes", [&](const std::vector<std::string> &v) {
        s.schemes.clear();
        for (const auto &name : v) {
            try {
                s.schemes.push_back(parse_scheme(name));
            } catch (const std::invalid_argument &e) {
                throw ConfigError("schemes", std::string("schemes: ") + e.what());
            }
        }
    });
    read_key<std::uint64_t>(j, "seed", [&](std::uint64_t v) { s.seed = v; });
    read_key<double>(j, "target_sum_rate", [&](double v) { s.target_sum_rate = v; });
    read_key<int>(j, "threads", [&](int v) { s.threads = v; });
    read_key<double>(j, "tolerance", [&](double v) { s.solver.tolerance = v; });
    read_key<int>(j, "max_iterations", [&](int v) { s.solver.max_iterations = v; });
    read_key<std::string>(j, "step_rule", [&](const std::string &v) {
        try {
            s.solver.step_rule = parse_step_rule(v);
        } catch (const std::invalid_argument &e) {
            throw ConfigError("step_rule", std::string("step_rule: ") + e.what());
        }
    });
    read_key<double>(j, "step_scale", [&](double v) { s.solver.step_scale = v; });
    read_key<double>(j, "feasibility_rtol", [&](double v) { s.solver.feasibility_rtol = v; });

    if (!(s.solver.tolerance > 0.0))
        throw ConfigError("tolerance", "tolerance: must be positive");
    if (s.solver.max_iterations < 1)
        throw ConfigError("max_iterations", "max_iterations: must be positive");
    if (!(s.solver.feasibility_rtol > 0.0))
        throw ConfigError("feasibility_rtol", "feasibility_rtol: must be positive");
    validate(s.base_config);
    return s;
}

inline SweepSpec load_spec(const std::string &path)
{
    std::ifstream f(path);
    if (!f)
        throw std::runtime_error("cannot open configuration '" + path + "'");
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(f);
    } catch (const nlohmann::json::parse_error &e) {
        throw ConfigError("", std::string("malformed configuration: ") + e.what());
    }
    return parse_spec(j);
}

/// Flat echo of a spec in the same key set `parse_spec` accepts.
inline nlohmann::json to_json(const SweepSpec &s)
{
    const auto &c = s.base_config;
    nlohmann::json j = {
        {"num_bs_antennas", c.num_bs_antennas},
        {"num_clusters", c.num_clusters},
        {"users_per_cluster", c.users_per_cluster},
        {"user_antennas", c.user_antennas},
        {"p_max_dbm", watt_to_dbm(c.p_max)},
        {"p_transmit_dbm", watt_to_dbm(c.p_transmit)},
        {"p_circuit_dbm", watt_to_dbm(c.p_circuit)},
        {"noise_psd", c.noise_psd},
        {"bandwidth", c.bandwidth},
        {"cell_radius", c.cell_radius},
        {"min_distance", c.min_distance},
        {"path_loss_exponent", c.path_loss_exponent},
        {"rng_seed", c.rng_seed},
        {"sweep_variable", std::string(to_string(s.variable))},
        {"sweep_values", s.values},
        {"trials", s.trials},
        {"seed", s.seed},
        {"threads", s.threads},
        {"tolerance", s.solver.tolerance},
        {"max_iterations", s.solver.max_iterations},
        {"step_rule", std::string(to_string(s.solver.step_rule))},
        {"step_scale", s.solver.step_scale},
        {"feasibility_rtol", s.solver.feasibility_rtol},
    };
    auto schemes = nlohmann::json::array();
    for (auto sc : s.schemes)
        schemes.push_back(std::string(to_string(sc)));
    j["schemes"] = schemes;
    if (s.target_sum_rate)
        j["target_sum_rate"] = *s.target_sum_rate;
    return j;
}

/// Equality up to the dBm <-> W conversion of the power fields.
inline bool equivalent(const SweepSpec &a, const SweepSpec &b, double rtol = 1e-12)
{
    auto close = [rtol](double x, double y) { return std::abs(x - y) <= rtol * std::max(std::abs(x), std::abs(y)); };
    SweepSpec bb = b;
    if (!close(a.base_config.p_max, b.base_config.p_max) || !close(a.base_config.p_transmit, b.base_config.p_transmit) ||
        !close(a.base_config.p_circuit, b.base_config.p_circuit))
        return false;
    bb.base_config.p_max = a.base_config.p_max;
    bb.base_config.p_transmit = a.base_config.p_transmit;
    bb.base_config.p_circuit = a.base_config.p_circuit;
    return a == bb;
}

/// Run metadata written next to each CSV.
inline nlohmann::json metadata_json(const SweepSpec &spec, double wall_clock_seconds)
{
    nlohmann::json schemes = nlohmann::json::object();
    for (auto sc : spec.schemes)
        schemes[std::string(to_string(sc))] = std::string(describe(sc));
    nlohmann::json notes = nlohmann::json::array({
        "EE in Mbit/J (bandwidth x sum rate over circuit plus transmit power); power in mW.",
        "Absolute values depend on unstated scenario parameters; only orderings and trends are meaningful.",
        "Baselines other than 'proposed' are proxies, not the published comparison algorithm.",
        "Channel seeds depend on (seed, trial) only; all sweep points of a trial share one user drop.",
    });
    if (spec.variable == SweepVariable::AntennaCount)
        notes.push_back("Antenna sweep: the number of served clusters is held at num_clusters while the array grows.");
    if (spec.target_sum_rate)
        notes.push_back("Transmit power is the minimum per-cluster P_T reaching target_sum_rate (bisection).");
    return {
        {"software", "eewf"},
        {"version", kVersion},
        {"wall_clock_seconds", wall_clock_seconds},
        {"spec", to_json(spec)},
        {"schemes", schemes},
        {"notes", notes},
    };
}

} // namespace eewf

#endif
