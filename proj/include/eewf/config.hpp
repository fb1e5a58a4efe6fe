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

#ifndef EEWF_CONFIG_HPP
#define EEWF_CONFIG_HPP

#include "error.hpp"

#include <cmath>
#include <cstdint>
#include <string>

namespace eewf {

inline double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
inline double watt_to_dbm(double watt) { return 10.0 * std::log10(watt) + 30.0; }

/// Scenario parameters for one single-cell downlink deployment.
///
/// Powers are stored in watts. The configuration file boundary takes them in
/// dBm (see io.hpp). `num_bs_antennas` is the array size M and `num_clusters`
/// the number of simultaneously served NOMA clusters (at most M).
struct SystemConfig
{
    int num_bs_antennas = 128;
    int num_clusters = 4;
    int users_per_cluster = 3;
    int user_antennas = 2;
    double p_max = 1.0;                    // W, total BS transmission power
    double p_transmit = dbm_to_watt(10.0); // W, flexible budget per cluster
    double p_circuit = dbm_to_watt(4.0);   // W
    double noise_psd = -175.0;             // dBm/Hz
    double bandwidth = 120e3;              // Hz
    double cell_radius = 1000.0;           // m
    double min_distance = 50.0;            // m
    double path_loss_exponent = 3.8;
    std::uint64_t rng_seed = 1;

    int num_users() const { return num_clusters * users_per_cluster; }

    /// σ² in watts over the resource block.
    double noise_power() const { return dbm_to_watt(noise_psd) * bandwidth; }

    /// Transmit SNR ζ = P_max / σ².
    double transmit_snr() const { return p_max / noise_power(); }

    bool operator==(const SystemConfig &) const = default;
};

/// Throws ConfigError naming the first violated field.
inline void validate(const SystemConfig &c)
{
    auto require = [](bool ok, const char *key, const std::string &msg) {
        if (!ok)
            throw ConfigError(key, std::string(key) + ": " + msg);
    };
    require(c.num_bs_antennas > 0, "num_bs_antennas", "must be positive");
    require(c.num_clusters > 0, "num_clusters", "must be positive");
    require(c.users_per_cluster > 0, "users_per_cluster", "must be positive");
    require(c.user_antennas > 0, "user_antennas", "must be positive");
    require(c.p_max > 0 && std::isfinite(c.p_max), "p_max", "must be positive");
    require(c.p_transmit > 0 && std::isfinite(c.p_transmit), "p_transmit", "must be positive");
    require(c.p_transmit <= c.p_max, "p_transmit", "must not exceed p_max");
    // Every cluster receives its own P_T; the coefficients over all clusters sum to at most one.
    require(c.num_clusters * c.p_transmit <= c.p_max * (1.0 + 1e-12), "p_transmit",
            "num_clusters * p_transmit must not exceed p_max");
    require(c.p_circuit > 0 && std::isfinite(c.p_circuit), "p_circuit", "must be positive");
    require(c.bandwidth > 0 && std::isfinite(c.bandwidth), "bandwidth", "must be positive");
    require(std::isfinite(c.noise_psd) && c.noise_power() > 0, "noise_psd",
            "noise power must be positive");
    require(c.cell_radius > 0 && std::isfinite(c.cell_radius), "cell_radius", "must be positive");
    require(c.min_distance > 0, "min_distance", "must be positive");
    require(c.min_distance < c.cell_radius, "min_distance", "must be below cell_radius");
    require(c.path_loss_exponent >= 0 && std::isfinite(c.path_loss_exponent),
            "path_loss_exponent", "must be nonnegative");
}

} // namespace eewf

#endif
