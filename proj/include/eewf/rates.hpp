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

#ifndef EEWF_RATES_HPP
#define EEWF_RATES_HPP

#include "allocation.hpp"
#include "channel.hpp"
#include "config.hpp"

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

namespace eewf {

struct RateReport
{
    std::vector<double> per_user_rates; // bit/s/Hz
    double sum_rate = 0.0;              // bit/s/Hz
    double energy_efficiency = 0.0;     // bit/J
    double total_transmit_power = 0.0;  // W
};

/// Rate of user z of a cluster under successive interference cancellation:
/// every stronger user j < z stays as interference.
///
/// `snr` holds zeta * gain per user in decoding order.
inline std::vector<double> cluster_rates(std::span<const double> snr, std::span<const double> rho)
{
    std::vector<double> rates(snr.size());
    double stronger = 0.0;
    for (std::size_t z = 0; z < snr.size(); ++z) {
        const double sinr = snr[z] * rho[z] / (1.0 + snr[z] * stronger);
        rates[z] = std::log2(1.0 + sinr);
        stronger += rho[z];
    }
    return rates;
}

/// EE = B * sum_rate / (P_c + P_max * sum(rho)), in bit/J.
inline double energy_efficiency(double sum_rate, double transmit_power, const SystemConfig &config)
{
    return config.bandwidth * sum_rate / (config.p_circuit + transmit_power);
}

inline RateReport compute_rates(const ChannelRealization &real, const PowerAllocation &alloc,
                                const SystemConfig &config)
{
    if (alloc.num_clusters != real.num_clusters || alloc.users_per_cluster != real.users_per_cluster)
        throw std::invalid_argument("compute_rates: allocation does not match realization dimensions");
    check_feasible(alloc);

    RateReport report;
    report.per_user_rates.reserve(alloc.rho.size());
    const std::span<const double> rho(alloc.rho);
    for (int m = 0; m < real.num_clusters; ++m) {
        const auto r = cluster_rates(real.cluster_snr(m),
                                     rho.subspan(real.index(m, 0), static_cast<std::size_t>(real.users_per_cluster)));
        report.per_user_rates.insert(report.per_user_rates.end(), r.begin(), r.end());
    }
    for (double r : report.per_user_rates)
        report.sum_rate += r;
    report.total_transmit_power = config.p_max * alloc.total();
    report.energy_efficiency = energy_efficiency(report.sum_rate, report.total_transmit_power, config);
    return report;
}

} // namespace eewf

#endif
