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

#ifndef EEWF_ZONES_HPP
#define EEWF_ZONES_HPP

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace eewf {

enum class Zone { Near, Far };

/// Split of one cluster's users into a Near zone (d <= D/2) and a Far zone,
/// with per-zone budgets expressed as fractions of P_max.
struct ZonePartition
{
    std::vector<Zone> zone_of;
    double alpha = 0.0;       // Near share of the flexible power
    double near_budget = 0.0; // alpha * P_T / P_max
    double far_budget = 0.0;  // (1 - alpha) * P_T / P_max
    double p_max = 1.0;       // W, converts coefficients to watts

    std::size_t size() const { return zone_of.size(); }
    double budget(Zone z) const { return z == Zone::Near ? near_budget : far_budget; }
    double p_transmit() const { return (near_budget + far_budget) * p_max; }

    std::size_t count(Zone z) const
    {
        std::size_t n = 0;
        for (auto zz : zone_of)
            n += zz == z;
        return n;
    }
};

/// alpha is the Near users' share of the summed squared distances. A user at
/// exactly D/2 counts as Near. An empty zone gets a zero budget and the other
/// zone the whole P_T.
inline ZonePartition partition_zones(std::span<const double> distances, double cell_radius,
                                     double p_transmit, double p_max)
{
    if (distances.empty())
        throw std::invalid_argument("partition_zones: empty user list");
    if (!(cell_radius > 0.0))
        throw std::invalid_argument("partition_zones: cell radius must be positive");
    if (!(p_max > 0.0) || !(p_transmit >= 0.0))
        throw std::invalid_argument("partition_zones: invalid power budget");

    ZonePartition part;
    part.p_max = p_max;
    part.zone_of.reserve(distances.size());
    double near_sq = 0.0;
    double all_sq = 0.0;
    for (std::size_t i = 0; i < distances.size(); ++i) {
        const double d = distances[i];
        if (!(d > 0.0) || d > cell_radius)
            throw std::invalid_argument("partition_zones: distance of user " + std::to_string(i) +
                                        " outside (0, cell_radius]");
        const Zone z = d <= 0.5 * cell_radius ? Zone::Near : Zone::Far;
        part.zone_of.push_back(z);
        all_sq += d * d;
        if (z == Zone::Near)
            near_sq += d * d;
    }
    part.alpha = near_sq / all_sq;
    const double total = p_transmit / p_max;
    part.near_budget = part.alpha * total;
    part.far_budget = total - part.near_budget;
    return part;
}

} // namespace eewf

#endif
