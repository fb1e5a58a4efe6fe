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

#ifndef EEWF_SCHEMES_HPP
#define EEWF_SCHEMES_HPP

#include "allocation.hpp"
#include "baselines.hpp"
#include "channel.hpp"
#include "config.hpp"
#include "dual_solver.hpp"
#include "zones.hpp"

#include <array>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace eewf {

enum class Scheme { ProposedZonedWaterfill, EqualSplitBaseline, SingleZoneWaterfill };

inline constexpr std::array<Scheme, 3> kAllSchemes = {
    Scheme::ProposedZonedWaterfill, Scheme::EqualSplitBaseline, Scheme::SingleZoneWaterfill};

inline std::string_view to_string(Scheme s)
{
    switch (s) {
    case Scheme::ProposedZonedWaterfill: return "proposed";
    case Scheme::EqualSplitBaseline: return "equal_split";
    case Scheme::SingleZoneWaterfill: return "single_zone";
    }
    return "proposed";
}

inline std::string_view describe(Scheme s)
{
    switch (s) {
    case Scheme::ProposedZonedWaterfill: return "zoned water-filling, iterative dual update";
    case Scheme::EqualSplitBaseline: return "proxy baseline: equal split of each zone budget";
    case Scheme::SingleZoneWaterfill: return "proxy baseline: water-filling without cell division";
    }
    return "";
}

inline Scheme parse_scheme(std::string_view s)
{
    for (auto sc : kAllSchemes)
        if (to_string(sc) == s)
            return sc;
    throw std::invalid_argument("unknown scheme '" + std::string(s) + "'");
}

struct SchemeOutcome
{
    PowerAllocation allocation;
    bool converged = true;
    int iterations = 0;
};

inline std::vector<ZonePartition> partition_clusters(const ChannelRealization &real, const SystemConfig &config)
{
    std::vector<ZonePartition> parts;
    parts.reserve(static_cast<std::size_t>(real.num_clusters));
    for (int m = 0; m < real.num_clusters; ++m)
        parts.push_back(partition_zones(real.cluster_distances(m), config.cell_radius, config.p_transmit, config.p_max));
    return parts;
}

/// Allocates every cluster's P_T with the chosen scheme.
inline SchemeOutcome allocate(const ChannelRealization &real, const SystemConfig &config, Scheme scheme,
                              const SolverOptions &opts = {})
{
    const auto parts = partition_clusters(real, config);
    SchemeOutcome out;
    if (scheme == Scheme::ProposedZonedWaterfill) {
        auto res = solve_algorithm1(real, parts, opts);
        out.allocation = std::move(res.allocation);
        out.converged = res.converged;
        out.iterations = res.iterations;
        return out;
    }
    out.allocation = PowerAllocation(real.num_clusters, real.users_per_cluster);
    for (int m = 0; m < real.num_clusters; ++m) {
        const auto rho = scheme == Scheme::EqualSplitBaseline
                             ? allocate_baseline_equal(parts[static_cast<std::size_t>(m)])
                             : allocate_baseline_single_zone(real.cluster_snr(m), config.p_transmit / config.p_max);
        for (int z = 0; z < real.users_per_cluster; ++z)
            out.allocation.at(m, z) = rho[static_cast<std::size_t>(z)];
    }
    return out;
}

} // namespace eewf

#endif
