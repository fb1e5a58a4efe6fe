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

#ifndef EEWF_ALLOCATION_HPP
#define EEWF_ALLOCATION_HPP

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace eewf {

// Slack on the total-power feasibility condition sum(rho) <= 1.
inline constexpr double kFeasibilitySlack = 1e-9;

/// Power coefficients rho, each a fraction of P_max, cluster-major like
/// ChannelRealization.
struct PowerAllocation
{
    int num_clusters = 0;
    int users_per_cluster = 0;
    std::vector<double> rho;

    PowerAllocation() = default;
    PowerAllocation(int clusters, int per_cluster)
        : num_clusters(clusters), users_per_cluster(per_cluster),
          rho(static_cast<std::size_t>(clusters * per_cluster), 0.0) {}

    double total() const { return std::accumulate(rho.begin(), rho.end(), 0.0); }

    double &at(int m, int z) { return rho[static_cast<std::size_t>(m * users_per_cluster + z)]; }
    double at(int m, int z) const { return rho[static_cast<std::size_t>(m * users_per_cluster + z)]; }
};

/// Throws std::invalid_argument on negative or non-finite entries or a
/// coefficient sum above one.
inline void check_feasible(const PowerAllocation &alloc)
{
    if (alloc.rho.size() != static_cast<std::size_t>(alloc.num_clusters * alloc.users_per_cluster))
        throw std::invalid_argument("power allocation: size does not match its cluster layout");
    for (std::size_t i = 0; i < alloc.rho.size(); ++i)
        if (!(alloc.rho[i] >= 0.0) || !std::isfinite(alloc.rho[i]))
            throw std::invalid_argument("power allocation: negative coefficient at user " + std::to_string(i));
    if (alloc.total() > 1.0 + kFeasibilitySlack)
        throw std::invalid_argument("power allocation: coefficients sum above one");
}

} // namespace eewf

#endif
