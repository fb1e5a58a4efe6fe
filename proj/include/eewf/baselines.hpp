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

#ifndef EEWF_BASELINES_HPP
#define EEWF_BASELINES_HPP

#include "waterfill.hpp"
#include "zones.hpp"

#include <span>
#include <vector>

namespace eewf {

// Reference allocators. The equal split keeps the zone budgets but ignores
// channel quality; the single-zone variant water-fills without cell division.

inline std::vector<double> allocate_baseline_equal(const ZonePartition &part)
{
    const auto near_n = static_cast<double>(part.count(Zone::Near));
    const auto far_n = static_cast<double>(part.count(Zone::Far));
    std::vector<double> rho(part.size(), 0.0);
    for (std::size_t i = 0; i < rho.size(); ++i)
        rho[i] = part.zone_of[i] == Zone::Near ? part.near_budget / near_n : part.far_budget / far_n;
    return rho;
}

inline std::vector<double> allocate_baseline_single_zone(std::span<const double> snr, double total_budget)
{
    return waterfill_exact(snr, total_budget).allocation;
}

} // namespace eewf

#endif
