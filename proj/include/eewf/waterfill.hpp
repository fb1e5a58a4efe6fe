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

#ifndef EEWF_WATERFILL_HPP
#define EEWF_WATERFILL_HPP

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

namespace eewf {

/// rho_z = (1/lambda - 1/c_z)^+ for every user.
inline std::vector<double> waterfill_closed_form(std::span<const double> snr, double lambda)
{
    if (!(lambda > 0.0))
        throw std::invalid_argument("waterfill_closed_form: lambda must be positive");
    std::vector<double> rho(snr.size());
    for (std::size_t i = 0; i < snr.size(); ++i) {
        if (!(snr[i] > 0.0))
            throw std::invalid_argument("waterfill_closed_form: snr ratios must be positive");
        rho[i] = std::max(0.0, 1.0 / lambda - 1.0 / snr[i]);
    }
    return rho;
}

struct WaterfillResult
{
    std::vector<double> allocation;
    double water_level = 0.0; // 1/lambda*
};

/// Exact solution of max sum log2(1 + rho_z c_z) s.t. sum rho = budget, rho >= 0.
///
/// Active-set search over users sorted by decreasing c: the k strongest are
/// active iff the level (budget + sum_{i<k} 1/c_i) / k clears 1/c_k.
/// For a zero budget the reported level is 1/max(c), the activation threshold.
inline WaterfillResult waterfill_exact(std::span<const double> snr, double budget)
{
    if (!(budget >= 0.0) || !std::isfinite(budget))
        throw std::invalid_argument("waterfill_exact: budget must be nonnegative");
    for (double c : snr)
        if (!(c > 0.0))
            throw std::invalid_argument("waterfill_exact: snr ratios must be positive");

    WaterfillResult out;
    out.allocation.assign(snr.size(), 0.0);
    if (snr.empty())
        return out;

    std::vector<double> inv(snr.size());
    std::transform(snr.begin(), snr.end(), inv.begin(), [](double c) { return 1.0 / c; });
    std::vector<double> sorted_inv = inv;
    std::sort(sorted_inv.begin(), sorted_inv.end());

    if (budget == 0.0) {
        out.water_level = sorted_inv.front();
        return out;
    }

    double prefix = std::accumulate(sorted_inv.begin(), sorted_inv.end(), 0.0);
    double level = 0.0;
    for (std::size_t k = sorted_inv.size(); k >= 1; --k) {
        level = (budget + prefix) / static_cast<double>(k);
        if (level > sorted_inv[k - 1])
            break;
        prefix -= sorted_inv[k - 1];
    }
    out.water_level = level;
    for (std::size_t i = 0; i < inv.size(); ++i)
        out.allocation[i] = std::max(0.0, level - inv[i]);
    return out;
}

/// Spectral-efficiency objective sum log2(1 + rho_z c_z), interference ignored.
inline double sum_log_objective(std::span<const double> snr, std::span<const double> rho)
{
    if (snr.size() != rho.size())
        throw std::invalid_argument("sum_log_objective: size mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i < snr.size(); ++i)
        acc += std::log2(1.0 + rho[i] * snr[i]);
    return acc;
}

} // namespace eewf

#endif
