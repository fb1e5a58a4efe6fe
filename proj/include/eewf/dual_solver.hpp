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

#ifndef EEWF_DUAL_SOLVER_HPP
#define EEWF_DUAL_SOLVER_HPP

#include "allocation.hpp"
#include "channel.hpp"
#include "waterfill.hpp"
#include "zones.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace eewf {

/// How the multiplier step sizes theta are chosen at every iteration.
///
/// Adaptive:    theta_n = scale * lambda_n^2 / (P_max * |active users|). For
///              scale = 1 this is a Newton step on the zone's budget residual;
///              starting below lambda* the multipliers increase monotonically.
/// Constant:    theta = scale * lambda0 / (zone budget in W).
/// Diminishing: the Constant step divided by the iteration count.
enum class StepRule { Adaptive, Constant, Diminishing };

inline std::string_view to_string(StepRule r)
{
    switch (r) {
    case StepRule::Adaptive: return "adaptive";
    case StepRule::Constant: return "constant";
    case StepRule::Diminishing: return "diminishing";
    }
    return "adaptive";
}

inline StepRule parse_step_rule(std::string_view s)
{
    if (s == "adaptive") return StepRule::Adaptive;
    if (s == "constant") return StepRule::Constant;
    if (s == "diminishing") return StepRule::Diminishing;
    throw std::invalid_argument("unknown step rule '" + std::string(s) + "'");
}

struct SolverOptions
{
    double tolerance = 1e-8;          // tau, on max |rho^(n+1) - rho^(n)|
    int max_iterations = 100000;
    StepRule step_rule = StepRule::Adaptive;
    double step_scale = 1.0;
    double feasibility_rtol = 1e-6;   // zone residual bound, relative to P_T
};

/// Multipliers and bookkeeping of one per-cluster solve.
struct DualState
{
    double lambda1 = 1.0; // Near zone
    double lambda2 = 1.0; // Far zone
    double theta1 = 0.0;  // last step used (or the fixed step for Constant/Diminishing)
    double theta2 = 0.0;
    double tolerance = 1e-8;
    int max_iterations = 100000;
    StepRule step_rule = StepRule::Adaptive;
    double step_scale = 1.0;
    double feasibility_rtol = 1e-6;
    int iterations_used = 0;
    bool converged = false;
};

struct ClusterSolution
{
    std::vector<double> rho;
    DualState dual;
};

namespace detail {

inline double inverse_sum(std::span<const double> snr, const ZonePartition &part, Zone zone)
{
    double s = 0.0;
    for (std::size_t i = 0; i < snr.size(); ++i)
        if (part.zone_of[i] == zone)
            s += 1.0 / snr[i];
    return s;
}

// Water-level estimate with every user of the zone active.
inline double initial_multiplier(std::span<const double> snr, const ZonePartition &part, Zone zone)
{
    const auto n = static_cast<double>(part.count(zone));
    if (n == 0.0)
        return 1.0;
    return n / (part.budget(zone) + inverse_sum(snr, part, zone));
}

} // namespace detail

/// Starting point lambda0 = Z_zone / (budget + sum 1/c) for both zones, with
/// fixed steps precomputed for the Constant and Diminishing rules.
inline DualState initial_dual_state(std::span<const double> snr, const ZonePartition &part,
                                    const SolverOptions &opts = {})
{
    if (snr.size() != part.size())
        throw std::invalid_argument("initial_dual_state: partition does not match users");
    DualState d;
    d.lambda1 = detail::initial_multiplier(snr, part, Zone::Near);
    d.lambda2 = detail::initial_multiplier(snr, part, Zone::Far);
    d.tolerance = opts.tolerance;
    d.max_iterations = opts.max_iterations;
    d.step_rule = opts.step_rule;
    d.step_scale = opts.step_scale;
    d.feasibility_rtol = opts.feasibility_rtol;
    if (opts.step_rule != StepRule::Adaptive) {
        const double near_w = part.near_budget * part.p_max;
        const double far_w = part.far_budget * part.p_max;
        d.theta1 = near_w > 0.0 ? opts.step_scale * d.lambda1 / near_w : 0.0;
        d.theta2 = far_w > 0.0 ? opts.step_scale * d.lambda2 / far_w : 0.0;
    }
    return d;
}

/// Iterative dual update for one cluster.
///
/// Each pass fills both zones at their current multipliers, then applies
///   lambda1 <- max(0, lambda1 - theta1 (alpha P_T - P_max sum_near rho))
///   lambda2 <- max(0, lambda2 - theta2 ((1-alpha) P_T - P_max sum_far rho)).
/// Stops once max |rho^(n+1) - rho^(n)| < tau and either both zone budgets
/// are met or the multipliers stopped moving. `converged` requires both
/// stationarity and budget feasibility. Running out of iterations, or a
/// multiplier projected onto zero, returns converged = false.
inline ClusterSolution solve_algorithm1(std::span<const double> snr, const ZonePartition &part, DualState dual)
{
    if (snr.size() != part.size())
        throw std::invalid_argument("solve_algorithm1: partition does not match users");
    for (double c : snr)
        if (!(c > 0.0))
            throw std::invalid_argument("solve_algorithm1: snr ratios must be positive");
    const bool has_near = part.count(Zone::Near) > 0;
    const bool has_far = part.count(Zone::Far) > 0;
    if ((has_near && !(dual.lambda1 > 0.0)) || (has_far && !(dual.lambda2 > 0.0)))
        throw std::invalid_argument("solve_algorithm1: initial multipliers must be positive");
    if (!(dual.tolerance > 0.0) || dual.max_iterations <= 0)
        throw std::invalid_argument("solve_algorithm1: tolerance and iteration limit must be positive");

    const std::size_t n = snr.size();
    const double p_max = part.p_max;
    const double feas_tol = dual.feasibility_rtol * part.p_transmit();
    const double fixed_theta1 = dual.theta1;
    const double fixed_theta2 = dual.theta2;

    ClusterSolution out;
    out.rho.assign(n, 0.0);
    std::vector<double> rho(n, 0.0);
    dual.converged = false;
    dual.iterations_used = 0;

    auto step = [&](double lambda, double fixed, std::size_t active, int iter) {
        switch (dual.step_rule) {
        case StepRule::Adaptive:
            return dual.step_scale * lambda * lambda / (p_max * static_cast<double>(std::max<std::size_t>(active, 1)));
        case StepRule::Constant:
            return fixed;
        case StepRule::Diminishing:
            return fixed / static_cast<double>(iter);
        }
        return fixed;
    };

    for (int iter = 1; iter <= dual.max_iterations; ++iter) {
        dual.iterations_used = iter;
        double near_sum = 0.0, far_sum = 0.0;
        std::size_t near_active = 0, far_active = 0;
        double delta = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const bool near = part.zone_of[i] == Zone::Near;
            const double lambda = near ? dual.lambda1 : dual.lambda2;
            rho[i] = std::max(0.0, 1.0 / lambda - 1.0 / snr[i]);
            delta = std::max(delta, std::abs(rho[i] - out.rho[i]));
            (near ? near_sum : far_sum) += rho[i];
            if (rho[i] > 0.0)
                ++(near ? near_active : far_active);
        }
        out.rho = rho;

        const double res1 = part.near_budget * p_max - p_max * near_sum;
        const double res2 = part.far_budget * p_max - p_max * far_sum;
        const bool feasible = std::abs(res1) <= feas_tol && std::abs(res2) <= feas_tol;

        double next1 = dual.lambda1, next2 = dual.lambda2;
        if (has_near) {
            dual.theta1 = step(dual.lambda1, fixed_theta1, near_active, iter);
            next1 = std::max(0.0, dual.lambda1 - dual.theta1 * res1);
        }
        if (has_far) {
            dual.theta2 = step(dual.lambda2, fixed_theta2, far_active, iter);
            next2 = std::max(0.0, dual.lambda2 - dual.theta2 * res2);
        }
        const bool moved = next1 != dual.lambda1 || next2 != dual.lambda2;

        if (delta < dual.tolerance && (feasible || !moved)) {
            dual.converged = feasible;
            break;
        }
        if ((has_near && next1 == 0.0) || (has_far && next2 == 0.0))
            break;
        dual.lambda1 = next1;
        dual.lambda2 = next2;
    }
    out.dual = dual;
    return out;
}

struct Algorithm1Result
{
    PowerAllocation allocation;
    std::vector<DualState> duals; // per cluster
    bool converged = true;
    int iterations = 0;           // max over clusters
};

/// Runs the per-cluster dual update on every cluster of a realization.
inline Algorithm1Result solve_algorithm1(const ChannelRealization &real, std::span<const ZonePartition> partitions,
                                         const SolverOptions &opts = {})
{
    if (partitions.size() != static_cast<std::size_t>(real.num_clusters))
        throw std::invalid_argument("solve_algorithm1: one partition per cluster required");
    Algorithm1Result res;
    res.allocation = PowerAllocation(real.num_clusters, real.users_per_cluster);
    for (int m = 0; m < real.num_clusters; ++m) {
        const auto snr = real.cluster_snr(m);
        const auto &part = partitions[static_cast<std::size_t>(m)];
        auto sol = solve_algorithm1(snr, part, initial_dual_state(snr, part, opts));
        for (int z = 0; z < real.users_per_cluster; ++z)
            res.allocation.at(m, z) = sol.rho[static_cast<std::size_t>(z)];
        res.converged = res.converged && sol.dual.converged;
        res.iterations = std::max(res.iterations, sol.dual.iterations_used);
        res.duals.push_back(sol.dual);
    }
    return res;
}

} // namespace eewf

#endif
