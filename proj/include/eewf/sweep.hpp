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

#ifndef EEWF_SWEEP_HPP
#define EEWF_SWEEP_HPP

#include "channel.hpp"
#include "config.hpp"
#include "dual_solver.hpp"
#include "rates.hpp"
#include "schemes.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

namespace eewf {

enum class SweepVariable { AntennaCount, CircuitPower };

inline std::string_view to_string(SweepVariable v)
{
    return v == SweepVariable::AntennaCount ? "antennas" : "p_circuit_dbm";
}

inline SweepVariable parse_sweep_variable(std::string_view s)
{
    if (s == "antennas") return SweepVariable::AntennaCount;
    if (s == "p_circuit_dbm") return SweepVariable::CircuitPower;
    throw std::invalid_argument("unknown sweep variable '" + std::string(s) + "'");
}

/// Monte Carlo sweep over antenna count (integers) or circuit power (dBm).
///
/// With `target_sum_rate` set, every scheme is run at the smallest per-cluster
/// P_T (up to the configured one) whose allocation reaches that sum rate,
/// which makes the transmit power itself the reported quantity.
struct SweepSpec
{
    SweepVariable variable = SweepVariable::AntennaCount;
    std::vector<double> values;
    int trials = 500;
    std::vector<Scheme> schemes{kAllSchemes.begin(), kAllSchemes.end()};
    SystemConfig base_config;
    std::uint64_t seed = 1;
    std::optional<double> target_sum_rate; // bit/s/Hz over all clusters
    SolverOptions solver;
    int threads = 0; // 0: hardware concurrency

    bool operator==(const SweepSpec &o) const
    {
        return variable == o.variable && values == o.values && trials == o.trials && schemes == o.schemes &&
               base_config == o.base_config && seed == o.seed && target_sum_rate == o.target_sum_rate &&
               solver.tolerance == o.solver.tolerance && solver.max_iterations == o.solver.max_iterations &&
               solver.step_rule == o.solver.step_rule && solver.step_scale == o.solver.step_scale &&
               solver.feasibility_rtol == o.solver.feasibility_rtol && threads == o.threads;
    }
};

inline void validate(const SweepSpec &spec)
{
    if (spec.values.empty())
        throw ConfigError("sweep_values", "sweep_values: must not be empty");
    for (std::size_t i = 1; i < spec.values.size(); ++i)
        if (!(spec.values[i] > spec.values[i - 1]))
            throw ConfigError("sweep_values", "sweep_values: must be strictly increasing");
    if (spec.variable == SweepVariable::AntennaCount)
        for (double v : spec.values)
            if (!(v >= 1.0) || std::floor(v) != v)
                throw ConfigError("sweep_values", "sweep_values: antenna counts must be positive integers");
    if (spec.trials < 1)
        throw ConfigError("trials", "trials: must be at least 1");
    if (spec.schemes.empty())
        throw ConfigError("schemes", "schemes: at least one scheme required");
    for (std::size_t i = 0; i < spec.schemes.size(); ++i)
        for (std::size_t j = i + 1; j < spec.schemes.size(); ++j)
            if (spec.schemes[i] == spec.schemes[j])
                throw ConfigError("schemes", "schemes: duplicate entry");
    if (spec.target_sum_rate && !(*spec.target_sum_rate > 0.0))
        throw ConfigError("target_sum_rate", "target_sum_rate: must be positive");
    if (spec.threads < 0)
        throw ConfigError("threads", "threads: must be nonnegative");
    validate(spec.base_config);
}

inline SystemConfig config_at(const SweepSpec &spec, std::size_t point)
{
    SystemConfig c = spec.base_config;
    if (spec.variable == SweepVariable::AntennaCount)
        c.num_bs_antennas = static_cast<int>(spec.values.at(point));
    else
        c.p_circuit = dbm_to_watt(spec.values.at(point));
    return c;
}

/// Channel seed of a trial. Shared by all sweep points so that every point
/// sees the same user drop and small-scale fading (common random numbers).
inline std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial)
{
    auto mix = [](std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    };
    return mix(seed ^ mix(trial));
}

struct TrialOutcome
{
    bool ok = false;
    double ee = 0.0;       // bit/J
    double sum_rate = 0.0; // bit/s/Hz
    double ptx = 0.0;      // W
    int iterations = 0;
};

namespace detail {

inline TrialOutcome evaluate(const ChannelRealization &real, const SystemConfig &config, Scheme scheme,
                             const SolverOptions &opts)
{
    const auto alloc = allocate(real, config, scheme, opts);
    TrialOutcome t;
    t.iterations = alloc.iterations;
    if (!alloc.converged)
        return t;
    const auto rep = compute_rates(real, alloc.allocation, config);
    t.ok = true;
    t.ee = rep.energy_efficiency;
    t.sum_rate = rep.sum_rate;
    t.ptx = rep.total_transmit_power;
    return t;
}

} // namespace detail

/// Smallest per-cluster P_T (bisection, up to config.p_transmit) at which the
/// scheme reaches `target` bit/s/Hz. Not ok if unreachable or the solver fails.
inline TrialOutcome evaluate_at_target(const ChannelRealization &real, const SystemConfig &config, Scheme scheme,
                                       const SolverOptions &opts, double target)
{
    auto top = detail::evaluate(real, config, scheme, opts);
    if (!top.ok || top.sum_rate < target) {
        top.ok = false;
        return top;
    }
    SystemConfig probe = config;
    double lo = 0.0, hi = config.p_transmit;
    TrialOutcome best = top;
    int iterations = top.iterations;
    for (int i = 0; i < 60 && hi - lo > 1e-12 * config.p_transmit; ++i) {
        probe.p_transmit = 0.5 * (lo + hi);
        auto t = detail::evaluate(real, probe, scheme, opts);
        iterations = std::max(iterations, t.iterations);
        if (!t.ok)
            return t;
        if (t.sum_rate >= target) {
            hi = probe.p_transmit;
            best = t;
        } else {
            lo = probe.p_transmit;
        }
    }
    best.iterations = iterations;
    return best;
}

struct SweepCell
{
    std::size_t point = 0;
    double value = 0.0;
    Scheme scheme = Scheme::ProposedZonedWaterfill;
    double ee_mean = 0.0;     // Mbit/J
    double ee_stderr = 0.0;   // Mbit/J
    double sumrate_mean = 0.0;
    double ptx_mw_mean = 0.0;
    double ptx_mw_stderr = 0.0;
    double iters_mean = 0.0;
    double fail_rate = 0.0;
    std::vector<double> ee_samples; // bit/J per trial, NaN where the trial failed
};

struct SweepResult
{
    SweepSpec spec;
    std::vector<SweepCell> cells; // point-major, schemes in spec order

    const SweepCell &cell(std::size_t point, Scheme scheme) const
    {
        for (const auto &c : cells)
            if (c.point == point && c.scheme == scheme)
                return c;
        throw std::out_of_range("sweep result has no cell for this point/scheme");
    }
};

namespace detail {

struct MeanStderr
{
    double mean = std::numeric_limits<double>::quiet_NaN();
    double stderr_ = std::numeric_limits<double>::quiet_NaN();
};

inline MeanStderr mean_stderr(const std::vector<double> &x)
{
    MeanStderr r;
    if (x.empty())
        return r;
    double s = 0.0;
    for (double v : x)
        s += v;
    r.mean = s / static_cast<double>(x.size());
    if (x.size() < 2) {
        r.stderr_ = 0.0;
        return r;
    }
    double ss = 0.0;
    for (double v : x)
        ss += (v - r.mean) * (v - r.mean);
    r.stderr_ = std::sqrt(ss / static_cast<double>(x.size() - 1) / static_cast<double>(x.size()));
    return r;
}

// All sweep points of one trial; outcomes indexed [point][scheme].
inline std::vector<std::vector<TrialOutcome>> run_trial(const SweepSpec &spec, std::size_t trial)
{
    const auto seed = trial_seed(spec.seed, trial);
    std::vector<std::vector<TrialOutcome>> out(spec.values.size());
    std::optional<ChannelRealization> real;
    int real_antennas = -1;
    for (std::size_t p = 0; p < spec.values.size(); ++p) {
        const auto config = config_at(spec, p);
        if (!real || real_antennas != config.num_bs_antennas) {
            real = generate_realization(config, seed);
            real_antennas = config.num_bs_antennas;
        }
        for (auto scheme : spec.schemes)
            out[p].push_back(spec.target_sum_rate
                                 ? evaluate_at_target(*real, config, scheme, spec.solver, *spec.target_sum_rate)
                                 : evaluate(*real, config, scheme, spec.solver));
    }
    return out;
}

} // namespace detail

/// Runs every trial and aggregates per (point, scheme). Trials fan out over
/// `spec.threads` workers; results are reduced in trial order, so the output
/// does not depend on the thread count.
inline SweepResult run_sweep(const SweepSpec &spec)
{
    validate(spec);
    const auto trials = static_cast<std::size_t>(spec.trials);
    std::vector<std::vector<std::vector<TrialOutcome>>> per_trial(trials);

    std::size_t workers = spec.threads > 0 ? static_cast<std::size_t>(spec.threads)
                                           : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min(workers, trials);
    std::vector<std::exception_ptr> errors(workers);
    {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t t = w; t < trials; t += workers)
                        per_trial[t] = detail::run_trial(spec, t);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
    }
    for (auto &e : errors)
        if (e)
            std::rethrow_exception(e);

    SweepResult result;
    result.spec = spec;
    for (std::size_t p = 0; p < spec.values.size(); ++p) {
        for (std::size_t s = 0; s < spec.schemes.size(); ++s) {
            SweepCell cell;
            cell.point = p;
            cell.value = spec.values[p];
            cell.scheme = spec.schemes[s];
            std::vector<double> ee, rate, ptx;
            double iters = 0.0;
            std::size_t failures = 0;
            for (std::size_t t = 0; t < trials; ++t) {
                const auto &o = per_trial[t][p][s];
                iters += o.iterations;
                if (!o.ok) {
                    ++failures;
                    cell.ee_samples.push_back(std::numeric_limits<double>::quiet_NaN());
                    continue;
                }
                cell.ee_samples.push_back(o.ee);
                ee.push_back(o.ee * 1e-6);
                rate.push_back(o.sum_rate);
                ptx.push_back(o.ptx * 1e3);
            }
            const auto e = detail::mean_stderr(ee);
            const auto pw = detail::mean_stderr(ptx);
            cell.ee_mean = e.mean;
            cell.ee_stderr = e.stderr_;
            cell.sumrate_mean = detail::mean_stderr(rate).mean;
            cell.ptx_mw_mean = pw.mean;
            cell.ptx_mw_stderr = pw.stderr_;
            cell.iters_mean = iters / static_cast<double>(trials);
            cell.fail_rate = static_cast<double>(failures) / static_cast<double>(trials);
            result.cells.push_back(std::move(cell));
        }
    }
    return result;
}

struct PairedImprovement
{
    double mean = std::numeric_limits<double>::quiet_NaN();   // Mbit/J
    double stderr_ = std::numeric_limits<double>::quiet_NaN(); // Mbit/J
    double positive_fraction = 0.0;
    std::size_t pairs = 0;
};

/// Per-trial EE(a) - EE(b) at one sweep point, over trials where both succeeded.
inline PairedImprovement paired_improvement(const SweepResult &result, std::size_t point, Scheme a, Scheme b)
{
    const auto &ca = result.cell(point, a);
    const auto &cb = result.cell(point, b);
    std::vector<double> diff;
    std::size_t positive = 0;
    for (std::size_t t = 0; t < ca.ee_samples.size(); ++t) {
        const double x = ca.ee_samples[t], y = cb.ee_samples[t];
        if (std::isnan(x) || std::isnan(y))
            continue;
        diff.push_back((x - y) * 1e-6);
        positive += x > y;
    }
    PairedImprovement r;
    r.pairs = diff.size();
    if (diff.empty())
        return r;
    const auto ms = detail::mean_stderr(diff);
    r.mean = ms.mean;
    r.stderr_ = ms.stderr_;
    r.positive_fraction = static_cast<double>(positive) / static_cast<double>(diff.size());
    return r;
}

} // namespace eewf

#endif
