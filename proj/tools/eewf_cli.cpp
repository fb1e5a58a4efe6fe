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

// Command-line front end: single-instance solves, one-realization
// simulations and Monte Carlo sweeps.
//
// Exit codes: 0 success, 1 unexpected error, 2 usage or validation error,
// 3 solver did not converge, 4 I/O failure.

#include <eewf/eewf.hpp>

#include "CLI11.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

enum ExitCode { kOk = 0, kUnexpected = 1, kUsage = 2, kNoConvergence = 3, kIo = 4 };

struct IoError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

// Prints either "key=value" (machine mode) or an aligned human line.
class Printer
{
public:
    explicit Printer(bool machine) : machine_(machine) {}

    void kv(const std::string &key, const std::string &value) const
    {
        if (machine_)
            std::cout << key << '=' << value << '\n';
        else
            std::cout << "  " << key << ": " << value << '\n';
    }
    void kv(const std::string &key, double value) const { kv(key, eewf::format_number(value)); }
    void heading(const std::string &text) const
    {
        if (!machine_)
            std::cout << text << '\n';
    }

private:
    bool machine_;
};

std::vector<eewf::Scheme> parse_scheme_list(const std::string &csv)
{
    std::vector<eewf::Scheme> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty())
            out.push_back(eewf::parse_scheme(item));
    if (out.empty())
        throw eewf::ConfigError("schemes", "schemes: at least one scheme required");
    return out;
}

std::filesystem::path prepare_output_dir(const std::string &dir)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir))
        throw IoError("output directory '" + dir + "' is not writable");
    return dir;
}

// ---- solve ----------------------------------------------------------------

struct SolveArgs
{
    std::vector<double> gains;
    std::vector<double> distances;
    double radius = 0.0;
    double budget = 1.0;
    double p_max = 1.0;
    double tolerance = 1e-8;
    int max_iterations = 100000;
    std::string step_rule = "adaptive";
    double step_scale = 1.0;
};

int cmd_solve(const SolveArgs &a, const Printer &out)
{
    if (a.gains.empty())
        throw eewf::ConfigError("gains", "gains: at least one user required");
    std::vector<double> distances = a.distances;
    double radius = a.radius;
    if (distances.empty()) {
        // All users in the Near zone.
        radius = 1.0;
        distances.assign(a.gains.size(), 0.25);
    } else if (distances.size() != a.gains.size()) {
        throw eewf::ConfigError("distances", "distances: expected one distance per gain");
    } else if (!(radius > 0.0)) {
        throw eewf::ConfigError("radius", "radius: required (and positive) when distances are given");
    }
    if (!(a.budget > 0.0) || a.budget > 1.0)
        throw eewf::ConfigError("budget", "budget: must lie in (0, 1]");

    const auto part = eewf::partition_zones(distances, radius, a.budget * a.p_max, a.p_max);
    eewf::SolverOptions opts;
    opts.tolerance = a.tolerance;
    opts.max_iterations = a.max_iterations;
    opts.step_rule = eewf::parse_step_rule(a.step_rule);
    opts.step_scale = a.step_scale;
    const auto sol = eewf::solve_algorithm1(a.gains, part, eewf::initial_dual_state(a.gains, part, opts));

    out.heading("users");
    out.kv("users", std::to_string(a.gains.size()));
    for (std::size_t i = 0; i < a.gains.size(); ++i) {
        const auto tag = "user." + std::to_string(i);
        out.kv(tag + ".zone", part.zone_of[i] == eewf::Zone::Near ? "near" : "far");
        out.kv(tag + ".rho", sol.rho[i]);
    }
    out.heading("zones");
    out.kv("alpha", part.alpha);
    if (part.count(eewf::Zone::Near) > 0) {
        out.kv("near.budget", part.near_budget);
        out.kv("near.water_level", 1.0 / sol.dual.lambda1);
    }
    if (part.count(eewf::Zone::Far) > 0) {
        out.kv("far.budget", part.far_budget);
        out.kv("far.water_level", 1.0 / sol.dual.lambda2);
    }
    out.heading("solver");
    out.kv("objective", eewf::sum_log_objective(a.gains, sol.rho));
    out.kv("converged", sol.dual.converged ? "1" : "0");
    out.kv("iterations", std::to_string(sol.dual.iterations_used));
    if (!sol.dual.converged) {
        std::cerr << "error: solver did not converge within " << a.max_iterations << " iterations\n";
        return kNoConvergence;
    }
    return kOk;
}

// ---- simulate ---------------------------------------------------------------

struct RunArgs
{
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string out_dir = ".";
    std::string schemes;
    std::optional<int> trials;
    std::optional<int> threads;
};

eewf::SweepSpec load_run_spec(const RunArgs &a)
{
    eewf::SweepSpec spec;
    if (!a.config_path.empty()) {
        if (!std::filesystem::is_regular_file(a.config_path))
            throw IoError("cannot open configuration '" + a.config_path + "'");
        spec = eewf::load_spec(a.config_path);
    }
    if (!a.schemes.empty())
        spec.schemes = parse_scheme_list(a.schemes);
    if (a.trials)
        spec.trials = *a.trials;
    if (a.threads)
        spec.threads = *a.threads;
    return spec;
}

int cmd_simulate(const RunArgs &a, const Printer &out)
{
    auto spec = load_run_spec(a);
    if (a.seed)
        spec.base_config.rng_seed = *a.seed;
    if (spec.schemes.empty())
        throw eewf::ConfigError("schemes", "schemes: at least one scheme required");
    const auto &config = spec.base_config;
    const auto dir = prepare_output_dir(a.out_dir);
    const auto real = eewf::generate_realization(config);

    std::string csv = "scheme,converged,iterations,sum_rate,ee_mbit_per_j,ptx_mw\n";
    bool all_converged = true;
    for (auto scheme : spec.schemes) {
        const auto name = std::string(eewf::to_string(scheme));
        const auto res = eewf::allocate(real, config, scheme, spec.solver);
        const auto rep = eewf::compute_rates(real, res.allocation, config);
        all_converged = all_converged && res.converged;
        out.heading(name + " (" + std::string(eewf::describe(scheme)) + ")");
        out.kv(name + ".converged", res.converged ? "1" : "0");
        out.kv(name + ".iterations", std::to_string(res.iterations));
        out.kv(name + ".sum_rate", rep.sum_rate);
        out.kv(name + ".ee_mbit_per_j", rep.energy_efficiency * 1e-6);
        out.kv(name + ".ptx_mw", rep.total_transmit_power * 1e3);
        csv += name + ',' + (res.converged ? "1" : "0") + ',' + std::to_string(res.iterations) + ',' +
               eewf::format_number(rep.sum_rate) + ',' + eewf::format_number(rep.energy_efficiency * 1e-6) + ',' +
               eewf::format_number(rep.total_transmit_power * 1e3) + '\n';
    }
    const auto path = (dir / "simulate.csv").string();
    try {
        eewf::write_file(path, csv);
    } catch (const std::runtime_error &e) {
        throw IoError(e.what());
    }
    out.kv("csv", path);
    if (!all_converged) {
        std::cerr << "error: solver did not converge\n";
        return kNoConvergence;
    }
    return kOk;
}

// ---- sweep ------------------------------------------------------------------

int cmd_sweep(const RunArgs &a, const Printer &out)
{
    auto spec = load_run_spec(a);
    if (a.seed)
        spec.seed = *a.seed;
    eewf::validate(spec);
    const auto dir = prepare_output_dir(a.out_dir);

    const auto start = std::chrono::steady_clock::now();
    const auto result = eewf::run_sweep(spec);
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    const auto stem = "sweep_" + std::string(eewf::to_string(spec.variable));
    const auto csv_path = (dir / (stem + ".csv")).string();
    const auto meta_path = (dir / (stem + ".json")).string();
    try {
        eewf::emit_csv(result, csv_path);
        eewf::write_file(meta_path, eewf::metadata_json(spec, elapsed).dump(2) + "\n");
    } catch (const std::invalid_argument &) {
        throw;
    } catch (const std::runtime_error &e) {
        throw IoError(e.what());
    }

    const bool has_proposed = std::find(spec.schemes.begin(), spec.schemes.end(),
                                        eewf::Scheme::ProposedZonedWaterfill) != spec.schemes.end();
    std::string improvement_csv =
        "variable,value,baseline,improvement_mean,improvement_stderr,positive_fraction\n";
    for (std::size_t p = 0; p < spec.values.size(); ++p) {
        const auto label = std::string(eewf::to_string(spec.variable)) + "=" + eewf::format_number(spec.values[p]);
        out.heading(label);
        for (auto scheme : spec.schemes) {
            const auto &c = result.cell(p, scheme);
            const auto key = label + "." + std::string(eewf::to_string(scheme));
            out.kv(key + ".ee_mean", c.ee_mean);
            out.kv(key + ".ptx_mw_mean", c.ptx_mw_mean);
            out.kv(key + ".fail_rate", c.fail_rate);
            if (has_proposed && scheme != eewf::Scheme::ProposedZonedWaterfill) {
                const auto imp =
                    eewf::paired_improvement(result, p, eewf::Scheme::ProposedZonedWaterfill, scheme);
                out.kv(key + ".improvement", imp.mean);
                improvement_csv += std::string(eewf::to_string(spec.variable)) + ',' +
                                   eewf::format_number(spec.values[p]) + ',' + std::string(eewf::to_string(scheme)) +
                                   ',' + eewf::format_number(imp.mean) + ',' + eewf::format_number(imp.stderr_) +
                                   ',' + eewf::format_number(imp.positive_fraction) + '\n';
            }
        }
    }
    if (has_proposed && spec.schemes.size() > 1) {
        const auto imp_path = (dir / (stem + "_improvement.csv")).string();
        try {
            eewf::write_file(imp_path, improvement_csv);
        } catch (const std::runtime_error &e) {
            throw IoError(e.what());
        }
        out.kv("improvement_csv", imp_path);
    }
    out.kv("csv", csv_path);
    out.kv("metadata", meta_path);
    return kOk;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Energy-efficient zoned water-filling for massive MIMO downlink"};
    app.require_subcommand(1);
    bool machine = false;
    app.add_flag("--machine", machine, "Print one key=value per line");

    SolveArgs solve_args;
    auto *solve = app.add_subcommand("solve", "Water-fill one cluster from explicit SNR ratios");
    solve->add_option("--gains", solve_args.gains, "SNR ratios c_z, comma separated")->required()->delimiter(',');
    solve->add_option("--distances", solve_args.distances, "User distances in m (default: all Near)")->delimiter(',');
    solve->add_option("--radius", solve_args.radius, "Cell radius in m");
    solve->add_option("--budget", solve_args.budget, "P_T / P_max");
    solve->add_option("--p-max", solve_args.p_max, "P_max in W");
    solve->add_option("--tolerance", solve_args.tolerance, "Stationarity tolerance");
    solve->add_option("--max-iterations", solve_args.max_iterations, "Iteration limit");
    solve->add_option("--step-rule", solve_args.step_rule, "adaptive | constant | diminishing");
    solve->add_option("--step-scale", solve_args.step_scale, "Step scale factor");

    RunArgs sim_args;
    auto *simulate = app.add_subcommand("simulate", "Draw one channel and evaluate every scheme");
    RunArgs sweep_args;
    auto *sweep = app.add_subcommand("sweep", "Monte Carlo sweep to CSV + JSON metadata");
    for (auto [cmd, args] : {std::pair{simulate, &sim_args}, std::pair{sweep, &sweep_args}}) {
        cmd->add_option("--config", args->config_path, "JSON configuration file");
        cmd->add_option("--seed", args->seed, "Seed override");
        cmd->add_option("--out", args->out_dir, "Output directory");
        cmd->add_option("--schemes", args->schemes, "proposed,equal_split,single_zone");
        cmd->add_option("--trials", args->trials, "Monte Carlo trials per point");
        cmd->add_option("--threads", args->threads, "Worker threads (0: all cores)");
        cmd->add_flag("--machine", machine, "Print one key=value per line");
    }
    sweep->get_option("--config")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kUsage;
    }

    const Printer out(machine);
    try {
        if (*solve)
            return cmd_solve(solve_args, out);
        if (*simulate)
            return cmd_simulate(sim_args, out);
        return cmd_sweep(sweep_args, out);
    } catch (const IoError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kIo;
    } catch (const eewf::ConfigError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::invalid_argument &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUnexpected;
    }
}
