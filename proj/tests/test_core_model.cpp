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

#include <eewf/channel.hpp>
#include <eewf/config.hpp>
#include <eewf/rates.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <random>

namespace eewf {
namespace {

SystemConfig small_config()
{
    SystemConfig c;
    c.num_bs_antennas = 16;
    c.num_clusters = 4;
    c.users_per_cluster = 3;
    c.user_antennas = 2;
    return c;
}

TEST(SystemConfig, NoisePowerFromDensity)
{
    SystemConfig c;
    // -175 dBm/Hz over 120 kHz.
    EXPECT_NEAR(c.noise_power(), std::pow(10.0, -20.5) * 120e3, 1e-30);
    EXPECT_DOUBLE_EQ(c.transmit_snr(), c.p_max / c.noise_power());
    EXPECT_NEAR(dbm_to_watt(30.0), 1.0, 1e-15);
    EXPECT_NEAR(watt_to_dbm(dbm_to_watt(7.5)), 7.5, 1e-12);
}

TEST(SystemConfig, ValidationNamesField)
{
    SystemConfig c;
    c.users_per_cluster = 0;
    try {
        validate(c);
        FAIL() << "expected ConfigError";
    } catch (const ConfigError &e) {
        EXPECT_EQ(e.key(), "users_per_cluster");
    }
    c = SystemConfig{};
    c.p_transmit = 2.0 * c.p_max;
    EXPECT_THROW(validate(c), ConfigError);
    c = SystemConfig{};
    c.min_distance = c.cell_radius;
    EXPECT_THROW(validate(c), ConfigError);
    c = SystemConfig{};
    c.num_clusters = 8;
    c.p_transmit = 0.2 * c.p_max; // 8 * 0.2 > 1
    EXPECT_THROW(validate(c), ConfigError);
}

TEST(GenerateRealization, SingleUserWithoutPathLoss)
{
    SystemConfig c = small_config();
    c.users_per_cluster = 1;
    c.path_loss_exponent = 0.0;
    const auto real = generate_realization(c, 11);
    for (int m = 0; m < c.num_clusters; ++m) {
        const auto u = real.index(m, 0);
        const double direct =
            std::norm((real.detectors[u].adjoint() * real.channels[u] * real.precoder.col(m))(0, 0));
        EXPECT_NEAR(real.effective_gains[u], direct, 1e-12 * direct);
        EXPECT_NEAR(real.snr_ratios[u], c.p_max / c.noise_power() * direct, 1e-9 * real.snr_ratios[u]);
    }
}

TEST(GenerateRealization, DeterministicForSeed)
{
    const auto c = small_config();
    const auto a = generate_realization(c, 99);
    const auto b = generate_realization(c, 99);
    ASSERT_EQ(a.channels.size(), b.channels.size());
    for (std::size_t u = 0; u < a.channels.size(); ++u) {
        EXPECT_TRUE(a.channels[u] == b.channels[u]);
        EXPECT_TRUE(a.detectors[u] == b.detectors[u]);
    }
    EXPECT_TRUE(a.precoder == b.precoder);
    EXPECT_EQ(a.effective_gains, b.effective_gains);
    EXPECT_EQ(a.snr_ratios, b.snr_ratios);
    EXPECT_EQ(a.distances, b.distances);
    const auto other = generate_realization(c, 100);
    EXPECT_NE(a.distances, other.distances);
}

TEST(GenerateRealization, ZeroForcingDiagonalizesRepresentatives)
{
    SystemConfig c = small_config();
    c.num_bs_antennas = 4;
    c.num_clusters = 4;
    c.users_per_cluster = 2;
    c.p_transmit = 0.25;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto real = generate_realization(c, seed);
        Eigen::MatrixXcd stacked(c.num_clusters, c.num_bs_antennas);
        for (int m = 0; m < c.num_clusters; ++m) {
            const auto u = real.index(m, real.representative[static_cast<std::size_t>(m)]);
            stacked.row(m) = real.detectors[u].adjoint() * real.channels[u];
        }
        const Eigen::MatrixXcd product = stacked * real.precoder;
        for (int i = 0; i < c.num_clusters; ++i)
            for (int j = 0; j < c.num_clusters; ++j)
                if (i != j)
                    EXPECT_LT(std::abs(product(i, j)), 1e-8) << "seed " << seed;
    }
}

TEST(GenerateRealization, StructuralInvariants)
{
    const auto c = small_config();
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto real = generate_realization(c, seed);
        ASSERT_EQ(real.num_users(), c.num_users());
        for (const auto &v : real.detectors)
            EXPECT_NEAR(v.norm(), 1.0, 1e-9);
        for (double d : real.distances) {
            EXPECT_GE(d, c.min_distance);
            EXPECT_LE(d, c.cell_radius);
        }
        for (int m = 0; m < c.num_clusters; ++m) {
            const auto g = real.cluster_gains(m);
            for (std::size_t z = 1; z < g.size(); ++z)
                EXPECT_GE(g[z - 1], g[z]);
            const int rep = real.representative[static_cast<std::size_t>(m)];
            for (int i = 0; i < c.num_clusters; ++i)
                if (i != m)
                    EXPECT_LT(real.leakage(m, rep, i), 1e-8 * real.leakage(m, rep, m));
        }
        for (std::size_t u = 0; u < real.snr_ratios.size(); ++u) {
            EXPECT_GE(real.effective_gains[u], 0.0);
            EXPECT_DOUBLE_EQ(real.snr_ratios[u], c.transmit_snr() * real.effective_gains[u]);
        }
    }
}

TEST(GenerateRealization, MoreClustersThanAntennasIsDegenerate)
{
    SystemConfig c = small_config();
    c.num_bs_antennas = 3;
    c.num_clusters = 4;
    c.p_transmit = 0.25;
    EXPECT_THROW(generate_realization(c, 5), DegenerateChannel);
    try {
        generate_realization(c, 5);
    } catch (const DegenerateChannel &e) {
        EXPECT_STREQ(e.what(), "degenerate channel");
    }
}

// A hand-built realization with explicit SNR ratios for rate checks.
ChannelRealization synthetic(std::vector<double> snr, int clusters, int per_cluster)
{
    ChannelRealization r;
    r.num_clusters = clusters;
    r.users_per_cluster = per_cluster;
    r.snr_ratios = std::move(snr);
    r.effective_gains = r.snr_ratios;
    r.distances.assign(r.snr_ratios.size(), 1.0);
    return r;
}

TEST(ComputeRates, StrongestUserRate)
{
    SystemConfig c;
    const auto real = synthetic({6.0}, 1, 1);
    PowerAllocation a(1, 1);
    a.at(0, 0) = 0.5; // zeta * rho * g = 3
    const auto rep = compute_rates(real, a, c);
    EXPECT_DOUBLE_EQ(rep.per_user_rates[0], 2.0);
}

TEST(ComputeRates, SecondUserSeesStrongerUserAsInterference)
{
    // zeta*g = 2, rho1 = 0.5, rho2 = 1: SINR = 2 / (1 + 1) = 1.
    const std::vector<double> snr{10.0, 2.0}, rho{0.5, 1.0};
    EXPECT_DOUBLE_EQ(cluster_rates(snr, rho)[1], 1.0);

    // Same structure through the full report with a feasible allocation:
    // SINR = 2 * 0.5 / (1 + 2 * 0.5) = 0.5.
    SystemConfig c;
    const auto real = synthetic({10.0, 2.0}, 1, 2);
    PowerAllocation a(1, 2);
    a.at(0, 0) = 0.5;
    a.at(0, 1) = 0.5;
    const auto rep = compute_rates(real, a, c);
    EXPECT_DOUBLE_EQ(rep.per_user_rates[1], std::log2(1.5));
    EXPECT_DOUBLE_EQ(rep.per_user_rates[0], std::log2(6.0));
}

TEST(ComputeRates, ZeroAllocation)
{
    SystemConfig c;
    const auto real = synthetic({5.0, 3.0, 1.0, 7.0, 2.0, 1.0}, 2, 3);
    const PowerAllocation a(2, 3);
    const auto rep = compute_rates(real, a, c);
    for (double r : rep.per_user_rates)
        EXPECT_EQ(r, 0.0);
    EXPECT_EQ(rep.sum_rate, 0.0);
    EXPECT_EQ(rep.energy_efficiency, 0.0);
    EXPECT_EQ(rep.total_transmit_power, 0.0);
}

TEST(ComputeRates, RejectsBadAllocations)
{
    SystemConfig c;
    const auto real = synthetic({5.0, 3.0}, 1, 2);
    EXPECT_THROW(compute_rates(real, PowerAllocation(2, 1), c), std::invalid_argument);
    PowerAllocation neg(1, 2);
    neg.at(0, 1) = -0.1;
    EXPECT_THROW(compute_rates(real, neg, c), std::invalid_argument);
    PowerAllocation over(1, 2);
    over.at(0, 0) = 0.6;
    over.at(0, 1) = 0.6;
    EXPECT_THROW(compute_rates(real, over, c), std::invalid_argument);
}

TEST(ComputeRates, EnergyEfficiencyIdentityAndMonotonicity)
{
    const auto c = small_config();
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const auto real = generate_realization(c, seed);
        PowerAllocation a(c.num_clusters, c.users_per_cluster);
        for (auto &r : a.rho)
            r = u(rng);
        const double scale = 0.9 / a.total();
        for (auto &r : a.rho)
            r *= scale;
        const auto rep = compute_rates(real, a, c);

        double sum = 0.0;
        for (double r : rep.per_user_rates)
            sum += r;
        EXPECT_NEAR(rep.sum_rate, sum, 1e-9 * sum);
        const double ptx = c.p_max * a.total();
        const double ee = c.bandwidth * sum / (c.p_circuit + ptx);
        EXPECT_NEAR(rep.energy_efficiency, ee, 1e-9 * ee);
        EXPECT_NEAR(rep.total_transmit_power, ptx, 1e-12);

        // Raising one user's own coefficient (interference fixed) raises its rate.
        const int m = static_cast<int>(seed % static_cast<std::uint64_t>(c.num_clusters));
        const int z = c.users_per_cluster - 1;
        PowerAllocation b = a;
        b.at(m, z) += 0.05;
        const auto rep_b = compute_rates(real, b, c);
        EXPECT_GT(rep_b.per_user_rates[real.index(m, z)], rep.per_user_rates[real.index(m, z)]);
    }
}

} // namespace
} // namespace eewf
