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

#ifndef EEWF_CHANNEL_HPP
#define EEWF_CHANNEL_HPP

#include "config.hpp"
#include "error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <random>
#include <span>
#include <vector>

namespace eewf {

/// One quasi-static channel draw with zero-forcing precoding across clusters.
///
/// Users are stored cluster-major: user (m, z) lives at `m * users_per_cluster + z`.
/// Inside a cluster users are ordered by nonincreasing effective gain, so z = 0
/// is the strongest user and decodes without intra-cluster interference.
struct ChannelRealization
{
    int num_clusters = 0;
    int users_per_cluster = 0;

    std::vector<Eigen::MatrixXcd> channels;  // N x M per user
    Eigen::MatrixXcd precoder;               // M x K, column m serves cluster m
    std::vector<Eigen::VectorXcd> detectors; // unit norm, length N
    std::vector<double> distances;           // m
    std::vector<double> effective_gains;     // |v^H H p_m|^2 d^-beta
    std::vector<double> snr_ratios;          // zeta * effective gain
    std::vector<int> representative;         // per cluster, position z of the ZF reference user

    int num_users() const { return num_clusters * users_per_cluster; }
    std::size_t index(int m, int z) const { return static_cast<std::size_t>(m * users_per_cluster + z); }

    std::span<const double> cluster_distances(int m) const { return cluster_slice(distances, m); }
    std::span<const double> cluster_gains(int m) const { return cluster_slice(effective_gains, m); }
    std::span<const double> cluster_snr(int m) const { return cluster_slice(snr_ratios, m); }

    /// |v_{m,z}^H H_{m,z} p_i|, the unscaled amplitude user (m, z) sees through column i.
    double leakage(int m, int z, int i) const
    {
        const auto u = index(m, z);
        return std::abs((detectors[u].adjoint() * channels[u] * precoder.col(i))(0, 0));
    }

private:
    std::span<const double> cluster_slice(const std::vector<double> &v, int m) const
    {
        return std::span<const double>(v).subspan(index(m, 0), static_cast<std::size_t>(users_per_cluster));
    }
};

namespace detail {

inline constexpr int kMaxChannelAttempts = 8;

// Gram matrices whose eigenvalue spread exceeds this are treated as singular.
inline constexpr double kRankTolerance = 1e-12;

inline Eigen::VectorXcd dominant_left_singular_vector(const Eigen::MatrixXcd &h)
{
    const Eigen::MatrixXcd gram = h * h.adjoint();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(gram);
    // Eigenvalues ascend.
    Eigen::VectorXcd v = eig.eigenvectors().col(gram.rows() - 1);
    return v / v.norm();
}

// Returns false when the stacked representative channel is rank deficient.
inline bool zero_forcing_precoder(const Eigen::MatrixXcd &stacked, Eigen::MatrixXcd &precoder)
{
    const auto k = stacked.rows();
    if (k > stacked.cols())
        return false;
    const Eigen::MatrixXcd gram = stacked * stacked.adjoint();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(gram, Eigen::EigenvaluesOnly);
    const auto &ev = eig.eigenvalues();
    if (!(ev(0) > kRankTolerance * ev(k - 1)))
        return false;
    precoder = stacked.adjoint() * gram.llt().solve(Eigen::MatrixXcd::Identity(k, k));
    for (Eigen::Index c = 0; c < k; ++c)
        precoder.col(c) /= precoder.col(c).norm();
    return true;
}

} // namespace detail

/// Draws i.i.d. CN(0,1) channels, places users uniformly over the annulus
/// [min_distance, cell_radius], builds detectors and the ZF precoder, and
/// orders every cluster by effective gain.
///
/// Throws DegenerateChannel if the representative channels cannot be
/// zero-forced after `kMaxChannelAttempts` draws (e.g. more clusters than
/// antennas).
inline ChannelRealization generate_realization(const SystemConfig &config, std::uint64_t seed)
{
    validate(config);

    const int k = config.num_clusters;
    const int zc = config.users_per_cluster;
    const int n = config.user_antennas;
    const int m_ant = config.num_bs_antennas;
    const auto users = static_cast<std::size_t>(config.num_users());

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
    const double r_min2 = config.min_distance * config.min_distance;
    const double r_max2 = config.cell_radius * config.cell_radius;
    std::uniform_real_distribution<double> area(r_min2, r_max2);

    ChannelRealization real;
    real.num_clusters = k;
    real.users_per_cluster = zc;

    for (int attempt = 0; attempt < detail::kMaxChannelAttempts; ++attempt) {
        real.distances.assign(users, 0.0);
        real.channels.assign(users, Eigen::MatrixXcd());
        real.detectors.assign(users, Eigen::VectorXcd());

        for (auto &d : real.distances)
            d = std::sqrt(area(rng));
        for (auto &h : real.channels) {
            h.resize(n, m_ant);
            for (Eigen::Index c = 0; c < h.cols(); ++c)
                for (Eigen::Index r = 0; r < h.rows(); ++r)
                    h(r, c) = {gauss(rng), gauss(rng)};
        }

        std::vector<Eigen::RowVectorXcd> rows(users);
        std::vector<double> attenuation(users);
        for (std::size_t u = 0; u < users; ++u) {
            real.detectors[u] = detail::dominant_left_singular_vector(real.channels[u]);
            rows[u] = real.detectors[u].adjoint() * real.channels[u];
            attenuation[u] = std::pow(real.distances[u], -config.path_loss_exponent);
        }

        Eigen::MatrixXcd stacked(k, m_ant);
        std::vector<std::size_t> rep_user(static_cast<std::size_t>(k));
        for (int m = 0; m < k; ++m) {
            std::size_t best = real.index(m, 0);
            double best_strength = -1.0;
            for (int z = 0; z < zc; ++z) {
                const auto u = real.index(m, z);
                const double strength = rows[u].squaredNorm() * attenuation[u];
                if (strength > best_strength) {
                    best_strength = strength;
                    best = u;
                }
            }
            rep_user[static_cast<std::size_t>(m)] = best;
            stacked.row(m) = rows[best];
        }

        if (!detail::zero_forcing_precoder(stacked, real.precoder))
            continue;

        std::vector<double> gains(users);
        for (int m = 0; m < k; ++m)
            for (int z = 0; z < zc; ++z) {
                const auto u = real.index(m, z);
                gains[u] = std::norm((rows[u] * real.precoder.col(m))(0, 0)) * attenuation[u];
            }

        // Reorder each cluster by nonincreasing effective gain.
        const double zeta = config.transmit_snr();
        real.effective_gains.assign(users, 0.0);
        real.snr_ratios.assign(users, 0.0);
        real.representative.assign(static_cast<std::size_t>(k), 0);
        auto channels = std::move(real.channels);
        auto detectors = std::move(real.detectors);
        auto distances = std::move(real.distances);
        real.channels.assign(users, Eigen::MatrixXcd());
        real.detectors.assign(users, Eigen::VectorXcd());
        real.distances.assign(users, 0.0);
        for (int m = 0; m < k; ++m) {
            std::vector<std::size_t> order(static_cast<std::size_t>(zc));
            std::iota(order.begin(), order.end(), real.index(m, 0));
            std::stable_sort(order.begin(), order.end(),
                             [&](std::size_t a, std::size_t b) { return gains[a] > gains[b]; });
            for (int z = 0; z < zc; ++z) {
                const auto dst = real.index(m, z);
                const auto src = order[static_cast<std::size_t>(z)];
                real.channels[dst] = std::move(channels[src]);
                real.detectors[dst] = std::move(detectors[src]);
                real.distances[dst] = distances[src];
                real.effective_gains[dst] = gains[src];
                real.snr_ratios[dst] = zeta * gains[src];
                if (src == rep_user[static_cast<std::size_t>(m)])
                    real.representative[static_cast<std::size_t>(m)] = z;
            }
        }
        return real;
    }
    throw DegenerateChannel();
}

inline ChannelRealization generate_realization(const SystemConfig &config)
{
    return generate_realization(config, config.rng_seed);
}

} // namespace eewf

#endif
