// Copyright 2026 The ccaswitch Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Figures of merit for register-to-register transfer: Haar-averaged state
// fidelity, per-site leakage, and the second-order leakage estimates with the
// resulting infidelity bound.

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "ccaswitch/dynamics.hpp"
#include "ccaswitch/model.hpp"

namespace ccaswitch {

/// left: the photon is reflected back (identity operation).
/// right: the photon is transmitted (swap operation).
enum class Side { left, right };

inline std::string_view to_string(Side side) { return side == Side::left ? "l" : "r"; }

inline Side parse_side(std::string_view text) {
    if (text == "l" || text == "left") return Side::left;
    if (text == "r" || text == "right") return Side::right;
    throw ValidationError("side must be 'l' or 'r', got '" + std::string(text) + "'");
}

struct FidelityResult {
    double F = 0.0;
    double xi = 1.0;
    Side side = Side::right;
    double time = 0.0;
};

/// Haar average over register input states of |<phi| F |phi>|^2:
///   (sum_{j,j'} |F_{j'j}|^2 + |tr F|^2) / (n (n + 1)).
inline double average_fidelity(const Eigen::MatrixXcd &f) {
    require(f.rows() == f.cols() && f.rows() > 0, "average_fidelity: amplitude matrix must be square");
    const double n = double(f.rows());
    return (f.squaredNorm() + std::norm(f.trace())) / (n * (n + 1.0));
}

inline FidelityResult average_fidelity(const AmplitudeMatrix &amplitudes, Side side) {
    const double F = average_fidelity(amplitudes.values);
    return FidelityResult{F, 1.0 - F, side, amplitudes.time};
}

/// Register amplitudes l -> d at time t of a two-register system.
inline AmplitudeMatrix register_amplitudes(const Eigensystem &es, const BasisLayout &basis, Side side,
                                           double t) {
    const auto source = basis.left_sites();
    const auto target = side == Side::left ? basis.left_sites() : basis.right_sites();
    return transition_amplitudes(es, source, target, t, "l", std::string(to_string(side)));
}

/// eps_j = 1 - |f_{d_j, l_j}|^2.
inline std::vector<double> site_leakage(const AmplitudeMatrix &amplitudes) {
    require(amplitudes.rows() == amplitudes.cols(), "site_leakage: amplitude matrix must be square");
    std::vector<double> eps(static_cast<std::size_t>(amplitudes.rows()));
    for (Eigen::Index j = 0; j < amplitudes.rows(); ++j) {
        eps[static_cast<std::size_t>(j)] = 1.0 - std::norm(amplitudes(j, j));
    }
    return eps;
}

struct MonteCarloEstimate {
    double mean = 0.0;
    double standard_error = 0.0;
    std::size_t samples = 0;
};

namespace detail {

/// Haar-random pure state: normalized complex Gaussian vector.
inline Eigen::VectorXcd haar_state(Eigen::Index n, std::mt19937_64 &rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::VectorXcd alpha(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        const double re = gauss(rng);
        const double im = gauss(rng);
        alpha(j) = cplx(re, im);
    }
    return alpha / alpha.norm();
}

template <typename SampleFn>
MonteCarloEstimate monte_carlo(std::size_t samples, SampleFn &&sample) {
    require(samples >= 1, "monte_carlo_fidelity: need at least one sample");
    double sum = 0.0;
    double sum_sq = 0.0;
    for (std::size_t s = 0; s < samples; ++s) {
        const double value = sample();
        sum += value;
        sum_sq += value * value;
    }
    const double count = double(samples);
    const double mean = sum / count;
    const double var = samples > 1 ? std::max(0.0, (sum_sq - count * mean * mean) / (count - 1.0)) : 0.0;
    return MonteCarloEstimate{mean, std::sqrt(var / count), samples};
}

}  // namespace detail

/// Sampled average of |alpha^dagger F alpha|^2 for a given amplitude block.
inline MonteCarloEstimate monte_carlo_fidelity(const Eigen::MatrixXcd &f, std::size_t samples,
                                               std::uint64_t seed) {
    require(f.rows() == f.cols() && f.rows() > 0, "monte_carlo_fidelity: amplitude matrix must be square");
    std::mt19937_64 rng(seed);
    return detail::monte_carlo(samples, [&] {
        const Eigen::VectorXcd alpha = detail::haar_state(f.rows(), rng);
        return std::norm(alpha.dot(f * alpha));
    });
}

/// Sampling oracle that goes through full state evolution: a Haar-random
/// photon is loaded into the left register, evolved for t, and its overlap
/// with the same amplitudes laid out on register `side` is squared.
inline MonteCarloEstimate monte_carlo_fidelity(const Eigensystem &es, const BasisLayout &basis, Side side,
                                               double t, std::size_t samples, std::uint64_t seed) {
    require(es.dim() == basis.dim(), "monte_carlo_fidelity: eigensystem does not match the layout");
    std::mt19937_64 rng(seed);
    const auto source = basis.left_sites();
    const auto target = side == Side::left ? basis.left_sites() : basis.right_sites();
    return detail::monte_carlo(samples, [&] {
        const Eigen::VectorXcd alpha = detail::haar_state(basis.n, rng);
        StateVector psi0{Eigen::VectorXcd::Zero(es.dim()), 0.0};
        for (int j = 0; j < basis.n; ++j) psi0.amplitudes(source[static_cast<std::size_t>(j)]) = alpha(j);
        const StateVector psi = evolve_state(es, psi0, t);
        cplx overlap = 0.0;
        for (int j = 0; j < basis.n; ++j) {
            overlap += std::conj(alpha(j)) * psi.amplitudes(target[static_cast<std::size_t>(j)]);
        }
        return std::norm(overlap);
    });
}

struct LeakageEstimate {
    Side side = Side::right;
    double delta = 0.0;            ///< Delta_d
    std::vector<double> per_mode;  ///< Delta_k^r for k = 1..z-1, or the single Delta_z^l
    double epsilon_n = 0.0;        ///< predicted leakage at site n, 4 Delta_d
};

/// Second-order transmission leakage at t = pi/g0:
///   Delta_r = sum_{k<z} Delta_k^r [1 - (-1)^{n+k+z} cos(Lambda_k tau)],
///   Delta_k^r = (g_I psi_{1,k} / Lambda_k)^2.
inline LeakageEstimate perturbative_transmission_leakage(const SystemConfig &config) {
    config.validate();
    const int N = config.channel.N;
    const int z = zero_mode_index(N);
    const int n = config.n();
    const double tau = transfer_time(config);

    LeakageEstimate est;
    est.side = Side::right;
    for (int k = 1; k < z; ++k) {
        const double lambda = channel_energy(k, N, config.channel.g_c);
        const double ratio = config.g_I * channel_mode(1, k, N) / lambda;
        const double weight = ratio * ratio;
        const double sign = (n + k + z) % 2 == 0 ? 1.0 : -1.0;
        est.per_mode.push_back(weight);
        est.delta += weight * (1.0 - sign * std::cos(lambda * tau));
    }
    est.epsilon_n = 4.0 * est.delta;
    return est;
}

/// Second-order reflection leakage at t = pi/g0:
///   Delta_l = Delta_z^l [1 - (-1)^{n-1} cos(J_I psi_{m,z} tau)],
///   2 Delta_z^l = (g_I psi_{1,z} / (J_I psi_{m,z}))^2.
inline LeakageEstimate perturbative_reflection_leakage(const SystemConfig &config) {
    config.validate();
    const int N = config.channel.N;
    const int z = zero_mode_index(N);
    const int n = config.n();
    const double atom_zero = config.channel.active_atom_coupling() * channel_mode(config.channel.atom_site, z, N);
    require(atom_zero != 0.0,
            "reflection regime undefined: the atom is uncoupled, J_I = 0, or it sits on a node of the zero mode");
    const double tau = transfer_time(config);
    const double ratio = config.g_I * channel_mode(1, z, N) / atom_zero;
    const double delta_z = 0.5 * ratio * ratio;
    const double sign = (n - 1) % 2 == 0 ? 1.0 : -1.0;

    LeakageEstimate est;
    est.side = Side::left;
    est.per_mode = {delta_z};
    est.delta = delta_z * (1.0 - sign * std::cos(atom_zero * tau));
    est.epsilon_n = 4.0 * est.delta;
    return est;
}

inline LeakageEstimate perturbative_leakage(const SystemConfig &config, Side side) {
    return side == Side::left ? perturbative_reflection_leakage(config)
                              : perturbative_transmission_leakage(config);
}

/// xi_d <= (8/n) (Delta_z^l [d = l] + sum_{k<z} Delta_k^r [d = r]).
inline double infidelity_upper_bound(const SystemConfig &config, Side side) {
    const auto est = perturbative_leakage(config, side);
    double sum = 0.0;
    for (double w : est.per_mode) sum += w;
    return 8.0 / double(config.n()) * sum;
}

}  // namespace ccaswitch
