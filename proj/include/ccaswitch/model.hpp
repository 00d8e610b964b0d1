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

// Single-excitation Hamiltonians of two coupled-cavity-array registers joined
// by a coupled-cavity-array channel whose cavity m may host a two-level atom.
//
// Units: the intrachannel coupling g_c is the energy unit unless a ChannelSpec
// says otherwise; hbar = 1; the common cavity frequency is removed by the
// rotating frame, so every Hamiltonian here has a zero diagonal.

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ccaswitch/error.hpp"

namespace ccaswitch {

using Index = Eigen::Index;

/// Ratio used to turn the "much smaller than" conditions into flags.
inline constexpr double kRegimeRatio = 0.1;

struct RegisterSpec {
    int n = 1;        ///< cavity count
    double g0 = 1.0;  ///< coupling scale of the engineered bonds

    void validate() const {
        require(n >= 1, "register: n must be >= 1, got " + std::to_string(n));
        require(g0 > 0.0 && std::isfinite(g0), "register: g0 must be positive and finite");
    }
    friend bool operator==(const RegisterSpec &, const RegisterSpec &) = default;
};

struct ChannelSpec {
    int N = 1;             ///< cavity count (odd for the switching protocol)
    double g_c = 1.0;      ///< uniform intrachannel coupling
    int atom_site = 1;     ///< 1-based cavity index m hosting the atom
    double J_I = 0.0;      ///< atom-cavity coupling
    bool atom_coupled = false;

    void validate() const {
        require(N >= 1, "channel: N must be >= 1, got " + std::to_string(N));
        require(g_c > 0.0 && std::isfinite(g_c), "channel: g_c must be positive and finite");
        require(atom_site >= 1 && atom_site <= N,
                "channel: atom site m=" + std::to_string(atom_site) + " outside [1, " +
                    std::to_string(N) + "]");
        require(J_I >= 0.0 && std::isfinite(J_I), "channel: J_I must be >= 0");
    }
    /// Coupling actually present in the Hamiltonian.
    double active_atom_coupling() const { return atom_coupled ? J_I : 0.0; }
    friend bool operator==(const ChannelSpec &, const ChannelSpec &) = default;
};

struct SystemConfig {
    RegisterSpec left;
    RegisterSpec right;
    ChannelSpec channel;
    double g_I = 0.0;  ///< register-channel coupling

    void validate() const {
        left.validate();
        right.validate();
        channel.validate();
        require(left == right, "system: left and right registers must be identical");
        require(g_I > 0.0 && std::isfinite(g_I), "system: g_I must be positive and finite");
    }
    int n() const { return left.n; }
    double g0() const { return left.g0; }
    friend bool operator==(const SystemConfig &, const SystemConfig &) = default;
};

/// Index map of the single-excitation basis:
/// l_1..l_n, c_1..c_N, r_1..r_n, then the excited atom.
struct BasisLayout {
    int n = 1;
    int N = 1;

    BasisLayout() = default;
    BasisLayout(int n_, int N_) : n(n_), N(N_) {}
    explicit BasisLayout(const SystemConfig &config) : n(config.n()), N(config.channel.N) {}

    Index dim() const { return 2 * n + N + 1; }
    Index left(int j) const { return j - 1; }
    Index channel(int i) const { return n + i - 1; }
    Index right(int j) const { return n + N + j - 1; }
    Index atom() const { return 2 * n + N; }

    std::vector<Index> left_sites() const { return sites(0); }
    std::vector<Index> right_sites() const { return sites(n + N); }

  private:
    std::vector<Index> sites(Index offset) const {
        std::vector<Index> out(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) out[static_cast<std::size_t>(j)] = offset + j;
        return out;
    }
};

/// g_j = g0 sqrt(j (2n + 1 - j)) / 2 for j = 1..n. Entries 1..n-1 are the
/// register bonds; entry n is the value the channel interface must match.
inline std::vector<double> register_couplings(int n, double g0) {
    RegisterSpec{n, g0}.validate();
    std::vector<double> g(static_cast<std::size_t>(n));
    for (int j = 1; j <= n; ++j) {
        g[static_cast<std::size_t>(j - 1)] = g0 * std::sqrt(double(j) * double(2 * n + 1 - j)) / 2.0;
    }
    return g;
}

/// lambda_q = g0 (2q - n - 1), q = 1..n.
inline std::vector<double> register_spectrum(int n, double g0) {
    RegisterSpec{n, g0}.validate();
    std::vector<double> lambda(static_cast<std::size_t>(n));
    for (int q = 1; q <= n; ++q) lambda[static_cast<std::size_t>(q - 1)] = g0 * double(2 * q - n - 1);
    return lambda;
}

/// Amplitude of bare-channel mode k on cavity i.
inline double channel_mode(int i, int k, int N) {
    require(N >= 1, "channel_mode: N must be >= 1");
    require(i >= 1 && i <= N && k >= 1 && k <= N, "channel_mode: index out of range");
    const long L = N + 1;
    // Reduce the phase i k pi / L modulo 2 pi; nodes come out as exact zeros.
    const long phase = (long(i) * long(k)) % (2 * L);
    if (phase % L == 0) return 0.0;
    return std::sqrt(2.0 / double(L)) * std::sin(double(phase) * std::numbers::pi / double(L));
}

/// Energy of bare-channel mode k, decreasing in k.
inline double channel_energy(int k, int N, double g_c = 1.0) {
    require(N >= 1, "channel_energy: N must be >= 1");
    require(k >= 1 && k <= N, "channel_energy: mode index out of range");
    // cos(k pi/(N+1)) rewritten as sin((N+1-2k) pi / (2(N+1))) so the zero
    // mode comes out as an exact 0.
    return 2.0 * g_c * std::sin(double(N + 1 - 2 * k) * std::numbers::pi / (2.0 * double(N + 1)));
}

inline int zero_mode_index(int N) {
    require(N >= 1 && N % 2 == 1,
            "N=" + std::to_string(N) + " is even: no zero mode; switching protocol undefined");
    return (N + 1) / 2;
}

/// g0 for which the interface coupling g_I psi_{1,z} equals g_n.
inline double resonant_g0(double g_I, int n, int N) {
    require(g_I > 0.0 && std::isfinite(g_I), "resonant_g0: g_I must be positive");
    require(n >= 1, "resonant_g0: n must be >= 1");
    const int z = zero_mode_index(N);
    return 2.0 * g_I * channel_mode(1, z, N) / std::sqrt(double(n) * double(n + 1));
}

/// Builds a two-register system with g0 fixed by the resonance condition.
inline SystemConfig make_resonant_system(int N, int n, int m, double J_I, double g_I,
                                         bool atom_coupled, double g_c = 1.0) {
    SystemConfig config;
    const double g0 = resonant_g0(g_I, n, N);
    config.left = config.right = RegisterSpec{n, g0};
    config.channel = ChannelSpec{N, g_c, m, J_I, atom_coupled};
    config.g_I = g_I;
    config.validate();
    return config;
}

/// Transfer time pi / g0.
inline double transfer_time(const SystemConfig &config) { return std::numbers::pi / config.g0(); }

/// Tridiagonal hopping matrix of the bare channel.
inline Eigen::MatrixXd channel_hamiltonian(int N, double g_c = 1.0) {
    ChannelSpec{N, g_c, 1, 0.0, false}.validate();
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(N, N);
    for (int i = 0; i + 1 < N; ++i) h(i, i + 1) = h(i + 1, i) = g_c;
    return h;
}

inline Eigen::MatrixXd build_full_hamiltonian(const SystemConfig &config) {
    config.validate();
    const BasisLayout basis(config);
    const int n = config.n();
    const int N = config.channel.N;
    const auto g = register_couplings(n, config.g0());

    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(basis.dim(), basis.dim());
    auto bond = [&h](Index a, Index b, double value) { h(a, b) = h(b, a) = value; };

    for (int j = 1; j < n; ++j) {
        bond(basis.left(j), basis.left(j + 1), g[static_cast<std::size_t>(j - 1)]);
        bond(basis.right(j), basis.right(j + 1), g[static_cast<std::size_t>(j - 1)]);
    }
    for (int i = 1; i < N; ++i) bond(basis.channel(i), basis.channel(i + 1), config.channel.g_c);
    bond(basis.left(n), basis.channel(1), config.g_I);
    bond(basis.right(n), basis.channel(N), config.g_I);
    if (config.channel.atom_coupled && config.channel.J_I > 0.0) {
        bond(basis.channel(config.channel.atom_site), basis.atom(), config.channel.J_I);
    }
    return h;
}

struct ValidityReport {
    double omega0 = 0.0;  ///< register bandwidth |lambda_1 - lambda_n|
    double omega1 = 0.0;  ///< gap between the zero mode and its neighbours
    double omega2 = 0.0;  ///< dressed-state splitting 2 J_I |psi_{m,z}|
    bool weak_coupling = false;
    bool switch_regime = false;  ///< g0 << J_I
    bool m_parity_ok = false;    ///< atom site odd
};

/// Regime diagnostics. For N = 1 there are no off-resonant channel modes and
/// omega1 is reported as +infinity.
inline ValidityReport validity_report(const SystemConfig &config, double ratio = kRegimeRatio) {
    config.validate();
    const int N = config.channel.N;
    const int z = zero_mode_index(N);
    const int n = config.n();
    const double J = config.channel.active_atom_coupling();
    const int m = config.channel.atom_site;

    ValidityReport report;
    const auto lambda = register_spectrum(n, config.g0());
    report.omega0 = std::abs(lambda.front() - lambda.back());
    report.omega1 = N > 1 ? std::abs(channel_energy(z + 1, N, config.channel.g_c) -
                                     channel_energy(z, N, config.channel.g_c))
                          : std::numeric_limits<double>::infinity();
    const double atom_zero = J * std::abs(channel_mode(m, z, N));
    report.omega2 = 2.0 * atom_zero;
    const double interface = config.g_I * std::abs(channel_mode(1, z, N));
    report.weak_coupling =
        std::max({report.omega0, interface, atom_zero}) < ratio * report.omega1;
    report.switch_regime = config.g0() < ratio * J;
    report.m_parity_ok = m % 2 == 1;
    return report;
}

}  // namespace ccaswitch
