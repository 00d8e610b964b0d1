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

// Reduced zero-mode model: both registers, the resonant channel mode f_z and
// the atom, with every off-resonant channel mode dropped.

#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "ccaswitch/dynamics.hpp"
#include "ccaswitch/model.hpp"

namespace ccaswitch {

/// Basis: l_1..l_n, r_1..r_n, f_z, |e>.
struct EffectiveModel {
    int n = 1;
    Eigen::MatrixXd matrix;

    Index dim() const { return 2 * n + 2; }
    Index left(int j) const { return j - 1; }
    Index right(int j) const { return n + j - 1; }
    Index zero_mode() const { return 2 * n; }
    Index atom() const { return 2 * n + 1; }

    std::vector<Index> left_sites() const { return BasisLayout(n, 0).left_sites(); }
    std::vector<Index> right_sites() const {
        std::vector<Index> out;
        for (int j = 1; j <= n; ++j) out.push_back(right(j));
        return out;
    }
};

inline EffectiveModel build_effective_hamiltonian(const SystemConfig &config) {
    config.validate();
    const int N = config.channel.N;
    const int z = zero_mode_index(N);
    const int n = config.n();
    const auto g = register_couplings(n, config.g0());

    EffectiveModel model;
    model.n = n;
    model.matrix = Eigen::MatrixXd::Zero(model.dim(), model.dim());
    auto bond = [&model](Index a, Index b, double value) { model.matrix(a, b) = model.matrix(b, a) = value; };

    for (int j = 1; j < n; ++j) {
        bond(model.left(j), model.left(j + 1), g[static_cast<std::size_t>(j - 1)]);
        bond(model.right(j), model.right(j + 1), g[static_cast<std::size_t>(j - 1)]);
    }
    const double interface = config.g_I * channel_mode(1, z, N);
    const double right_sign = (z - 1) % 2 == 0 ? 1.0 : -1.0;
    bond(model.left(n), model.zero_mode(), interface);
    bond(model.right(n), model.zero_mode(), right_sign * interface);
    bond(model.zero_mode(), model.atom(),
         config.channel.active_atom_coupling() * channel_mode(config.channel.atom_site, z, N));
    return model;
}

/// Register-only hopping matrix A: tridiagonal with off-diagonals g_1..g_{n-1}.
/// A is similar to 2 g0 S_x for spin (n-1)/2, hence its spectrum is linear.
struct RegisterCouplingMatrix {
    Eigen::MatrixXd A;
};

inline RegisterCouplingMatrix register_coupling_matrix(int n, double g0) {
    const auto g = register_couplings(n, g0);
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (int j = 0; j + 1 < n; ++j) a(j, j + 1) = a(j + 1, j) = g[static_cast<std::size_t>(j)];
    return RegisterCouplingMatrix{std::move(a)};
}

struct MirrorCheck {
    Eigen::MatrixXcd evolution;  ///< exp(i A tau), tau = pi / g0
    double deviation = 0.0;      ///< max-norm distance from (-1)^{n-1} I
};

inline MirrorCheck mirror_propagator_check(int n, double g0) {
    const auto a = register_coupling_matrix(n, g0);
    const double tau = std::numbers::pi / g0;
    MirrorCheck check;
    // exp(+i A tau) is the propagator run backwards.
    check.evolution = propagator(spectral_decompose(a.A), -tau);
    const double sign = (n - 1) % 2 == 0 ? 1.0 : -1.0;
    const Eigen::MatrixXcd expected = sign * Eigen::MatrixXcd::Identity(n, n);
    check.deviation = (check.evolution - expected).cwiseAbs().maxCoeff();
    return check;
}

struct DressedDoublet {
    double omega2 = 0.0;  ///< splitting of the doublet
    double lower = 0.0;
    double upper = 0.0;
    bool m_parity_ok = false;  ///< false: the atom sits on a node of the zero mode
};

/// Eigenvalues of the {f_z, |e>} block. An uncoupled atom, or one on a node of
/// the zero mode (m even), leaves the doublet degenerate at zero.
inline DressedDoublet dressed_splitting(const SystemConfig &config) {
    config.validate();
    const int N = config.channel.N;
    const int z = zero_mode_index(N);
    const int m = config.channel.atom_site;
    const double coupling = config.channel.active_atom_coupling() * channel_mode(m, z, N);
    Eigen::Matrix2d block;
    block << 0.0, coupling, coupling, 0.0;
    const auto es = spectral_decompose(block);
    return DressedDoublet{es.energies(1) - es.energies(0), es.energies(0), es.energies(1), m % 2 == 1};
}

}  // namespace ccaswitch
