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


#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "ccaswitch/model.hpp"
#include "support.hpp"

namespace ccaswitch {
namespace {

using std::numbers::pi;

TEST(RegisterCouplings, FormulaValues) {
    const auto g2 = register_couplings(2, 1.0);
    ASSERT_EQ(g2.size(), 2u);
    EXPECT_DOUBLE_EQ(g2[0], 1.0);
    EXPECT_NEAR(g2[1], std::sqrt(6.0) / 2.0, 1e-15);
    const auto g1 = register_couplings(1, 1.0);
    ASSERT_EQ(g1.size(), 1u);
    EXPECT_NEAR(g1[0], std::sqrt(2.0) / 2.0, 1e-15);
}

TEST(RegisterCouplings, RejectsInvalidInput) {
    EXPECT_THROW(register_couplings(0, 1.0), ValidationError);
    EXPECT_THROW(register_couplings(2, 0.0), ValidationError);
    EXPECT_THROW(register_couplings(2, -1.0), ValidationError);
}

TEST(RegisterSpectrum, SmallCases) {
    EXPECT_EQ(register_spectrum(2, 1.0), (std::vector<double>{-1.0, 1.0}));
    EXPECT_EQ(register_spectrum(3, 1.0), (std::vector<double>{-2.0, 0.0, 2.0}));
}

TEST(RegisterSpectrum, UnitSpacingAndSymmetry) {
    for (int n = 1; n <= 20; ++n) {
        const double g0 = 0.37;
        const auto lambda = register_spectrum(n, g0);
        for (int q = 0; q + 1 < n; ++q) EXPECT_NEAR((lambda[q + 1] - lambda[q]) / (2.0 * g0), 1.0, 1e-14);
        for (int q = 0; q < n; ++q) EXPECT_NEAR(lambda[q], -lambda[n - 1 - q], 1e-14);
    }
}

TEST(ChannelModes, FormulaValues) {
    EXPECT_NEAR(channel_mode(1, 4, 7), 0.5, 1e-15);
    EXPECT_EQ(channel_energy(4, 7, 1.0), 0.0);
    EXPECT_NEAR(channel_mode(1, 1, 7), 0.5 * std::sin(pi / 8.0), 1e-15);
    EXPECT_NEAR(channel_mode(1, 1, 7), 0.191342, 1e-6);
}

TEST(ChannelModes, RejectsOutOfRange) {
    EXPECT_THROW(channel_mode(0, 1, 7), ValidationError);
    EXPECT_THROW(channel_mode(1, 8, 7), ValidationError);
    EXPECT_THROW(channel_energy(0, 7), ValidationError);
    EXPECT_THROW(channel_energy(8, 7), ValidationError);
}

TEST(ChannelModes, AgreeWithDirectCosineForm) {
    for (int N : {1, 2, 7, 30, 101}) {
        for (int k = 1; k <= N; ++k) {
            EXPECT_NEAR(channel_energy(k, N, 1.3), 2.6 * std::cos(k * pi / (N + 1)), 1e-13);
            for (int i = 1; i <= N; ++i) {
                EXPECT_NEAR(channel_mode(i, k, N), std::sqrt(2.0 / (N + 1)) * std::sin(i * k * pi / (N + 1)), 1e-13);
            }
        }
    }
}

TEST(ChannelModes, OrthonormalSpectrallySymmetricAndDiagonalizing) {
    for (int N : {1, 3, 7, 20, 101}) {
        Eigen::MatrixXd psi(N, N);
        for (int i = 1; i <= N; ++i)
            for (int k = 1; k <= N; ++k) psi(i - 1, k - 1) = channel_mode(i, k, N);
        EXPECT_LT((psi.transpose() * psi - Eigen::MatrixXd::Identity(N, N)).cwiseAbs().maxCoeff(), 1e-12) << N;

        Eigen::VectorXd lambda(N);
        for (int k = 1; k <= N; ++k) lambda(k - 1) = channel_energy(k, N, 1.0);
        for (int k = 1; k <= N; ++k) EXPECT_NEAR(lambda(k - 1), -lambda(N - k), 1e-12);
        for (int k = 1; k < N; ++k) EXPECT_GT(lambda(k - 1), lambda(k));

        const Eigen::MatrixXd diag = psi.transpose() * channel_hamiltonian(N, 1.0) * psi;
        EXPECT_LT((diag - Eigen::MatrixXd(lambda.asDiagonal())).cwiseAbs().maxCoeff(), 1e-10) << N;
    }
}

TEST(ZeroMode, IndexAndParity) {
    EXPECT_EQ(zero_mode_index(7), 4);
    EXPECT_EQ(zero_mode_index(101), 51);
    EXPECT_THROW(zero_mode_index(6), ValidationError);
    try {
        zero_mode_index(6);
    } catch (const ValidationError &e) {
        EXPECT_NE(std::string(e.what()).find("no zero mode"), std::string::npos);
    }
}

TEST(ResonantG0, FormulaValues) {
    EXPECT_NEAR(resonant_g0(0.1, 2, 7), 0.1 * 0.5 * 2.0 / std::sqrt(6.0), 1e-16);
    EXPECT_NEAR(resonant_g0(0.1, 2, 7), 0.040825, 1e-6);
    EXPECT_NEAR(resonant_g0(1.0, 1, 7), 0.70711, 1e-5);
    EXPECT_THROW(resonant_g0(0.1, 2, 8), ValidationError);
    EXPECT_THROW(resonant_g0(0.0, 2, 7), ValidationError);
}

TEST(ResonantG0, RoundTripMatchesInterfaceCoupling) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> log_gi(-5.0, 0.0);
    for (int trial = 0; trial < 400; ++trial) {
        const int n = 1 + int(rng() % 20);
        const int N = 2 * int(rng() % 101) + 1;
        const double g_I = std::pow(10.0, log_gi(rng));
        const double g0 = resonant_g0(g_I, n, N);
        const double g_n = register_couplings(n, g0).back();
        const double target = g_I * channel_mode(1, zero_mode_index(N), N);
        EXPECT_NEAR(g_n, target, 8.0 * std::numeric_limits<double>::epsilon() * std::abs(target));
    }
}

TEST(BasisLayout, BijectiveAndOrdered) {
    const BasisLayout b(3, 5);
    EXPECT_EQ(b.dim(), 12);
    std::vector<Index> all;
    for (int j = 1; j <= 3; ++j) all.push_back(b.left(j));
    for (int i = 1; i <= 5; ++i) all.push_back(b.channel(i));
    for (int j = 1; j <= 3; ++j) all.push_back(b.right(j));
    all.push_back(b.atom());
    for (std::size_t k = 0; k < all.size(); ++k) EXPECT_EQ(all[k], Index(k));
}

TEST(FullHamiltonian, SmallestInstanceByHand) {
    SystemConfig c;
    c.left = c.right = RegisterSpec{1, 0.5};
    c.channel = ChannelSpec{1, 1.0, 1, 0.0, false};
    c.g_I = 0.3;
    const Eigen::MatrixXd h = build_full_hamiltonian(c);
    Eigen::MatrixXd expected = Eigen::MatrixXd::Zero(4, 4);
    expected(0, 1) = expected(1, 0) = 0.3;
    expected(1, 2) = expected(2, 1) = 0.3;
    EXPECT_EQ(h, expected);
}

TEST(FullHamiltonian, StructureAndBondCount) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        const auto c = testing::random_config(rng, 41, 8);
        const Eigen::MatrixXd h = build_full_hamiltonian(c);
        const BasisLayout b(c);
        ASSERT_EQ(h.rows(), b.dim());
        EXPECT_EQ(h, h.transpose());
        EXPECT_EQ(h.diagonal().cwiseAbs().maxCoeff(), 0.0);
        const int n = c.n();
        const int N = c.channel.N;
        const bool atom = c.channel.atom_coupled && c.channel.J_I > 0.0;
        int pairs = 0;
        for (Index i = 0; i < h.rows(); ++i)
            for (Index j = i + 1; j < h.cols(); ++j) pairs += h(i, j) != 0.0;
        EXPECT_EQ(pairs, 2 * (n - 1) + (N - 1) + 2 + (atom ? 1 : 0));
        EXPECT_EQ(h(b.left(n), b.channel(1)), c.g_I);
        EXPECT_EQ(h(b.right(n), b.channel(N)), c.g_I);
        if (atom) {
            EXPECT_EQ(h(b.channel(c.channel.atom_site), b.atom()), c.channel.J_I);
        }
        const auto g = register_couplings(n, c.g0());
        for (int j = 1; j < n; ++j) {
            EXPECT_EQ(h(b.left(j), b.left(j + 1)), g[j - 1]);
            EXPECT_EQ(h(b.right(j), b.right(j + 1)), g[j - 1]);
        }
    }
}

/// Left/right reflection: l_j <-> r_j, c_i <-> c_{N+1-i}, atom fixed.
Eigen::MatrixXd mirror_permutation(const BasisLayout &b) {
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(b.dim(), b.dim());
    for (int j = 1; j <= b.n; ++j) {
        p(b.left(j), b.right(j)) = 1.0;
        p(b.right(j), b.left(j)) = 1.0;
    }
    for (int i = 1; i <= b.N; ++i) p(b.channel(i), b.channel(b.N + 1 - i)) = 1.0;
    p(b.atom(), b.atom()) = 1.0;
    return p;
}

TEST(FullHamiltonian, MirrorSymmetry) {
    for (bool centred : {false, true}) {
        auto c = make_resonant_system(7, 2, centred ? 4 : 3, centred ? 0.05 : 0.0, 1e-3, centred);
        const Eigen::MatrixXd h = build_full_hamiltonian(c);
        const Eigen::MatrixXd m = mirror_permutation(BasisLayout(c));
        EXPECT_EQ(h * m - m * h, Eigen::MatrixXd::Zero(h.rows(), h.cols()));
    }
    auto off = make_resonant_system(7, 2, 3, 0.05, 1e-3, true);
    const Eigen::MatrixXd h = build_full_hamiltonian(off);
    const Eigen::MatrixXd m = mirror_permutation(BasisLayout(off));
    EXPECT_GT((h * m - m * h).cwiseAbs().maxCoeff(), 0.0);
}

TEST(Validity, Frequencies) {
    const auto c = make_resonant_system(7, 2, 3, 0.05, 1e-3, true);
    const auto v = validity_report(c);
    EXPECT_NEAR(v.omega1, 2.0 * std::cos(3.0 * pi / 8.0), 1e-14);
    EXPECT_NEAR(v.omega1, 0.76537, 1e-5);
    EXPECT_NEAR(v.omega0, 2.0 * c.g0(), 1e-15);
    EXPECT_NEAR(v.omega2, 0.05, 1e-15);
    EXPECT_TRUE(v.weak_coupling);
    EXPECT_TRUE(v.switch_regime);
    EXPECT_TRUE(v.m_parity_ok);
}

TEST(Validity, UncoupledAndEvenSite) {
    EXPECT_EQ(validity_report(make_resonant_system(7, 2, 3, 0.0, 1e-3, true)).omega2, 0.0);
    EXPECT_EQ(validity_report(make_resonant_system(7, 2, 3, 0.05, 1e-3, false)).omega2, 0.0);
    const auto even = validity_report(make_resonant_system(7, 2, 2, 0.05, 1e-3, true));
    EXPECT_EQ(even.omega2, 0.0);
    EXPECT_FALSE(even.m_parity_ok);
    EXPECT_TRUE(std::isinf(validity_report(make_resonant_system(1, 1, 1, 0.0, 1e-3, false)).omega1));
}

TEST(Validity, StrongCouplingIsFlagged) {
    EXPECT_FALSE(validity_report(make_resonant_system(7, 2, 3, 0.0, 0.5, false)).weak_coupling);
}

TEST(Validity, EvenChannelRejected) {
    SystemConfig c;
    c.left = c.right = RegisterSpec{2, 0.01};
    c.channel = ChannelSpec{6, 1.0, 3, 0.0, false};
    c.g_I = 1e-3;
    EXPECT_NO_THROW(build_full_hamiltonian(c));
    EXPECT_THROW(validity_report(c), ValidationError);
}

TEST(SystemConfig, Validation) {
    auto c = make_resonant_system(7, 2, 3, 0.05, 1e-3, true);
    auto bad = c;
    bad.right.n = 3;
    EXPECT_THROW(bad.validate(), ValidationError);
    bad = c;
    bad.g_I = 0.0;
    EXPECT_THROW(bad.validate(), ValidationError);
    bad = c;
    bad.channel.atom_site = 8;
    EXPECT_THROW(bad.validate(), ValidationError);
    bad = c;
    bad.channel.J_I = -0.1;
    EXPECT_THROW(bad.validate(), ValidationError);
}

}  // namespace
}  // namespace ccaswitch
