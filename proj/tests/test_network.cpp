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


#include <algorithm>
#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "ccaswitch/metrics.hpp"
#include "ccaswitch/network.hpp"
#include "support.hpp"

namespace ccaswitch {
namespace {

Eigen::VectorXcd boundary_alpha(int n) {
    Eigen::VectorXcd alpha = Eigen::VectorXcd::Zero(n);
    alpha(n - 1) = 1.0;
    return alpha;
}

Eigen::VectorXcd uniform_alpha(int n) { return Eigen::VectorXcd::Constant(n, 1.0 / std::sqrt(double(n))); }

double fig4_tau() { return std::numbers::pi / resonant_g0(1e-4, 2, 7); }

TEST(Network, Fig4TopologyShape) {
    const auto [topology, schedule] = fig4_scenario();
    EXPECT_EQ(topology.registers.size(), 5u);
    EXPECT_EQ(topology.channels.size(), 8u);
    for (std::size_t r = 0; r < 5; ++r) EXPECT_GE(topology.degree(r), 3u) << r;
    EXPECT_EQ(topology.dim(), 74);
    EXPECT_EQ(build_network_hamiltonian(topology, schedule.intervals[0].atom_coupled).rows(), 74);
    ASSERT_EQ(schedule.intervals.size(), 6u);
    EXPECT_NEAR(schedule.total_duration(), 6.0 * fig4_tau(), 1e-9 * fig4_tau());
    const std::vector<std::pair<std::size_t, std::size_t>> path = {{0, 1}, {1, 2}, {2, 3}, {3, 4}};
    const std::vector<std::size_t> opened = {0, 4, 5, 6};
    for (std::size_t k = 0; k < 4; ++k) {
        const auto &ch = topology.channels[opened[k]];
        EXPECT_EQ(std::minmax(ch.a, ch.b), std::minmax(path[k].first, path[k].second));
        const auto &iv = schedule.intervals[k + 1];
        EXPECT_EQ(std::count(iv.atom_coupled.begin(), iv.atom_coupled.end(), false), 1);
        EXPECT_FALSE(iv.atom_coupled[opened[k]]);
    }
}

TEST(Network, TwoRegisterReductionIsAPermutation) {
    const auto c = make_resonant_system(7, 2, 3, 0.05, 1e-3, true);
    const auto topology = network_from_system(c);
    const Eigen::MatrixXd net = build_network_hamiltonian(topology, {true});
    const Eigen::MatrixXd full = build_full_hamiltonian(c);
    const BasisLayout b(c);
    // Map network index -> full index.
    std::vector<Index> map;
    for (int j = 1; j <= 2; ++j) map.push_back(b.left(j));
    for (int j = 1; j <= 2; ++j) map.push_back(b.right(j));
    for (int i = 1; i <= 7; ++i) map.push_back(b.channel(i));
    map.push_back(b.atom());
    ASSERT_EQ(Index(map.size()), net.rows());
    for (Index i = 0; i < net.rows(); ++i)
        for (Index j = 0; j < net.cols(); ++j) EXPECT_EQ(net(i, j), full(map[i], map[j])) << i << "," << j;
}

TEST(Network, TwoRegisterReductionReproducesTransmission) {
    const auto c = make_resonant_system(7, 2, 3, 0.0, 1e-3, false);
    const double tau = transfer_time(c);
    const auto es = spectral_decompose(build_full_hamiltonian(c));
    const double direct = average_fidelity(register_amplitudes(es, BasisLayout(c), Side::right, tau).values);
    const Schedule schedule{{{tau, {false}}}};
    const std::vector<double> times = {tau};
    const auto trace = simulate_schedule(network_from_system(c), schedule, 0, boundary_alpha(2), times);
    EXPECT_NEAR(trace.fidelity[1][0], direct, 1e-12);
}

TEST(Network, EmptyScheduleGivesSingleSample) {
    const auto [topology, schedule] = fig4_scenario();
    const std::vector<double> times = {0.0, 1.0};
    const auto trace = simulate_schedule(topology, Schedule{}, 0, boundary_alpha(2), times);
    ASSERT_EQ(trace.times.size(), 1u);
    EXPECT_EQ(trace.times[0], 0.0);
    EXPECT_EQ(trace.fidelity[0][0], 1.0);
    for (std::size_t r = 1; r < 5; ++r) EXPECT_EQ(trace.fidelity[r][0], 0.0);
}

TEST(Network, ClosedNetworkStoresThePhoton) {
    // All atoms coupled: the photon stays in R1. Its population and the
    // fidelity at whole multiples of tau (where the register's own
    // evolution returns to a signed identity) stay close to one.
    auto [topology, schedule] = fig4_scenario();
    const double tau = fig4_tau();
    for (auto &iv : schedule.intervals) std::fill(iv.atom_coupled.begin(), iv.atom_coupled.end(), true);
    const double floor = 1.0 - 10.0 * std::pow(1e-4 / 0.05, 2);
    const auto grid = uniform_grid(6.0 * tau, 120);
    const auto trace = simulate_schedule(topology, schedule, 0, uniform_alpha(2), grid);
    for (std::size_t s = 0; s < grid.size(); ++s) {
        EXPECT_GE(trace.population[0][s], floor) << s;
        for (std::size_t r = 1; r < 5; ++r) EXPECT_LT(trace.fidelity[r][s], 1e-3) << r << " " << s;
        if (s % 20 == 0) {
            EXPECT_GE(trace.fidelity[0][s], floor) << s;
        }
    }
}

TEST(Network, ProbabilityConservedAndFidelitiesBounded) {
    const auto [topology, schedule] = fig4_scenario();
    const auto grid = uniform_grid(schedule.total_duration(), 60);
    const auto trace = simulate_schedule(topology, schedule, 0, uniform_alpha(2), grid);
    for (std::size_t s = 0; s < grid.size(); ++s) {
        EXPECT_NEAR(trace.total_probability[s], 1.0, 1e-9);
        for (std::size_t r = 0; r < 5; ++r) {
            EXPECT_GE(trace.fidelity[r][s], 0.0);
            EXPECT_LE(trace.fidelity[r][s], 1.0 + 1e-10);
        }
    }
}

TEST(Network, SequentialHandOff) {
    const auto [topology, schedule] = fig4_scenario();
    const double tau = fig4_tau();
    std::vector<double> ends;
    for (int k = 1; k <= 6; ++k) ends.push_back(k * tau);
    ends.back() = schedule.total_duration();
    const auto trace = simulate_schedule(topology, schedule, 0, boundary_alpha(2), ends);
    const std::vector<std::size_t> expected = {0, 1, 2, 3, 4, 4};
    for (std::size_t k = 0; k < ends.size(); ++k) {
        std::size_t best = 0;
        for (std::size_t r = 1; r < 5; ++r)
            if (trace.fidelity[r][k] > trace.fidelity[best][k]) best = r;
        EXPECT_EQ(best, expected[k]) << "end of interval " << k + 1;
    }
    EXPECT_GE(trace.fidelity[4][5], 0.99);
}

TEST(Network, ClosedChannelsIsolateAdjacentRegisters) {
    // Over one tau with every atom coupled, probability leaving R1 stays
    // below 10 (g_I/J_I)^2.
    auto [topology, schedule] = fig4_scenario();
    const double tau = fig4_tau();
    const Schedule closed{{{tau, std::vector<bool>(8, true)}}};
    const auto grid = uniform_grid(tau, 40);
    const auto trace = simulate_schedule(topology, closed, 0, uniform_alpha(2), grid);
    for (std::size_t s = 0; s < grid.size(); ++s) {
        EXPECT_LE(1.0 - trace.population[0][s], 10.0 * std::pow(1e-4 / 0.05, 2)) << s;
    }
}

TEST(Network, ValidationErrors) {
    auto [topology, schedule] = fig4_scenario();
    auto dangling = topology;
    dangling.channels[0].b = 9;
    EXPECT_THROW(dangling.validate(), ValidationError);
    auto loop = topology;
    loop.channels[0].b = loop.channels[0].a;
    EXPECT_THROW(loop.validate(), ValidationError);
    NetworkTopology split;
    split.registers = {{"A", {2, 0.01}}, {"B", {2, 0.01}}, {"C", {2, 0.01}}};
    split.channels = {{"X", ChannelSpec{7, 1.0, 3, 0.05, true}, 0, 1, 1e-3}};
    EXPECT_THROW(split.validate(), ValidationError);

    const auto alpha = boundary_alpha(2);
    const std::vector<double> t0 = {0.0};
    auto short_schedule = schedule;
    short_schedule.intervals[2].atom_coupled.pop_back();
    EXPECT_THROW(simulate_schedule(topology, short_schedule, 0, alpha, t0), ValidationError);
    EXPECT_THROW(build_network_hamiltonian(topology, std::vector<bool>(7, true)), ValidationError);
    EXPECT_THROW(simulate_schedule(topology, schedule, 5, alpha, t0), ValidationError);
    EXPECT_THROW(simulate_schedule(topology, schedule, 0, Eigen::VectorXcd::Ones(2), t0), ValidationError);
    auto bad_duration = schedule;
    bad_duration.intervals[0].duration = 0.0;
    EXPECT_THROW(simulate_schedule(topology, bad_duration, 0, alpha, t0), ValidationError);
}

TEST(Network, UniformGrid) {
    const auto g = uniform_grid(6.0, 600);
    ASSERT_EQ(g.size(), 601u);
    EXPECT_EQ(g.front(), 0.0);
    EXPECT_EQ(g.back(), 6.0);
    EXPECT_THROW(uniform_grid(1.0, 0), ValidationError);
}

}  // namespace
}  // namespace ccaswitch
