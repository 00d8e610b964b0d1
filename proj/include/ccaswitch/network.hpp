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

// Multi-register networks: several registers joined pairwise by channels,
// each channel carrying its own switchable atom, evolved under a
// piecewise-constant schedule of atom states.

#pragma once

#include <cstddef>
#include <map>
#include <numbers>
#include <queue>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ccaswitch/dynamics.hpp"
#include "ccaswitch/metrics.hpp"
#include "ccaswitch/model.hpp"

namespace ccaswitch {

struct NetworkRegister {
    std::string label;
    RegisterSpec spec;
    friend bool operator==(const NetworkRegister &, const NetworkRegister &) = default;
};

/// Endpoint `a` attaches its boundary cavity d_n to channel cavity 1, endpoint
/// `b` to channel cavity N. The atom_coupled field of `spec` is ignored here;
/// atom states come from the schedule.
struct NetworkChannel {
    std::string label;
    ChannelSpec spec;
    std::size_t a = 0;
    std::size_t b = 1;
    double g_I = 0.0;
    friend bool operator==(const NetworkChannel &, const NetworkChannel &) = default;
};

/// Basis: every register's cavities in order, then for each channel its N
/// cavities followed by its atom.
struct NetworkTopology {
    std::vector<NetworkRegister> registers;
    std::vector<NetworkChannel> channels;

    void validate() const {
        require(registers.size() >= 2, "network: need at least two registers");
        require(!channels.empty(), "network: need at least one channel");
        for (const auto &reg : registers) reg.spec.validate();
        for (const auto &ch : channels) {
            ch.spec.validate();
            require(ch.a < registers.size() && ch.b < registers.size(),
                    "network: channel '" + ch.label + "' has a dangling endpoint");
            require(ch.a != ch.b, "network: channel '" + ch.label + "' connects a register to itself");
            require(ch.g_I > 0.0 && std::isfinite(ch.g_I), "network: channel '" + ch.label + "' needs g_I > 0");
        }
        std::vector<bool> seen(registers.size(), false);
        std::queue<std::size_t> frontier;
        frontier.push(0);
        seen[0] = true;
        while (!frontier.empty()) {
            const auto r = frontier.front();
            frontier.pop();
            for (const auto &ch : channels) {
                for (auto [from, to] : {std::pair{ch.a, ch.b}, std::pair{ch.b, ch.a}}) {
                    if (from == r && !seen[to]) {
                        seen[to] = true;
                        frontier.push(to);
                    }
                }
            }
        }
        for (std::size_t r = 0; r < registers.size(); ++r) {
            require(seen[r], "network: register '" + registers[r].label + "' is not connected");
        }
    }

    Index register_offset(std::size_t r) const {
        Index offset = 0;
        for (std::size_t i = 0; i < r; ++i) offset += registers[i].spec.n;
        return offset;
    }
    Index channel_offset(std::size_t c) const {
        Index offset = register_offset(registers.size());
        for (std::size_t i = 0; i < c; ++i) offset += channels[i].spec.N + 1;
        return offset;
    }
    Index atom_index(std::size_t c) const { return channel_offset(c) + channels[c].spec.N; }
    Index dim() const { return channel_offset(channels.size()); }

    std::vector<Index> register_sites(std::size_t r) const {
        std::vector<Index> sites;
        const Index offset = register_offset(r);
        for (int j = 0; j < registers[r].spec.n; ++j) sites.push_back(offset + j);
        return sites;
    }
    std::size_t degree(std::size_t r) const {
        std::size_t d = 0;
        for (const auto &ch : channels) d += (ch.a == r) + (ch.b == r);
        return d;
    }
    friend bool operator==(const NetworkTopology &, const NetworkTopology &) = default;
};

struct ScheduleInterval {
    double duration = 0.0;
    std::vector<bool> atom_coupled;  ///< one entry per channel
    friend bool operator==(const ScheduleInterval &, const ScheduleInterval &) = default;
};

struct Schedule {
    std::vector<ScheduleInterval> intervals;

    void validate(std::size_t channel_count) const {
        for (std::size_t i = 0; i < intervals.size(); ++i) {
            require(intervals[i].duration > 0.0 && std::isfinite(intervals[i].duration),
                    "schedule: interval " + std::to_string(i) + " needs a positive duration");
            require(intervals[i].atom_coupled.size() == channel_count,
                    "schedule: interval " + std::to_string(i) + " lists " +
                        std::to_string(intervals[i].atom_coupled.size()) + " atom states for " +
                        std::to_string(channel_count) + " channels");
        }
    }
    double total_duration() const {
        double total = 0.0;
        for (const auto &iv : intervals) total += iv.duration;
        return total;
    }
    friend bool operator==(const Schedule &, const Schedule &) = default;
};

inline Eigen::MatrixXd build_network_hamiltonian(const NetworkTopology &topology,
                                                 const std::vector<bool> &atom_coupled) {
    topology.validate();
    require(atom_coupled.size() == topology.channels.size(),
            "build_network_hamiltonian: need one atom state per channel");
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(topology.dim(), topology.dim());
    auto bond = [&h](Index a, Index b, double value) { h(a, b) = h(b, a) = value; };

    for (std::size_t r = 0; r < topology.registers.size(); ++r) {
        const auto &spec = topology.registers[r].spec;
        const auto g = register_couplings(spec.n, spec.g0);
        const Index offset = topology.register_offset(r);
        for (int j = 0; j + 1 < spec.n; ++j) bond(offset + j, offset + j + 1, g[static_cast<std::size_t>(j)]);
    }
    for (std::size_t c = 0; c < topology.channels.size(); ++c) {
        const auto &ch = topology.channels[c];
        const Index offset = topology.channel_offset(c);
        const int N = ch.spec.N;
        for (int i = 0; i + 1 < N; ++i) bond(offset + i, offset + i + 1, ch.spec.g_c);
        const auto boundary = [&](std::size_t r) {
            return topology.register_offset(r) + topology.registers[r].spec.n - 1;
        };
        bond(boundary(ch.a), offset, ch.g_I);
        bond(boundary(ch.b), offset + N - 1, ch.g_I);
        if (atom_coupled[c] && ch.spec.J_I > 0.0) {
            bond(offset + ch.spec.atom_site - 1, topology.atom_index(c), ch.spec.J_I);
        }
    }
    return h;
}

struct FidelityTrace {
    std::vector<double> times;
    std::vector<std::string> labels;                 ///< register labels, column order
    std::vector<std::vector<double>> fidelity;       ///< [register][sample], Haar-averaged
    std::vector<std::vector<double>> population;     ///< [register][sample], for the given alpha
    std::vector<double> total_probability;           ///< [sample], over the whole basis
};

/// Times {i T / points : i = 0..points}.
inline std::vector<double> uniform_grid(double total, std::size_t points) {
    require(points >= 1, "uniform_grid: need at least one interval");
    std::vector<double> grid(points + 1);
    for (std::size_t i = 0; i <= points; ++i) grid[i] = total * double(i) / double(points);
    grid.back() = total;
    return grid;
}

/// Evolves a photon loaded into `source` with amplitudes `alpha` through the
/// schedule. Fidelities F_theta(t) come from the propagator block
/// source -> theta and do not depend on alpha; populations do.
inline FidelityTrace simulate_schedule(const NetworkTopology &topology, const Schedule &schedule,
                                       std::size_t source, const Eigen::VectorXcd &alpha,
                                       std::span<const double> sample_times) {
    topology.validate();
    require(schedule.intervals.empty() || schedule.intervals.front().atom_coupled.size() == topology.channels.size(),
            "simulate_schedule: schedule and topology disagree on the channel count");
    schedule.validate(topology.channels.size());
    require(source < topology.registers.size(), "simulate_schedule: source register out of range");
    const int n = topology.registers[source].spec.n;
    for (const auto &reg : topology.registers) {
        require(reg.spec.n == n, "simulate_schedule: fidelities need registers of equal size");
    }
    require(alpha.size() == n, "simulate_schedule: alpha must have one amplitude per source cavity");
    require(std::abs(alpha.norm() - 1.0) <= kNormTolerance, "simulate_schedule: alpha is not normalized");

    const auto source_sites = topology.register_sites(source);
    Eigen::MatrixXcd initial = Eigen::MatrixXcd::Zero(topology.dim(), n);
    for (int j = 0; j < n; ++j) initial(source_sites[static_cast<std::size_t>(j)], j) = 1.0;

    std::vector<Eigen::MatrixXcd> blocks;
    std::vector<double> times(sample_times.begin(), sample_times.end());
    if (schedule.intervals.empty()) {
        times = {0.0};
        blocks = {initial};
    } else {
        // One eigendecomposition per distinct atom configuration.
        std::map<std::vector<bool>, Eigensystem> cache;
        for (const auto &iv : schedule.intervals) {
            if (!cache.contains(iv.atom_coupled)) {
                cache.emplace(iv.atom_coupled,
                              spectral_decompose(build_network_hamiltonian(topology, iv.atom_coupled)));
            }
        }
        std::vector<Segment> segments;
        for (const auto &iv : schedule.intervals) segments.push_back(Segment{cache.at(iv.atom_coupled), iv.duration});
        blocks = piecewise_evolve_block(segments, initial, times);
    }

    FidelityTrace trace;
    trace.times = times;
    const std::size_t R = topology.registers.size();
    trace.fidelity.assign(R, std::vector<double>(times.size()));
    trace.population.assign(R, std::vector<double>(times.size()));
    trace.total_probability.resize(times.size());
    for (std::size_t r = 0; r < R; ++r) trace.labels.push_back(topology.registers[r].label);

    for (std::size_t s = 0; s < times.size(); ++s) {
        const Eigen::MatrixXcd &u = blocks[s];
        const Eigen::VectorXcd state = u * alpha;
        trace.total_probability[s] = state.squaredNorm();
        for (std::size_t r = 0; r < R; ++r) {
            const auto sites = topology.register_sites(r);
            Eigen::MatrixXcd f(n, n);
            double pop = 0.0;
            for (int j = 0; j < n; ++j) {
                const Index site = sites[static_cast<std::size_t>(j)];
                f.row(j) = u.row(site);
                pop += std::norm(state(site));
            }
            trace.fidelity[r][s] = average_fidelity(f);
            trace.population[r][s] = pop;
        }
    }
    return trace;
}

/// Two registers and one channel laid out as a network (left = R1 = endpoint a).
inline NetworkTopology network_from_system(const SystemConfig &config) {
    config.validate();
    NetworkTopology topology;
    topology.registers = {{"L", config.left}, {"R", config.right}};
    topology.channels = {{"C", config.channel, 0, 1, config.g_I}};
    return topology;
}

struct Fig4Parameters {
    double g_I = 1e-4;
    double J_I = 0.05;
    int N = 7;
    int n = 2;
    int m = 3;
    /// Register pairs (1-based) of channels C1..C8. C1, C5, C6, C7 form the
    /// path R1 -> R2 -> R3 -> R4 -> R5; the other four give every register
    /// degree >= 3.
    std::vector<std::pair<int, int>> endpoints = {{1, 2}, {1, 5}, {1, 3}, {2, 4},
                                                  {2, 3}, {3, 4}, {4, 5}, {3, 5}};
};

/// Five registers, eight channels, six intervals of length tau: all atoms
/// coupled on [0, tau] and (5 tau, 6 tau]; C1, C5, C6, C7 uncoupled one at a
/// time on the intervals in between.
inline std::pair<NetworkTopology, Schedule> fig4_scenario(const Fig4Parameters &p = {}) {
    const double g0 = resonant_g0(p.g_I, p.n, p.N);
    const double tau = std::numbers::pi / g0;

    NetworkTopology topology;
    for (int r = 1; r <= 5; ++r) topology.registers.push_back({"R" + std::to_string(r), RegisterSpec{p.n, g0}});
    for (std::size_t c = 0; c < p.endpoints.size(); ++c) {
        const auto [a, b] = p.endpoints[c];
        topology.channels.push_back(NetworkChannel{"C" + std::to_string(c + 1), ChannelSpec{p.N, 1.0, p.m, p.J_I, true},
                                                   static_cast<std::size_t>(a - 1), static_cast<std::size_t>(b - 1),
                                                   p.g_I});
    }
    topology.validate();

    const std::vector<int> opened = {0, 1, 5, 6, 7, 0};  // 1-based channel, 0 = none
    Schedule schedule;
    for (int c : opened) {
        std::vector<bool> coupled(topology.channels.size(), true);
        if (c > 0) coupled[static_cast<std::size_t>(c - 1)] = false;
        schedule.intervals.push_back({tau, coupled});
    }
    return {topology, schedule};
}

}  // namespace ccaswitch
