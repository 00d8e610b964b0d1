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

// Computations behind the command-line subcommands, separated from flag
// parsing so they can be driven directly.

#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <optional>
#include <ostream>
#include <span>
#include <thread>
#include <vector>

#include "ccaswitch/csv.hpp"
#include "ccaswitch/dynamics.hpp"
#include "ccaswitch/metrics.hpp"
#include "ccaswitch/model.hpp"
#include "ccaswitch/network.hpp"

namespace ccaswitch {

// ---- spectrum ---------------------------------------------------------------

inline void write_spectrum_csv(int N, double g_c, std::ostream &out) {
    ChannelSpec{N, g_c, 1, 0.0, false}.validate();
    csv::Writer w(out);
    w.header({"k", "Lambda", "psi_1k"});
    for (int k = 1; k <= N; ++k) w.row(k, channel_energy(k, N, g_c), channel_mode(1, k, N));
}

// ---- sweep ------------------------------------------------------------------

struct SweepRequest {
    Side side = Side::right;
    int N = 7;
    int n = 2;
    int m = 3;
    double J_I = 0.0;
    double g_I_min = 1e-4;
    double g_I_max = 1e-2;
    int points = 30;
    bool log_scale = true;
    unsigned threads = 1;

    void validate() const {
        zero_mode_index(N);
        require(n >= 1, "sweep: n must be >= 1");
        require(points >= 1, "sweep: points must be >= 1");
        require(g_I_min > 0.0 && g_I_max >= g_I_min, "sweep: need 0 < g_I_min <= g_I_max");
        if (side == Side::left) {
            require(J_I > 0.0, "sweep: side l needs J_I > 0");
            require(m % 2 == 1, "sweep: side l needs an odd atom site m");
        }
        ChannelSpec{N, 1.0, m, J_I, side == Side::left}.validate();
    }
};

struct SweepRow {
    double g_I_ratio = 0.0;
    double xi_numeric = 0.0;
    double xi_perturbative = 0.0;  ///< 2 Delta_d
    double xi_bound = 0.0;
    bool weak_coupling = false;
};

inline std::vector<double> sweep_grid(const SweepRequest &req) {
    std::vector<double> grid(static_cast<std::size_t>(req.points));
    if (req.points == 1) {
        grid[0] = req.g_I_min;
        return grid;
    }
    for (int i = 0; i < req.points; ++i) {
        const double u = double(i) / double(req.points - 1);
        grid[static_cast<std::size_t>(i)] =
            req.log_scale ? std::exp(std::log(req.g_I_min) + u * (std::log(req.g_I_max) - std::log(req.g_I_min)))
                          : req.g_I_min + u * (req.g_I_max - req.g_I_min);
    }
    grid.front() = req.g_I_min;
    grid.back() = req.g_I_max;
    return grid;
}

/// Transmission (side r) runs with the atom uncoupled; reflection (side l)
/// with it coupled. g0 follows the resonance condition, t = pi/g0.
inline SystemConfig sweep_system(const SweepRequest &req, double g_I) {
    return make_resonant_system(req.N, req.n, req.m, req.side == Side::left ? req.J_I : 0.0, g_I,
                                req.side == Side::left);
}

/// Numerically simulated infidelity of the selected operation at t = tau.
inline double simulated_infidelity(const SystemConfig &config, Side side) {
    const auto es = spectral_decompose(build_full_hamiltonian(config));
    return average_fidelity(register_amplitudes(es, BasisLayout(config), side, transfer_time(config)), side).xi;
}

inline SweepRow sweep_point(const SweepRequest &req, double g_I) {
    const auto config = sweep_system(req, g_I);
    SweepRow row;
    row.g_I_ratio = g_I / config.channel.g_c;
    row.xi_numeric = simulated_infidelity(config, req.side);
    row.xi_perturbative = 2.0 * perturbative_leakage(config, req.side).delta;
    row.xi_bound = infidelity_upper_bound(config, req.side);
    const auto validity = validity_report(config);
    row.weak_coupling = validity.weak_coupling && (req.side == Side::right || validity.switch_regime);
    return row;
}

/// Rows come back in grid order whatever the thread count.
inline std::vector<SweepRow> run_sweep(const SweepRequest &req) {
    req.validate();
    const auto grid = sweep_grid(req);
    std::vector<SweepRow> rows(grid.size());
    const unsigned workers = std::clamp<unsigned>(req.threads, 1u, static_cast<unsigned>(grid.size()));
    if (workers == 1) {
        for (std::size_t i = 0; i < grid.size(); ++i) rows[i] = sweep_point(req, grid[i]);
        return rows;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(workers);
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t i = next++; i < grid.size(); i = next++) rows[i] = sweep_point(req, grid[i]);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
    }
    for (auto &e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return rows;
}

inline void write_sweep_csv(const std::vector<SweepRow> &rows, std::ostream &out) {
    csv::Writer w(out);
    w.header({"g_I_ratio", "xi_numeric", "xi_perturbative", "xi_bound", "weak_coupling"});
    for (const auto &r : rows) w.row(r.g_I_ratio, r.xi_numeric, r.xi_perturbative, r.xi_bound, r.weak_coupling);
}

// ---- switch -----------------------------------------------------------------

struct SwitchReport {
    SystemConfig config;
    double time = 0.0;
    double tau = 0.0;
    AmplitudeMatrix reflected;    ///< l -> l
    AmplitudeMatrix transmitted;  ///< l -> r
    FidelityResult F_l;
    FidelityResult F_r;
    std::vector<double> eps_l;
    std::vector<double> eps_r;
    ValidityReport validity;
    std::optional<MonteCarloEstimate> mc_l;
    std::optional<MonteCarloEstimate> mc_r;
};

inline SwitchReport compute_switch(const SystemConfig &config, double t, std::size_t mc_samples = 0,
                                   std::uint64_t seed = 0) {
    config.validate();
    const BasisLayout basis(config);
    const auto es = spectral_decompose(build_full_hamiltonian(config));
    SwitchReport r;
    r.config = config;
    r.time = t;
    r.tau = transfer_time(config);
    r.reflected = register_amplitudes(es, basis, Side::left, t);
    r.transmitted = register_amplitudes(es, basis, Side::right, t);
    r.F_l = average_fidelity(r.reflected, Side::left);
    r.F_r = average_fidelity(r.transmitted, Side::right);
    r.eps_l = site_leakage(r.reflected);
    r.eps_r = site_leakage(r.transmitted);
    r.validity = validity_report(config);
    if (mc_samples > 0) {
        r.mc_l = monte_carlo_fidelity(es, basis, Side::left, t, mc_samples, seed);
        r.mc_r = monte_carlo_fidelity(es, basis, Side::right, t, mc_samples, seed);
    }
    return r;
}

inline void write_switch_text(const SwitchReport &r, std::ostream &out) {
    const auto &c = r.config;
    out << std::setprecision(10);
    out << "system: N=" << c.channel.N << " n=" << c.n() << " m=" << c.channel.atom_site << " g_I=" << c.g_I
        << " g0=" << c.g0() << " J_I=" << c.channel.J_I << " atom=" << (c.channel.atom_coupled ? "coupled" : "uncoupled")
        << "\n";
    out << "time: t=" << r.time << " (t/tau=" << r.time / r.tau << ", tau=" << r.tau << ")\n";
    out << "validity: Omega0=" << r.validity.omega0 << " Omega1=" << r.validity.omega1
        << " Omega2=" << r.validity.omega2 << " weak_coupling=" << r.validity.weak_coupling
        << " switch_regime=" << r.validity.switch_regime << " m_parity_ok=" << r.validity.m_parity_ok << "\n";
    for (const auto *side : {&r.F_l, &r.F_r}) {
        const bool left = side->side == Side::left;
        const auto &amps = left ? r.reflected : r.transmitted;
        const auto &eps = left ? r.eps_l : r.eps_r;
        out << (left ? "reflection" : "transmission") << ": F=" << side->F << " xi=" << side->xi << "\n";
        for (Eigen::Index j = 0; j < amps.rows(); ++j) {
            out << "  f(" << (left ? "l" : "r") << j + 1 << ",l" << j + 1 << ") = " << amps(j, j).real()
                << (amps(j, j).imag() < 0 ? " - " : " + ") << std::abs(amps(j, j).imag()) << "i  eps=" << eps[std::size_t(j)]
                << "\n";
        }
        const auto &mc = left ? r.mc_l : r.mc_r;
        if (mc) out << "  monte-carlo F=" << mc->mean << " +- " << mc->standard_error << " (" << mc->samples << " samples)\n";
    }
}

inline void write_switch_csv(const SwitchReport &r, std::ostream &out) {
    csv::Writer w(out);
    w.header({"side", "j", "f_re", "f_im", "epsilon", "F", "xi"});
    for (const auto *side : {&r.F_l, &r.F_r}) {
        const bool left = side->side == Side::left;
        const auto &amps = left ? r.reflected : r.transmitted;
        const auto &eps = left ? r.eps_l : r.eps_r;
        for (Eigen::Index j = 0; j < amps.rows(); ++j) {
            w.row(to_string(side->side), static_cast<int>(j + 1), amps(j, j).real(), amps(j, j).imag(),
                  eps[std::size_t(j)], side->F, side->xi);
        }
    }
}

// ---- network ----------------------------------------------------------------

/// One row per sample: the display time (scenario units) then F per register.
inline void write_network_csv(const FidelityTrace &trace, std::span<const double> display_times, std::ostream &out) {
    require(display_times.size() == trace.times.size(), "write_network_csv: one display time per sample");
    out << "t";
    for (const auto &label : trace.labels) out << ",F_" << label;
    out << '\n';
    for (std::size_t s = 0; s < trace.times.size(); ++s) {
        out << csv::format(display_times[s]);
        for (const auto &series : trace.fidelity) out << ',' << csv::format(series[s]);
        out << '\n';
    }
}

}  // namespace ccaswitch
