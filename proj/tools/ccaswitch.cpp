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

// ccaswitch: command-line driver.
//
//   ccaswitch spectrum --N 7
//   ccaswitch sweep    --scenario scenarios/fig2a.json --out fig2a.csv
//   ccaswitch switch   --N 7 --n 2 --m 3 --JI 0.05 --gI 1e-3 --coupled
//   ccaswitch network  --scenario scenarios/fig4.json --out fig4.csv
//
// Exit status: 0 on success, 2 on invalid input, 1 on anything else.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "ccaswitch/commands.hpp"
#include "ccaswitch/scenario.hpp"

namespace {

using namespace ccaswitch;

constexpr int kExitValidation = 2;

/// Runs `emit` against the file at `path`, or stdout when no path is given.
void with_output(const std::optional<std::string> &path, const std::function<void(std::ostream &)> &emit) {
    if (!path || path->empty() || *path == "-") {
        emit(std::cout);
        return;
    }
    std::ofstream out(*path);
    require(out.good(), "cannot open output file '" + *path + "'");
    emit(out);
    require(out.good(), "failed writing '" + *path + "'");
}

struct SpectrumArgs {
    int N = 0;
    double g_c = 1.0;
    std::string out;
};

struct SweepArgs {
    std::string scenario;
    std::string side = "r";
    int N = 7;
    int n = 2;
    int m = 3;
    double J_I = 0.0;
    double g_I_min = 1e-4;
    double g_I_max = 3e-2;
    int points = 30;
    bool linear = false;
    unsigned threads = 0;
    std::string out;
};

struct SwitchArgs {
    std::string scenario;
    int N = 7;
    int n = 2;
    int m = 3;
    double J_I = 0.0;
    double g_I = 1e-3;
    bool coupled = false;
    std::optional<double> g0;
    double t = 1.0;
    bool absolute_time = false;
    std::size_t mc_samples = 0;
    std::uint64_t seed = 1;
    std::string out;
};

struct NetworkArgs {
    std::string scenario;
    std::string out;
    std::optional<int> sample_points;
};

std::optional<std::string> pick_output(const std::string &flag, const std::optional<std::string> &fallback) {
    if (!flag.empty()) return flag;
    return fallback;
}

void run_spectrum(const SpectrumArgs &a) {
    with_output(pick_output(a.out, std::nullopt), [&](std::ostream &os) { write_spectrum_csv(a.N, a.g_c, os); });
}

void run_sweep_cmd(const SweepArgs &a) {
    SweepRequest req;
    std::optional<std::string> out = pick_output(a.out, std::nullopt);
    if (!a.scenario.empty()) {
        const Scenario s = load_scenario(a.scenario);
        require(s.system.has_value(), a.scenario + ": /system section is required for a sweep");
        require(s.sweep.has_value(), a.scenario + ": /sweep section is required for a sweep");
        req.N = s.system->N;
        req.n = s.system->n;
        req.m = s.system->m;
        req.J_I = s.system->J_I;
        req.side = s.sweep->side;
        req.g_I_min = s.sweep->g_I_min;
        req.g_I_max = s.sweep->g_I_max;
        req.points = s.sweep->points;
        req.log_scale = s.sweep->log_scale;
        out = pick_output(a.out, s.output.path);
    } else {
        req.side = parse_side(a.side);
        req.N = a.N;
        req.n = a.n;
        req.m = a.m;
        req.J_I = a.J_I;
        req.g_I_min = a.g_I_min;
        req.g_I_max = a.g_I_max;
        req.points = a.points;
        req.log_scale = !a.linear;
    }
    req.threads = a.threads > 0 ? a.threads : std::max(1u, std::thread::hardware_concurrency());
    const auto rows = run_sweep(req);
    with_output(out, [&](std::ostream &os) { write_sweep_csv(rows, os); });
}

void run_switch_cmd(const SwitchArgs &a) {
    SystemConfig config;
    double t_units = a.t;
    bool absolute = a.absolute_time;
    if (!a.scenario.empty()) {
        const Scenario s = load_scenario(a.scenario);
        require(s.system.has_value(), a.scenario + ": /system section is required for switch");
        config = to_system_config(*s.system);
        if (s.system->t) t_units = *s.system->t;
        absolute = s.units == TimeUnits::inverse_gc;
    } else {
        SystemSection sys;
        sys.N = a.N;
        sys.n = a.n;
        sys.m = a.m;
        sys.J_I = a.J_I;
        sys.g_I = a.g_I;
        sys.atom_coupled = a.coupled;
        sys.g0 = a.g0;
        config = to_system_config(sys);
    }
    const double t = absolute ? t_units : t_units * transfer_time(config);
    const auto report = compute_switch(config, t, a.mc_samples, a.seed);
    write_switch_text(report, std::cout);
    if (!a.out.empty()) with_output(a.out, [&](std::ostream &os) { write_switch_csv(report, os); });
}

void run_network_cmd(const NetworkArgs &a) {
    const Scenario s = load_scenario(a.scenario);
    require(s.network.has_value(), a.scenario + ": /network section is required for network");
    const auto model = to_network_model(*s.network, s.units);
    const int points = a.sample_points.value_or(s.output.sample_points);
    require(points >= 1, "--samples must be >= 1");
    // Sample on a grid in scenario units so the printed times are exact.
    double total_units = 0.0;
    for (const auto &iv : s.network->schedule) total_units += iv.duration;
    const auto shown = total_units > 0.0 ? uniform_grid(total_units, static_cast<std::size_t>(points))
                                         : std::vector<double>{0.0};
    std::vector<double> grid(shown.size());
    for (std::size_t i = 0; i < shown.size(); ++i) grid[i] = shown[i] * model.time_unit;
    grid.back() = std::min(grid.back(), model.schedule.total_duration());
    const int n = model.topology.registers[model.source].spec.n;
    Eigen::VectorXcd alpha = Eigen::VectorXcd::Zero(n);
    alpha(n - 1) = 1.0;
    const auto trace = simulate_schedule(model.topology, model.schedule, model.source, alpha, grid);
    const std::vector<double> display = trace.times.size() == shown.size() ? shown : std::vector<double>{0.0};
    with_output(pick_output(a.out, s.output.path),
                [&](std::ostream &os) { write_network_csv(trace, display, os); });
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Single-photon switching and routing between coupled-cavity-array registers"};
    app.require_subcommand(1);

    SpectrumArgs spectrum;
    auto *spec_cmd = app.add_subcommand("spectrum", "Bare channel spectrum as CSV (k,Lambda,psi_1k)");
    spec_cmd->add_option("--N", spectrum.N, "Channel cavity count")->required();
    spec_cmd->add_option("--gc", spectrum.g_c, "Intrachannel coupling")->capture_default_str();
    spec_cmd->add_option("--out", spectrum.out, "CSV output path (default stdout)");
    spec_cmd->callback([&] { run_spectrum(spectrum); });

    SweepArgs sweep;
    auto *sweep_cmd = app.add_subcommand("sweep", "Infidelity versus g_I/g_c with the analytic bound");
    sweep_cmd->add_option("--scenario", sweep.scenario, "Scenario JSON with /system and /sweep sections");
    sweep_cmd->add_option("--side", sweep.side, "r: transmission (atom off), l: reflection (atom on)")
        ->capture_default_str();
    sweep_cmd->add_option("--N", sweep.N, "Channel cavity count (odd)")->capture_default_str();
    sweep_cmd->add_option("--n", sweep.n, "Register cavity count")->capture_default_str();
    sweep_cmd->add_option("--m", sweep.m, "Atom cavity (odd)")->capture_default_str();
    sweep_cmd->add_option("--JI", sweep.J_I, "Atom-cavity coupling J_I/g_c")->capture_default_str();
    sweep_cmd->add_option("--gI-min", sweep.g_I_min, "Smallest g_I/g_c")->capture_default_str();
    sweep_cmd->add_option("--gI-max", sweep.g_I_max, "Largest g_I/g_c")->capture_default_str();
    sweep_cmd->add_option("--points", sweep.points, "Number of g_I values")->capture_default_str();
    sweep_cmd->add_flag("--linear", sweep.linear, "Linear rather than logarithmic spacing");
    sweep_cmd->add_option("--threads", sweep.threads, "Worker threads (0: all cores)");
    sweep_cmd->add_option("--out", sweep.out, "CSV output path (default stdout)");
    sweep_cmd->callback([&] { run_sweep_cmd(sweep); });

    SwitchArgs sw;
    auto *switch_cmd = app.add_subcommand("switch", "Amplitudes, fidelities and leakage at one time");
    switch_cmd->add_option("--scenario", sw.scenario, "Scenario JSON with a /system section");
    switch_cmd->add_option("--N", sw.N, "Channel cavity count")->capture_default_str();
    switch_cmd->add_option("--n", sw.n, "Register cavity count")->capture_default_str();
    switch_cmd->add_option("--m", sw.m, "Atom cavity")->capture_default_str();
    switch_cmd->add_option("--JI", sw.J_I, "Atom-cavity coupling J_I/g_c")->capture_default_str();
    switch_cmd->add_option("--gI", sw.g_I, "Register-channel coupling g_I/g_c")->capture_default_str();
    switch_cmd->add_flag("--coupled", sw.coupled, "Atom coupled to its cavity");
    switch_cmd->add_option("--g0", sw.g0, "Override g0 (default: resonance condition)");
    switch_cmd->add_option("--t", sw.t, "Evaluation time in units of tau = pi/g0")->capture_default_str();
    switch_cmd->add_flag("--absolute-time", sw.absolute_time, "Interpret --t in units of 1/g_c");
    switch_cmd->add_option("--mc-samples", sw.mc_samples, "Monte-Carlo cross-check sample count");
    switch_cmd->add_option("--seed", sw.seed, "Monte-Carlo seed")->capture_default_str();
    switch_cmd->add_option("--out", sw.out, "Also write the report as CSV");
    switch_cmd->callback([&] { run_switch_cmd(sw); });

    NetworkArgs net;
    auto *net_cmd = app.add_subcommand("network", "Fidelity traces F_theta(t) of a scheduled network");
    net_cmd->add_option("--scenario", net.scenario, "Scenario JSON with a /network section")->required();
    net_cmd->add_option("--samples", net.sample_points, "Override /output/sample_points");
    net_cmd->add_option("--out", net.out, "CSV output path (default: /output/path, else stdout)");
    net_cmd->callback([&] { run_network_cmd(net); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitValidation;
    } catch (const ValidationError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
