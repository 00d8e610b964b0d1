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

// Scenario files: JSON documents describing a two-register system, a
// coupling sweep, and/or a multi-register network with its schedule.
//
// Energies are ratios to g_c. Times are in units of tau = pi/g0 when
// "units" is "tau", otherwise in units of 1/g_c ("inverse_gc").

#pragma once

#include <fstream>
#include <initializer_list>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ccaswitch/error.hpp"
#include "ccaswitch/metrics.hpp"
#include "ccaswitch/model.hpp"
#include "ccaswitch/network.hpp"

namespace ccaswitch {

enum class TimeUnits { tau, inverse_gc };

struct SystemSection {
    int N = 7;
    int n = 2;
    int m = 1;
    double J_I = 0.0;
    std::optional<double> g_I;
    bool atom_coupled = false;
    std::optional<double> g0;  ///< overrides the resonance condition
    std::optional<double> t;   ///< evaluation time, scenario units
    friend bool operator==(const SystemSection &, const SystemSection &) = default;
};

struct SweepSection {
    Side side = Side::right;
    double g_I_min = 1e-4;
    double g_I_max = 1e-2;
    int points = 30;
    bool log_scale = true;
    friend bool operator==(const SweepSection &, const SweepSection &) = default;
};

struct RegisterEntry {
    std::string label;
    int n = 2;
    std::optional<double> g0;  ///< default: resonance with the first attached channel
    friend bool operator==(const RegisterEntry &, const RegisterEntry &) = default;
};

struct ChannelEntry {
    std::string label;
    std::string a;
    std::string b;
    int N = 7;
    int m = 1;
    double J_I = 0.0;
    double g_I = 1e-4;
    double g_c = 1.0;
    friend bool operator==(const ChannelEntry &, const ChannelEntry &) = default;
};

struct IntervalEntry {
    double duration = 1.0;
    std::vector<std::string> uncoupled;  ///< channels whose atom is off; all others on
    friend bool operator==(const IntervalEntry &, const IntervalEntry &) = default;
};

struct NetworkSection {
    std::vector<RegisterEntry> registers;
    std::vector<ChannelEntry> channels;
    std::vector<IntervalEntry> schedule;
    std::string source;
    friend bool operator==(const NetworkSection &, const NetworkSection &) = default;
};

struct OutputSection {
    std::optional<std::string> path;
    int sample_points = 600;
    friend bool operator==(const OutputSection &, const OutputSection &) = default;
};

struct Scenario {
    TimeUnits units = TimeUnits::tau;
    std::optional<SystemSection> system;
    std::optional<SweepSection> sweep;
    std::optional<NetworkSection> network;
    OutputSection output;
    friend bool operator==(const Scenario &, const Scenario &) = default;
};

namespace detail {

using json = nlohmann::ordered_json;

class ObjectReader {
  public:
    ObjectReader(const json &node, std::string path, std::initializer_list<std::string_view> allowed)
        : node_(node), path_(std::move(path)) {
        require(node_.is_object(), where() + ": expected an object");
        const std::set<std::string_view> keys(allowed);
        for (const auto &item : node_.items()) {
            require(keys.contains(item.key()), path_ + "/" + item.key() + ": unknown key '" + item.key() + "'");
        }
    }

    bool has(const char *key) const { return node_.contains(key); }
    std::string child_path(const char *key) const { return path_ + "/" + key; }
    const json &child(const char *key) const {
        require(has(key), where() + ": missing required key '" + key + "'");
        return node_.at(key);
    }

    int integer(const char *key) const {
        const auto &v = child(key);
        require(v.is_number_integer(), child_path(key) + ": expected an integer");
        return v.get<int>();
    }
    double number(const char *key) const {
        const auto &v = child(key);
        require(v.is_number(), child_path(key) + ": expected a number");
        return v.get<double>();
    }
    bool boolean(const char *key) const {
        const auto &v = child(key);
        require(v.is_boolean(), child_path(key) + ": expected true or false");
        return v.get<bool>();
    }
    std::string string(const char *key) const {
        const auto &v = child(key);
        require(v.is_string(), child_path(key) + ": expected a string");
        return v.get<std::string>();
    }
    const json &array(const char *key) const {
        const auto &v = child(key);
        require(v.is_array(), child_path(key) + ": expected an array");
        return v;
    }

    template <typename T, typename Getter>
    void optional(const char *key, T &out, Getter get) const {
        if (has(key)) out = (this->*get)(key);
    }

  private:
    std::string where() const { return path_.empty() ? "/" : path_; }

    const json &node_;
    std::string path_;
};

inline SystemSection parse_system(const json &node, const std::string &path) {
    ObjectReader r(node, path, {"N", "n", "m", "J_I", "g_I", "atom_coupled", "g0", "t"});
    SystemSection s;
    s.N = r.integer("N");
    s.n = r.integer("n");
    r.optional("m", s.m, &ObjectReader::integer);
    r.optional("J_I", s.J_I, &ObjectReader::number);
    r.optional("atom_coupled", s.atom_coupled, &ObjectReader::boolean);
    if (r.has("g_I")) s.g_I = r.number("g_I");
    if (r.has("g0")) s.g0 = r.number("g0");
    if (r.has("t")) s.t = r.number("t");
    return s;
}

inline SweepSection parse_sweep(const json &node, const std::string &path) {
    ObjectReader r(node, path, {"side", "g_I_min", "g_I_max", "points", "log_scale"});
    SweepSection s;
    try {
        s.side = parse_side(r.string("side"));
    } catch (const ValidationError &e) {
        throw ValidationError(r.child_path("side") + ": " + e.what());
    }
    s.g_I_min = r.number("g_I_min");
    s.g_I_max = r.number("g_I_max");
    s.points = r.integer("points");
    r.optional("log_scale", s.log_scale, &ObjectReader::boolean);
    require(s.points >= 1, r.child_path("points") + ": must be >= 1");
    require(s.g_I_min > 0.0 && s.g_I_max >= s.g_I_min, path + ": need 0 < g_I_min <= g_I_max");
    return s;
}

inline NetworkSection parse_network(const json &node, const std::string &path) {
    ObjectReader r(node, path, {"registers", "channels", "schedule", "source"});
    NetworkSection s;
    const auto &regs = r.array("registers");
    for (std::size_t i = 0; i < regs.size(); ++i) {
        const std::string p = r.child_path("registers") + "/" + std::to_string(i);
        ObjectReader rr(regs[i], p, {"label", "n", "g0"});
        RegisterEntry e;
        e.label = rr.string("label");
        e.n = rr.integer("n");
        if (rr.has("g0")) e.g0 = rr.number("g0");
        s.registers.push_back(std::move(e));
    }
    const auto &chans = r.array("channels");
    for (std::size_t i = 0; i < chans.size(); ++i) {
        const std::string p = r.child_path("channels") + "/" + std::to_string(i);
        ObjectReader cr(chans[i], p, {"label", "a", "b", "N", "m", "J_I", "g_I", "g_c"});
        ChannelEntry e;
        e.label = cr.string("label");
        e.a = cr.string("a");
        e.b = cr.string("b");
        e.N = cr.integer("N");
        e.m = cr.integer("m");
        e.J_I = cr.number("J_I");
        e.g_I = cr.number("g_I");
        cr.optional("g_c", e.g_c, &ObjectReader::number);
        s.channels.push_back(std::move(e));
    }
    const auto &sched = r.array("schedule");
    for (std::size_t i = 0; i < sched.size(); ++i) {
        const std::string p = r.child_path("schedule") + "/" + std::to_string(i);
        ObjectReader ir(sched[i], p, {"duration", "uncoupled"});
        IntervalEntry e;
        e.duration = ir.number("duration");
        if (ir.has("uncoupled")) {
            const auto &names = ir.array("uncoupled");
            for (std::size_t k = 0; k < names.size(); ++k) {
                require(names[k].is_string(), ir.child_path("uncoupled") + "/" + std::to_string(k) +
                                                  ": expected a channel label");
                e.uncoupled.push_back(names[k].get<std::string>());
            }
        }
        s.schedule.push_back(std::move(e));
    }
    s.source = r.string("source");
    return s;
}

}  // namespace detail

/// Parses scenario text. `origin` (usually the file name) prefixes syntax errors.
inline Scenario parse_scenario(std::string_view text, const std::string &origin = "scenario") {
    detail::json doc;
    try {
        doc = detail::json::parse(text);
    } catch (const detail::json::parse_error &e) {
        throw ValidationError(origin + ": " + e.what());
    }
    try {
        detail::ObjectReader r(doc, "", {"units", "system", "sweep", "network", "output"});
        Scenario s;
        const std::string units = r.string("units");
        if (units == "tau") {
            s.units = TimeUnits::tau;
        } else if (units == "inverse_gc") {
            s.units = TimeUnits::inverse_gc;
        } else {
            throw ValidationError("/units: expected \"tau\" or \"inverse_gc\", got \"" + units + "\"");
        }
        if (r.has("system")) s.system = detail::parse_system(r.child("system"), "/system");
        if (r.has("sweep")) s.sweep = detail::parse_sweep(r.child("sweep"), "/sweep");
        if (r.has("network")) s.network = detail::parse_network(r.child("network"), "/network");
        if (r.has("output")) {
            detail::ObjectReader o(r.child("output"), "/output", {"path", "sample_points"});
            if (o.has("path")) s.output.path = o.string("path");
            o.optional("sample_points", s.output.sample_points, &detail::ObjectReader::integer);
            require(s.output.sample_points >= 1, "/output/sample_points: must be >= 1");
        }
        return s;
    } catch (const ValidationError &e) {
        throw ValidationError(origin + ": " + e.what());
    }
}

inline Scenario load_scenario(const std::string &path) {
    std::ifstream in(path);
    require(in.good(), "cannot open scenario file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_scenario(buffer.str(), path);
}

inline std::string serialize_scenario(const Scenario &s) {
    detail::json doc;
    doc["units"] = s.units == TimeUnits::tau ? "tau" : "inverse_gc";
    if (s.system) {
        auto &j = doc["system"];
        j["N"] = s.system->N;
        j["n"] = s.system->n;
        j["m"] = s.system->m;
        j["J_I"] = s.system->J_I;
        if (s.system->g_I) j["g_I"] = *s.system->g_I;
        j["atom_coupled"] = s.system->atom_coupled;
        if (s.system->g0) j["g0"] = *s.system->g0;
        if (s.system->t) j["t"] = *s.system->t;
    }
    if (s.sweep) {
        auto &j = doc["sweep"];
        j["side"] = std::string(to_string(s.sweep->side));
        j["g_I_min"] = s.sweep->g_I_min;
        j["g_I_max"] = s.sweep->g_I_max;
        j["points"] = s.sweep->points;
        j["log_scale"] = s.sweep->log_scale;
    }
    if (s.network) {
        auto &j = doc["network"];
        j["registers"] = detail::json::array();
        for (const auto &reg : s.network->registers) {
            detail::json e;
            e["label"] = reg.label;
            e["n"] = reg.n;
            if (reg.g0) e["g0"] = *reg.g0;
            j["registers"].push_back(e);
        }
        j["channels"] = detail::json::array();
        for (const auto &ch : s.network->channels) {
            j["channels"].push_back(detail::json{{"label", ch.label}, {"a", ch.a}, {"b", ch.b}, {"N", ch.N},
                                                 {"m", ch.m}, {"J_I", ch.J_I}, {"g_I", ch.g_I}, {"g_c", ch.g_c}});
        }
        j["schedule"] = detail::json::array();
        for (const auto &iv : s.network->schedule) {
            j["schedule"].push_back(detail::json{{"duration", iv.duration}, {"uncoupled", iv.uncoupled}});
        }
        j["source"] = s.network->source;
    }
    auto &out = doc["output"];
    if (s.output.path) out["path"] = *s.output.path;
    out["sample_points"] = s.output.sample_points;
    return doc.dump(2) + "\n";
}

/// Two-register system described by the scenario; g0 from the resonance
/// condition unless overridden.
inline SystemConfig to_system_config(const SystemSection &s) {
    require(s.g_I.has_value(), "/system: missing required key 'g_I'");
    SystemConfig config;
    const double g0 = s.g0 ? *s.g0 : resonant_g0(*s.g_I, s.n, s.N);
    config.left = config.right = RegisterSpec{s.n, g0};
    config.channel = ChannelSpec{s.N, 1.0, s.m, s.J_I, s.atom_coupled};
    config.g_I = *s.g_I;
    config.validate();
    return config;
}

/// Absolute duration of one scenario time unit for the given reference g0.
inline double time_unit(TimeUnits units, double g0) {
    return units == TimeUnits::tau ? std::numbers::pi / g0 : 1.0;
}

struct NetworkModel {
    NetworkTopology topology;
    Schedule schedule;
    std::size_t source = 0;
    double time_unit = 1.0;  ///< absolute length of one scenario time unit
};

inline NetworkModel to_network_model(const NetworkSection &s, TimeUnits units) {
    NetworkModel model;
    auto register_index = [&](const std::string &label, const std::string &where) {
        for (std::size_t r = 0; r < s.registers.size(); ++r) {
            if (s.registers[r].label == label) return r;
        }
        throw ValidationError(where + ": unknown register '" + label + "'");
    };
    std::set<std::string> labels;
    for (const auto &reg : s.registers) {
        require(labels.insert(reg.label).second, "/network/registers: duplicate label '" + reg.label + "'");
    }
    labels.clear();
    for (std::size_t c = 0; c < s.channels.size(); ++c) {
        const auto &ch = s.channels[c];
        const std::string where = "/network/channels/" + std::to_string(c);
        require(labels.insert(ch.label).second, where + ": duplicate label '" + ch.label + "'");
        model.topology.channels.push_back(NetworkChannel{ch.label, ChannelSpec{ch.N, ch.g_c, ch.m, ch.J_I, true},
                                                         register_index(ch.a, where + "/a"),
                                                         register_index(ch.b, where + "/b"), ch.g_I});
    }
    for (std::size_t r = 0; r < s.registers.size(); ++r) {
        const auto &reg = s.registers[r];
        double g0 = 0.0;
        if (reg.g0) {
            g0 = *reg.g0;
        } else {
            const NetworkChannel *first = nullptr;
            for (const auto &ch : model.topology.channels) {
                if (ch.a == r || ch.b == r) {
                    first = &ch;
                    break;
                }
            }
            require(first != nullptr,
                    "/network/registers/" + std::to_string(r) + ": no attached channel to derive g0 from");
            g0 = resonant_g0(first->g_I, reg.n, first->spec.N);
        }
        model.topology.registers.push_back(NetworkRegister{reg.label, RegisterSpec{reg.n, g0}});
    }
    model.source = register_index(s.source, "/network/source");
    model.topology.validate();
    model.time_unit = time_unit(units, model.topology.registers[model.source].spec.g0);

    for (std::size_t i = 0; i < s.schedule.size(); ++i) {
        const auto &iv = s.schedule[i];
        std::vector<bool> coupled(model.topology.channels.size(), true);
        for (const auto &name : iv.uncoupled) {
            bool found = false;
            for (std::size_t c = 0; c < coupled.size(); ++c) {
                if (model.topology.channels[c].label == name) {
                    coupled[c] = false;
                    found = true;
                }
            }
            require(found, "/network/schedule/" + std::to_string(i) + "/uncoupled: unknown channel '" + name + "'");
        }
        model.schedule.intervals.push_back({iv.duration * model.time_unit, coupled});
    }
    model.schedule.validate(model.topology.channels.size());
    return model;
}

}  // namespace ccaswitch
