// Copyright 2026 The optsu2 Authors
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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "optsu2/detuned.hpp"
#include "optsu2/dynamics.hpp"
#include "optsu2/error.hpp"
#include "optsu2/gate_spec.hpp"
#include "optsu2/io.hpp"
#include "optsu2/resonant.hpp"
#include "optsu2/so3.hpp"

namespace {

using namespace optsu2;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitSynthesis = 3;
constexpr int kExitResidual = 4;

struct RunConfig {
    std::string command;
    std::string target;
    double delta = 0.0;
    std::string out = ".";
    std::string pulse;
    size_t samples = 2048;
    double tol = 1e-6;
    std::optional<double> omega_max;
    std::string axis = "0,1,0";
    size_t points = 721;
    double delta_min = -3.0;
    double delta_max = 3.0;
};

void to_json(json &j, const RunConfig &c) {
    j = json{{"command", c.command}, {"target", c.target},       {"delta", c.delta},         {"out", c.out},
             {"pulse", c.pulse},     {"samples", c.samples},     {"tol", c.tol},             {"axis", c.axis},
             {"points", c.points},   {"delta_min", c.delta_min}, {"delta_max", c.delta_max}};
    j["omega_max"] = c.omega_max ? json(*c.omega_max) : json(nullptr);
}

void from_json(const json &j, RunConfig &c) {
    auto get = [&](const char *key, auto &field) {
        if (j.contains(key) && !j[key].is_null()) {
            j.at(key).get_to(field);
        }
    };
    get("command", c.command);
    get("target", c.target);
    get("delta", c.delta);
    get("out", c.out);
    get("pulse", c.pulse);
    get("samples", c.samples);
    get("tol", c.tol);
    get("axis", c.axis);
    get("points", c.points);
    get("delta_min", c.delta_min);
    get("delta_max", c.delta_max);
    if (j.contains("omega_max") && j["omega_max"].is_number()) {
        c.omega_max = j["omega_max"].get<double>();
    }
}

RunConfig load_config(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorKind::ParseError, "cannot open config file " + path);
    }
    try {
        return json::parse(in).get<RunConfig>();
    } catch (const json::exception &e) {
        throw Error(ErrorKind::ParseError, "config file " + path + ": " + e.what());
    }
}

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorKind::ParseError, "cannot open " + path);
    }
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write_file(const std::filesystem::path &path, const std::string &text) {
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::binary);
    out << text;
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
}

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", x);
    return buf;
}

SynthesisResult synthesize_spec(const GateSpec &spec, double delta) {
    if (delta == 0.0) {
        switch (spec.kind) {
            case GateSpecKind::ZRot:
                return synthesize_z_rotation(spec.lambda);
            case GateSpecKind::XyRot:
                return synthesize_xy_rotation(spec.a, spec.b);
            default:
                return synthesize_general(spec.euler);
        }
    }
    return synthesize_detuned(spec.euler, delta);
}

GateSpec parse_target(const std::string &text) {
    try {
        return parse_gate_spec(text);
    } catch (const Error &e) {
        if (e.kind() == ErrorKind::ParseError) {
            throw;
        }
        throw Error(ErrorKind::ParseError, std::string("invalid target: ") + e.what());
    }
}

Vec3 parse_axis(const std::string &text) {
    GateSpec probe = parse_target("axis:1@" + text);
    return to_axis_angle(probe.gate).n;
}

int cmd_synthesize(const RunConfig &cfg) {
    if (cfg.target.empty()) {
        throw Error(ErrorKind::ParseError, "synthesize needs --target");
    }
    GateSpec spec = parse_target(cfg.target);
    SynthesisResult r;
    try {
        r = synthesize_spec(spec, cfg.delta);
        if (cfg.samples != 2048) {
            verify_synthesis(r, cfg.samples);
        }
    } catch (const Error &e) {
        if (e.kind() == ErrorKind::ParseError) {
            throw;
        }
        std::cerr << "synthesis failed: " << e.what() << "\n";
        return kExitSynthesis;
    }

    PulseFile file;
    file.target = r.target;
    file.law = r.law;
    file.residual = r.residual;
    file.schedule = sample_schedule(r.law, cfg.samples, cfg.omega_max);

    std::filesystem::path out(cfg.out);
    write_file(out / "pulse.csv", pulse_csv(file));
    write_file(out / "pulse.json", json::parse(pulse_header_json(file)).dump(2) + "\n");
    write_file(out / "trajectory.csv", trajectory_csv(sample_trajectory(r.law, cfg.samples)));

    std::cout << "target  psi=" << fmt(r.target.psi) << " theta=" << fmt(r.target.theta) << " phi=" << fmt(r.target.phi)
              << "\n";
    std::cout << "delta    " << fmt(r.law.delta) << "\n";
    std::cout << "phi0     " << fmt(r.law.phi0) << "\n";
    std::cout << "p2       " << fmt(r.law.p2) << "\n";
    std::cout << "tf       " << fmt(r.law.tf) << "\n";
    std::cout << "eta      " << fmt(r.eta_final) << "\n";
    std::cout << "residual " << fmt(r.residual) << "\n";
    if (cfg.omega_max) {
        std::cout << "t_phys   " << fmt(2.0 * r.law.tf / *cfg.omega_max) << "\n";
    }
    if (!(r.residual < cfg.tol)) {
        std::cerr << "residual " << r.residual << " exceeds tolerance " << cfg.tol << "\n";
        return kExitResidual;
    }
    return kExitOk;
}

void print_gate(const UnitGate &g) {
    EulerTarget e = to_euler(g);
    std::cout << "quat     " << fmt(g.x1()) << "," << fmt(g.x2()) << "," << fmt(g.x3()) << "," << fmt(g.x4()) << "\n";
    std::cout << "euler    " << fmt(e.psi) << "," << fmt(e.theta) << "," << fmt(e.phi) << "\n";
}

PulseFile load_pulse(const RunConfig &cfg) {
    if (cfg.pulse.empty()) {
        throw Error(ErrorKind::ParseError, "needs --pulse <file>");
    }
    return parse_pulse_csv(read_file(cfg.pulse));
}

int cmd_propagate(const RunConfig &cfg) {
    PulseFile file = load_pulse(cfg);
    print_gate(propagate_schrodinger(file.schedule));
    return kExitOk;
}

int cmd_verify(const RunConfig &cfg) {
    PulseFile file = load_pulse(cfg);
    UnitGate reached;
    try {
        reached = propagate_schrodinger(file.schedule);
    } catch (const Error &e) {
        std::cerr << "propagation failed: " << e.what() << "\n";
        return kExitResidual;
    }
    double residual = reached.distance(UnitGate::from_euler(file.target));
    print_gate(reached);
    std::cout << "residual " << fmt(residual) << "\n";
    if (!(residual <= cfg.tol)) {
        std::cerr << "residual " << residual << " exceeds tolerance " << cfg.tol << "\n";
        return kExitResidual;
    }
    return kExitOk;
}

int cmd_so3_select(const RunConfig &cfg) {
    if (cfg.target.empty()) {
        throw Error(ErrorKind::ParseError, "so3-select needs --target");
    }
    GateSpec spec = parse_target(cfg.target);
    So3Decision d = select_faster(spec.gate);
    json j{{"chosen", d.tie ? "tie" : (d.chose_plus ? "U" : "-U")},
           {"tf_U", d.tf_plus},
           {"tf_negU", d.tf_minus},
           {"tie", d.tie},
           {"theta2", d.theta2},
           {"chosen_gate", {d.chosen.x1(), d.chosen.x2(), d.chosen.x3(), d.chosen.x4()}}};
    std::cout << j.dump(2) << "\n";
    return kExitOk;
}

int cmd_sweep_angle(const RunConfig &cfg) {
    Vec3 axis = parse_axis(cfg.axis);
    auto rows = sweep_rotation_angle(axis, default_alpha_grid(cfg.points));
    std::filesystem::path out = std::filesystem::path(cfg.out) / "angle_sweep.csv";
    write_file(out, angle_sweep_csv(rows));
    std::cout << "wrote " << rows.size() << " rows to " << out.string() << "\n";
    for (double a : crossing_angles(rows)) {
        std::cout << "crossing alpha=" << fmt(a) << "\n";
    }
    return kExitOk;
}

int cmd_sweep_detuning(const RunConfig &cfg) {
    if (cfg.target.empty()) {
        throw Error(ErrorKind::ParseError, "sweep-detuning needs --target");
    }
    if (cfg.points == 0 || cfg.delta_max < cfg.delta_min) {
        throw Error(ErrorKind::ParseError, "sweep-detuning needs points >= 1 and delta-min <= delta-max");
    }
    GateSpec spec = parse_target(cfg.target);
    std::vector<double> grid;
    for (size_t k = 0; k < cfg.points; k++) {
        double w = cfg.points == 1 ? 0.0 : static_cast<double>(k) / static_cast<double>(cfg.points - 1);
        grid.push_back(cfg.delta_min + w * (cfg.delta_max - cfg.delta_min));
    }
    TdiffReport report;
    try {
        report = tdiff_analysis(spec.euler, grid);
    } catch (const Error &e) {
        std::cerr << "sweep failed: " << e.what() << "\n";
        return kExitSynthesis;
    }
    std::filesystem::path out = std::filesystem::path(cfg.out) / "tdiff.csv";
    write_file(out, tdiff_csv(report));
    std::cout << "wrote " << report.rows.size() << " rows to " << out.string() << "\n";
    for (const auto &sc : report.sign_changes) {
        std::cout << to_string(sc.kind) << " delta=" << fmt(sc.delta) << " in_X=" << (sc.in_x ? 1 : 0) << "\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Time-optimal SU(2) pulse synthesis"};
    app.require_subcommand(1);

    RunConfig flags;
    std::string config_path;
    std::string save_config;
    std::optional<double> omega_max;

    struct Sub {
        CLI::App *app;
        std::string name;
    };
    std::vector<Sub> subs;
    auto add = [&](const std::string &name, const std::string &help) {
        CLI::App *s = app.add_subcommand(name, help);
        s->add_option("--config", config_path, "JSON RunConfig file; flags override it");
        s->add_option("--target", flags.target, "gate spec, e.g. zrot:3.14159 or euler:psi,theta,phi");
        s->add_option("--delta", flags.delta, "normalized detuning");
        s->add_option("--samples", flags.samples, "pulse samples");
        s->add_option("--tol", flags.tol, "residual tolerance");
        s->add_option("--out", flags.out, "output directory");
        s->add_option("--omega-max", omega_max, "physical amplitude bound (rad/s)");
        s->add_option("--pulse", flags.pulse, "pulse CSV to read");
        s->add_option("--axis", flags.axis, "rotation axis nx,ny,nz");
        s->add_option("--points", flags.points, "grid points");
        s->add_option("--delta-min", flags.delta_min, "sweep start");
        s->add_option("--delta-max", flags.delta_max, "sweep end");
        s->add_option("--save-config", save_config, "write the effective RunConfig as JSON");
        subs.push_back({s, name});
    };
    add("synthesize", "synthesize a time-optimal pulse and write pulse/trajectory files");
    add("propagate", "propagate a pulse file and print the reached gate");
    add("verify", "replay a pulse file against its declared target");
    add("sweep-angle", "tf(U) and tf(-U) against the rotation angle");
    add("sweep-detuning", "T_diff against the detuning");
    add("so3-select", "pick the faster of U and -U");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitParse;
    }

    try {
        RunConfig cfg;
        const Sub *active = nullptr;
        for (const auto &s : subs) {
            if (s.app->parsed()) {
                active = &s;
            }
        }
        if (!config_path.empty()) {
            cfg = load_config(config_path);
        }
        cfg.command = active->name;
        const CLI::App &sa = *active->app;
        if (sa.count("--target")) cfg.target = flags.target;
        if (sa.count("--delta")) cfg.delta = flags.delta;
        if (sa.count("--samples")) cfg.samples = flags.samples;
        if (sa.count("--tol")) cfg.tol = flags.tol;
        if (sa.count("--out")) cfg.out = flags.out;
        if (sa.count("--omega-max")) cfg.omega_max = omega_max;
        if (sa.count("--pulse")) cfg.pulse = flags.pulse;
        if (sa.count("--axis")) cfg.axis = flags.axis;
        if (sa.count("--points")) cfg.points = flags.points;
        if (sa.count("--delta-min")) cfg.delta_min = flags.delta_min;
        if (sa.count("--delta-max")) cfg.delta_max = flags.delta_max;
        if (cfg.samples < 2) {
            throw Error(ErrorKind::ParseError, "--samples must be at least 2");
        }
        if (cfg.omega_max && !(*cfg.omega_max > 0.0)) {
            throw Error(ErrorKind::ParseError, "--omega-max must be positive");
        }

        if (!save_config.empty()) {
            write_file(save_config, json(cfg).dump(2) + "\n");
        }

        if (cfg.command == "synthesize") return cmd_synthesize(cfg);
        if (cfg.command == "propagate") return cmd_propagate(cfg);
        if (cfg.command == "verify") return cmd_verify(cfg);
        if (cfg.command == "sweep-angle") return cmd_sweep_angle(cfg);
        if (cfg.command == "sweep-detuning") return cmd_sweep_detuning(cfg);
        if (cfg.command == "so3-select") return cmd_so3_select(cfg);
        return kExitParse;
    } catch (const Error &e) {
        std::cerr << e.what() << "\n";
        return e.kind() == ErrorKind::ParseError ? kExitParse : kExitSynthesis;
    } catch (const std::exception &e) {
        std::cerr << e.what() << "\n";
        return kExitSynthesis;
    }
}
