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

#include "optsu2/io.hpp"

#include <cstdio>
#include <sstream>

#include "json.hpp"
#include "optsu2/error.hpp"

namespace optsu2 {

namespace {

using nlohmann::json;

std::vector<std::string> split(const std::string &line, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(line);
    while (std::getline(in, cur, sep)) {
        out.push_back(cur);
    }
    if (!line.empty() && line.back() == sep) {
        out.emplace_back();
    }
    return out;
}

double to_number(const std::string &s) {
    try {
        size_t used = 0;
        double v = std::stod(s, &used);
        if (used != s.size()) {
            throw Error(ErrorKind::ParseError, "trailing characters in '" + s + "'");
        }
        return v;
    } catch (const std::logic_error &) {
        throw Error(ErrorKind::ParseError, "bad number '" + s + "'");
    }
}

double json_number(const json &j, const char *key) {
    if (!j.contains(key) || !j[key].is_number()) {
        throw Error(ErrorKind::ParseError, std::string("header field '") + key + "' missing or not a number");
    }
    return j[key].get<double>();
}

}  // namespace

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string pulse_header_json(const PulseFile &file) {
    json h;
    h["version"] = file.version;
    h["target"] = {{"psi", file.target.psi}, {"theta", file.target.theta}, {"phi", file.target.phi}};
    h["delta"] = file.law.delta;
    h["phi0"] = file.law.phi0;
    h["p2"] = file.law.p2;
    h["tf"] = file.law.tf;
    h["residual"] = file.residual;
    h["omega_max"] = file.schedule.omega_max ? json(*file.schedule.omega_max) : json(nullptr);
    h["samples"] = file.schedule.samples.size();
    return h.dump();
}

std::string pulse_csv(const PulseFile &file) {
    std::string out = "# " + pulse_header_json(file) + "\n";
    const auto &om = file.schedule.omega_max;
    out += om ? "t,vx,vy,t_phys,omega_x,omega_y\n" : "t,vx,vy\n";
    for (const auto &s : file.schedule.samples) {
        out += format_double(s.t) + "," + format_double(s.vx) + "," + format_double(s.vy);
        if (om) {
            out += "," + format_double(2.0 * s.t / *om) + "," + format_double(*om * s.vx) + "," +
                   format_double(*om * s.vy);
        }
        out += "\n";
    }
    return out;
}

PulseFile parse_pulse_csv(const std::string &text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line.rfind("# ", 0) != 0) {
        throw Error(ErrorKind::ParseError, "pulse file must start with a '# {json}' header line");
    }
    json h;
    try {
        h = json::parse(line.substr(2));
    } catch (const json::exception &e) {
        throw Error(ErrorKind::ParseError, std::string("header is not valid JSON: ") + e.what());
    }
    PulseFile file;
    if (!h.contains("version") || !h["version"].is_string()) {
        throw Error(ErrorKind::ParseError, "header field 'version' missing");
    }
    file.version = h["version"].get<std::string>();
    if (!h.contains("target") || !h["target"].is_object()) {
        throw Error(ErrorKind::ParseError, "header field 'target' missing");
    }
    file.target = {json_number(h["target"], "psi"), json_number(h["target"], "theta"), json_number(h["target"], "phi"),
                   false};
    file.law = {json_number(h, "phi0"), json_number(h, "p2"), json_number(h, "delta"), json_number(h, "tf")};
    file.residual = h.contains("residual") && h["residual"].is_number() ? h["residual"].get<double>() : 0.0;
    file.schedule.delta = file.law.delta;
    if (h.contains("omega_max") && h["omega_max"].is_number()) {
        file.schedule.omega_max = h["omega_max"].get<double>();
    }
    if (!h.contains("samples") || !h["samples"].is_number_unsigned()) {
        throw Error(ErrorKind::ParseError, "header field 'samples' missing");
    }
    auto expected = h["samples"].get<size_t>();

    if (!std::getline(in, line)) {
        throw Error(ErrorKind::ParseError, "missing column row");
    }
    auto cols = split(line, ',');
    if (cols.size() < 3 || cols[0] != "t" || cols[1] != "vx" || cols[2] != "vy") {
        throw Error(ErrorKind::ParseError, "column row must start with t,vx,vy");
    }
    size_t row = 0;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        row++;
        auto f = split(line, ',');
        if (f.size() != cols.size()) {
            throw Error(ErrorKind::ParseError, "row " + std::to_string(row) + " has " + std::to_string(f.size()) +
                                                   " fields, expected " + std::to_string(cols.size()));
        }
        file.schedule.samples.push_back({to_number(f[0]), to_number(f[1]), to_number(f[2])});
    }
    if (file.schedule.samples.size() != expected) {
        throw Error(ErrorKind::ParseError, "file holds " + std::to_string(file.schedule.samples.size()) +
                                               " samples but the header declares " + std::to_string(expected));
    }
    if (expected > 0 && std::abs(file.schedule.tf() - file.law.tf) > 1e-12 * std::max(1.0, file.law.tf)) {
        throw Error(ErrorKind::ParseError, "last sample time does not match tf");
    }
    return file;
}

std::string trajectory_csv(const std::vector<TrajectoryPoint> &points) {
    std::string out = "t,theta,phi,psi,theta1,theta2,theta3,vx,vy,eta\n";
    for (const auto &p : points) {
        const double v[] = {p.t,           p.euler.theta, p.euler.phi,   p.euler.psi, p.hopf.theta1,
                            p.hopf.theta2, p.hopf.theta3, p.vx,          p.vy,        p.eta};
        for (size_t k = 0; k < std::size(v); k++) {
            out += (k ? "," : "") + format_double(v[k]);
        }
        out += "\n";
    }
    return out;
}

}  // namespace optsu2
