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

#include "optsu2/gate_spec.hpp"

#include <charconv>
#include <cmath>
#include <vector>

#include "optsu2/error.hpp"

namespace optsu2 {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

[[noreturn]] void fail(const std::string &msg) { throw Error(ErrorKind::ParseError, msg); }

double parse_real(std::string_view text) {
    text = trim(text);
    if (text.empty()) {
        fail("empty number");
    }
    if (text.front() == '+') {
        text.remove_prefix(1);
    }
    double v = 0.0;
    auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size() || !std::isfinite(v)) {
        fail("bad number '" + std::string(text) + "'");
    }
    return v;
}

std::vector<double> parse_list(std::string_view text, size_t expected) {
    std::vector<double> out;
    size_t start = 0;
    while (true) {
        size_t comma = text.find(',', start);
        out.push_back(parse_real(text.substr(start, comma == std::string_view::npos ? text.npos : comma - start)));
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    if (out.size() != expected) {
        fail("expected " + std::to_string(expected) + " values, got " + std::to_string(out.size()));
    }
    return out;
}

Mat2 parse_matrix(std::string_view body) {
    // [[z,z],[z,z]]
    std::string flat;
    for (char ch : body) {
        if (!std::isspace(static_cast<unsigned char>(ch))) {
            flat.push_back(ch);
        }
    }
    if (flat.size() < 4 || flat.substr(0, 2) != "[[" || flat.substr(flat.size() - 2) != "]]") {
        fail("matrix must look like [[a,b],[c,d]]");
    }
    std::string inner = flat.substr(2, flat.size() - 4);
    size_t sep = inner.find("],[");
    if (sep == std::string::npos || inner.find("],[", sep + 1) != std::string::npos) {
        fail("matrix must have exactly two rows");
    }
    Mat2 m;
    std::string rows[2] = {inner.substr(0, sep), inner.substr(sep + 3)};
    for (int r = 0; r < 2; r++) {
        size_t comma = rows[r].find(',');
        if (comma == std::string::npos || rows[r].find(',', comma + 1) != std::string::npos) {
            fail("matrix rows must have exactly two entries");
        }
        m(r, 0) = parse_complex(rows[r].substr(0, comma));
        m(r, 1) = parse_complex(rows[r].substr(comma + 1));
    }
    return m;
}

}  // namespace

Complex parse_complex(std::string_view text) {
    text = trim(text);
    if (text.empty()) {
        fail("empty complex literal");
    }
    if (text.back() != 'j' && text.back() != 'i') {
        return {parse_real(text), 0.0};
    }
    std::string_view body = text.substr(0, text.size() - 1);
    // Split at the last sign that is not part of an exponent.
    size_t split = std::string_view::npos;
    for (size_t k = body.size(); k-- > 1;) {
        char ch = body[k];
        if ((ch == '+' || ch == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    auto imag_part = [](std::string_view s) {
        s = trim(s);
        if (s.empty() || s == "+") {
            return 1.0;
        }
        if (s == "-") {
            return -1.0;
        }
        return parse_real(s);
    };
    if (split == std::string_view::npos) {
        return {0.0, imag_part(body)};
    }
    return {parse_real(body.substr(0, split)), imag_part(body.substr(split))};
}

GateSpec parse_gate_spec(std::string_view text) {
    text = trim(text);
    size_t colon = text.find(':');
    if (colon == std::string_view::npos) {
        fail("gate spec needs a 'kind:' prefix");
    }
    std::string_view kind = text.substr(0, colon);
    std::string_view body = text.substr(colon + 1);
    GateSpec spec;
    spec.text = std::string(text);

    if (kind == "matrix") {
        spec.kind = GateSpecKind::Matrix;
        spec.gate = gate_from_matrix(parse_matrix(body));
        spec.euler = to_euler(spec.gate);
    } else if (kind == "quat") {
        spec.kind = GateSpecKind::Quat;
        auto v = parse_list(body, 4);
        double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2] + v[3] * v[3]);
        if (std::abs(n - 1.0) > 1e-9) {
            throw Error(ErrorKind::NonUnitary, "quaternion norm " + std::to_string(n) + " is not 1");
        }
        spec.gate = UnitGate(v[0], v[1], v[2], v[3]);
        spec.euler = to_euler(spec.gate);
    } else if (kind == "euler") {
        spec.kind = GateSpecKind::Euler;
        auto v = parse_list(body, 3);
        spec.euler = normalize_euler({v[0], v[1], v[2], false});
        if (spec.euler.theta == 0.0) {
            spec.euler = z_rotation_target(spec.euler.psi + spec.euler.phi);
        }
        spec.gate = UnitGate::from_euler(spec.euler);
    } else if (kind == "axis") {
        spec.kind = GateSpecKind::Axis;
        size_t at = body.find('@');
        if (at == std::string_view::npos) {
            fail("axis spec must look like alpha@nx,ny,nz");
        }
        double alpha = parse_real(body.substr(0, at));
        auto n = parse_list(body.substr(at + 1), 3);
        if (std::abs(std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]) - 1.0) > 1e-9) {
            throw Error(ErrorKind::DomainError, "rotation axis must be a unit vector");
        }
        spec.gate = UnitGate::from_axis_angle(alpha, {n[0], n[1], n[2]});
        spec.euler = to_euler(spec.gate);
    } else if (kind == "zrot") {
        spec.kind = GateSpecKind::ZRot;
        spec.lambda = parse_real(body);
        spec.gate = UnitGate::from_euler(spec.lambda, 0.0, 0.0);
        spec.euler = z_rotation_target(spec.lambda);
    } else if (kind == "xyrot") {
        spec.kind = GateSpecKind::XyRot;
        auto v = parse_list(body, 2);
        spec.a = v[0];
        spec.b = v[1];
        spec.gate = xy_rotation_gate(spec.a, spec.b);
        spec.euler = to_euler(spec.gate);
    } else {
        fail("unknown gate spec kind '" + std::string(kind) + "'");
    }
    return spec;
}

}  // namespace optsu2
