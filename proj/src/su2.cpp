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

#include "optsu2/su2.hpp"

#include <algorithm>
#include <cmath>

#include "optsu2/error.hpp"

namespace optsu2 {

namespace {

constexpr double kGaugeTol = 1e-14;
constexpr double kMatrixTol = 1e-9;

}  // namespace

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::NonUnitary:
            return "NonUnitary";
        case ErrorKind::NonUnitDeterminant:
            return "NonUnitDeterminant";
        case ErrorKind::DomainError:
            return "DomainError";
        case ErrorKind::StepTooLarge:
            return "StepTooLarge";
        case ErrorKind::PoleEncountered:
            return "PoleEncountered";
        case ErrorKind::NoConvergence:
            return "NoConvergence";
        case ErrorKind::TargetUnreached:
            return "TargetUnreached";
        case ErrorKind::NoStationaryPoint:
            return "NoStationaryPoint";
        case ErrorKind::ParseError:
            return "ParseError";
    }
    return "Unknown";
}

double wrap_angle(double x, double lo, double period) {
    double r = std::fmod(x - lo, period);
    if (r < 0.0) {
        r += period;
    }
    if (r >= period) {
        r -= period;
    }
    return lo + r;
}

double Vec3::norm() const { return std::sqrt(dot(*this)); }

Mat2 Mat2::adjoint() const { return {{std::conj(a[0]), std::conj(a[2]), std::conj(a[1]), std::conj(a[3])}}; }

double Mat2::frobenius_norm() const {
    double s = 0.0;
    for (const auto &v : a) {
        s += std::norm(v);
    }
    return std::sqrt(s);
}

Mat2 operator*(const Mat2 &l, const Mat2 &r) {
    Mat2 m;
    for (int i = 0; i < 2; i++) {
        for (int j = 0; j < 2; j++) {
            m(i, j) = l(i, 0) * r(0, j) + l(i, 1) * r(1, j);
        }
    }
    return m;
}

Mat2 operator+(const Mat2 &l, const Mat2 &r) {
    Mat2 m;
    for (size_t k = 0; k < 4; k++) {
        m.a[k] = l.a[k] + r.a[k];
    }
    return m;
}

Mat2 operator-(const Mat2 &l, const Mat2 &r) {
    Mat2 m;
    for (size_t k = 0; k < 4; k++) {
        m.a[k] = l.a[k] - r.a[k];
    }
    return m;
}

Mat2 operator*(Complex s, const Mat2 &m) {
    Mat2 out;
    for (size_t k = 0; k < 4; k++) {
        out.a[k] = s * m.a[k];
    }
    return out;
}

Mat2 sigma_x() { return {{Complex(0), Complex(1), Complex(1), Complex(0)}}; }
Mat2 sigma_y() { return {{Complex(0), Complex(0, -1), Complex(0, 1), Complex(0)}}; }
Mat2 sigma_z() { return {{Complex(1), Complex(0), Complex(0), Complex(-1)}}; }

UnitGate::UnitGate(double x1, double x2, double x3, double x4) {
    double n = std::sqrt(x1 * x1 + x2 * x2 + x3 * x3 + x4 * x4);
    if (!std::isfinite(n) || n < 1e-300) {
        throw Error(ErrorKind::DomainError, "quaternion must be finite and nonzero");
    }
    x_ = {x1 / n, x2 / n, x3 / n, x4 / n};
}

UnitGate UnitGate::from_matrix(const Mat2 &m) { return gate_from_matrix(m); }

UnitGate UnitGate::from_axis_angle(double alpha, const Vec3 &axis) {
    double len = axis.norm();
    if (!std::isfinite(len) || len < 1e-300) {
        throw Error(ErrorKind::DomainError, "rotation axis must be nonzero");
    }
    Vec3 n = (1.0 / len) * axis;
    double s = std::sin(alpha / 2.0);
    return {std::cos(alpha / 2.0), s * n.z, s * n.y, s * n.x};
}

UnitGate UnitGate::from_euler(double psi, double theta, double phi) {
    double c = std::cos(theta / 2.0);
    double s = std::sin(theta / 2.0);
    double d = (psi + phi) / 2.0;
    double o = (psi - phi) / 2.0;
    return {c * std::cos(d), c * std::sin(d), s * std::cos(o), s * std::sin(o)};
}

UnitGate UnitGate::from_hopf(const HopfCoords &h) {
    double c = std::cos(h.theta1);
    double s = std::sin(h.theta1);
    return {c * std::cos(h.theta2), c * std::sin(h.theta2), s * std::cos(h.theta3), s * std::sin(h.theta3)};
}

Mat2 UnitGate::matrix() const {
    Mat2 m;
    m(0, 0) = Complex(x_[0], x_[1]);
    m(0, 1) = Complex(x_[2], x_[3]);
    m(1, 0) = Complex(-x_[2], x_[3]);
    m(1, 1) = Complex(x_[0], -x_[1]);
    return m;
}

UnitGate UnitGate::operator-() const {
    UnitGate g;
    g.x_ = {-x_[0], -x_[1], -x_[2], -x_[3]};
    return g;
}

UnitGate operator*(const UnitGate &l, const UnitGate &r) {
    // Hamilton product; i j = k holds for i = i sz, j = i sy, k = i sx.
    const auto &a = l.x_;
    const auto &b = r.x_;
    return {a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
            a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
            a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
            a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0]};
}

double UnitGate::distance(const UnitGate &o) const {
    // ||U - V||_F^2 = 2 |q_U - q_V|^2 for this embedding.
    double s = 0.0;
    for (size_t k = 0; k < 4; k++) {
        double d = x_[k] - o.x_[k];
        s += d * d;
    }
    return std::sqrt(2.0 * s);
}

UnitGate gate_from_matrix(const Mat2 &m) {
    for (const auto &v : m.a) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            throw Error(ErrorKind::NonUnitary, "matrix has non-finite entries");
        }
    }
    double unitarity = (m.adjoint() * m - Mat2::identity()).frobenius_norm();
    if (unitarity > kMatrixTol) {
        throw Error(ErrorKind::NonUnitary, "||m^dagger m - I|| = " + std::to_string(unitarity));
    }
    double det_gap = std::abs(m.det() - Complex(1.0));
    if (det_gap > kMatrixTol) {
        throw Error(ErrorKind::NonUnitDeterminant,
                    "|det(m) - 1| = " + std::to_string(det_gap) + "; strip the global phase first");
    }
    // Average the redundant entries of the SU(2) form.
    Complex d = 0.5 * (m(0, 0) + std::conj(m(1, 1)));
    Complex o = 0.5 * (m(0, 1) - std::conj(m(1, 0)));
    return {d.real(), d.imag(), o.real(), o.imag()};
}

AxisAngle to_axis_angle(const UnitGate &g) {
    // (x2, x3, x4) = sin(alpha/2) (nz, ny, nx)
    double s = std::sqrt(g.x2() * g.x2() + g.x3() * g.x3() + g.x4() * g.x4());
    AxisAngle out;
    out.alpha = 2.0 * std::atan2(s, g.x1());
    if (s < kGaugeTol) {
        out.n = {0.0, 0.0, 1.0};
        out.gauge = true;
        return out;
    }
    out.n = {g.x4() / s, g.x3() / s, g.x2() / s};
    return out;
}

EulerTarget normalize_euler(const EulerTarget &e) {
    if (!std::isfinite(e.psi) || !std::isfinite(e.theta) || !std::isfinite(e.phi)) {
        throw Error(ErrorKind::DomainError, "Euler angles must be finite");
    }
    if (e.theta < -1e-12 || e.theta > kPi + 1e-12) {
        throw Error(ErrorKind::DomainError, "theta must lie in [0, pi]");
    }
    EulerTarget out = e;
    out.theta = std::clamp(e.theta, 0.0, kPi);
    double k = std::floor((e.phi + kPi) / kTwoPi);
    out.phi = e.phi - kTwoPi * k;
    out.psi = e.psi - kTwoPi * k;
    if (out.phi >= kPi) {
        out.phi -= kTwoPi;
        out.psi -= kTwoPi;
    }
    out.psi = wrap_angle(out.psi, -kTwoPi, kFourPi);
    return out;
}

EulerTarget to_euler(const UnitGate &g) {
    double rc = std::hypot(g.x1(), g.x2());
    double rs = std::hypot(g.x3(), g.x4());
    double theta2 = std::atan2(g.x2(), g.x1());
    double theta3 = std::atan2(g.x4(), g.x3());
    EulerTarget e;
    e.theta = 2.0 * std::atan2(rs, rc);
    if (rs < kGaugeTol) {
        e.theta = 0.0;
        e.psi = wrap_angle(2.0 * theta2, -kTwoPi, kFourPi);
        e.phi = 0.0;
        e.gauge = true;
        return e;
    }
    if (rc < kGaugeTol) {
        e.theta = kPi;
        theta2 = 0.0;
        e.gauge = true;
    }
    e.psi = theta2 + theta3;
    e.phi = theta2 - theta3;
    bool gauge = e.gauge;
    e = normalize_euler(e);
    e.gauge = gauge;
    return e;
}

HopfCoords hopf_from_euler(const EulerTarget &raw) {
    EulerTarget e = normalize_euler(raw);
    HopfCoords h;
    h.theta1 = e.theta / 2.0;
    h.theta2 = (e.psi + e.phi) / 2.0;
    h.theta3 = (e.psi - e.phi) / 2.0;
    if (h.theta1 < kGaugeTol) {
        h.theta1 = 0.0;
        h.theta3 = 0.0;
        h.gauge = true;
    } else if (kPi / 2.0 - h.theta1 < kGaugeTol) {
        h.gauge = true;
    }
    return h;
}

EulerTarget euler_from_hopf(const HopfCoords &h) {
    if (!std::isfinite(h.theta1) || !std::isfinite(h.theta2) || !std::isfinite(h.theta3)) {
        throw Error(ErrorKind::DomainError, "Hopf angles must be finite");
    }
    if (h.theta1 < -1e-12 || h.theta1 > kPi / 2.0 + 1e-12) {
        throw Error(ErrorKind::DomainError, "theta1 must lie in [0, pi/2]");
    }
    if (h.theta1 < kGaugeTol) {
        return z_rotation_target(2.0 * h.theta2);
    }
    EulerTarget e{h.theta2 + h.theta3, 2.0 * h.theta1, h.theta2 - h.theta3, h.gauge};
    e = normalize_euler(e);
    e.gauge = h.gauge || (kPi - e.theta < kGaugeTol);
    return e;
}

HopfCoords to_hopf(const UnitGate &g) { return hopf_from_euler(to_euler(g)); }

UnitGate negate_gate(const UnitGate &g) { return -g; }

double negated_z_angle(double lambda) { return lambda - sgn(lambda) * kTwoPi; }

XyParams negated_xy_params(double a, double b) { return {a <= 0.0 ? a + kPi : a - kPi, kTwoPi - b}; }

EulerTarget z_rotation_target(double lambda) {
    if (!std::isfinite(lambda)) {
        throw Error(ErrorKind::DomainError, "lambda must be finite");
    }
    return {wrap_angle(lambda, -kTwoPi, kFourPi), 0.0, 0.0, true};
}

UnitGate xy_rotation_gate(double a, double b) { return UnitGate::from_euler(-a, b, a); }

}  // namespace optsu2
