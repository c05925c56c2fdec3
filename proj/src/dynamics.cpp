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

#include "optsu2/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "optsu2/error.hpp"

namespace optsu2 {

namespace {

constexpr double kDefaultStepsPerPulse = 1e4;
constexpr double kTruncationLimit = 1e-8;
constexpr size_t kTruncationProbeStride = 64;

using Quat = std::array<double, 4>;
using ControlFn = std::function<ControlSample(double)>;

/// Continuous lift of atan2(c sin h, cos h) for c >= 0, equal to h when c = 1.
double lifted_half_angle(double c, double h) {
    // Reduce to x in [-pi, pi] first; taking |sin x| keeps the branch exact at x = +-pi,
    // which is where full-circle (z-rotation) arcs end.
    double k = std::round(h / kTwoPi);
    double x = h - kTwoPi * k;
    double r = std::atan2(c * std::abs(std::sin(x)), std::cos(x));
    return std::copysign(r, x) + kTwoPi * k;
}

Quat generator_apply(double vx, double vy, double delta, const Quat &x) {
    return {delta * x[1] + vy * x[2] + vx * x[3],
            -delta * x[0] + vx * x[2] - vy * x[3],
            -vy * x[0] - vx * x[1] + delta * x[3],
            -vx * x[0] + vy * x[1] - delta * x[2]};
}

Quat axpy(const Quat &x, double h, const Quat &k) {
    return {x[0] + h * k[0], x[1] + h * k[1], x[2] + h * k[2], x[3] + h * k[3]};
}

Quat rk4_quat_step(const ControlFn &controls, double delta, double t, double h, const Quat &x) {
    auto f = [&](double s, const Quat &y) {
        ControlSample c = controls(s);
        return generator_apply(c.vx, c.vy, delta, y);
    };
    Quat k1 = f(t, x);
    Quat k2 = f(t + h / 2, axpy(x, h / 2, k1));
    Quat k3 = f(t + h / 2, axpy(x, h / 2, k2));
    Quat k4 = f(t + h, axpy(x, h, k3));
    Quat out;
    for (size_t i = 0; i < 4; i++) {
        out[i] = x[i] + h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    }
    return out;
}

double quat_gap(const Quat &a, const Quat &b) {
    double m = 0.0;
    for (size_t i = 0; i < 4; i++) {
        m = std::max(m, std::abs(a[i] - b[i]));
    }
    return m;
}

Quat renormalized(const Quat &x) {
    double n = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3]);
    return {x[0] / n, x[1] / n, x[2] / n, x[3] / n};
}

UnitGate integrate_quaternion(const ControlFn &controls, double delta, double tf, double dt) {
    if (tf <= 0.0) {
        return UnitGate::identity();
    }
    if (dt <= 0.0) {
        dt = tf / kDefaultStepsPerPulse;
    }
    if (dt > tf / 1000.0 * (1.0 + 1e-12)) {
        throw Error(ErrorKind::StepTooLarge, "dt must not exceed tf / 1000");
    }
    auto steps = static_cast<size_t>(std::ceil(tf / dt - 1e-9));
    double h = tf / static_cast<double>(steps);
    Quat x{1.0, 0.0, 0.0, 0.0};
    for (size_t i = 0; i < steps; i++) {
        double t = h * static_cast<double>(i);
        Quat next = rk4_quat_step(controls, delta, t, h, x);
        if (i % kTruncationProbeStride == 0) {
            Quat half = rk4_quat_step(controls, delta, t, h / 2, x);
            half = rk4_quat_step(controls, delta, t + h / 2, h / 2, half);
            double estimate = quat_gap(next, half) / 15.0;
            if (estimate > kTruncationLimit) {
                throw Error(ErrorKind::StepTooLarge,
                            "local truncation estimate " + std::to_string(estimate) + " exceeds 1e-8");
            }
        }
        x = renormalized(next);
    }
    return {x[0], x[1], x[2], x[3]};
}

/// Controls between schedule samples: linear in amplitude and in unwrapped phase.
class ScheduleInterpolator {
   public:
    explicit ScheduleInterpolator(const PulseSchedule &schedule) : samples_(schedule.samples) {
        phase_.reserve(samples_.size());
        amplitude_.reserve(samples_.size());
        for (size_t i = 0; i < samples_.size(); i++) {
            const auto &s = samples_[i];
            amplitude_.push_back(std::hypot(s.vx, s.vy));
            double ph = std::atan2(s.vy, s.vx);
            if (i > 0) {
                ph = phase_.back() + wrap_angle(ph - phase_.back(), -kPi, kTwoPi);
            }
            phase_.push_back(ph);
        }
    }

    ControlSample operator()(double t) {
        if (samples_.size() == 1) {
            return {samples_[0].vx, samples_[0].vy};
        }
        while (cursor_ + 2 < samples_.size() && t > samples_[cursor_ + 1].t) {
            cursor_++;
        }
        while (cursor_ > 0 && t < samples_[cursor_].t) {
            cursor_--;
        }
        const auto &a = samples_[cursor_];
        const auto &b = samples_[cursor_ + 1];
        double w = std::clamp((t - a.t) / (b.t - a.t), 0.0, 1.0);
        if (amplitude_[cursor_] < 1e-12 || amplitude_[cursor_ + 1] < 1e-12) {
            return {a.vx + w * (b.vx - a.vx), a.vy + w * (b.vy - a.vy)};
        }
        double amp = amplitude_[cursor_] + w * (amplitude_[cursor_ + 1] - amplitude_[cursor_]);
        double ph = phase_[cursor_] + w * (phase_[cursor_ + 1] - phase_[cursor_]);
        return {amp * std::cos(ph), amp * std::sin(ph)};
    }

   private:
    const std::vector<PulseSample> &samples_;
    std::vector<double> phase_;
    std::vector<double> amplitude_;
    size_t cursor_ = 0;
};

void validate_schedule(const PulseSchedule &schedule) {
    const auto &s = schedule.samples;
    if (s.empty()) {
        return;
    }
    if (std::abs(s.front().t) > 1e-12) {
        throw Error(ErrorKind::DomainError, "schedule must start at t = 0");
    }
    for (size_t i = 0; i < s.size(); i++) {
        if (!std::isfinite(s[i].t) || !std::isfinite(s[i].vx) || !std::isfinite(s[i].vy)) {
            throw Error(ErrorKind::DomainError, "schedule contains non-finite values");
        }
        if (s[i].vx * s[i].vx + s[i].vy * s[i].vy > 1.0 + 1e-9) {
            throw Error(ErrorKind::DomainError, "control amplitude exceeds the bound at sample " + std::to_string(i));
        }
        if (i > 0 && !(s[i].t > s[i - 1].t)) {
            throw Error(ErrorKind::DomainError, "sample times must be strictly increasing");
        }
    }
}

}  // namespace

Vec3 sphere_point(double theta, double phi) {
    return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

CircleGeometry circle_geometry(const ExtremalLaw &law) {
    CircleGeometry g;
    g.theta_bar = law.p2 == 0.0 ? kPi / 2.0 : std::atan(1.0 / law.p2);
    g.phi_bar = law.phi0 + kPi / 2.0;
    g.n_bar = sphere_point(g.theta_bar, g.phi_bar);
    return g;
}

double control_phase(const ExtremalLaw &law, double t) {
    return law.phi0 - kPi / 2.0 + (2.0 * law.p2 + 2.0 * law.delta) * t;
}

ControlSample control_at(const ExtremalLaw &law, double t) {
    double mu = control_phase(law, t);
    return {std::cos(mu), std::sin(mu)};
}

TrajectoryPoint closed_form_trajectory(const ExtremalLaw &law, double t) {
    const double p2 = law.p2;
    const double r = std::sqrt(1.0 + p2 * p2);
    TrajectoryPoint pt;
    pt.t = t;
    pt.eta = 2.0 * t * r;

    double theta = 0.0;
    double dphi = 0.0;
    if (p2 == 0.0) {
        // Great circle through the poles; kept unfolded so phi stays at phi0.
        theta = 2.0 * t;
    } else {
        double h = t * r;
        // Signed past each full turn, so the chart stays analytic in t.
        theta = 2.0 * std::asin(std::clamp(std::sin(h) / r, -1.0, 1.0));
        dphi = sgn(p2) * lifted_half_angle(std::abs(p2) / r, h);
    }
    double phi = law.phi0 + dphi;
    double psi = phi - 2.0 * law.phi0 - 2.0 * p2 * t - 2.0 * law.delta * t;

    pt.euler = {psi, theta, phi, false};
    pt.hopf = {theta / 2.0, (psi + phi) / 2.0, (psi - phi) / 2.0, false};

    double mu = control_phase(law, t);
    pt.controls.mu = mu;
    pt.controls.beta = mu + psi;
    pt.controls.v0 = 1.0;
    pt.controls.u1 = -std::sin(pt.controls.beta);
    pt.controls.u2 = -std::cos(pt.controls.beta);
    pt.vx = std::cos(mu);
    pt.vy = std::sin(mu);
    return pt;
}

UnitGate closed_form_gate(const ExtremalLaw &law, double t) {
    return UnitGate::from_hopf(closed_form_trajectory(law, t).hopf);
}

AdjointState adjoint_at(const ExtremalLaw &law, double t) {
    TrajectoryPoint pt = closed_form_trajectory(law, t);
    AdjointState a;
    a.p1 = pt.controls.u1;
    a.p2 = law.p2;
    a.p3 = 0.0;
    a.p0 = -1.0;
    a.N = 1.0 / (1.0 - law.p2 * law.delta);
    return a;
}

double hamiltonian_residual(const ExtremalLaw &law, double t, std::optional<double> adjoint_p2) {
    TrajectoryPoint pt = closed_form_trajectory(law, t);
    double q2 = adjoint_p2.value_or(law.p2);
    double scale = 1.0 - q2 * law.delta;
    if (std::abs(scale) < 1e-300) {
        return std::numeric_limits<double>::infinity();
    }
    double n = 1.0 / scale;
    double p1 = pt.controls.u1;
    double switching = q2 == 0.0 ? 0.0 : q2 * std::tan(pt.hopf.theta1);
    // max over |u| <= 1 of u1 P1 + u2 (-P2 tan theta1) - P2 delta + p0 with P = N p.
    double h = n * (std::sqrt(p1 * p1 + switching * switching) - q2 * law.delta) - 1.0;
    return std::abs(h);
}

PulseSchedule sample_schedule(const ExtremalLaw &law, size_t samples, std::optional<double> omega_max) {
    PulseSchedule s;
    s.delta = law.delta;
    s.omega_max = omega_max;
    if (law.tf <= 0.0) {
        return s;
    }
    samples = std::max<size_t>(samples, 2);
    s.samples.reserve(samples);
    for (size_t k = 0; k < samples; k++) {
        double t = k + 1 == samples ? law.tf : law.tf * static_cast<double>(k) / static_cast<double>(samples - 1);
        ControlSample c = control_at(law, t);
        s.samples.push_back({t, c.vx, c.vy});
    }
    return s;
}

std::vector<TrajectoryPoint> sample_trajectory(const ExtremalLaw &law, size_t samples) {
    std::vector<TrajectoryPoint> out;
    samples = std::max<size_t>(samples, 2);
    out.reserve(samples);
    for (size_t k = 0; k < samples; k++) {
        double t = k + 1 == samples ? law.tf : law.tf * static_cast<double>(k) / static_cast<double>(samples - 1);
        out.push_back(closed_form_trajectory(law, t));
    }
    return out;
}

UnitGate propagate_schrodinger(const PulseSchedule &schedule, double dt) {
    validate_schedule(schedule);
    if (schedule.samples.size() < 2) {
        return UnitGate::identity();
    }
    ScheduleInterpolator interp(schedule);
    ControlFn controls = [&interp](double t) { return interp(t); };
    return integrate_quaternion(controls, schedule.delta, schedule.tf(), dt);
}

UnitGate propagate_schrodinger(const ExtremalLaw &law, double dt) {
    ControlFn controls = [&law](double t) { return control_at(law, t); };
    return integrate_quaternion(controls, law.delta, law.tf, dt);
}

std::array<std::array<double, 4>, 4> quaternion_generator(double vx, double vy, double delta) {
    std::array<std::array<double, 4>, 4> m{};
    for (size_t j = 0; j < 4; j++) {
        Quat e{};
        e[j] = 1.0;
        Quat col = generator_apply(vx, vy, delta, e);
        for (size_t i = 0; i < 4; i++) {
            m[i][j] = col[i];
        }
    }
    return m;
}

std::array<double, 3> hopf_velocity(const HopfCoords &h, double vx, double vy, double delta) {
    double s = h.theta2 + h.theta3;
    double u1 = -vx * std::sin(s) - vy * std::cos(s);
    double u2 = -vx * std::cos(s) + vy * std::sin(s);
    double c1 = std::cos(h.theta1);
    double s1 = std::sin(h.theta1);
    if (u2 == 0.0) {
        return {u1, -delta, -delta};
    }
    if (c1 == 0.0 || s1 == 0.0) {
        throw Error(ErrorKind::PoleEncountered, "Hopf chart evaluated on a pole");
    }
    return {u1, -s1 / c1 * u2 - delta, c1 / s1 * u2 - delta};
}

std::vector<HopfSample> propagate_hopf_path(const ExtremalLaw &law, double dt) {
    using State = std::array<double, 3>;
    std::vector<HopfSample> path;
    const double tf = law.tf;
    const double delta = law.delta;
    if (tf <= 0.0) {
        path.push_back({0.0, {0.0, 0.0, 0.0, true}});
        return path;
    }
    if (dt <= 0.0) {
        dt = tf / kDefaultStepsPerPulse;
    }

    auto rhs = [&](double t, const State &y) -> State {
        ControlSample v = control_at(law, t);
        return hopf_velocity({y[0], y[1], y[2], false}, v.vx, v.vy, delta);
    };
    auto add = [](const State &y, double h, const State &k) -> State {
        return {y[0] + h * k[0], y[1] + h * k[1], y[2] + h * k[2]};
    };

    // Leave the theta1 = 0 pole on the regular branch: theta3(0) is fixed by
    // requiring u2(0) = 0, and the phase rate is read off the controls.
    ControlSample v0 = control_at(law, 0.0);
    double t0 = std::min(dt, tf) * 1e-4;
    ControlSample v1 = control_at(law, t0);
    double mu0 = std::atan2(v0.vy, v0.vx);
    double omega = wrap_angle(std::atan2(v1.vy, v1.vx) - mu0, -kPi, kTwoPi) / t0;
    double amp = std::hypot(v0.vx, v0.vy);
    State y{amp * t0, -delta * t0, -kPi / 2.0 - mu0 - 0.5 * omega * t0};
    double t = t0;
    path.push_back({0.0, {0.0, 0.0, y[2] + 0.5 * omega * t0, true}});
    path.push_back({t, {y[0], y[1], y[2], false}});

    const double finish = 1e-10 * std::max(1.0, tf);
    const double h_min = 1e-14 * std::max(1.0, tf);
    while (tf - t > finish) {
        double pole_gap = std::min(std::abs(y[0]), std::abs(kPi / 2.0 - y[0]));
        double h = std::min(dt, tf - t);
        if (pole_gap < 2.0 * h) {
            h = 0.5 * pole_gap;
        }
        if (h < h_min) {
            throw Error(ErrorKind::PoleEncountered,
                        "trajectory crosses a theta1 pole at t = " + std::to_string(t) + " before the end point");
        }
        State k1 = rhs(t, y);
        State k2 = rhs(t + h / 2, add(y, h / 2, k1));
        State k3 = rhs(t + h / 2, add(y, h / 2, k2));
        State k4 = rhs(t + h, add(y, h, k3));
        for (size_t i = 0; i < 3; i++) {
            y[i] += h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
        }
        t += h;
        path.push_back({t, {y[0], y[1], y[2], false}});
    }
    if (tf - t > 0.0) {
        State k = rhs(t, y);
        y = add(y, tf - t, k);
        path.push_back({tf, {y[0], y[1], y[2], false}});
    }
    path.back().t = tf;
    return path;
}

HopfCoords propagate_hopf(const ExtremalLaw &law, double dt) { return propagate_hopf_path(law, dt).back().coords; }

UnitGate propagate_rotating_frame(const ExtremalLaw &law, double t) {
    double omega = 2.0 * law.p2 + 2.0 * law.delta;
    double mu0 = law.phi0 - kPi / 2.0;
    double kx = std::cos(mu0);
    double ky = std::sin(mu0);
    double kz = law.delta - omega / 2.0;
    double k = std::sqrt(kx * kx + ky * ky + kz * kz);
    double s = std::sin(k * t) / k;
    UnitGate frame(std::cos(k * t), -kz * s, -ky * s, -kx * s);
    UnitGate rotation(std::cos(omega * t / 2.0), -std::sin(omega * t / 2.0), 0.0, 0.0);
    return rotation * frame;
}

}  // namespace optsu2
