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

#pragma once

#include <optional>
#include <array>
#include <vector>

#include "optsu2/su2.hpp"

namespace optsu2 {

/// One normal extremal of the time-optimal problem. Times are normalized
/// (tau = omega_max t / 2 in physical units).
struct ExtremalLaw {
    double phi0 = 0.0;   ///< initial azimuth phi(0)
    double p2 = 0.0;     ///< constant adjoint
    double delta = 0.0;  ///< normalized detuning
    double tf = 0.0;     ///< duration
};

struct AdjointState {
    double p1 = 0.0;
    double p2 = 0.0;
    double p3 = 0.0;
    double p0 = -1.0;
    double N = 1.0;
};

struct ControlState {
    double u1 = 0.0;
    double u2 = 0.0;
    double mu = 0.0;
    double beta = 0.0;
    double v0 = 1.0;
};

/// Euler and Hopf values here are the continuous (unwrapped) chart values along
/// the trajectory, not domain-reduced representatives.
struct TrajectoryPoint {
    double t = 0.0;
    EulerTarget euler;
    HopfCoords hopf;
    ControlState controls;
    double vx = 0.0;
    double vy = 0.0;
    /// Angle swept around the circle axis, 2t / |sin theta_bar| (nonnegative).
    double eta = 0.0;
};

/// The projected trajectory gamma(t) = (theta(t), phi(t)) is a circle about n_bar.
struct CircleGeometry {
    double theta_bar = 0.0;  ///< arctan(1 / p2), in (-pi/2, pi/2]; pi/2 when p2 = 0
    double phi_bar = 0.0;    ///< phi0 + pi/2
    Vec3 n_bar;
};

struct ControlSample {
    double vx = 0.0;
    double vy = 0.0;
};

struct PulseSample {
    double t = 0.0;
    double vx = 0.0;
    double vy = 0.0;
};

struct PulseSchedule {
    std::vector<PulseSample> samples;
    double delta = 0.0;
    std::optional<double> omega_max;

    double tf() const { return samples.empty() ? 0.0 : samples.back().t; }
};

CircleGeometry circle_geometry(const ExtremalLaw &law);

/// Unit vector of the sphere point (theta, phi).
Vec3 sphere_point(double theta, double phi);

/// Control phase mu(t) = phi0 - pi/2 + (2 p2 + 2 delta) t.
double control_phase(const ExtremalLaw &law, double t);
ControlSample control_at(const ExtremalLaw &law, double t);

TrajectoryPoint closed_form_trajectory(const ExtremalLaw &law, double t);
UnitGate closed_form_gate(const ExtremalLaw &law, double t);
AdjointState adjoint_at(const ExtremalLaw &law, double t);

/// |H| of the PMP pseudo-Hamiltonian with maximized controls and p0 = -1, evaluated
/// on the trajectory of `law` with the constant adjoint `adjoint_p2` (defaults to law.p2).
double hamiltonian_residual(const ExtremalLaw &law, double t, std::optional<double> adjoint_p2 = std::nullopt);

/// Samples the law's controls on a uniform grid of `samples` points over [0, tf].
/// tf = 0 gives an empty schedule.
PulseSchedule sample_schedule(const ExtremalLaw &law, size_t samples = 2048,
                              std::optional<double> omega_max = std::nullopt);

std::vector<TrajectoryPoint> sample_trajectory(const ExtremalLaw &law, size_t samples = 2048);

/// Classical RK4 on the quaternion form x' = L(t) x of the Schrodinger equation,
/// renormalizing every step. Controls between samples are interpolated in polar
/// form (amplitude and unwrapped phase). dt <= 0 selects tf / 1e4.
UnitGate propagate_schrodinger(const PulseSchedule &schedule, double dt = 0.0);
/// Same integrator, with controls read directly from the law.
UnitGate propagate_schrodinger(const ExtremalLaw &law, double dt = 0.0);

/// The 4x4 generator L with x' = L x for H = vx sx + vy sy + delta sz.
std::array<std::array<double, 4>, 4> quaternion_generator(double vx, double vy, double delta);

/// Right-hand side of the Hopf-chart equations for physical controls (vx, vy):
/// theta1' = u1, theta2' = -tan(theta1) u2 - delta, theta3' = cot(theta1) u2 - delta.
/// Throws PoleEncountered on theta1 in {0, pi/2} unless the control term vanishes there.
std::array<double, 3> hopf_velocity(const HopfCoords &h, double vx, double vy, double delta);

struct HopfSample {
    double t = 0.0;
    HopfCoords coords;
};

/// RK4 integration of the Hopf-chart equations (theta1' = u1, ...), driven by the
/// law's physical controls. Step sizes shrink geometrically next to the
/// theta1 in {0, pi/2} poles at the ends of the trajectory.
std::vector<HopfSample> propagate_hopf_path(const ExtremalLaw &law, double dt = 0.0);
HopfCoords propagate_hopf(const ExtremalLaw &law, double dt = 0.0);

/// Exact solution for a law: the controls rotate uniformly, so in the frame
/// rotating with them the Hamiltonian is constant.
UnitGate propagate_rotating_frame(const ExtremalLaw &law, double t);

}  // namespace optsu2
