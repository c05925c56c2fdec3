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

#include <cstddef>

#include "optsu2/dynamics.hpp"
#include "optsu2/su2.hpp"

namespace optsu2 {

struct SynthesisResult {
    ExtremalLaw law;
    EulerTarget target;
    /// Frobenius distance between the RK4-propagated pulse endpoint and the target.
    double residual = 0.0;
    /// Angle swept around the circle axis at tf.
    double eta_final = 0.0;
};

/// Resonant extremal reaching the sphere point (theta*, phi*) from phi0 = phi* + s,
/// evaluated in closed form. `offset` is psi(tf) + phi*, the label of the control.
struct ResonantArc {
    double s = 0.0;
    double p2 = 0.0;
    double tf = 0.0;
    double offset = 0.0;
};

/// Closed-form arc for theta* in (0, pi] and s in [-pi, pi]. `offset` decreases
/// strictly from 2pi (s = -pi) to -2pi (s = pi) and does not depend on phi*.
ResonantArc resonant_arc(double theta_star, double s);

/// Inverts resonant_arc in s for a psi + phi* offset in [-2pi, 2pi] by a 256-point
/// bracketing sweep and bisection. Throws NoConvergence after 200 iterations.
ResonantArc solve_resonant_arc(double theta_star, double offset);

/// Time-optimal resonant law for a target, analytic only (no propagation).
/// theta* = 0 is handled by the z-rotation closed form with phi0 = 0.
ExtremalLaw resonant_law(const EulerTarget &target);
ExtremalLaw resonant_law(const UnitGate &gate);

/// Closed-form z-rotation law: tf = sqrt(4pi|lambda| - lambda^2) / 2,
/// p2 = sgn(lambda) cot(acos(1 - |lambda| / 2pi)); lambda = 0 gives the empty law.
ExtremalLaw z_rotation_law(double lambda, double phi0 = 0.0);

/// Time-optimal durations without building pulses.
double z_rotation_time(double lambda);
double resonant_time(const UnitGate &gate);

/// Throws DomainError if |lambda| > 2pi. `phi0` is free and does not change the gate.
SynthesisResult synthesize_z_rotation(double lambda, double phi0 = 0.0);
/// Throws DomainError unless a in [-pi, pi] and b in (0, 2pi).
SynthesisResult synthesize_xy_rotation(double a, double b);
SynthesisResult synthesize_general(const EulerTarget &target);
SynthesisResult synthesize_gate(const UnitGate &gate);

/// Fills residual and eta_final by sampling the law into a pulse and replaying it.
void verify_synthesis(SynthesisResult &result, size_t samples = 2048);

/// Independent optimality scan: sweeps phi0 over `grid` points with p2 fixed by the
/// target inclination (or p2 = tan(zeta) over a zeta grid for z-rotations), propagates
/// every law exactly and returns the earliest time any law passes through the target.
/// Throws DomainError if grid < 512 and TargetUnreached if nothing gets within 1e-3.
double brute_force_min_time(const EulerTarget &target, size_t grid = 4096);

}  // namespace optsu2
