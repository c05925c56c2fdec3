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

#include "optsu2/resonant.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "optsu2/error.hpp"
#include "optsu2/numeric.hpp"

namespace optsu2 {

namespace {

constexpr double kZTol = 1e-12;
constexpr size_t kBracketPoints = 256;
constexpr double kOffsetTol = 1e-14;

struct Probe {
    double distance = std::numeric_limits<double>::infinity();
    double t = 0.0;
};

/// Closest approach of one law to the goal over a little more than one turn of its circle.
Probe closest_approach(const ExtremalLaw &law, const UnitGate &goal) {
    constexpr size_t kScan = 256;
    double horizon = 1.02 * kPi / std::sqrt(1.0 + law.p2 * law.p2);
    auto dist = [&](double t) { return propagate_rotating_frame(law, t).distance(goal); };
    std::array<double, kScan + 1> d{};
    for (size_t j = 0; j <= kScan; j++) {
        d[j] = dist(horizon * static_cast<double>(j) / kScan);
    }
    Probe best;
    for (size_t j = 1; j <= kScan; j++) {
        bool left = d[j] <= d[j - 1];
        bool right = j == kScan || d[j] <= d[j + 1];
        if (!left || !right || d[j] > 0.3) {
            continue;
        }
        double lo = horizon * static_cast<double>(j - 1) / kScan;
        double hi = horizon * static_cast<double>(std::min(j + 1, kScan)) / kScan;
        ScalarMin m = golden_minimize(dist, lo, hi, 1e-13);
        if (m.value < best.distance) {
            best = {m.value, m.x};
        }
    }
    return best;
}

}  // namespace

ExtremalLaw z_rotation_law(double lambda, double phi0) {
    ExtremalLaw law;
    law.phi0 = phi0;
    double m = std::abs(lambda);
    if (m == 0.0) {
        return law;
    }
    double q = std::sqrt(std::max(0.0, 4.0 * kPi * m - m * m));
    law.tf = 0.5 * q;
    // cot(acos(1 - m / 2pi)), written without the trigonometric round trip.
    law.p2 = q == 0.0 ? 0.0 : sgn(lambda) * (kTwoPi - m) / q;
    return law;
}

ResonantArc resonant_arc(double theta_star, double s) {
    double c = std::cos(theta_star / 2.0);
    double sh = std::sin(theta_star / 2.0);
    double ss = std::sin(s);
    double cs = std::cos(s);
    double a = std::sqrt(sh * sh + ss * ss * c * c);
    // eta(tf) / 2: first arrival on the circle at the target point.
    double half = std::atan2(a, cs * c);
    ResonantArc arc;
    arc.s = s;
    arc.p2 = -ss * c / sh;
    arc.tf = half * sh / a;
    arc.offset = -2.0 * s + 2.0 * ss * c * half / a;
    return arc;
}

ResonantArc solve_resonant_arc(double theta_star, double offset) {
    if (!(theta_star > 0.0) || theta_star > kPi + 1e-12) {
        throw Error(ErrorKind::DomainError, "theta* must lie in (0, pi]");
    }
    offset = std::clamp(offset, -kTwoPi, kTwoPi);
    auto mismatch = [&](double s) { return resonant_arc(theta_star, s).offset - offset; };
    double lo = -kPi;
    double hi = kPi;
    double prev = mismatch(lo);
    for (size_t k = 1; k <= kBracketPoints; k++) {
        double s = -kPi + kTwoPi * static_cast<double>(k) / kBracketPoints;
        double cur = mismatch(s);
        if (prev >= 0.0 && cur <= 0.0) {
            lo = s - kTwoPi / kBracketPoints;
            hi = s;
            break;
        }
        prev = cur;
    }
    auto [s, ok] = bisect(mismatch, lo, hi, kOffsetTol);
    if (!ok) {
        throw Error(ErrorKind::NoConvergence, "label bisection did not converge");
    }
    return resonant_arc(theta_star, s);
}

ExtremalLaw resonant_law(const EulerTarget &raw) {
    EulerTarget target = normalize_euler(raw);
    if (target.theta < kZTol) {
        return z_rotation_law(wrap_angle(target.psi + target.phi, -kTwoPi, kFourPi), 0.0);
    }
    double offset = wrap_angle(target.psi + target.phi, -kTwoPi, kFourPi);
    ResonantArc arc = solve_resonant_arc(target.theta, offset);
    ExtremalLaw law;
    law.phi0 = wrap_angle(target.phi + arc.s, -kPi, kTwoPi);
    law.p2 = arc.p2;
    law.tf = arc.tf;
    return law;
}

ExtremalLaw resonant_law(const UnitGate &gate) { return resonant_law(to_euler(gate)); }

double z_rotation_time(double lambda) { return z_rotation_law(lambda, 0.0).tf; }

double resonant_time(const UnitGate &gate) { return resonant_law(gate).tf; }

void verify_synthesis(SynthesisResult &result, size_t samples) {
    const ExtremalLaw &law = result.law;
    UnitGate goal = UnitGate::from_euler(result.target);
    UnitGate reached = propagate_schrodinger(sample_schedule(law, samples));
    result.residual = reached.distance(goal);
    result.eta_final = 2.0 * law.tf * std::sqrt(1.0 + law.p2 * law.p2);
}

SynthesisResult synthesize_z_rotation(double lambda, double phi0) {
    if (!std::isfinite(lambda) || std::abs(lambda) > kTwoPi + 1e-12) {
        throw Error(ErrorKind::DomainError, "|lambda| must not exceed 2pi");
    }
    lambda = std::clamp(lambda, -kTwoPi, kTwoPi);
    SynthesisResult r;
    r.law = z_rotation_law(lambda, phi0);
    r.target = z_rotation_target(lambda);
    verify_synthesis(r);
    return r;
}

SynthesisResult synthesize_xy_rotation(double a, double b) {
    if (!std::isfinite(a) || !std::isfinite(b) || a < -kPi || a > kPi || !(b > 0.0) || !(b < kTwoPi)) {
        throw Error(ErrorKind::DomainError, "xy rotation needs a in [-pi, pi] and b in (0, 2pi)");
    }
    SynthesisResult r;
    r.law = {a, 0.0, 0.0, b / 2.0};
    r.target = to_euler(xy_rotation_gate(a, b));
    verify_synthesis(r);
    return r;
}

SynthesisResult synthesize_general(const EulerTarget &raw) {
    EulerTarget target = normalize_euler(raw);
    if (target.theta < kZTol) {
        return synthesize_z_rotation(wrap_angle(target.psi + target.phi, -kTwoPi, kFourPi));
    }
    SynthesisResult r;
    r.target = target;
    r.law = resonant_law(target);
    verify_synthesis(r);
    return r;
}

SynthesisResult synthesize_gate(const UnitGate &gate) { return synthesize_general(to_euler(gate)); }

double brute_force_min_time(const EulerTarget &raw, size_t grid) {
    if (grid < 512) {
        throw Error(ErrorKind::DomainError, "brute-force grid must have at least 512 points");
    }
    EulerTarget target = normalize_euler(raw);
    UnitGate goal = UnitGate::from_euler(target);
    if (goal.distance(UnitGate::identity()) < 1e-12) {
        return 0.0;
    }
    const bool z = target.theta < kZTol;
    const double cot_half = z ? 0.0 : 1.0 / std::tan(target.theta / 2.0);

    // z-rotations: the inclination formula for p2 degenerates, so scan p2 = tan(zeta) instead.
    auto law_for = [&](double x) {
        ExtremalLaw law;
        if (z) {
            law.p2 = std::tan(x);
        } else {
            law.phi0 = x;
            law.p2 = std::sin(target.phi - x) * cot_half;
        }
        return law;
    };
    auto grid_point = [&](size_t k) {
        if (z) {
            return -kPi / 2.0 + kPi * (static_cast<double>(k) + 0.5) / static_cast<double>(grid);
        }
        return -kPi + kTwoPi * static_cast<double>(k) / static_cast<double>(grid);
    };
    const double step = (z ? kPi : kTwoPi) / static_cast<double>(grid);

    std::vector<double> d(grid);
    for (size_t k = 0; k < grid; k++) {
        d[k] = closest_approach(law_for(grid_point(k)), goal).distance;
    }

    double best_hit = std::numeric_limits<double>::infinity();
    double best_near = std::numeric_limits<double>::infinity();
    for (size_t k = 0; k < grid; k++) {
        size_t km = k == 0 ? (z ? k : grid - 1) : k - 1;
        size_t kp = k + 1 == grid ? (z ? k : 0) : k + 1;
        if (d[k] > d[km] || d[k] > d[kp] || d[k] > 0.05) {
            continue;
        }
        double x = grid_point(k);
        double lo = x - step;
        double hi = x + step;
        if (z) {
            lo = std::max(lo, -kPi / 2.0 + 1e-9);
            hi = std::min(hi, kPi / 2.0 - 1e-9);
        }
        ScalarMin m = golden_minimize([&](double y) { return closest_approach(law_for(y), goal).distance; }, lo,
                                      hi, 1e-14);
        Probe p = closest_approach(law_for(m.x), goal);
        if (p.distance < 1e-6) {
            best_hit = std::min(best_hit, p.t);
        } else if (p.distance < 1e-3) {
            best_near = std::min(best_near, p.t);
        }
    }
    if (std::isfinite(best_hit)) {
        return best_hit;
    }
    if (std::isfinite(best_near)) {
        return best_near;
    }
    throw Error(ErrorKind::TargetUnreached, "no scanned law reaches the target within 1e-3");
}

}  // namespace optsu2
