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

#include <array>
#include <complex>
#include <numbers>

namespace optsu2 {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kFourPi = 4.0 * std::numbers::pi;

using Complex = std::complex<double>;

/// Sign with sgn(0) = +1.
inline double sgn(double x) { return x < 0.0 ? -1.0 : 1.0; }

/// Reduces x into [lo, lo + period).
double wrap_angle(double x, double lo, double period);

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    friend Vec3 operator+(const Vec3 &a, const Vec3 &b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend Vec3 operator-(const Vec3 &a, const Vec3 &b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend Vec3 operator*(double s, const Vec3 &a) { return {s * a.x, s * a.y, s * a.z}; }
    double dot(const Vec3 &o) const { return x * o.x + y * o.y + z * o.z; }
    Vec3 cross(const Vec3 &o) const { return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x}; }
    double norm() const;
};

/// Row-major 2x2 complex matrix.
struct Mat2 {
    std::array<Complex, 4> a{};

    Complex &operator()(int r, int c) { return a[2 * r + c]; }
    const Complex &operator()(int r, int c) const { return a[2 * r + c]; }

    static Mat2 identity() { return {{Complex(1), Complex(0), Complex(0), Complex(1)}}; }
    Mat2 adjoint() const;
    Complex det() const { return a[0] * a[3] - a[1] * a[2]; }
    double frobenius_norm() const;

    friend Mat2 operator*(const Mat2 &l, const Mat2 &r);
    friend Mat2 operator+(const Mat2 &l, const Mat2 &r);
    friend Mat2 operator-(const Mat2 &l, const Mat2 &r);
    friend Mat2 operator*(Complex s, const Mat2 &m);
};

Mat2 sigma_x();
Mat2 sigma_y();
Mat2 sigma_z();

/// Rotation angle in [0, 2pi] with unit axis n; U = exp(i alpha n.sigma / 2).
struct AxisAngle {
    double alpha = 0.0;
    Vec3 n{0.0, 0.0, 1.0};
    /// Set for +-identity, where the axis is arbitrary and reported as z.
    bool gauge = false;
};

/// U = [[cos t1 e^{i t2}, sin t1 e^{i t3}], [-sin t1 e^{-i t3}, cos t1 e^{-i t2}]].
struct HopfCoords {
    double theta1 = 0.0;
    double theta2 = 0.0;
    double theta3 = 0.0;
    /// theta1 = 0 (theta3 free, stored as 0) or theta1 = pi/2 (theta2 free, stored as 0).
    bool gauge = false;
};

/// U = exp(i psi sz/2) exp(i theta sy/2) exp(i phi sz/2),
/// psi in [-2pi, 2pi), theta in [0, pi], phi in [-pi, pi).
/// z-rotations (theta = 0) are stored as (lambda, 0, 0).
struct EulerTarget {
    double psi = 0.0;
    double theta = 0.0;
    double phi = 0.0;
    bool gauge = false;
};

/// SU(2) element stored as the unit quaternion x1 + x2 i + x3 j + x4 k with
/// i = i sz, j = i sy, k = i sx.
class UnitGate {
   public:
    UnitGate() = default;
    /// Renormalizes; throws DomainError on a zero or non-finite quaternion.
    UnitGate(double x1, double x2, double x3, double x4);

    static UnitGate identity() { return {}; }
    static UnitGate from_matrix(const Mat2 &m);
    static UnitGate from_axis_angle(double alpha, const Vec3 &axis);
    /// Accepts any real angles (no domain restriction).
    static UnitGate from_euler(double psi, double theta, double phi);
    static UnitGate from_euler(const EulerTarget &e) { return from_euler(e.psi, e.theta, e.phi); }
    static UnitGate from_hopf(const HopfCoords &h);

    double x1() const { return x_[0]; }
    double x2() const { return x_[1]; }
    double x3() const { return x_[2]; }
    double x4() const { return x_[3]; }
    const std::array<double, 4> &components() const { return x_; }

    Mat2 matrix() const;
    UnitGate operator-() const;
    friend UnitGate operator*(const UnitGate &l, const UnitGate &r);
    friend bool operator==(const UnitGate &l, const UnitGate &r) { return l.x_ == r.x_; }

    /// Frobenius norm of the matrix difference; not phase invariant.
    double distance(const UnitGate &o) const;

   private:
    std::array<double, 4> x_{1.0, 0.0, 0.0, 0.0};
};

/// Throws NonUnitary / NonUnitDeterminant; U(2) inputs with a global phase are rejected.
UnitGate gate_from_matrix(const Mat2 &m);
AxisAngle to_axis_angle(const UnitGate &g);
EulerTarget to_euler(const UnitGate &g);
HopfCoords to_hopf(const UnitGate &g);

/// Reduces phi into [-pi, pi) (compensating psi by the same 2pi multiple) and
/// psi into [-2pi, 2pi). Throws DomainError if theta is outside [0, pi].
EulerTarget normalize_euler(const EulerTarget &e);
HopfCoords hopf_from_euler(const EulerTarget &e);
EulerTarget euler_from_hopf(const HopfCoords &h);

UnitGate negate_gate(const UnitGate &g);

/// Representative of -exp(i lambda sz/2): lambda - sgn(lambda) 2pi.
double negated_z_angle(double lambda);

struct XyParams {
    double a = 0.0;
    double b = 0.0;
};
/// Parameters of -U for U = exp(-i a sz/2) exp(i b sy/2) exp(i a sz/2):
/// a~ = a +- pi with sign opposite to a, b~ = 2pi - b.
XyParams negated_xy_params(double a, double b);

EulerTarget z_rotation_target(double lambda);
UnitGate xy_rotation_gate(double a, double b);

}  // namespace optsu2
