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

#include <string>
#include <vector>

#include "optsu2/dynamics.hpp"
#include "optsu2/su2.hpp"

namespace optsu2 {

inline constexpr const char *kFormatVersion = "optsu2-pulse/1";

/// A synthesized pulse as stored on disk.
struct PulseFile {
    std::string version = kFormatVersion;
    EulerTarget target;
    ExtremalLaw law;
    double residual = 0.0;
    PulseSchedule schedule;
};

/// Header object: {version, target:{psi,theta,phi}, delta, phi0, p2, tf, residual,
/// omega_max, samples}. omega_max is null unless set.
std::string pulse_header_json(const PulseFile &file);

/// First line "# <header json>", then a column row and one row per sample:
///   t,vx,vy                              (normalized time)
///   t,vx,vy,t_phys,omega_x,omega_y       (when omega_max is set; t_phys = 2 t / omega_max)
std::string pulse_csv(const PulseFile &file);

/// Inverse of pulse_csv. Throws Error(ParseError) on malformed or truncated input.
PulseFile parse_pulse_csv(const std::string &text);

/// Columns t,theta,phi,psi,theta1,theta2,theta3,vx,vy,eta.
std::string trajectory_csv(const std::vector<TrajectoryPoint> &points);

std::string format_double(double x);

}  // namespace optsu2
