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

#include "optsu2/su2.hpp"

namespace optsu2 {

struct So3Decision {
    UnitGate chosen;
    bool chose_plus = true;  ///< true when U (not -U) is returned; ties return U
    double tf_plus = 0.0;
    double tf_minus = 0.0;
    bool tie = false;
    /// atan2(x2, x1) of U, in (-pi, pi]; the faster representative has |theta2| < pi/2.
    double theta2 = 0.0;
    /// True when the time comparison agrees with the sign of x1 (the Hopf criterion).
    bool criterion_agrees = true;
};

inline constexpr double kTieTol = 1e-8;

So3Decision select_faster(const UnitGate &g);

struct AngleSweepRow {
    double alpha = 0.0;
    double tf_u = 0.0;
    double tf_neg_u = 0.0;
    bool tie = false;
    bool chose_plus = true;
};

/// Uniform grid of `points` angles over [0, 4pi]; a single point gives {0}.
std::vector<double> default_alpha_grid(size_t points = 721);

/// Times for U = exp(i alpha n.sigma/2) and -U at each angle. Throws DomainError
/// unless |axis| = 1 within 1e-9.
std::vector<AngleSweepRow> sweep_rotation_angle(const Vec3 &axis, const std::vector<double> &alphas);

/// Angles where tf_U - tf_negU vanishes or changes sign, linearly interpolated
/// between grid points.
std::vector<double> crossing_angles(const std::vector<AngleSweepRow> &rows, double tol = 1e-9);

/// CSV with header alpha,tf_U,tf_negU,chosen; chosen is U, -U or tie.
std::string angle_sweep_csv(const std::vector<AngleSweepRow> &rows);

}  // namespace optsu2
