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

#include "optsu2/so3.hpp"

#include <cmath>
#include <cstdio>

#include "optsu2/error.hpp"
#include "optsu2/resonant.hpp"

namespace optsu2 {

So3Decision select_faster(const UnitGate &g) {
    So3Decision d;
    d.tf_plus = resonant_time(g);
    d.tf_minus = resonant_time(-g);
    d.theta2 = std::atan2(g.x2(), g.x1());
    d.tie = std::abs(d.tf_plus - d.tf_minus) < kTieTol;
    d.chose_plus = d.tie || d.tf_plus < d.tf_minus;
    d.chosen = d.chose_plus ? g : -g;

    // x1 = cos(theta1) cos(theta2): U is faster iff x1 > 0, tied iff x1 = 0.
    bool predicted_tie = std::abs(g.x1()) < kTieTol;
    d.criterion_agrees = predicted_tie == d.tie && (d.tie || d.chose_plus == (g.x1() > 0.0));
    return d;
}

std::vector<double> default_alpha_grid(size_t points) {
    std::vector<double> out;
    if (points == 0) {
        return out;
    }
    if (points == 1) {
        return {0.0};
    }
    out.reserve(points);
    for (size_t k = 0; k < points; k++) {
        out.push_back(kFourPi * static_cast<double>(k) / static_cast<double>(points - 1));
    }
    return out;
}

std::vector<AngleSweepRow> sweep_rotation_angle(const Vec3 &axis, const std::vector<double> &alphas) {
    if (std::abs(axis.norm() - 1.0) > 1e-9) {
        throw Error(ErrorKind::DomainError, "sweep axis must be a unit vector");
    }
    std::vector<AngleSweepRow> rows;
    rows.reserve(alphas.size());
    for (double alpha : alphas) {
        So3Decision d = select_faster(UnitGate::from_axis_angle(alpha, axis));
        rows.push_back({alpha, d.tf_plus, d.tf_minus, d.tie, d.chose_plus});
    }
    return rows;
}

std::vector<double> crossing_angles(const std::vector<AngleSweepRow> &rows, double tol) {
    std::vector<double> out;
    auto sign = [&](const AngleSweepRow &r) {
        double diff = r.tf_u - r.tf_neg_u;
        return std::abs(diff) < tol ? 0 : (diff > 0 ? 1 : -1);
    };
    for (size_t k = 0; k < rows.size(); k++) {
        int s = sign(rows[k]);
        if (s == 0) {
            if (k == 0 || sign(rows[k - 1]) != 0) {
                out.push_back(rows[k].alpha);
            }
            continue;
        }
        if (k + 1 < rows.size()) {
            int n = sign(rows[k + 1]);
            if (n != 0 && n != s) {
                double d0 = rows[k].tf_u - rows[k].tf_neg_u;
                double d1 = rows[k + 1].tf_u - rows[k + 1].tf_neg_u;
                double w = d0 / (d0 - d1);
                out.push_back(rows[k].alpha + w * (rows[k + 1].alpha - rows[k].alpha));
            }
        }
    }
    return out;
}

std::string angle_sweep_csv(const std::vector<AngleSweepRow> &rows) {
    std::string out = "alpha,tf_U,tf_negU,chosen\n";
    char buf[128];
    for (const auto &r : rows) {
        std::snprintf(buf, sizeof(buf), "%.12g,%.12g,%.12g,%s\n", r.alpha, r.tf_u, r.tf_neg_u,
                      r.tie ? "tie" : (r.chose_plus ? "U" : "-U"));
        out += buf;
    }
    return out;
}

}  // namespace optsu2
