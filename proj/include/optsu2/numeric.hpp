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

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace optsu2 {

struct ScalarMin {
    double x = 0.0;
    double value = 0.0;
};

/// Golden-section search for a minimum of f on [lo, hi].
template <typename F>
ScalarMin golden_minimize(F &&f, double lo, double hi, double tol = 1e-13, int max_iter = 200) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo;
    double b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    for (int it = 0; it < max_iter && b - a > tol; it++) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    ScalarMin best{c, fc};
    if (fd < best.value) {
        best = {d, fd};
    }
    for (double edge : {lo, hi}) {
        double fe = f(edge);
        if (fe < best.value) {
            best = {edge, fe};
        }
    }
    return best;
}

/// Bisection for a sign change of f on [lo, hi] (f(lo) and f(hi) of opposite sign or zero).
/// Stops when |f| <= ftol or the bracket collapses to a few ulps. Returns {x, converged}.
template <typename F>
std::pair<double, bool> bisect(F &&f, double lo, double hi, double ftol, int max_iter = 200) {
    double flo = f(lo);
    if (std::abs(flo) <= ftol) {
        return {lo, true};
    }
    double fhi = f(hi);
    if (std::abs(fhi) <= ftol) {
        return {hi, true};
    }
    for (int it = 0; it < max_iter; it++) {
        double mid = 0.5 * (lo + hi);
        double fm = f(mid);
        if (std::abs(fm) <= ftol) {
            return {mid, true};
        }
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
        double width = std::abs(hi - lo);
        if (width <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(mid))) {
            return {0.5 * (lo + hi), true};
        }
    }
    return {0.5 * (lo + hi), false};
}

}  // namespace optsu2
