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

#include "optsu2/detuned.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "optsu2/error.hpp"
#include "optsu2/numeric.hpp"

namespace optsu2 {

namespace {

constexpr double kZTol = 1e-12;
constexpr double kMapTol = 1e-10;

/// Distance in f of the solution label to the nearer Omega bound. Measured in f rather
/// than in Psi because f is flat at the stationary bound.
double label_gap(const PsiFamily &family, const DetunedSolution &s) {
    double d = s.law.delta;
    double f = endpoint_map(family, s.psi_label, d);
    return std::min(std::abs(f - endpoint_map(family, s.domain.psi_min, d)),
                    std::abs(f - endpoint_map(family, s.domain.psi_max, d)));
}

}  // namespace

PsiFamily::PsiFamily(double theta_star, double phi_star, size_t resolution)
    : theta_star_(theta_star), phi_star_(phi_star), z_(theta_star < kZTol) {
    if (!std::isfinite(theta_star) || !std::isfinite(phi_star) || theta_star < 0.0 || theta_star > kPi + 1e-12) {
        throw Error(ErrorKind::DomainError, "family needs theta* in [0, pi] and a finite phi*");
    }
    if (resolution < 256) {
        throw Error(ErrorKind::DomainError, "family resolution must be at least 256");
    }
    if (z_) {
        theta_star_ = 0.0;
        phi_star_ = 0.0;
    }
    theta_star_ = std::min(theta_star_, kPi);
    table_.reserve(resolution + 1);
    table_.resize(resolution + 1);
    for (size_t j = 0; j <= resolution; j++) {
        table_[j] = at(node(static_cast<long>(j)));
        t_max_ = std::max(t_max_, table_[j].duration);
    }
}

PsiControl PsiFamily::at(double psi) const {
    double base = wrap_angle(psi, psi_lo(), kFourPi);
    double offset = base + phi_star_;
    PsiControl pc;
    pc.psi = psi;
    if (z_) {
        pc.law = z_rotation_law(offset, 0.0);
    } else {
        ResonantArc arc = solve_resonant_arc(theta_star_, offset);
        pc.law = {wrap_angle(phi_star_ + arc.s, -kPi, kTwoPi), arc.p2, 0.0, arc.tf};
    }
    pc.p2 = pc.law.p2;
    pc.duration = pc.law.tf;
    return pc;
}

double PsiFamily::node_duration(long j) const {
    long r = static_cast<long>(resolution());
    long m = ((j % r) + r) % r;
    return table_[static_cast<size_t>(m)].duration;
}

PsiFamily build_psi_family(double theta_star, double phi_star, size_t resolution) {
    return PsiFamily(theta_star, phi_star, resolution);
}

double endpoint_map(const PsiFamily &family, double psi, double delta) {
    if (delta == 0.0) {
        return psi;
    }
    return psi - 2.0 * delta * family.at(psi).duration;
}

double endpoint_slope(const PsiFamily &family, double psi, double delta) {
    return 1.0 - delta * family.at(psi).p2;
}

bool OptimalDomain::contains(double psi, double tol) const {
    double k = std::ceil((psi_min - tol - psi) / kFourPi);
    double lifted = psi + kFourPi * k;
    return lifted <= psi_max + tol;
}

OptimalDomain optimal_domain(const PsiFamily &family, double delta) {
    OptimalDomain d;
    d.psi_min = family.psi_lo();
    d.psi_max = family.psi_hi();
    if (!std::isfinite(delta)) {
        throw Error(ErrorKind::DomainError, "delta must be finite");
    }
    const double theta = family.theta_star();
    if (delta == 0.0 || (!family.z_family() && std::abs(delta) <= std::tan(theta / 2.0))) {
        return d;
    }

    // Stationary label: p2(u_Psi) = 1/delta on the sgn(delta) side of -phi*.
    // z-rotations have no such point; f peaks at the cusp Psi = 0 instead.
    double bullet = 0.0;
    if (!family.z_family()) {
        double c = std::cos(theta / 2.0);
        double sh = std::sin(theta / 2.0);
        auto gap = [&](double s) { return -std::sin(s) * c / sh - 1.0 / delta; };
        double lo = delta > 0.0 ? -kPi / 2.0 : 0.0;
        double hi = delta > 0.0 ? 0.0 : kPi / 2.0;
        if (gap(lo) * gap(hi) > 0.0) {
            throw Error(ErrorKind::NoStationaryPoint, "p2 = 1/delta is not reachable for this target");
        }
        auto [s, ok] = bisect(gap, lo, hi, 1e-13);
        if (!ok) {
            throw Error(ErrorKind::NoStationaryPoint, "stationary label bisection failed");
        }
        bullet = family.center() + resonant_arc(theta, s).offset;
    }

    // Walk away from the bullet along the lifted label line until f has moved by 4pi.
    const double dir = delta > 0.0 ? -1.0 : 1.0;
    const double level = endpoint_map(family, bullet, delta) + dir * kFourPi;
    auto f = [&](double psi) { return endpoint_map(family, psi, delta); };
    const double h = kFourPi / static_cast<double>(family.resolution());
    double pos = (bullet - family.psi_lo()) / h;
    long j = delta > 0.0 ? static_cast<long>(std::floor(pos)) : static_cast<long>(std::ceil(pos));
    if (delta > 0.0 && family.node(j) >= bullet) {
        j--;
    }
    if (delta < 0.0 && family.node(j) <= bullet) {
        j++;
    }
    double prev = bullet;
    bool found = false;
    for (size_t step = 0; step < 2 * family.resolution() + 2; step++) {
        double x = family.node(j);
        double fx = x - 2.0 * delta * family.node_duration(j);
        bool crossed = delta > 0.0 ? fx <= level : fx >= level;
        if (crossed) {
            auto [root, ok] = bisect([&](double y) { return f(y) - level; }, std::min(x, prev), std::max(x, prev),
                                     kMapTol);
            if (!ok) {
                throw Error(ErrorKind::NoConvergence, "optimal-domain bound bisection failed");
            }
            (delta > 0.0 ? d.psi_min : d.psi_max) = root;
            found = true;
            break;
        }
        prev = x;
        j += static_cast<long>(dir);
    }
    if (!found) {
        throw Error(ErrorKind::NoConvergence, "optimal-domain bound not bracketed");
    }
    (delta > 0.0 ? d.psi_max : d.psi_min) = bullet;
    d.psi_bullet = bullet;
    d.full = false;
    return d;
}

OptimalDomain optimal_domain(double theta_star, double phi_star, double delta) {
    return optimal_domain(PsiFamily(theta_star, phi_star), delta);
}

DetunedSolution solve_detuned(const PsiFamily &family, double psi_star, double delta) {
    DetunedSolution sol;
    sol.domain = optimal_domain(family, delta);
    auto f = [&](double psi) { return endpoint_map(family, psi, delta); };
    double f_min = f(sol.domain.psi_min);
    double f_max = f(sol.domain.psi_max);
    double n = std::ceil((f_min - psi_star) / kFourPi - 1e-12);
    double v = psi_star + kFourPi * n;
    if (v > f_max) {
        v -= kFourPi;
        n -= 1.0;
    }
    double psi = 0.0;
    if (v <= f_min) {
        psi = sol.domain.psi_min;
    } else if (v >= f_max) {
        psi = sol.domain.psi_max;
    } else {
        auto [root, ok] = bisect([&](double y) { return f(y) - v; }, sol.domain.psi_min, sol.domain.psi_max, kMapTol);
        if (!ok) {
            throw Error(ErrorKind::NoConvergence, "end-point map inversion did not converge");
        }
        psi = root;
    }
    sol.psi_label = psi;
    sol.n = static_cast<long>(n);
    sol.law = family.at(psi).law;
    sol.law.delta = delta;
    return sol;
}

SynthesisResult synthesize_detuned(const PsiFamily &family, const EulerTarget &raw, double delta) {
    EulerTarget target = normalize_euler(raw);
    double psi_star = target.psi;
    if (target.theta < kZTol) {
        target = z_rotation_target(target.psi + target.phi);
        psi_star = target.psi;
    }
    bool family_matches = family.z_family() ? target.theta == 0.0
                                            : std::abs(family.theta_star() - target.theta) < 1e-12 &&
                                                  std::abs(wrap_angle(family.phi_star() - target.phi, -kPi, kTwoPi)) <
                                                      1e-12;
    if (!family_matches) {
        throw Error(ErrorKind::DomainError, "family does not match the target inclination and azimuth");
    }
    SynthesisResult r;
    r.target = target;
    r.law = solve_detuned(family, psi_star, delta).law;
    verify_synthesis(r);
    return r;
}

SynthesisResult synthesize_detuned(const EulerTarget &raw, double delta) {
    if (delta == 0.0) {
        return synthesize_general(raw);
    }
    EulerTarget target = normalize_euler(raw);
    if (target.theta < kZTol) {
        return synthesize_detuned(PsiFamily(0.0, 0.0), target, delta);
    }
    return synthesize_detuned(PsiFamily(target.theta, target.phi), target, delta);
}

double brute_force_detuned_time(const PsiFamily &family, double psi_star, double delta, size_t grid) {
    if (grid < 512) {
        throw Error(ErrorKind::DomainError, "scan grid must have at least 512 points");
    }
    auto f = [&](double psi) { return endpoint_map(family, psi, delta); };
    double best = std::numeric_limits<double>::infinity();
    const double lo = family.psi_lo();
    const double step = kFourPi / static_cast<double>(grid);
    double x0 = lo;
    double f0 = f(x0);
    for (size_t j = 1; j <= grid; j++) {
        double x1 = lo + step * static_cast<double>(j);
        double f1 = f(x1);
        // Residue of f - psi* nearest to the left sample; a sign change without a
        // 4pi-sized jump means a genuine preimage in (x0, x1].
        double k = std::round((f0 - psi_star) / kFourPi);
        double m0 = f0 - psi_star - kFourPi * k;
        double m1 = f1 - psi_star - kFourPi * k;
        if (m0 == 0.0) {
            best = std::min(best, family.at(x0).duration);
        } else if ((m0 < 0.0) != (m1 < 0.0) && std::abs(m1 - m0) < kTwoPi) {
            auto [root, ok] = bisect([&](double y) { return f(y) - psi_star - kFourPi * k; }, x0, x1, kMapTol);
            if (ok) {
                best = std::min(best, family.at(root).duration);
            }
        }
        x0 = x1;
        f0 = f1;
    }
    if (!std::isfinite(best)) {
        throw Error(ErrorKind::TargetUnreached, "no label maps onto the target");
    }
    return best;
}

std::string_view to_string(TdiffEvent e) {
    switch (e) {
        case TdiffEvent::None:
            return "none";
        case TdiffEvent::ZeroCross:
            return "zero_cross";
        case TdiffEvent::BoundaryJump:
            return "boundary_jump";
    }
    return "none";
}

TdiffReport tdiff_analysis(const EulerTarget &raw, const std::vector<double> &delta_grid) {
    if (!std::is_sorted(delta_grid.begin(), delta_grid.end())) {
        throw Error(ErrorKind::DomainError, "delta grid must be sorted");
    }
    EulerTarget target = normalize_euler(raw);
    if (target.theta < kZTol) {
        target = z_rotation_target(target.psi + target.phi);
    }
    PsiFamily family(target.theta, target.phi);
    const double psi_u = target.psi;
    const double psi_neg_u = target.psi + kTwoPi;
    const double c = family.center();

    struct Eval {
        DetunedSolution u, neg;
        double tdiff;
        bool in_x;
    };
    auto evaluate = [&](double delta) {
        Eval e{solve_detuned(family, psi_u, delta), solve_detuned(family, psi_neg_u, delta), 0.0, false};
        e.tdiff = e.u.law.tf - e.neg.law.tf;
        e.in_x = e.u.domain.contains(c + kPi, 1e-9) && e.u.domain.contains(c - kPi, 1e-9);
        return e;
    };

    TdiffReport report;
    std::vector<Eval> evals;
    evals.reserve(delta_grid.size());
    for (double delta : delta_grid) {
        Eval e = evaluate(delta);
        report.rows.push_back({delta, e.u.law.tf, e.neg.law.tf, e.tdiff, e.in_x, TdiffEvent::None});
        evals.push_back(e);
    }
    for (size_t k = 1; k < delta_grid.size(); k++) {
        report.grid_step = std::max(report.grid_step, delta_grid[k] - delta_grid[k - 1]);
    }

    // Zero crossings can only sit at the symmetric pair Psi+- = -phi* +- pi.
    if (!delta_grid.empty()) {
        double t_pm = family.at(c + kPi).duration;
        double lo = delta_grid.front();
        double hi = delta_grid.back();
        if (t_pm > 0.0) {
            double span = std::max(std::abs(lo), std::abs(hi)) * 2.0 * t_pm;
            long n_max = static_cast<long>(std::ceil((span + 2.0 * kFourPi) / kFourPi));
            for (long n = -n_max; n <= n_max; n++) {
                for (double pm : {kPi, -kPi}) {
                    double root = -(target.phi + target.psi + pm + kFourPi * static_cast<double>(n)) / (2.0 * t_pm);
                    if (root >= lo && root <= hi) {
                        report.predicted_roots.push_back(root);
                    }
                }
            }
            std::sort(report.predicted_roots.begin(), report.predicted_roots.end());
        }
    }

    auto sign = [](double x) { return x > 0.0 ? 1 : (x < 0.0 ? -1 : 0); };
    for (size_t k = 0; k + 1 < evals.size(); k++) {
        int s0 = sign(evals[k].tdiff);
        int s1 = sign(evals[k + 1].tdiff);
        if (s0 == 0 || s1 == s0) {
            continue;
        }
        double lo = delta_grid[k];
        double hi = delta_grid[k + 1];
        Eval e_lo = evals[k];
        Eval e_hi = evals[k + 1];
        if (s1 != 0) {
            for (int it = 0; it < 200 && hi - lo > 1e-11 * std::max(1.0, std::abs(lo)); it++) {
                double mid = 0.5 * (lo + hi);
                Eval e = evaluate(mid);
                if (sign(e.tdiff) == s0) {
                    lo = mid;
                    e_lo = e;
                } else {
                    hi = mid;
                    e_hi = e;
                    if (sign(e.tdiff) == 0) {
                        break;
                    }
                }
            }
        }
        SignChange sc;
        sc.delta = s1 == 0 ? hi : 0.5 * (lo + hi);
        sc.tdiff_gap = s1 == 0 ? 0.0 : std::min(std::abs(e_lo.tdiff), std::abs(e_hi.tdiff));
        sc.kind = sc.tdiff_gap < 1e-6 ? TdiffEvent::ZeroCross : TdiffEvent::BoundaryJump;
        sc.in_x = evaluate(sc.delta).in_x;
        sc.boundary_gap = std::min(std::max(label_gap(family, e_lo.u), label_gap(family, e_hi.u)),
                                   std::max(label_gap(family, e_lo.neg), label_gap(family, e_hi.neg)));
        sc.predicted_gap = std::numeric_limits<double>::infinity();
        for (double root : report.predicted_roots) {
            if (std::abs(root - sc.delta) < sc.predicted_gap) {
                sc.predicted_gap = std::abs(root - sc.delta);
                sc.predicted = root;
            }
        }
        report.rows[k + 1].event = sc.kind;
        report.sign_changes.push_back(sc);
    }

    for (size_t k = 0; k < report.rows.size(); k++) {
        if (!report.rows[k].in_x) {
            continue;
        }
        if (k == 0 || !report.rows[k - 1].in_x) {
            report.x_intervals.push_back({report.rows[k].delta, report.rows[k].delta});
        }
        report.x_intervals.back().second = report.rows[k].delta;
    }
    return report;
}

std::string tdiff_csv(const TdiffReport &report) {
    std::string out = "delta,t_U,t_negU,tdiff,in_X,event\n";
    char buf[192];
    for (const auto &r : report.rows) {
        std::snprintf(buf, sizeof(buf), "%.12g,%.12g,%.12g,%.12g,%d,%s\n", r.delta, r.t_u, r.t_neg_u, r.tdiff,
                      r.in_x ? 1 : 0, std::string(to_string(r.event)).c_str());
        out += buf;
    }
    return out;
}

}  // namespace optsu2
