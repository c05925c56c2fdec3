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

#include <gtest/gtest.h>

#include <set>

#include "optsu2/error.hpp"
#include "test_util.hpp"

using namespace optsu2;
using namespace optsu2::testing;

namespace {

constexpr double kWideTheta = 2.2689;

const PsiFamily &wide_family() {
    static const PsiFamily family(kWideTheta, 0.0);
    return family;
}

double detuned_residual(const ExtremalLaw &law, const EulerTarget &target) {
    return propagate_schrodinger(sample_schedule(law)).distance(UnitGate::from_euler(target));
}

}  // namespace

TEST(detuned, family_rejects_bad_input) {
    EXPECT_THROW(PsiFamily(1.0, 0.0, 100), Error);
    EXPECT_THROW(PsiFamily(4.0, 0.0), Error);
    EXPECT_THROW(optimal_domain(-1.0, 0.0, 1.0), Error);
}

TEST(detuned, family_minimum_and_symmetry) {
    for (double phi : {0.0, 0.7, -2.1}) {
        PsiFamily f(1.3, phi, 512);
        EXPECT_NEAR(f.at(-phi).p2, 0.0, 1e-12);
        double tmin = f.at(-phi).duration;
        for (const PsiControl &c : f.table()) {
            EXPECT_GE(c.duration, tmin - 1e-12);
            EXPECT_NEAR(c.duration, f.at(-2 * phi - c.psi).duration, 1e-9);
        }
        EXPECT_NEAR(f.table().front().duration, f.table().back().duration, 1e-9);
        EXPECT_NEAR(f.t_max(), f.table().front().duration, 1e-9);
    }
}

TEST(detuned, family_matches_resonant_synthesis) {
    const PsiFamily &f = wide_family();
    for (double psi : {-5.0, -1.0, 0.0, 0.4, 3.3}) {
        PsiControl c = f.at(psi);
        SynthesisResult r = synthesize_general({psi, kWideTheta, 0.0, false});
        EXPECT_NEAR(c.duration, r.law.tf, 1e-9);
        EXPECT_NEAR(c.p2, r.law.p2, 1e-9);
        EXPECT_LT(r.residual, 1e-6);
    }
}

TEST(detuned, duration_slope_is_half_p2) {
    std::mt19937_64 rng(50);
    for (int n = 0; n < 10; n++) {
        PsiFamily f(uniform(rng, 0.2, kPi), uniform(rng, -kPi, kPi), 256);
        for (int k = 0; k < 20; k++) {
            double psi = f.center() + uniform(rng, -6.0, 6.0);
            double h = 1e-5;
            double slope = (f.at(psi + h).duration - f.at(psi - h).duration) / (2 * h);
            EXPECT_NEAR(slope, f.at(psi).p2 / 2, 1e-5);
        }
    }
}

TEST(detuned, endpoint_map_examples) {
    const PsiFamily &f = wide_family();
    for (double psi : {-6.0, -2.0, 0.0, 1.0, 6.2}) {
        EXPECT_EQ(endpoint_map(f, psi, 0.0), psi);
    }
    double tmin = f.at(0.0).duration;
    EXPECT_NEAR(endpoint_map(f, 0.0, 1.7), -2 * 1.7 * tmin, 1e-12);
    for (double delta : {-2.0, 0.5, 3.0}) {
        for (double psi : {-4.0, -0.5, 2.5}) {
            double h = 1e-5;
            double fd = (endpoint_map(f, psi + h, delta) - endpoint_map(f, psi - h, delta)) / (2 * h);
            EXPECT_NEAR(fd, endpoint_slope(f, psi, delta), 1e-5);
            EXPECT_NEAR(endpoint_slope(f, psi, delta), 1 - delta * f.at(psi).p2, 1e-15);
        }
    }
}

TEST(detuned, domain_examples) {
    const PsiFamily &f = wide_family();
    OptimalDomain zero = optimal_domain(f, 0.0);
    EXPECT_TRUE(zero.full);
    EXPECT_EQ(zero.psi_min, -kTwoPi);
    EXPECT_EQ(zero.psi_max, kTwoPi);
    OptimalDomain half = optimal_domain(f, 0.5);
    EXPECT_TRUE(half.full);
    EXPECT_FALSE(half.psi_bullet.has_value());
    // tan(2.2689 / 2) = 2.144 still exceeds 3/2.
    EXPECT_TRUE(optimal_domain(f, 1.5).full);
    OptimalDomain strict = optimal_domain(f, 2.5);
    EXPECT_FALSE(strict.full);
    ASSERT_TRUE(strict.psi_bullet.has_value());
    EXPECT_EQ(strict.psi_max, *strict.psi_bullet);
    EXPECT_GE(*strict.psi_bullet, 0.0);
    OptimalDomain neg = optimal_domain(f, -2.5);
    ASSERT_TRUE(neg.psi_bullet.has_value());
    EXPECT_EQ(neg.psi_min, *neg.psi_bullet);
    EXPECT_LE(*neg.psi_bullet, 0.0);
}

TEST(detuned, domain_threshold_transition) {
    for (double theta : {0.6, 1.4, kWideTheta, 3.0}) {
        PsiFamily f(theta, 0.4, 512);
        double edge = std::tan(theta / 2);
        for (double scale : {0.5, 0.9, 0.999, 1.001, 1.2, 3.0}) {
            for (double sign : {-1.0, 1.0}) {
                double delta = sign * scale * edge;
                OptimalDomain d = optimal_domain(f, delta);
                EXPECT_EQ(d.full, scale <= 1.0) << theta << " " << delta;
                EXPECT_EQ(d.psi_bullet.has_value(), scale > 1.0);
            }
        }
    }
}

TEST(detuned, stationary_label_properties) {
    std::mt19937_64 rng(51);
    for (int n = 0; n < 30; n++) {
        double theta = uniform(rng, 0.2, 3.0), phi = uniform(rng, -kPi, kPi);
        PsiFamily f(theta, phi, 256);
        double delta = sgn(uniform(rng, -1, 1)) * std::tan(theta / 2) * uniform(rng, 1.05, 4.0);
        OptimalDomain d = optimal_domain(f, delta);
        ASSERT_TRUE(d.psi_bullet.has_value());
        double bullet = *d.psi_bullet;
        EXPECT_NEAR(f.at(bullet).p2, 1 / delta, 1e-8);
        EXPECT_NEAR(endpoint_slope(f, bullet, delta), 0.0, 1e-8);
        // Closed form: p2 = -sin(s) cot(theta/2) = 1/delta on the label side of sgn(delta).
        double s = -std::asin(std::tan(theta / 2) / delta);
        EXPECT_NEAR(bullet + phi, resonant_arc(theta, s).offset, 1e-8);
        EXPECT_EQ(bullet + phi >= 0, delta > 0);
    }
}

TEST(detuned, domain_is_bijective_with_range_four_pi) {
    std::mt19937_64 rng(52);
    for (int n = 0; n < 30; n++) {
        double theta = uniform(rng, 0.2, 3.0), phi = uniform(rng, -kPi, kPi);
        PsiFamily f(theta, phi, 256);
        double delta = uniform(rng, -4, 4);
        OptimalDomain d = optimal_domain(f, delta);
        EXPECT_NEAR(std::abs(endpoint_map(f, d.psi_max, delta) - endpoint_map(f, d.psi_min, delta)), kFourPi, 1e-6);
        double dir = sgn(endpoint_map(f, d.psi_max, delta) - endpoint_map(f, d.psi_min, delta));
        double prev = endpoint_map(f, d.psi_min, delta);
        for (int k = 1; k <= 400; k++) {
            double psi = d.psi_min + (d.psi_max - d.psi_min) * k / 400;
            double cur = endpoint_map(f, psi, delta);
            EXPECT_GT(dir * (cur - prev), -1e-12);
            prev = cur;
        }
        EXPECT_LT(d.psi_max - d.psi_min, kFourPi + 1e-9);
    }
}

TEST(detuned, contains_reduces_modulo_four_pi) {
    OptimalDomain d = optimal_domain(wide_family(), 2.5);
    double mid = 0.5 * (d.psi_min + d.psi_max);
    EXPECT_TRUE(d.contains(mid));
    EXPECT_TRUE(d.contains(mid + kFourPi));
    EXPECT_FALSE(d.contains(d.psi_max + 0.5 * (kFourPi - (d.psi_max - d.psi_min))));
}

TEST(detuned, zero_detuning_matches_general) {
    std::mt19937_64 rng(53);
    for (int n = 0; n < 20; n++) {
        EulerTarget t = to_euler(haar_gate(rng));
        SynthesisResult a = synthesize_detuned(t, 0.0);
        SynthesisResult b = synthesize_general(t);
        EXPECT_EQ(a.law.tf, b.law.tf);
        EXPECT_EQ(a.law.p2, b.law.p2);
        EXPECT_EQ(a.law.phi0, b.law.phi0);
    }
}

TEST(detuned, z_quarter_turn_four_detunings) {
    EulerTarget target = z_rotation_target(kPi / 2);
    PsiFamily f(0.0, 0.0, 1024);
    ASSERT_TRUE(f.z_family());
    std::set<std::pair<double, double>> laws;
    for (double delta : {0.0, 0.5, 1.5, 2.5}) {
        SynthesisResult r = synthesize_detuned(target, delta);
        EXPECT_EQ(r.law.delta, delta);
        EXPECT_LT(r.residual, 1e-6) << delta;
        EXPECT_LT(detuned_residual(r.law, target), 1e-6);
        double scan = brute_force_detuned_time(f, kPi / 2, delta);
        EXPECT_LE(r.law.tf, scan + 1e-4) << delta;
        laws.insert({std::round(r.law.p2 * 1e6), std::round(r.law.tf * 1e6)});
    }
    EXPECT_EQ(laws.size(), 4u);
}

TEST(detuned, y_eighth_turn) {
    EulerTarget target = to_euler(UnitGate::from_axis_angle(kPi / 4, {0, 1, 0}));
    SynthesisResult r = synthesize_detuned(target, 0.5);
    EXPECT_LT(r.residual, 1e-6);
    PsiFamily f(r.target.theta, r.target.phi);
    EXPECT_LE(r.law.tf, brute_force_detuned_time(f, r.target.psi, 0.5) + 1e-4);
}

TEST(detuned, random_pairs_against_scan) {
    std::mt19937_64 rng(54);
    for (int n = 0; n < 8; n++) {
        EulerTarget t = to_euler(haar_gate(rng));
        double delta = uniform(rng, -3, 3);
        PsiFamily f(t.theta, t.phi);
        SynthesisResult r = synthesize_detuned(f, t, delta);
        EXPECT_LT(r.residual, 1e-6);
        double scan = brute_force_detuned_time(f, t.psi, delta);
        EXPECT_LE(r.law.tf, scan + 1e-4);
        EXPECT_NEAR(r.law.tf, scan, 1e-3);
    }
}

TEST(detuned, solution_label_lies_in_domain) {
    const PsiFamily &f = wide_family();
    for (double delta : {-2.9, -1.0, 0.3, 1.5, 2.2, 2.9}) {
        for (double psi : {-3.0, 0.0, 2.0}) {
            DetunedSolution s = solve_detuned(f, psi, delta);
            EXPECT_TRUE(s.domain.contains(s.psi_label, 1e-9));
            EXPECT_NEAR(endpoint_map(f, s.psi_label, delta), psi + kFourPi * s.n, 1e-9);
        }
    }
}

TEST(detuned, family_target_mismatch_is_rejected) {
    EXPECT_THROW(synthesize_detuned(wide_family(), {0.0, 1.0, 0.0, false}, 1.0), Error);
}

TEST(detuned, symmetric_pair_durations) {
    for (double phi : {0.0, 1.2}) {
        PsiFamily f(kWideTheta, phi, 512);
        EXPECT_NEAR(f.at(-phi + kPi).duration, f.at(-phi - kPi).duration, 1e-9);
    }
}

TEST(detuned, tdiff_resonant_sign) {
    EulerTarget t{0.3, 1.0, -0.2, false};
    TdiffReport r = tdiff_analysis(t, {0.0});
    ASSERT_EQ(r.rows.size(), 1u);
    EXPECT_LT(r.rows[0].tdiff, 0.0);
    EXPECT_THROW(tdiff_analysis(t, {1.0, 0.0}), Error);
}

TEST(detuned, tdiff_structure_for_wide_target) {
    std::vector<double> grid;
    for (int k = 0; k <= 600; k++) {
        grid.push_back(-3.0 + 6.0 * k / 600);
    }
    TdiffReport r = tdiff_analysis({0.0, kWideTheta, 0.0, false}, grid);
    EXPECT_EQ(r.rows.size(), grid.size());
    ASSERT_FALSE(r.sign_changes.empty());
    for (const SignChange &c : r.sign_changes) {
        if (c.kind == TdiffEvent::ZeroCross) {
            EXPECT_LT(c.tdiff_gap, 1e-6);
            EXPECT_LT(c.predicted_gap, r.grid_step);
        } else {
            EXPECT_EQ(c.kind, TdiffEvent::BoundaryJump);
            EXPECT_LT(c.boundary_gap, 1e-6);
        }
    }
    std::string csv = tdiff_csv(r);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "delta,t_U,t_negU,tdiff,in_X,event");
}
