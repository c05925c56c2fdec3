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
#include <string>
#include <vector>

#include "optsu2/dynamics.hpp"
#include "optsu2/resonant.hpp"
#include "optsu2/su2.hpp"

namespace optsu2 {

/// The resonant control u_Psi reaching (Psi, theta*, phi*) at the first arrival.
struct PsiControl {
    double psi = 0.0;
    double p2 = 0.0;
    double duration = 0.0;
    ExtremalLaw law;  ///< resonant law (delta = 0)
};

/// Resonant controls reaching the sphere point (theta*, phi*), labelled by the
/// value Psi of psi(tf). Labels live on [-phi* - 2pi, -phi* + 2pi]; the two ends
/// are the same control and any real label is reduced modulo 4pi.
/// theta* = 0 selects the z-rotation family (phi* forced to 0, Psi = lambda).
class PsiFamily {
   public:
    PsiFamily(double theta_star, double phi_star, size_t resolution = 1024);

    double theta_star() const { return theta_star_; }
    double phi_star() const { return phi_star_; }
    bool z_family() const { return z_; }
    double center() const { return -phi_star_; }
    double psi_lo() const { return -phi_star_ - kTwoPi; }
    double psi_hi() const { return -phi_star_ + kTwoPi; }
    size_t resolution() const { return table_.size() - 1; }

    /// Exact evaluation (closed form plus a scalar solve), for any real label.
    PsiControl at(double psi) const;
    /// resolution + 1 uniform nodes from psi_lo to psi_hi.
    const std::vector<PsiControl> &table() const { return table_; }
    double node(long j) const { return psi_lo() + kFourPi * static_cast<double>(j) / static_cast<double>(resolution()); }
    /// Duration at node j of the label line lifted periodically.
    double node_duration(long j) const;
    double t_max() const { return t_max_; }

   private:
    double theta_star_;
    double phi_star_;
    bool z_;
    std::vector<PsiControl> table_;
    double t_max_ = 0.0;
};

PsiFamily build_psi_family(double theta_star, double phi_star, size_t resolution = 1024);

/// f_delta(u_Psi) = Psi - 2 delta T(u_Psi).
double endpoint_map(const PsiFamily &family, double psi, double delta);
/// d f_delta / d Psi = 1 - delta p2(u_Psi).
double endpoint_slope(const PsiFamily &family, double psi, double delta);

struct OptimalDomain {
    double psi_min = 0.0;
    double psi_max = 0.0;
    std::optional<double> psi_bullet;
    bool full = true;

    /// Membership of the control u_Psi, i.e. of Psi modulo 4pi.
    bool contains(double psi, double tol = 1e-12) const;
};

/// Labels whose controls remain time-optimal under detuning `delta`. When
/// |delta| > tan(theta*/2) the window is cut at the stationary label Psi_bullet
/// (closest label to -phi* with f' = 0, on the side of sgn(delta)) and closed
/// 4pi of f_delta away from it; bounds may then leave the base label window.
OptimalDomain optimal_domain(const PsiFamily &family, double delta);
OptimalDomain optimal_domain(double theta_star, double phi_star, double delta);

struct DetunedSolution {
    ExtremalLaw law;
    double psi_label = 0.0;  ///< label in the optimal domain (possibly lifted)
    long n = 0;              ///< f_delta(u_Psi) = psi* + 4pi n
    OptimalDomain domain;
};

/// Analytic detuned solve on a prebuilt family for the target psi*.
/// Throws NoConvergence if the inversion fails.
DetunedSolution solve_detuned(const PsiFamily &family, double psi_star, double delta);

/// Time-optimal law for `target` under detuning; Delta = 0 is synthesize_general.
/// z-rotations are encoded as (lambda, 0, 0).
SynthesisResult synthesize_detuned(const EulerTarget &target, double delta);
SynthesisResult synthesize_detuned(const PsiFamily &family, const EulerTarget &target, double delta);

/// Independent check: scans every label of one period, keeps those with
/// f_delta = psi* mod 4pi and returns the shortest duration among them.
double brute_force_detuned_time(const PsiFamily &family, double psi_star, double delta, size_t grid = 8192);

enum class TdiffEvent { None, ZeroCross, BoundaryJump };
std::string_view to_string(TdiffEvent e);

struct TdiffRow {
    double delta = 0.0;
    double t_u = 0.0;
    double t_neg_u = 0.0;
    double tdiff = 0.0;
    bool in_x = false;
    TdiffEvent event = TdiffEvent::None;
};

struct SignChange {
    double delta = 0.0;  ///< refined location
    TdiffEvent kind = TdiffEvent::None;
    bool in_x = false;
    double tdiff_gap = 0.0;      ///< |T_diff| at the refined point
    double boundary_gap = 0.0;   ///< |f| distance of the switching label to an Omega bound
    double predicted = 0.0;      ///< nearest root of the crossing formula
    double predicted_gap = 0.0;  ///< |delta - predicted|
};

struct TdiffReport {
    std::vector<TdiffRow> rows;
    std::vector<SignChange> sign_changes;
    /// Maximal runs of grid points inside X, as [first, last] delta values.
    std::vector<std::pair<double, double>> x_intervals;
    /// Roots of delta = -(phi* + psi* +- pi + 4pi n) / (2 T(u_{Psi+-})) inside the grid range.
    std::vector<double> predicted_roots;
    double grid_step = 0.0;
};

/// T(U, delta) - T(-U, delta) over a sorted grid, with every sign change refined
/// by bisection and classified as a zero crossing or a jump.
TdiffReport tdiff_analysis(const EulerTarget &target, const std::vector<double> &delta_grid);

std::string tdiff_csv(const TdiffReport &report);

}  // namespace optsu2
