// Copyright 2026 The Evasion Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <string>

#include "evasion/errors.hpp"
#include "evasion/trajectory.hpp"

namespace evasion {

namespace {

// Below this magnitude the second derivative is treated as zero, which
// places the tangency point theta = 2 phi_d on the Outside side.
constexpr double kEmanationTolerance = 1e-12;

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

}  // namespace

std::string_view to_string(Emanation e) noexcept { return e == Emanation::Inside ? "inside" : "outside"; }

double barrier_phi_second_derivative(double theta_rb, const GameParams& params) {
    if (!(theta_rb > 0.0 && theta_rb < kPi + 2.0 * params.phi_d)) {
        throw DomainError("emanation needs theta in (0, pi + 2 phi_d), got " + std::to_string(theta_rb));
    }
    const double r = rbup_radius(theta_rb, params);
    const int nu_e = terminal_evader_control(theta_rb, params);
    const double theta_rate = 1.0 + nu_e;  // -nu_p + nu_e with nu_p = -1
    return -((1.0 + theta_rate) * std::cos(theta_rb - params.phi_d) - std::cos(params.phi_d)) / r;
}

Emanation barrier_emanation(double theta_rb, const GameParams& params) {
    return barrier_phi_second_derivative(theta_rb, params) < -kEmanationTolerance ? Emanation::Inside
                                                                                   : Emanation::Outside;
}

BuplCheck bupl_switch_check(double theta, const GameParams& params, BoundarySide side) {
    if (side == BoundarySide::Left) {
        const BuplCheck right = bupl_switch_check(normalize_angle(kTwoPi - theta), params, BoundarySide::Right);
        return {-right.s_rate, -right.nu_p, -right.nu_e};
    }
    const double tol = params.tol_event;
    const double th = normalize_angle(theta);
    const double far_end = kPi + 2.0 * params.phi_d;
    if (!(near(th, 0.0, tol) || near(th, kTwoPi, tol) || near(th, far_end, tol))) {
        throw DomainError("BUPL analysis applies at theta = 0 or pi + 2 phi_d only, got " + std::to_string(theta));
    }
    // Apex state with the terminal costate; the pursuer control is still
    // undecided there (S = 0), but it only multiplies x and y, which vanish.
    const ReducedState s{0.0, 0.0, th};
    const Costate lam = terminal_costate(params);
    const ReducedRate rate = retro_reduced_dynamics(s, {0.0, 0.0});
    const double lx_rate = 0.0;  // -nu_p lambda_y, multiplied by y = 0 below
    const double ly_rate = 0.0;  // nu_p lambda_x, multiplied by x = 0 below
    const double lt_rate = lam.lambda_x * std::cos(th) - lam.lambda_y * std::sin(th);
    const double s_rate =
        rate.y * lam.lambda_x + s.y * lx_rate - rate.x * lam.lambda_y - s.x * ly_rate + lt_rate;
    const int nu_p = (s_rate > 0.0) - (s_rate < 0.0);
    return {s_rate, nu_p, terminal_evader_control(th, params)};
}

BarrierTrajectory synthesize_barrier(double theta_rb, const GameParams& params, BoundarySide side) {
    if (side == BoundarySide::Left) {
        BarrierTrajectory right = synthesize_barrier(normalize_angle(kTwoPi - theta_rb), params, BoundarySide::Right);
        return {mirror(right.trajectory), right.emanation};
    }
    const Emanation e = barrier_emanation(theta_rb, params);
    const Seed seed{rbup_radius(theta_rb, params), theta_rb, BoundarySide::Right, SeedKind::BoundaryOfUsablePart};
    return {synthesize(seed, params), e};
}

}  // namespace evasion
