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

#include "evasion/kinematics.hpp"

#include <string>

#include "evasion/errors.hpp"

namespace evasion {

double normalize_angle(double a) noexcept {
    if (a >= 0.0 && a < kTwoPi) return a;
    double m = std::fmod(a, kTwoPi);
    if (m < 0.0) m += kTwoPi;
    // fmod of a tiny negative value can round up to exactly 2pi.
    return m >= kTwoPi ? 0.0 : m;
}

double wrap_signed(double a) noexcept {
    if (a >= -kPi && a <= kPi) return a;
    return std::remainder(a, kTwoPi);
}

RealisticState RealisticState::make(const Pose& pursuer, const Pose& evader) noexcept {
    return {{pursuer.x, pursuer.y, normalize_angle(pursuer.heading)},
            {evader.x, evader.y, normalize_angle(evader.heading)}};
}

std::array<double, 6> RealisticState::to_array() const noexcept {
    return {pursuer.x, pursuer.y, pursuer.heading, evader.x, evader.y, evader.heading};
}

RealisticState RealisticState::from_array(const std::array<double, 6>& v) noexcept {
    return {{v[0], v[1], v[2]}, {v[3], v[4], v[5]}};
}

Controls Controls::make(double nu_p, double nu_e) {
    if (!(nu_p >= -1.0 && nu_p <= 1.0) || !(nu_e >= -1.0 && nu_e <= 1.0)) {
        throw PreconditionError("controls must lie in [-1, 1], got nu_p=" + std::to_string(nu_p) +
                                " nu_e=" + std::to_string(nu_e));
    }
    return {nu_p, nu_e};
}

void GameParams::validate() const {
    if (!(phi_d > 0.0 && phi_d < kHalfPi)) {
        throw PreconditionError("phi_d must lie in (0, pi/2), got " + std::to_string(phi_d));
    }
    if (!(tol_root > 0.0) || !(tol_event > 0.0) || !(tau_max > 0.0) || !(scan_step > 0.0)) {
        throw PreconditionError("tolerances, tau_max and scan_step must be positive");
    }
}

GameParams GameParams::from_degrees(double phi_d_degrees) {
    GameParams p;
    p.phi_d = deg2rad(phi_d_degrees);
    p.validate();
    return p;
}

ReducedState to_reduced(const RealisticState& s) noexcept {
    const double dx = s.evader.x - s.pursuer.x;
    const double dy = s.evader.y - s.pursuer.y;
    const double sp = std::sin(s.pursuer.heading);
    const double cp = std::cos(s.pursuer.heading);
    return {dx * sp - dy * cp, dx * cp + dy * sp,
            normalize_angle(s.pursuer.heading - s.evader.heading)};
}

RealisticState from_reduced(const ReducedState& s, const Pose& pursuer) noexcept {
    const double sp = std::sin(pursuer.heading);
    const double cp = std::cos(pursuer.heading);
    const Pose evader{pursuer.x + s.x * sp + s.y * cp, pursuer.y - s.x * cp + s.y * sp,
                      pursuer.heading - s.theta};
    return RealisticState::make(pursuer, evader);
}

CylindricalState to_cylindrical(const ReducedState& s) noexcept {
    const double r = std::hypot(s.x, s.y);
    const double phi = r == 0.0 ? 0.0 : std::atan2(s.x, s.y);
    return {r, phi, s.theta};
}

ReducedState from_cylindrical(const CylindricalState& c) noexcept {
    return {c.r * std::sin(c.phi), c.r * std::cos(c.phi), c.theta};
}

RealisticRate realistic_dynamics(const RealisticState& s, Controls u) noexcept {
    return {std::cos(s.pursuer.heading), std::sin(s.pursuer.heading), u.nu_p,
            std::cos(s.evader.heading),  std::sin(s.evader.heading),  u.nu_e};
}

ReducedRate reduced_dynamics(const ReducedState& s, Controls u) noexcept {
    return {u.nu_p * s.y + std::sin(s.theta), -u.nu_p * s.x - 1.0 + std::cos(s.theta),
            u.nu_p - u.nu_e};
}

CylindricalRate cylindrical_dynamics(const CylindricalState& c, Controls u, double apex_tol) {
    if (!(c.r > apex_tol)) {
        throw DegenerateStateError("cylindrical dynamics undefined at the apex (r=" +
                                   std::to_string(c.r) + ")");
    }
    const double lead = c.theta - c.phi;
    return {std::cos(lead) - std::cos(c.phi),
            u.nu_p + (std::sin(lead) + std::sin(c.phi)) / c.r, u.nu_p - u.nu_e};
}

ReducedRate retro_reduced_dynamics(const ReducedState& s, Controls u) noexcept {
    const ReducedRate f = reduced_dynamics(s, u);
    return {-f.x, -f.y, -f.theta};
}

CylindricalRate retro_cylindrical_dynamics(const CylindricalState& c, Controls u, double apex_tol) {
    const CylindricalRate f = cylindrical_dynamics(c, u, apex_tol);
    return {-f.r, -f.phi, -f.theta};
}

ReducedState mirror(const ReducedState& s) noexcept {
    return {-s.x, s.y, normalize_angle(-s.theta)};
}

CylindricalState mirror(const CylindricalState& c) noexcept {
    return {c.r, -c.phi, normalize_angle(-c.theta)};
}

Controls mirror(Controls u) noexcept { return {-u.nu_p, -u.nu_e}; }

}  // namespace evasion
