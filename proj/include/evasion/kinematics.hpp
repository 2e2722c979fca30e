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

#pragma once

// State representations of the two-car game and their dynamics.
//
// Realistic space: both planar poses, headings CCW from +x.
// Reduced space: pursuer-fixed frame, y-axis along the pursuer heading,
// angles measured clockwise from +y. Cylindrical: (r, phi, theta) with
// x = r sin(phi), y = r cos(phi).

#include <array>
#include <cmath>
#include <numbers>

namespace evasion {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kHalfPi = 0.5 * std::numbers::pi;

/// Radius below which the cylindrical representation is treated as the apex.
inline constexpr double kApexTolerance = 1e-12;

[[nodiscard]] constexpr double deg2rad(double deg) noexcept { return deg * (kPi / 180.0); }
[[nodiscard]] constexpr double rad2deg(double rad) noexcept { return rad * (180.0 / kPi); }

/// Wraps to [0, 2pi).
[[nodiscard]] double normalize_angle(double a) noexcept;
/// Wraps to [-pi, pi].
[[nodiscard]] double wrap_signed(double a) noexcept;

struct Pose {
    double x{0.0};
    double y{0.0};
    double heading{0.0};

    friend bool operator==(const Pose&, const Pose&) = default;
};

struct RealisticState {
    Pose pursuer;
    Pose evader;

    /// Builds a state with both headings normalized to [0, 2pi).
    static RealisticState make(const Pose& pursuer, const Pose& evader) noexcept;

    [[nodiscard]] std::array<double, 6> to_array() const noexcept;
    static RealisticState from_array(const std::array<double, 6>& v) noexcept;
};

struct RealisticRate {
    double xp, yp, theta_p, xe, ye, theta_e;
};

struct ReducedState {
    double x{0.0};
    double y{0.0};
    double theta{0.0};

    static ReducedState make(double x, double y, double theta) noexcept {
        return {x, y, normalize_angle(theta)};
    }
    [[nodiscard]] std::array<double, 3> to_array() const noexcept { return {x, y, theta}; }
    static ReducedState from_array(const std::array<double, 3>& v) noexcept { return {v[0], v[1], v[2]}; }
};

struct ReducedRate {
    double x, y, theta;
};

struct CylindricalState {
    double r{0.0};
    double phi{0.0};
    double theta{0.0};
};

struct CylindricalRate {
    double r, phi, theta;
};

/// Turn rates of both players, each in [-1, 1].
struct Controls {
    double nu_p{0.0};
    double nu_e{0.0};

    /// Throws PreconditionError when a component leaves [-1, 1].
    static Controls make(double nu_p, double nu_e);
};

/// Cone half-angle and numerical tolerances shared by every module.
struct GameParams {
    double phi_d{deg2rad(40.0)};
    double tol_root{1e-10};
    double tol_event{1e-9};
    double tau_max{kTwoPi};
    /// Sampling step used to bracket switch and boundary events.
    double scan_step{1e-3};

    /// Throws PreconditionError unless 0 < phi_d < pi/2 and all tolerances > 0.
    void validate() const;
    static GameParams from_degrees(double phi_d_degrees);
};

[[nodiscard]] ReducedState to_reduced(const RealisticState& s) noexcept;
[[nodiscard]] RealisticState from_reduced(const ReducedState& s, const Pose& pursuer) noexcept;

/// r = 0 maps to phi = 0.
[[nodiscard]] CylindricalState to_cylindrical(const ReducedState& s) noexcept;
[[nodiscard]] ReducedState from_cylindrical(const CylindricalState& c) noexcept;

[[nodiscard]] RealisticRate realistic_dynamics(const RealisticState& s, Controls u) noexcept;
[[nodiscard]] ReducedRate reduced_dynamics(const ReducedState& s, Controls u) noexcept;
/// Throws DegenerateStateError when r <= apex_tol.
[[nodiscard]] CylindricalRate cylindrical_dynamics(const CylindricalState& c, Controls u,
                                                   double apex_tol = kApexTolerance);

[[nodiscard]] ReducedRate retro_reduced_dynamics(const ReducedState& s, Controls u) noexcept;
[[nodiscard]] CylindricalRate retro_cylindrical_dynamics(const CylindricalState& c, Controls u,
                                                         double apex_tol = kApexTolerance);

// Reflection about the pursuer heading axis. Maps right-cone play onto
// left-cone play: x -> -x, phi -> -phi, theta -> 2pi - theta, nu -> -nu.
[[nodiscard]] ReducedState mirror(const ReducedState& s) noexcept;
[[nodiscard]] CylindricalState mirror(const CylindricalState& c) noexcept;
[[nodiscard]] Controls mirror(Controls u) noexcept;

}  // namespace evasion
