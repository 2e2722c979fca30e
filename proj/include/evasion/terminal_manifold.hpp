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

// Terminal surface of the game: the usable part (UP) of the cone boundary,
// its boundary (BUP) and the apex line (UPL), plus seed grids for
// retro-time integration.

#include <string_view>
#include <vector>

#include "evasion/kinematics.hpp"

namespace evasion {

enum class BoundarySide { Right, Left };

enum class TerminalClass { RUP, LUP, BothUPL, RBUP, LBUP, NonUsableBoundary, Interior, Outside };

enum class UplMembership { RightOnly, LeftOnly, Both, Neither };

enum class SeedKind { UsablePart, BoundaryOfUsablePart };

/// Terminal configuration at which a retro-time trajectory starts.
struct Seed {
    double r{0.0};
    double theta_d{0.0};
    BoundarySide side{BoundarySide::Right};
    SeedKind kind{SeedKind::UsablePart};

    /// Terminal state on the cone boundary of `side`.
    [[nodiscard]] CylindricalState terminal_state(const GameParams& params) const noexcept;
};

[[nodiscard]] std::string_view to_string(BoundarySide side) noexcept;
[[nodiscard]] std::string_view to_string(TerminalClass c) noexcept;
[[nodiscard]] std::string_view to_string(UplMembership m) noexcept;
[[nodiscard]] std::string_view to_string(SeedKind k) noexcept;

/// sin(theta - phi_d) + sin(phi_d); theta must lie in [0, pi + 2 phi_d].
[[nodiscard]] double rbup_radius(double theta, const GameParams& params);
/// -sin(theta + phi_d) + sin(phi_d); theta must lie in [pi - 2 phi_d, 2pi].
[[nodiscard]] double lbup_radius(double theta, const GameParams& params);
/// Boundary radius of either side, without the domain check.
[[nodiscard]] double bup_radius_unchecked(double theta, BoundarySide side, const GameParams& params) noexcept;

/// Strict UP inequality on the right boundary (phi = +phi_d).
[[nodiscard]] bool in_rup(const CylindricalState& c, const GameParams& params);
/// Strict UP inequality on the left boundary (phi = -phi_d).
[[nodiscard]] bool in_lup(const CylindricalState& c, const GameParams& params);

[[nodiscard]] UplMembership upl_membership(double theta, const GameParams& params) noexcept;

[[nodiscard]] TerminalClass classify(const CylindricalState& c, const GameParams& params) noexcept;

/// Midpoint grid over the terminal manifold of both sides: per side and per
/// theta_d, n_r UP seeds at r = (j + 1/2) / n_r * r_bup and one BUP seed.
/// Right seeds come first; left seeds are their mirror images.
[[nodiscard]] std::vector<Seed> sample_seeds(const GameParams& params, int n_theta, int n_r);

/// Seed on the opposite side obtained by reflection (theta -> 2pi - theta).
[[nodiscard]] Seed mirror(const Seed& s) noexcept;

}  // namespace evasion
