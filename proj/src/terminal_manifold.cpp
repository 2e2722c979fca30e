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

#include "evasion/terminal_manifold.hpp"

#include <cmath>
#include <string>

#include "evasion/errors.hpp"

namespace evasion {

CylindricalState Seed::terminal_state(const GameParams& params) const noexcept {
    const double phi = side == BoundarySide::Right ? params.phi_d : -params.phi_d;
    return {r, phi, theta_d};
}

std::string_view to_string(BoundarySide side) noexcept {
    return side == BoundarySide::Right ? "right" : "left";
}

std::string_view to_string(TerminalClass c) noexcept {
    switch (c) {
        case TerminalClass::RUP: return "RUP";
        case TerminalClass::LUP: return "LUP";
        case TerminalClass::BothUPL: return "BothUPL";
        case TerminalClass::RBUP: return "RBUP";
        case TerminalClass::LBUP: return "LBUP";
        case TerminalClass::NonUsableBoundary: return "NonUsableBoundary";
        case TerminalClass::Interior: return "Interior";
        case TerminalClass::Outside: return "Outside";
    }
    return "?";
}

std::string_view to_string(UplMembership m) noexcept {
    switch (m) {
        case UplMembership::RightOnly: return "RUPL-only";
        case UplMembership::LeftOnly: return "LUPL-only";
        case UplMembership::Both: return "Both";
        case UplMembership::Neither: return "Neither";
    }
    return "?";
}

std::string_view to_string(SeedKind k) noexcept {
    return k == SeedKind::UsablePart ? "UP" : "BUP";
}

double rbup_radius(double theta, const GameParams& params) {
    const double hi = kPi + 2.0 * params.phi_d;
    if (!(theta >= 0.0 && theta <= hi)) {
        throw DomainError("RBUP radius needs theta in [0, pi + 2 phi_d], got " + std::to_string(theta));
    }
    return std::sin(theta - params.phi_d) + std::sin(params.phi_d);
}

double lbup_radius(double theta, const GameParams& params) {
    const double lo = kPi - 2.0 * params.phi_d;
    if (!(theta >= lo && theta <= kTwoPi)) {
        throw DomainError("LBUP radius needs theta in [pi - 2 phi_d, 2pi], got " + std::to_string(theta));
    }
    return -std::sin(theta + params.phi_d) + std::sin(params.phi_d);
}

double bup_radius_unchecked(double theta, BoundarySide side, const GameParams& params) noexcept {
    return side == BoundarySide::Right ? std::sin(theta - params.phi_d) + std::sin(params.phi_d)
                                       : -std::sin(theta + params.phi_d) + std::sin(params.phi_d);
}

namespace {

void require_on_boundary(const CylindricalState& c, double phi_boundary, const GameParams& params,
                         const char* which) {
    if (!(std::abs(c.phi - phi_boundary) < params.tol_event)) {
        throw PreconditionError(std::string(which) + " predicate queried off its boundary (phi=" +
                                std::to_string(c.phi) + ")");
    }
}

}  // namespace

bool in_rup(const CylindricalState& c, const GameParams& params) {
    require_on_boundary(c, params.phi_d, params, "RUP");
    return c.r < bup_radius_unchecked(c.theta, BoundarySide::Right, params);
}

bool in_lup(const CylindricalState& c, const GameParams& params) {
    require_on_boundary(c, -params.phi_d, params, "LUP");
    return c.r < bup_radius_unchecked(c.theta, BoundarySide::Left, params);
}

UplMembership upl_membership(double theta, const GameParams& params) noexcept {
    const double th = normalize_angle(theta);
    const double tol = params.tol_event;
    const double right_end = kPi + 2.0 * params.phi_d;
    const double left_start = kPi - 2.0 * params.phi_d;
    // RUPL: theta in (0, pi + 2 phi_d); LUPL: theta in (pi - 2 phi_d, 2pi).
    // The endpoint pi - 2 phi_d is escapable through the right boundary and
    // pi + 2 phi_d through the left one.
    const bool right = th > tol && th < right_end - tol;
    const bool left = th > left_start + tol && th < kTwoPi - tol;
    if (right && left) return UplMembership::Both;
    if (right) return UplMembership::RightOnly;
    if (left) return UplMembership::LeftOnly;
    return UplMembership::Neither;
}

TerminalClass classify(const CylindricalState& c, const GameParams& params) noexcept {
    const double tol = params.tol_event;
    if (c.r < tol) {
        switch (upl_membership(c.theta, params)) {
            case UplMembership::Both: return TerminalClass::BothUPL;
            case UplMembership::RightOnly: return TerminalClass::RUP;
            case UplMembership::LeftOnly: return TerminalClass::LUP;
            case UplMembership::Neither: return TerminalClass::RBUP;
        }
    }
    const double aphi = std::abs(c.phi);
    if (aphi > params.phi_d + tol) return TerminalClass::Outside;
    if (aphi < params.phi_d - tol) return TerminalClass::Interior;

    const bool right = c.phi > 0.0;
    const double bup = bup_radius_unchecked(c.theta, right ? BoundarySide::Right : BoundarySide::Left, params);
    if (std::abs(c.r - bup) <= tol) return right ? TerminalClass::RBUP : TerminalClass::LBUP;
    if (c.r < bup) return right ? TerminalClass::RUP : TerminalClass::LUP;
    return TerminalClass::NonUsableBoundary;
}

Seed mirror(const Seed& s) noexcept {
    return {s.r, normalize_angle(kTwoPi - s.theta_d),
            s.side == BoundarySide::Right ? BoundarySide::Left : BoundarySide::Right, s.kind};
}

std::vector<Seed> sample_seeds(const GameParams& params, int n_theta, int n_r) {
    if (n_theta < 0 || n_r < 0) throw PreconditionError("seed grid sizes must be non-negative");
    std::vector<Seed> right;
    const double span = kPi + 2.0 * params.phi_d;
    for (int i = 0; i < n_theta; ++i) {
        const double theta = (i + 0.5) / n_theta * span;
        const double bup = rbup_radius(theta, params);
        for (int j = 0; j < n_r; ++j) {
            right.push_back({(j + 0.5) / n_r * bup, theta, BoundarySide::Right, SeedKind::UsablePart});
        }
        if (n_r > 0) right.push_back({bup, theta, BoundarySide::Right, SeedKind::BoundaryOfUsablePart});
    }
    std::vector<Seed> out = right;
    out.reserve(2 * right.size());
    for (const Seed& s : right) out.push_back(mirror(s));
    return out;
}

}  // namespace evasion
