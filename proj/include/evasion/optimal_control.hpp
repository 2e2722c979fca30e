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

// Hamiltonian, bang-bang control laws and closed-form costates of the
// retro-time construction.

#include <functional>
#include <optional>

#include "evasion/kinematics.hpp"
#include "evasion/terminal_manifold.hpp"

namespace evasion {

struct Costate {
    double lambda_x{0.0};
    double lambda_y{0.0};
    double lambda_theta{0.0};
};

/// Pursuer control switch found along a segment.
struct SwitchRecord {
    double tau_s{0.0};
    int nu_p_before{-1};
    int nu_p_after{1};
    CylindricalState state_at_switch;
    Costate costate_at_switch;
};

/// Bang-bang decision; `nu` is 0 exactly when the deciding quantity vanishes.
struct BangControl {
    int nu{0};
    bool singular{false};
};

struct PhasePoint {
    ReducedState state;
    Costate costate;
};

/// Closed-form state/costate of one constant-control segment, valid on
/// [tau_start, tau_end]. `nu_p` is the pursuer control applied on it.
struct SegmentEvaluator {
    double tau_start{0.0};
    double tau_end{0.0};
    int nu_p{-1};
    std::function<PhasePoint(double)> at;
};

/// lambda . f + 1 with the reduced Cartesian dynamics (unit running cost).
[[nodiscard]] double hamiltonian(const ReducedState& s, const Costate& lam, Controls u) noexcept;
/// lambda . f, the Hamiltonian without the running cost.
[[nodiscard]] double adjoint_product(const ReducedState& s, const Costate& lam, Controls u) noexcept;

/// S = y lambda_x - x lambda_y + lambda_theta.
[[nodiscard]] double switch_function(const ReducedState& s, const Costate& lam) noexcept;

/// nu_p = sgn(S) (maximizer).
[[nodiscard]] BangControl pursuer_control(const ReducedState& s, const Costate& lam) noexcept;
/// nu_e = sgn(lambda_theta) (minimizer).
[[nodiscard]] BangControl evader_control(const Costate& lam) noexcept;

/// Evader control immediately before termination on the right boundary,
/// from the sign of the terminal rate -cos(phi_d - theta_d). Returns 0 on
/// the evader's universal surface theta_d = phi_d + pi/2 (within tol_event).
[[nodiscard]] int terminal_evader_control(double theta_d, const GameParams& params) noexcept;

/// Terminal costate (-cos phi_d, sin phi_d, 0) on the right boundary.
[[nodiscard]] Costate terminal_costate(const GameParams& params) noexcept;

/// Costate of the primary family from the terminal surface; |nu_e| must be 1.
[[nodiscard]] Costate costate_primary(double tau, double theta_d, int nu_p, int nu_e, const GameParams& params);
/// Costate along the evader's universal surface (lambda_theta = 0).
[[nodiscard]] Costate costate_us(double tau, int nu_p, const GameParams& params);
/// Costate of a tributary leaving the universal surface at tau_us.
[[nodiscard]] Costate costate_tributary(double tau, double tau_us, double theta_d, int nu_p, int nu_e,
                                       const GameParams& params);
/// Costate after a pursuer switch at tau_s from nu_p0 to nu_p. `tau_us` is
/// the junction time when the pre-switch family was a tributary, else 0.
[[nodiscard]] Costate costate_post_switch(double tau, double tau_s, int nu_p0, int nu_p, double theta_d, int nu_e,
                                         const GameParams& params, double tau_us = 0.0);

/// Positive scale that makes the unit-norm terminal costate satisfy
/// H = 0 at a UP seed: 1 / (r_bup - r). Throws DomainError for seeds on
/// (or beyond) the BUP, where the scale is unbounded.
[[nodiscard]] double transversality_multiplier(const Seed& seed, const GameParams& params);

/// First pursuer switch along the segment: scans S at params.scan_step for
/// a sample with S * nu_p < 0 and bisects the bracket to |S| < tol_root.
[[nodiscard]] std::optional<SwitchRecord> find_switch_time(const SegmentEvaluator& seg, const GameParams& params);

/// First evader switch (lambda_theta * nu_e < 0) along a segment with fixed
/// nu_e != 0. Returns the retro-time of the sign change.
[[nodiscard]] std::optional<double> find_evader_switch_time(const SegmentEvaluator& seg, int nu_e,
                                                            const GameParams& params);

}  // namespace evasion
