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

// Closed-form retro-time trajectory families and their stitching into
// complete trajectories: primary solution, evader's universal surface (EUS)
// with its tributaries, transition-surface (TS) continuations and the
// barrier built from the BUP.

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "evasion/kinematics.hpp"
#include "evasion/optimal_control.hpp"
#include "evasion/terminal_manifold.hpp"

namespace evasion {

enum class FamilyTag {
    Primary,
    EUS,
    TributaryLeft,   // evader turns left (nu_e = +1) off the universal surface
    TributaryRight,  // evader turns right (nu_e = -1) off the universal surface
    PostTSPrimary,
    PostTSTributary,
    BarrierPrimary,
    PostTSBarrier,
};

enum class Termination { BoundaryHit, PursuerSwitch, EvaderSwitch, TributaryJunction, HorizonReached };

[[nodiscard]] std::string_view to_string(FamilyTag f) noexcept;
[[nodiscard]] std::string_view to_string(Termination t) noexcept;
[[nodiscard]] std::optional<FamilyTag> family_from_string(std::string_view s) noexcept;

/// Retro-time flow of the reduced dynamics under constant controls
/// (nu_p = +-1, nu_e in {-1, 0, +1}) from `anchor`, dtau >= 0 after it.
[[nodiscard]] ReducedState closed_form_state(const CylindricalState& anchor, int nu_p, int nu_e,
                                             double dtau) noexcept;
/// Matching costate flow from the anchor costate; `anchor_theta` is the
/// state heading difference at the anchor.
[[nodiscard]] Costate closed_form_costate(const Costate& anchor, double anchor_theta, int nu_p, int nu_e,
                                          double dtau) noexcept;

/// One constant-control arc of a trajectory.
struct TrajectorySegment {
    FamilyTag family{FamilyTag::Primary};
    CylindricalState anchor_state;
    Costate anchor_costate;
    double anchor_tau{0.0};
    int nu_p{-1};
    int nu_e{0};
    double tau_end{0.0};
    Termination termination{Termination::HorizonReached};

    /// Closed forms are analytic in tau, so evaluation past tau_end is
    /// allowed (used by the ODE oracle); tau < anchor_tau is not.
    [[nodiscard]] ReducedState state_at(double tau) const;
    [[nodiscard]] CylindricalState cylindrical_at(double tau) const;
    [[nodiscard]] Costate costate_at(double tau) const;
    [[nodiscard]] PhasePoint phase_at(double tau) const { return {state_at(tau), costate_at(tau)}; }
    [[nodiscard]] Controls controls() const noexcept {
        return {static_cast<double>(nu_p), static_cast<double>(nu_e)};
    }
    [[nodiscard]] SegmentEvaluator evaluator(double tau_end_limit) const;
};

struct Trajectory {
    Seed seed;
    std::vector<TrajectorySegment> segments;
    double total_tau{0.0};

    /// Segment active at tau; junction times resolve to the later segment.
    [[nodiscard]] const TrajectorySegment& segment_at(double tau) const;
    [[nodiscard]] ReducedState state_at(double tau) const { return segment_at(tau).state_at(tau); }
    [[nodiscard]] Costate costate_at(double tau) const { return segment_at(tau).costate_at(tau); }
    [[nodiscard]] Termination termination() const noexcept {
        return segments.empty() ? Termination::HorizonReached : segments.back().termination;
    }
};

// Families as closed-form functions of retro-time.

/// Primary solution from a UP seed, returned in cylindrical coordinates.
[[nodiscard]] CylindricalState primary_state(double tau, const Seed& seed, int nu_p, int nu_e,
                                             const GameParams& params);
/// Evader's universal surface (nu_e = 0) from a UP seed.
[[nodiscard]] CylindricalState eus_state(double tau, const Seed& seed, int nu_p, const GameParams& params);

/// Point of the universal surface where a tributary joins it.
struct EusPoint {
    CylindricalState state;
    double tau_us{0.0};
};

/// Tributary reaching the universal surface at `junction`; the evader
/// turns with nu_e = -1 (Right) or +1 (Left) while the pursuer keeps
/// nu_p. Requires tau >= tau_us.
[[nodiscard]] CylindricalState tributary_state(double tau, const EusPoint& junction, BoundarySide turn,
                                               const GameParams& params, int nu_p = -1);
/// Continuation emanating from a transition surface point in retro-time.
[[nodiscard]] CylindricalState post_ts_state(double tau, const SwitchRecord& sw, int nu_e,
                                             const GameParams& params);
/// Barrier trajectory from the RBUP point with heading difference theta_rb.
[[nodiscard]] CylindricalState barrier_state(double tau, double theta_rb, const GameParams& params);

/// Retro-time of the first |phi| = phi_d crossing after the evaluator's
/// start (crossings within tol_event of the start are ignored).
[[nodiscard]] std::optional<double> detect_boundary_hit(const SegmentEvaluator& seg, const GameParams& params);

/// Builds the full trajectory reaching `seed`: primary, universal-surface or
/// barrier family first, then TS continuations, until the boundary is hit,
/// an evader switch occurs or tau_max is reached. Left seeds are built as
/// mirror images of right seeds.
[[nodiscard]] Trajectory synthesize(const Seed& seed, const GameParams& params);

/// Universal-surface trajectory up to tau_us followed by the tributary with
/// the given evader turn and its TS continuations. `seed` must lie on the
/// universal surface (theta_d = phi_d + pi/2 on its side).
[[nodiscard]] Trajectory synthesize_tributary(const Seed& seed, double tau_us, BoundarySide turn,
                                              const GameParams& params);

/// Both tributaries branching from the universal surface at tau_us.
[[nodiscard]] std::array<Trajectory, 2> tributary_branches(const Seed& seed, double tau_us,
                                                           const GameParams& params);

[[nodiscard]] Costate mirror(const Costate& c) noexcept;
[[nodiscard]] TrajectorySegment mirror(const TrajectorySegment& s) noexcept;
[[nodiscard]] Trajectory mirror(const Trajectory& t) noexcept;

/// Max state and costate mismatch at the junctions of consecutive segments.
struct JunctionGap {
    double state{0.0};
    double costate{0.0};
};
[[nodiscard]] JunctionGap junction_gap(const Trajectory& t);

// Barrier analysis.

enum class Emanation { Inside, Outside };
[[nodiscard]] std::string_view to_string(Emanation e) noexcept;

/// Second retro-time derivative of phi at the RBUP point theta_rb under the
/// terminal controls; its sign decides on which side the barrier leaves.
[[nodiscard]] double barrier_phi_second_derivative(double theta_rb, const GameParams& params);
/// Inside iff the barrier enters the cone. theta_rb in (0, pi + 2 phi_d).
[[nodiscard]] Emanation barrier_emanation(double theta_rb, const GameParams& params);

struct BuplCheck {
    double s_rate{0.0};  // retro-time derivative of S at the apex
    int nu_p{0};
    int nu_e{0};
};
/// Switch-function analysis at the BUP apex points. Right side: theta in
/// {0, pi + 2 phi_d}; left side: theta in {pi - 2 phi_d, 2pi}.
[[nodiscard]] BuplCheck bupl_switch_check(double theta, const GameParams& params,
                                          BoundarySide side = BoundarySide::Right);

struct BarrierTrajectory {
    Trajectory trajectory;
    Emanation emanation{Emanation::Inside};
};
/// Barrier from the BUP point of `side` at theta_rb. Outside-emanating
/// barriers are truncated where they leave the cone.
[[nodiscard]] BarrierTrajectory synthesize_barrier(double theta_rb, const GameParams& params,
                                                   BoundarySide side = BoundarySide::Right);

}  // namespace evasion
