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

#include "evasion/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "evasion/errors.hpp"
#include "evasion/root_finding.hpp"

namespace evasion {

std::string_view to_string(FamilyTag f) noexcept {
    switch (f) {
        case FamilyTag::Primary: return "primary";
        case FamilyTag::EUS: return "eus";
        case FamilyTag::TributaryLeft: return "tributary_left";
        case FamilyTag::TributaryRight: return "tributary_right";
        case FamilyTag::PostTSPrimary: return "post_ts_primary";
        case FamilyTag::PostTSTributary: return "post_ts_tributary";
        case FamilyTag::BarrierPrimary: return "barrier_primary";
        case FamilyTag::PostTSBarrier: return "post_ts_barrier";
    }
    return "?";
}

std::optional<FamilyTag> family_from_string(std::string_view s) noexcept {
    for (FamilyTag f : {FamilyTag::Primary, FamilyTag::EUS, FamilyTag::TributaryLeft, FamilyTag::TributaryRight,
                        FamilyTag::PostTSPrimary, FamilyTag::PostTSTributary, FamilyTag::BarrierPrimary,
                        FamilyTag::PostTSBarrier}) {
        if (to_string(f) == s) return f;
    }
    return std::nullopt;
}

std::string_view to_string(Termination t) noexcept {
    switch (t) {
        case Termination::BoundaryHit: return "boundary_hit";
        case Termination::PursuerSwitch: return "pursuer_switch";
        case Termination::EvaderSwitch: return "evader_switch";
        case Termination::TributaryJunction: return "tributary_junction";
        case Termination::HorizonReached: return "horizon_reached";
    }
    return "?";
}

ReducedState closed_form_state(const CylindricalState& anchor, int nu_p, int nu_e, double dtau) noexcept {
    const double p = nu_p;
    const double e = nu_e;
    const double r = anchor.r;
    const double phi = anchor.phi;
    const double th = anchor.theta;
    const double turn = p * dtau;
    double x = -p + p * std::cos(turn) + r * std::sin(phi - turn);
    double y = p * std::sin(turn) + r * std::cos(phi - turn);
    if (nu_e == 0) {
        // Straight-line evader: the forcing resonates with the pursuer's
        // rotation and produces secular terms.
        x -= dtau * std::sin(th - turn);
        y -= dtau * std::cos(th - turn);
    } else {
        x += -e * std::cos(th - turn) + e * std::cos(th + (e - p) * dtau);
        y -= 2.0 * e * std::cos(th + (0.5 * e - p) * dtau) * std::sin(0.5 * e * dtau);
    }
    return {x, y, normalize_angle(th + (e - p) * dtau)};
}

Costate closed_form_costate(const Costate& anchor, double anchor_theta, int nu_p, int nu_e, double dtau) noexcept {
    // (lambda_x, lambda_y) rotates rigidly; lambda_theta integrates
    // -cos(psi - theta), whose argument only drifts with nu_e.
    const double turn = nu_p * dtau;
    const double c = std::cos(turn);
    const double s = std::sin(turn);
    const double lx0 = anchor.lambda_x;
    const double ly0 = anchor.lambda_y;
    const double st = std::sin(anchor_theta);
    const double ct = std::cos(anchor_theta);
    const double sin_lead = ly0 * ct + lx0 * st;
    const double cos_lead = -lx0 * ct + ly0 * st;
    double lt = anchor.lambda_theta;
    if (nu_e == 0) {
        lt -= dtau * cos_lead;
    } else {
        const double e = nu_e;
        const double sin_shift = sin_lead * std::cos(e * dtau) - cos_lead * std::sin(e * dtau);
        lt += e * (sin_shift - sin_lead);
    }
    return {lx0 * c - ly0 * s, ly0 * c + lx0 * s, lt};
}

ReducedState TrajectorySegment::state_at(double tau) const {
    if (tau < anchor_tau) throw PreconditionError("segment evaluated before its anchor");
    if (tau == anchor_tau) return from_cylindrical(anchor_state);
    return closed_form_state(anchor_state, nu_p, nu_e, tau - anchor_tau);
}

CylindricalState TrajectorySegment::cylindrical_at(double tau) const {
    if (tau == anchor_tau) return anchor_state;
    return to_cylindrical(state_at(tau));
}

Costate TrajectorySegment::costate_at(double tau) const {
    if (tau < anchor_tau) throw PreconditionError("segment evaluated before its anchor");
    return closed_form_costate(anchor_costate, anchor_state.theta, nu_p, nu_e, tau - anchor_tau);
}

SegmentEvaluator TrajectorySegment::evaluator(double tau_end_limit) const {
    return {anchor_tau, tau_end_limit, nu_p, [seg = *this](double tau) { return seg.phase_at(tau); }};
}

const TrajectorySegment& Trajectory::segment_at(double tau) const {
    if (segments.empty()) throw PreconditionError("empty trajectory");
    for (const TrajectorySegment& s : segments) {
        if (tau < s.tau_end) return s;
    }
    return segments.back();
}

// -- Families ---------------------------------------------------------------

namespace {

void require_unit(int nu, const char* what) {
    if (nu != 1 && nu != -1) throw PreconditionError(std::string(what) + " must be -1 or +1");
}

CylindricalState evaluate_from(const CylindricalState& anchor, int nu_p, int nu_e, double dtau) {
    if (dtau < 0.0) throw PreconditionError("retro-time precedes the family's anchor");
    if (dtau == 0.0) return anchor;
    return to_cylindrical(closed_form_state(anchor, nu_p, nu_e, dtau));
}

}  // namespace

CylindricalState primary_state(double tau, const Seed& seed, int nu_p, int nu_e, const GameParams& params) {
    require_unit(nu_p, "nu_p");
    require_unit(nu_e, "primary nu_e");
    return evaluate_from(seed.terminal_state(params), nu_p, nu_e, tau);
}

CylindricalState eus_state(double tau, const Seed& seed, int nu_p, const GameParams& params) {
    require_unit(nu_p, "nu_p");
    return evaluate_from(seed.terminal_state(params), nu_p, 0, tau);
}

CylindricalState tributary_state(double tau, const EusPoint& junction, BoundarySide turn, const GameParams&,
                                 int nu_p) {
    require_unit(nu_p, "nu_p");
    const int nu_e = turn == BoundarySide::Right ? -1 : 1;
    return evaluate_from(junction.state, nu_p, nu_e, tau - junction.tau_us);
}

CylindricalState post_ts_state(double tau, const SwitchRecord& sw, int nu_e, const GameParams&) {
    require_unit(sw.nu_p_after, "nu_p after the switch");
    return evaluate_from(sw.state_at_switch, sw.nu_p_after, nu_e, tau - sw.tau_s);
}

CylindricalState barrier_state(double tau, double theta_rb, const GameParams& params) {
    if (!(theta_rb > 0.0 && theta_rb < kPi + 2.0 * params.phi_d)) {
        throw DomainError("barrier seed needs theta in (0, pi + 2 phi_d), got " + std::to_string(theta_rb));
    }
    const CylindricalState anchor{rbup_radius(theta_rb, params), params.phi_d, theta_rb};
    return evaluate_from(anchor, -1, terminal_evader_control(theta_rb, params), tau);
}

// -- Events -----------------------------------------------------------------

std::optional<double> detect_boundary_hit(const SegmentEvaluator& seg, const GameParams& params) {
    const double lo = seg.tau_start + params.tol_event;
    if (lo >= seg.tau_end) return std::nullopt;
    const auto excess = [&](double tau) {
        return std::abs(to_cylindrical(seg.at(tau).state).phi) - params.phi_d;
    };
    const auto inside = [](double g) { return g <= 0.0; };
    const auto bracket = scan_for_violation(excess, inside, lo, seg.tau_end, params.scan_step);
    if (!bracket) return std::nullopt;
    if (bracket->lo == lo && !inside(excess(lo))) return lo;  // leaves right away
    return bisect(excess, inside, *bracket, 0.0, params.tol_event);
}

// -- Synthesis ----------------------------------------------------------------

namespace {

constexpr int kMaxSegments = 16;

FamilyTag continuation_of(FamilyTag f) noexcept {
    switch (f) {
        case FamilyTag::Primary:
        case FamilyTag::PostTSPrimary: return FamilyTag::PostTSPrimary;
        case FamilyTag::TributaryLeft:
        case FamilyTag::TributaryRight:
        case FamilyTag::PostTSTributary: return FamilyTag::PostTSTributary;
        case FamilyTag::BarrierPrimary:
        case FamilyTag::PostTSBarrier: return FamilyTag::PostTSBarrier;
        case FamilyTag::EUS: return FamilyTag::EUS;
    }
    return f;
}

/// Runs one constant-control segment until its earliest event before
/// `horizon`. Returns the switch record when the pursuer switch wins.
std::optional<SwitchRecord> close_segment(TrajectorySegment& seg, double horizon, const GameParams& params) {
    seg.tau_end = horizon;
    seg.termination = Termination::HorizonReached;
    if (!(horizon > seg.anchor_tau)) return std::nullopt;

    double end = horizon;
    const auto hit = detect_boundary_hit(seg.evaluator(horizon), params);
    if (hit) {
        end = *hit;
        seg.termination = Termination::BoundaryHit;
    }
    // Ties within tol_event resolve to the boundary hit.
    const double cutoff = hit ? end - params.tol_event : end;
    const SegmentEvaluator limited = seg.evaluator(end);
    std::optional<SwitchRecord> sw = find_switch_time(limited, params);
    if (sw && !(sw->tau_s < cutoff)) sw.reset();
    const auto evader_sw = find_evader_switch_time(limited, seg.nu_e, params);

    if (evader_sw && *evader_sw < cutoff && (!sw || *evader_sw < sw->tau_s)) {
        seg.tau_end = *evader_sw;
        seg.termination = Termination::EvaderSwitch;
        return std::nullopt;
    }
    if (sw) {
        seg.tau_end = sw->tau_s;
        seg.termination = Termination::PursuerSwitch;
        return sw;
    }
    seg.tau_end = end;
    return std::nullopt;
}

/// Appends `first` and its TS continuations to `out`.
void extend(std::vector<TrajectorySegment>& out, TrajectorySegment first, const GameParams& params) {
    TrajectorySegment seg = std::move(first);
    while (true) {
        const std::optional<SwitchRecord> sw = close_segment(seg, params.tau_max, params);
        out.push_back(seg);
        if (!sw || static_cast<int>(out.size()) >= kMaxSegments) return;
        TrajectorySegment next;
        next.family = continuation_of(seg.family);
        next.anchor_state = sw->state_at_switch;
        next.anchor_costate = sw->costate_at_switch;
        next.anchor_tau = sw->tau_s;
        next.nu_p = sw->nu_p_after;
        next.nu_e = seg.nu_e;
        seg = next;
    }
}

void validate_right_seed(const Seed& seed, const GameParams& params) {
    const double bup = rbup_radius(seed.theta_d, params);
    if (!(seed.r >= 0.0)) throw DomainError("seed radius must be non-negative");
    const double tol = 1e-9;
    if (seed.kind == SeedKind::BoundaryOfUsablePart) {
        if (std::abs(seed.r - bup) > tol) throw DomainError("BUP seed radius does not match the BUP");
    } else if (!(seed.r < bup + tol)) {
        throw DomainError("UP seed radius " + std::to_string(seed.r) + " exceeds the BUP radius " +
                          std::to_string(bup));
    }
}

TrajectorySegment terminal_segment(const Seed& seed, FamilyTag family, int nu_e, const GameParams& params) {
    TrajectorySegment seg;
    seg.family = family;
    seg.anchor_state = seed.terminal_state(params);
    seg.anchor_costate = terminal_costate(params);
    seg.anchor_tau = 0.0;
    seg.nu_p = -1;
    seg.nu_e = nu_e;
    return seg;
}

Trajectory finish(Seed seed, std::vector<TrajectorySegment> segments) {
    Trajectory t{seed, std::move(segments), 0.0};
    t.total_tau = t.segments.empty() ? 0.0 : t.segments.back().tau_end;
    return t;
}

}  // namespace

Trajectory synthesize(const Seed& seed, const GameParams& params) {
    params.validate();
    if (seed.side == BoundarySide::Left) return mirror(synthesize(mirror(seed), params));
    validate_right_seed(seed, params);

    const int nu_e = terminal_evader_control(seed.theta_d, params);
    FamilyTag family = FamilyTag::Primary;
    if (seed.kind == SeedKind::BoundaryOfUsablePart) {
        family = FamilyTag::BarrierPrimary;
    } else if (nu_e == 0) {
        family = FamilyTag::EUS;
    }
    std::vector<TrajectorySegment> segments;
    extend(segments, terminal_segment(seed, family, nu_e, params), params);
    return finish(seed, std::move(segments));
}

Trajectory synthesize_tributary(const Seed& seed, double tau_us, BoundarySide turn, const GameParams& params) {
    params.validate();
    if (seed.side == BoundarySide::Left) {
        const BoundarySide flipped = turn == BoundarySide::Right ? BoundarySide::Left : BoundarySide::Right;
        return mirror(synthesize_tributary(mirror(seed), tau_us, flipped, params));
    }
    validate_right_seed(seed, params);
    if (seed.kind != SeedKind::UsablePart || terminal_evader_control(seed.theta_d, params) != 0) {
        throw PreconditionError("tributaries branch from UP seeds on the universal surface only");
    }
    if (!(tau_us > 0.0 && tau_us < params.tau_max)) {
        throw PreconditionError("junction time must lie in (0, tau_max)");
    }

    TrajectorySegment eus = terminal_segment(seed, FamilyTag::EUS, 0, params);
    close_segment(eus, tau_us, params);
    if (eus.termination != Termination::HorizonReached) {
        throw PreconditionError("universal surface ends (" + std::string(to_string(eus.termination)) + " at tau=" +
                                std::to_string(eus.tau_end) + ") before the junction time " +
                                std::to_string(tau_us));
    }
    eus.termination = Termination::TributaryJunction;
    eus.tau_end = tau_us;

    TrajectorySegment trib;
    trib.family = turn == BoundarySide::Right ? FamilyTag::TributaryRight : FamilyTag::TributaryLeft;
    trib.anchor_state = eus.cylindrical_at(tau_us);
    trib.anchor_costate = eus.costate_at(tau_us);
    trib.anchor_tau = tau_us;
    trib.nu_p = eus.nu_p;
    trib.nu_e = turn == BoundarySide::Right ? -1 : 1;

    std::vector<TrajectorySegment> segments{eus};
    extend(segments, trib, params);
    return finish(seed, std::move(segments));
}

std::array<Trajectory, 2> tributary_branches(const Seed& seed, double tau_us, const GameParams& params) {
    return {synthesize_tributary(seed, tau_us, BoundarySide::Right, params),
            synthesize_tributary(seed, tau_us, BoundarySide::Left, params)};
}

// -- Mirroring ----------------------------------------------------------------

Costate mirror(const Costate& c) noexcept { return {-c.lambda_x, c.lambda_y, -c.lambda_theta}; }

TrajectorySegment mirror(const TrajectorySegment& s) noexcept {
    TrajectorySegment m = s;
    m.anchor_state = mirror(s.anchor_state);
    m.anchor_costate = mirror(s.anchor_costate);
    m.nu_p = -s.nu_p;
    m.nu_e = -s.nu_e;
    if (s.family == FamilyTag::TributaryLeft) m.family = FamilyTag::TributaryRight;
    if (s.family == FamilyTag::TributaryRight) m.family = FamilyTag::TributaryLeft;
    return m;
}

Trajectory mirror(const Trajectory& t) noexcept {
    Trajectory m{mirror(t.seed), {}, t.total_tau};
    m.segments.reserve(t.segments.size());
    for (const TrajectorySegment& s : t.segments) m.segments.push_back(mirror(s));
    return m;
}

JunctionGap junction_gap(const Trajectory& t) {
    JunctionGap gap;
    for (std::size_t i = 1; i < t.segments.size(); ++i) {
        const TrajectorySegment& prev = t.segments[i - 1];
        const TrajectorySegment& next = t.segments[i];
        const double tau = next.anchor_tau;
        const ReducedState a = prev.state_at(tau);
        const ReducedState b = next.state_at(tau);
        const double dth = std::abs(wrap_signed(a.theta - b.theta));
        gap.state = std::max({gap.state, std::abs(a.x - b.x), std::abs(a.y - b.y), dth});
        const Costate ca = prev.costate_at(tau);
        const Costate cb = next.costate_at(tau);
        gap.costate = std::max({gap.costate, std::abs(ca.lambda_x - cb.lambda_x),
                                std::abs(ca.lambda_y - cb.lambda_y), std::abs(ca.lambda_theta - cb.lambda_theta)});
    }
    return gap;
}

}  // namespace evasion
