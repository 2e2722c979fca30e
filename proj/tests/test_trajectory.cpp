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

#include "doctest.h"
#include "evasion/errors.hpp"
#include "evasion/trajectory.hpp"
#include "support.hpp"

using namespace evasion;
using evasion::test::Gen;
using evasion::test::max_abs_diff;

namespace {

const GameParams kParams;
const double kPhiD = kParams.phi_d;

Seed right_up(double r, double theta_deg) {
    return {r, deg2rad(theta_deg), BoundarySide::Right, SeedKind::UsablePart};
}

/// Hand-written RK4 of the retro-time state and adjoint from an anchor.
PhasePoint rk4_phase(const CylindricalState& anchor, const Costate& lam, int nu_p, int nu_e, double span,
                     double dt = 1e-3) {
    const ReducedState s = from_cylindrical(anchor);
    const std::array<double, 6> v0{s.x, s.y, s.theta, lam.lambda_x, lam.lambda_y, lam.lambda_theta};
    const auto v = test::rk4_reference<6>(
        [&](const std::array<double, 6>& w) { return test::retro_phase_rate(w, nu_p, nu_e); }, v0, span, dt);
    return {{v[0], v[1], v[2]}, {v[3], v[4], v[5]}};
}

double costate_diff(const Costate& a, const Costate& b) {
    return std::max({std::abs(a.lambda_x - b.lambda_x), std::abs(a.lambda_y - b.lambda_y),
                     std::abs(a.lambda_theta - b.lambda_theta)});
}

/// UP seed on the right boundary, drawn strictly below the BUP.
Seed random_right_up(Gen& g) {
    double theta = 0.0;
    do {
        theta = g.uniform(0.05, kPi + 2 * kPhiD - 0.05);
    } while (std::abs(theta - (kPhiD + kHalfPi)) < 1e-3);
    const double r = g.uniform(0.02, 0.98) * rbup_radius(theta, kParams);
    return {r, theta, BoundarySide::Right, SeedKind::UsablePart};
}

}  // namespace

TEST_CASE("primary family") {
    const Seed seed = right_up(1.0, 120);
    const CylindricalState c0 = primary_state(0.0, seed, -1, -1, kParams);
    CHECK(c0.r == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(c0.phi == doctest::Approx(kPhiD).epsilon(1e-14));
    CHECK(c0.theta == doctest::Approx(deg2rad(120)).epsilon(1e-14));

    for (double tau : {0.3, 1.0, 2.5}) {
        CHECK(primary_state(tau, seed, -1, -1, kParams).theta == doctest::Approx(deg2rad(120)).epsilon(1e-13));
    }

    for (int nu_p : {-1, 1}) {
        for (int nu_e : {-1, 1}) {
            const PhasePoint ref = rk4_phase(seed.terminal_state(kParams), terminal_costate(kParams), nu_p, nu_e, 1.0);
            const ReducedState got = from_cylindrical(primary_state(1.0, seed, nu_p, nu_e, kParams));
            CHECK(max_abs_diff(got, ref.state) < 1e-6);
            CHECK(costate_diff(costate_primary(1.0, seed.theta_d, nu_p, nu_e, kParams), ref.costate) < 1e-6);
        }
    }
    CHECK_THROWS_AS((void)primary_state(0.5, seed, 0, -1, kParams), PreconditionError);
    CHECK_THROWS_AS((void)primary_state(-0.1, seed, -1, -1, kParams), PreconditionError);
}

TEST_CASE("universal-surface family") {
    const Seed seed = right_up(0.6, 130);
    for (double tau : {0.0, 0.4, 1.1}) {
        CHECK(wrap_signed(eus_state(tau, seed, -1, kParams).theta - (seed.theta_d + tau)) ==
              doctest::Approx(0.0).epsilon(1e-13));
        CHECK(wrap_signed(eus_state(tau, seed, 1, kParams).theta - (seed.theta_d - tau)) ==
              doctest::Approx(0.0).epsilon(1e-13));
    }
    const PhasePoint ref = rk4_phase(seed.terminal_state(kParams), terminal_costate(kParams), -1, 0, 1.5);
    CHECK(max_abs_diff(from_cylindrical(eus_state(1.5, seed, -1, kParams)), ref.state) < 1e-6);
    const Costate us = costate_us(1.5, -1, kParams);
    CHECK(costate_diff(us, ref.costate) < 1e-6);
    CHECK(std::abs(us.lambda_theta) < 1e-14);
}

TEST_CASE("tributary family") {
    const Seed seed = right_up(0.4, 130);
    const double tau_us = 0.6;
    const EusPoint junction{eus_state(tau_us, seed, -1, kParams), tau_us};
    for (BoundarySide turn : {BoundarySide::Right, BoundarySide::Left}) {
        const int nu_e = turn == BoundarySide::Right ? -1 : 1;
        const CylindricalState j = tributary_state(tau_us, junction, turn, kParams);
        CHECK(max_abs_diff(from_cylindrical(j), from_cylindrical(junction.state)) < 1e-14);
        const double tau = tau_us + 0.7;
        const CylindricalState c = tributary_state(tau, junction, turn, kParams);
        CHECK(wrap_signed(c.theta - (junction.state.theta + (nu_e + 1) * 0.7)) == doctest::Approx(0.0).epsilon(1e-13));

        const Costate lam_j = costate_us(tau_us, -1, kParams);
        const PhasePoint ref = rk4_phase(junction.state, lam_j, -1, nu_e, 0.7);
        CHECK(max_abs_diff(from_cylindrical(c), ref.state) < 1e-6);
        CHECK(costate_diff(costate_tributary(tau, tau_us, seed.theta_d, -1, nu_e, kParams), ref.costate) < 1e-6);
        CHECK_THROWS_AS((void)tributary_state(tau_us - 0.1, junction, turn, kParams), PreconditionError);
    }
}

TEST_CASE("post-switch family") {
    const Seed seed = right_up(0.2, 120);
    const Trajectory t = synthesize(seed, kParams);
    REQUIRE(t.segments.size() >= 2);
    const TrajectorySegment& first = t.segments[0];
    REQUIRE(first.termination == Termination::PursuerSwitch);
    const double tau_s = first.tau_end;
    CHECK(tau_s == doctest::Approx(test::analytic_first_switch(0.2, kPhiD)).epsilon(1e-9));

    const CylindricalState at_switch = first.cylindrical_at(tau_s);
    const SwitchRecord sw{tau_s, -1, 1, at_switch, first.costate_at(tau_s)};
    const CylindricalState c0 = post_ts_state(tau_s, sw, first.nu_e, kParams);
    CHECK(max_abs_diff(from_cylindrical(c0), from_cylindrical(at_switch)) < 1e-14);

    const PhasePoint ref = rk4_phase(at_switch, sw.costate_at_switch, 1, first.nu_e, 0.5);
    CHECK(max_abs_diff(from_cylindrical(post_ts_state(tau_s + 0.5, sw, first.nu_e, kParams)), ref.state) < 1e-6);
    CHECK(t.segments[1].family == FamilyTag::PostTSPrimary);
    CHECK(t.segments[1].nu_p == 1);
    CHECK(max_abs_diff(t.segments[1].state_at(tau_s + 0.5), ref.state) < 1e-6);
    CHECK(costate_diff(t.segments[1].costate_at(tau_s + 0.5), ref.costate) < 1e-6);
}

TEST_CASE("barrier family") {
    for (double deg : {30.0, 100.0, 200.0}) {
        const double th = deg2rad(deg);
        const CylindricalState c0 = barrier_state(0.0, th, kParams);
        CHECK(c0.r == doctest::Approx(rbup_radius(th, kParams)).epsilon(1e-14));
        CHECK(c0.phi == doctest::Approx(kPhiD).epsilon(1e-14));
        CHECK(c0.theta == doctest::Approx(th).epsilon(1e-14));
        // phi is stationary at the RBUP point: the first-order change vanishes.
        const double h = 1e-4;
        CHECK(std::abs(barrier_state(h, th, kParams).phi - kPhiD) < 1e-6);
    }
    CHECK_THROWS_AS((void)barrier_state(0.1, 0.0, kParams), DomainError);
    CHECK_THROWS_AS((void)barrier_state(0.1, kPi + 2 * kPhiD, kParams), DomainError);
    CHECK_THROWS_AS((void)barrier_state(0.1, deg2rad(300), kParams), DomainError);
}

TEST_CASE("boundary hit detection") {
    // The barrier at 130 degrees leaves the cone at once.
    const Trajectory b = synthesize_barrier(deg2rad(130), kParams).trajectory;
    const TrajectorySegment& seg = b.segments.front();
    const auto hit = detect_boundary_hit(seg.evaluator(1.0), kParams);
    REQUIRE(hit);
    CHECK(*hit < 1e-6);

    // A synthetic evaluator that never leaves the cone.
    const SegmentEvaluator still{0.0, 2.0, -1, [](double) {
                                     return PhasePoint{from_cylindrical({0.5, 0.1, 1.0}), {}};
                                 }};
    CHECK_FALSE(detect_boundary_hit(still, kParams));

    // Crossing time is stable under halving of the scan step.
    const Seed seed = right_up(0.8, 120);
    TrajectorySegment prim;
    prim.anchor_state = seed.terminal_state(kParams);
    prim.anchor_costate = terminal_costate(kParams);
    prim.nu_p = -1;
    prim.nu_e = -1;
    GameParams fine = kParams;
    fine.scan_step /= 2;
    const auto coarse_hit = detect_boundary_hit(prim.evaluator(kTwoPi), kParams);
    const auto fine_hit = detect_boundary_hit(prim.evaluator(kTwoPi), fine);
    REQUIRE(coarse_hit);
    REQUIRE(fine_hit);
    CHECK(std::abs(*coarse_hit - *fine_hit) < 1e-9);
    CHECK(std::abs(std::abs(prim.cylindrical_at(*coarse_hit).phi) - kPhiD) < 1e-9);
}

TEST_CASE("synthesize examples") {
    const Trajectory t = synthesize(right_up(0.8, 120), kParams);
    REQUIRE(t.segments.size() == 1);
    CHECK(t.segments[0].family == FamilyTag::Primary);
    CHECK(t.termination() == Termination::BoundaryHit);
    CHECK(t.total_tau == doctest::Approx(t.segments[0].tau_end));

    const Trajectory eus = synthesize(right_up(0.4, 130), kParams);
    CHECK(eus.segments.front().family == FamilyTag::EUS);
    const auto branches = tributary_branches(right_up(0.4, 130), 0.3, kParams);
    CHECK(branches[0].segments[1].family == FamilyTag::TributaryRight);
    CHECK(branches[1].segments[1].family == FamilyTag::TributaryLeft);
    for (const Trajectory& br : branches) {
        CHECK(br.segments[0].termination == Termination::TributaryJunction);
        CHECK(br.segments[0].tau_end == 0.3);
        CHECK(junction_gap(br).state < 1e-9);
    }
    CHECK_THROWS_AS((void)synthesize_tributary(right_up(0.4, 120), 0.3, BoundarySide::Right, kParams),
                    PreconditionError);

    const Seed bup{rbup_radius(deg2rad(30), kParams), deg2rad(30), BoundarySide::Right,
                   SeedKind::BoundaryOfUsablePart};
    CHECK(synthesize(bup, kParams).segments.front().family == FamilyTag::BarrierPrimary);
}

TEST_CASE("seed validation") {
    CHECK_THROWS_AS((void)synthesize(right_up(-0.1, 120), kParams), DomainError);
    CHECK_THROWS_AS((void)synthesize(right_up(1.7, 120), kParams), DomainError);
    const Seed bad_bup{0.3, deg2rad(30), BoundarySide::Right, SeedKind::BoundaryOfUsablePart};
    CHECK_THROWS_AS((void)synthesize(bad_bup, kParams), DomainError);
}

TEST_CASE("synthesized trajectories: junctions, anchors and events") {
    Gen g(7);
    for (int i = 0; i < 300; ++i) {
        const Seed seed = random_right_up(g);
        const Trajectory t = synthesize(seed, kParams);
        REQUIRE_FALSE(t.segments.empty());
        // Reproduces the seed at tau = 0.
        CHECK(max_abs_diff(t.state_at(0.0), from_cylindrical(seed.terminal_state(kParams))) < 1e-12);
        const JunctionGap gap = junction_gap(t);
        CHECK(gap.state < 1e-9);
        CHECK(gap.costate < 1e-9);
        double prev = 0.0;
        for (const TrajectorySegment& s : t.segments) {
            // Each segment evaluates exactly to its anchor.
            CHECK(max_abs_diff(s.state_at(s.anchor_tau), from_cylindrical(s.anchor_state)) < 1e-14);
            CHECK(s.anchor_tau == doctest::Approx(prev).epsilon(1e-15));
            CHECK(s.tau_end >= s.anchor_tau);
            CHECK_THROWS_AS((void)s.state_at(s.anchor_tau - 1e-3), PreconditionError);
            prev = s.tau_end;
        }
        if (t.termination() == Termination::BoundaryHit) {
            // The crossing is bracketed within tol_event of the reported time.
            const TrajectorySegment& last = t.segments.back();
            const auto excess = [&](double tau) { return std::abs(last.cylindrical_at(tau).phi) - kPhiD; };
            const double w = 2 * kParams.tol_event;
            CHECK(excess(std::max(last.anchor_tau, t.total_tau - w)) * excess(t.total_tau + w) <= 0.0);
        }
        // No earlier boundary crossing inside the trajectory.
        for (int k = 1; k < 20; ++k) {
            const double tau = t.total_tau * k / 20.0;
            CHECK(std::abs(to_cylindrical(t.state_at(tau)).phi) <= kPhiD + 1e-9);
        }
    }
}

TEST_CASE("left seeds are mirror images of right seeds") {
    Gen g(8);
    for (int i = 0; i < 100; ++i) {
        const Seed seed = random_right_up(g);
        const Trajectory right = synthesize(seed, kParams);
        const Trajectory left = synthesize(mirror(seed), kParams);
        REQUIRE(left.segments.size() == right.segments.size());
        CHECK(left.total_tau == doctest::Approx(right.total_tau).epsilon(1e-12));
        for (int k = 0; k <= 10; ++k) {
            const double tau = right.total_tau * k / 10.0;
            CHECK(max_abs_diff(left.state_at(tau), mirror(right.state_at(tau))) < 1e-9);
        }
    }
}
