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
#include "evasion/kinematics.hpp"
#include "support.hpp"

using namespace evasion;
using evasion::test::Gen;

namespace {

// Rotation of world offsets into the pursuer frame, written as an explicit
// 2x2 matrix product: rotating by pi/2 - theta_p sends the heading to +y.
ReducedState rotation_matrix_oracle(const RealisticState& s) {
    const double a = kHalfPi - s.pursuer.heading;
    const double m[2][2] = {{std::cos(a), -std::sin(a)}, {std::sin(a), std::cos(a)}};
    const double d[2] = {s.evader.x - s.pursuer.x, s.evader.y - s.pursuer.y};
    return {m[0][0] * d[0] + m[0][1] * d[1], m[1][0] * d[0] + m[1][1] * d[1],
            normalize_angle(s.pursuer.heading - s.evader.heading)};
}

std::array<double, 6> realistic_array_rate(const std::array<double, 6>& v, Controls u) {
    const RealisticRate r = realistic_dynamics(RealisticState::from_array(v), u);
    return {r.xp, r.yp, r.theta_p, r.xe, r.ye, r.theta_e};
}

}  // namespace

TEST_CASE("angle normalization") {
    CHECK(normalize_angle(-kHalfPi) == doctest::Approx(3 * kHalfPi));
    CHECK(normalize_angle(kTwoPi) == 0.0);
    CHECK(normalize_angle(-1e-300) < kTwoPi);
    CHECK(wrap_signed(3 * kHalfPi) == doctest::Approx(-kHalfPi));

    Gen g;
    for (int i = 0; i < 10000; ++i) {
        const double a = g.uniform(-50, 50);
        const double n = normalize_angle(a);
        REQUIRE(n >= 0.0);
        REQUIRE(n < kTwoPi);
        REQUIRE(normalize_angle(n) == n);
        REQUIRE(std::abs(std::sin(n) - std::sin(a)) < 1e-13);
        REQUIRE(std::abs(std::cos(n) - std::cos(a)) < 1e-13);
    }
}

TEST_CASE("to_reduced examples") {
    const auto s1 = to_reduced(RealisticState::make({0, 0, kHalfPi}, {0, 2, kHalfPi}));
    CHECK(s1.x == doctest::Approx(0).epsilon(1e-15));
    CHECK(s1.y == doctest::Approx(2));
    CHECK(s1.theta == 0.0);

    const auto s2 = to_reduced(RealisticState::make({1.5, -2, 0.7}, {1.5, -2, 0.7}));
    CHECK(s2.x == 0.0);
    CHECK(s2.y == 0.0);
    CHECK(s2.theta == 0.0);
}

TEST_CASE("to_reduced agrees with the rotation-matrix oracle") {
    Gen g(11);
    for (int i = 0; i < 1000; ++i) {
        const auto s = RealisticState::make(g.pose(), g.pose());
        REQUIRE(test::max_abs_diff(to_reduced(s), rotation_matrix_oracle(s)) < 1e-12);
    }
}

TEST_CASE("from_reduced inverts to_reduced") {
    const auto e1 = from_reduced({0, 0, 0}, {1, 1, kPi / 4}).evader;
    CHECK(e1.x == doctest::Approx(1));
    CHECK(e1.y == doctest::Approx(1));
    CHECK(e1.heading == doctest::Approx(kPi / 4));

    const auto e2 = from_reduced({0, 2, 0}, {0, 0, kHalfPi}).evader;
    CHECK(e2.x == doctest::Approx(0).epsilon(1e-15));
    CHECK(e2.y == doctest::Approx(2));
    CHECK(e2.heading == doctest::Approx(kHalfPi));

    Gen g(12);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const ReducedState s = g.reduced();
        const Pose p = g.pose();
        worst = std::max(worst, test::max_abs_diff(to_reduced(from_reduced(s, p)), s));
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("cylindrical transform") {
    const auto c1 = to_cylindrical({0, 1, 0});
    CHECK(c1.r == 1.0);
    CHECK(c1.phi == 0.0);
    const auto c2 = to_cylindrical({1, 0, 0});
    CHECK(c2.r == 1.0);
    CHECK(c2.phi == doctest::Approx(kHalfPi));
    CHECK(to_cylindrical({0, 0, 1.0}).phi == 0.0);

    Gen g(13);
    for (int i = 0; i < 1000; ++i) {
        const ReducedState s = g.reduced();
        if (std::hypot(s.x, s.y) < 1e-6) continue;
        REQUIRE(test::max_abs_diff(from_cylindrical(to_cylindrical(s)), s) < 1e-12);
    }
}

TEST_CASE("realistic dynamics") {
    const auto a = realistic_dynamics(RealisticState::make({0, 0, 0}, {0, 0, 0}), {0, 0});
    CHECK(a.xp == 1.0);
    CHECK(a.yp == 0.0);
    CHECK(a.theta_p == 0.0);
    const auto b = realistic_dynamics(RealisticState::make({0, 0, kHalfPi}, {0, 0, 0}), {1, 0});
    CHECK(b.xp == doctest::Approx(0).epsilon(1e-15));
    CHECK(b.yp == 1.0);
    CHECK(b.theta_p == 1.0);

    Gen g(14);
    for (int i = 0; i < 1000; ++i) {
        const auto r = realistic_dynamics(RealisticState::make(g.pose(), g.pose()), g.controls());
        REQUIRE(std::hypot(r.xp, r.yp) == doctest::Approx(1.0).epsilon(1e-15));
        REQUIRE(std::hypot(r.xe, r.ye) == doctest::Approx(1.0).epsilon(1e-15));
    }
}

TEST_CASE("reduced dynamics examples") {
    const auto a = reduced_dynamics({0, 0, 0}, {0.3, -0.4});
    CHECK(a.x == 0.0);
    CHECK(a.y == 0.0);
    CHECK(a.theta == doctest::Approx(0.7));

    const auto b = reduced_dynamics({0, 2, 0}, {1, 1});
    CHECK(b.x == 2.0);
    CHECK(b.y == 0.0);
    CHECK(b.theta == 0.0);
}

TEST_CASE("reduced dynamics is the pushforward of the realistic dynamics") {
    Gen g(15);
    const double h = 1e-6;
    for (int i = 0; i < 500; ++i) {
        const auto s = RealisticState::make(g.pose(), g.pose());
        const Controls u = g.controls();
        const auto v = s.to_array();
        const auto f = realistic_array_rate(v, u);
        std::array<double, 6> plus{};
        std::array<double, 6> minus{};
        for (int k = 0; k < 6; ++k) {
            plus[k] = v[k] + h * f[k];
            minus[k] = v[k] - h * f[k];
        }
        const ReducedState rp = to_reduced(RealisticState::from_array(plus));
        const ReducedState rm = to_reduced(RealisticState::from_array(minus));
        const ReducedRate expect = reduced_dynamics(to_reduced(s), u);
        REQUIRE(std::abs((rp.x - rm.x) / (2 * h) - expect.x) < 1e-6);
        REQUIRE(std::abs((rp.y - rm.y) / (2 * h) - expect.y) < 1e-6);
        REQUIRE(std::abs(wrap_signed(rp.theta - rm.theta) / (2 * h) - expect.theta) < 1e-6);
    }
}

TEST_CASE("cylindrical dynamics") {
    const double phi = 0.6;
    const auto a = cylindrical_dynamics({1.3, phi, phi}, {0.2, 0.1});
    CHECK(a.r == doctest::Approx(1.0 - std::cos(phi)));

    Gen g(16);
    for (int i = 0; i < 1000; ++i) {
        const ReducedState s = g.reduced();
        const double r = std::hypot(s.x, s.y);
        if (r < 1e-3) continue;
        const Controls u = g.controls();
        const ReducedRate f = reduced_dynamics(s, u);
        const CylindricalRate c = cylindrical_dynamics(to_cylindrical(s), u);
        REQUIRE(std::abs(c.r - (s.x * f.x + s.y * f.y) / r) < 1e-9);
        REQUIRE(std::abs(c.phi - (s.y * f.x - s.x * f.y) / (r * r)) < 1e-9);
        REQUIRE(c.theta == f.theta);
    }

    const GameParams params;
    for (double th_deg = 5; th_deg < 260; th_deg += 5) {
        const double th = deg2rad(th_deg);
        const double r = std::sin(th - params.phi_d) + std::sin(params.phi_d);
        for (double nu_e : {-1.0, 0.0, 1.0}) {
            REQUIRE(std::abs(cylindrical_dynamics({r, params.phi_d, th}, {-1, nu_e}).phi) < 1e-12);
        }
    }
    CHECK_THROWS_AS((void)cylindrical_dynamics({0.0, 0.0, 1.0}, {1, 1}), DegenerateStateError);
    CHECK_THROWS_AS((void)retro_cylindrical_dynamics({1e-13, 0.0, 1.0}, {1, 1}), DegenerateStateError);
}

TEST_CASE("retro dynamics are the exact negation") {
    Gen g(17);
    for (int i = 0; i < 1000; ++i) {
        const ReducedState s = g.reduced();
        const Controls u = g.controls();
        const ReducedRate f = reduced_dynamics(s, u);
        const ReducedRate b = retro_reduced_dynamics(s, u);
        REQUIRE(b.x == -f.x);
        REQUIRE(b.y == -f.y);
        REQUIRE(b.theta == -f.theta);
        const CylindricalState c = to_cylindrical(s);
        if (c.r < 1e-6) continue;
        const CylindricalRate fc = cylindrical_dynamics(c, u);
        const CylindricalRate bc = retro_cylindrical_dynamics(c, u);
        REQUIRE(bc.r == -fc.r);
        REQUIRE(bc.phi == -fc.phi);
        REQUIRE(bc.theta == -fc.theta);
    }
    const auto apex = retro_reduced_dynamics({0, 0, 0}, {0.25, -0.5});
    CHECK(apex.theta == -0.75);
}

TEST_CASE("retro then forward integration returns to the start") {
    Gen g(18);
    for (int i = 0; i < 20; ++i) {
        const ReducedState s = g.reduced();
        const Controls u = g.controls();
        const auto fwd = [u](const std::array<double, 3>& v) {
            const auto d = reduced_dynamics(ReducedState::from_array(v), u);
            return std::array<double, 3>{d.x, d.y, d.theta};
        };
        const auto back = [u](const std::array<double, 3>& v) {
            const auto d = retro_reduced_dynamics(ReducedState::from_array(v), u);
            return std::array<double, 3>{d.x, d.y, d.theta};
        };
        const auto mid = test::rk4_reference<3>(back, s.to_array(), 1.0, 1e-3);
        const auto end = test::rk4_reference<3>(fwd, mid, 1.0, 1e-3);
        for (int k = 0; k < 3; ++k) REQUIRE(std::abs(end[k] - s.to_array()[k]) < 1e-8);
    }
}

TEST_CASE("mirror commutes with the dynamics") {
    Gen g(19);
    for (int i = 0; i < 1000; ++i) {
        const ReducedState s = g.reduced();
        const Controls u = g.controls();
        const ReducedRate f = reduced_dynamics(s, u);
        const ReducedRate m = reduced_dynamics(mirror(s), mirror(u));
        REQUIRE(std::abs(m.x + f.x) < 1e-12);
        REQUIRE(std::abs(m.y - f.y) < 1e-12);
        REQUIRE(std::abs(m.theta + f.theta) < 1e-12);
    }
    const CylindricalState c = mirror(CylindricalState{1.0, 0.5, 1.0});
    CHECK(c.phi == -0.5);
    CHECK(c.theta == doctest::Approx(kTwoPi - 1.0));
}

TEST_CASE("parameter and control validation") {
    CHECK_THROWS_AS((void)Controls::make(1.5, 0), PreconditionError);
    CHECK_THROWS_AS((void)Controls::make(0, -1.01), PreconditionError);
    CHECK(Controls::make(-1, 1).nu_e == 1.0);
    CHECK_THROWS_AS((void)GameParams::from_degrees(90), PreconditionError);
    CHECK_THROWS_AS((void)GameParams::from_degrees(0), PreconditionError);
    GameParams p;
    p.tol_event = 0;
    CHECK_THROWS_AS(p.validate(), PreconditionError);
    CHECK(GameParams::from_degrees(40).phi_d == doctest::Approx(deg2rad(40)));
}
