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

// Test-only generators and reference oracles. Nothing here calls the
// library's integrator, so RK4 comparisons are independent of it.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <random>

#include "evasion/kinematics.hpp"

namespace evasion::test {

/// Fixed-seed generator so every property run sees the same sample.
class Gen {
public:
    explicit Gen(std::uint64_t seed = 0x5eed5eedULL) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    int sign() { return std::bernoulli_distribution(0.5)(rng_) ? 1 : -1; }
    int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

    Pose pose() { return {uniform(-5, 5), uniform(-5, 5), uniform(0, kTwoPi)}; }
    ReducedState reduced() { return {uniform(-3, 3), uniform(-3, 3), uniform(0, kTwoPi)}; }
    Controls controls() { return {uniform(-1, 1), uniform(-1, 1)}; }

private:
    std::mt19937_64 rng_;
};

/// Classic RK4, written out by hand.
template <std::size_t N, class F>
std::array<double, N> rk4_reference(F&& f, std::array<double, N> x, double span, double dt) {
    const auto n = static_cast<long>(std::ceil(span / dt - 1e-12));
    const double h = span / static_cast<double>(n);
    const auto axpy = [](const std::array<double, N>& a, double s, const std::array<double, N>& b) {
        std::array<double, N> out{};
        for (std::size_t i = 0; i < N; ++i) out[i] = a[i] + s * b[i];
        return out;
    };
    for (long k = 0; k < n; ++k) {
        const auto k1 = f(x);
        const auto k2 = f(axpy(x, h / 2, k1));
        const auto k3 = f(axpy(x, h / 2, k2));
        const auto k4 = f(axpy(x, h, k3));
        for (std::size_t i = 0; i < N; ++i) x[i] += h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    }
    return x;
}

/// Retro-time state and adjoint system [x, y, theta, lx, ly, lth] under
/// constant controls.
inline std::array<double, 6> retro_phase_rate(const std::array<double, 6>& v, double nu_p, double nu_e) {
    return {-nu_p * v[1] - std::sin(v[2]),
            nu_p * v[0] + 1.0 - std::cos(v[2]),
            -nu_p + nu_e,
            -nu_p * v[4],
            nu_p * v[3],
            v[3] * std::cos(v[2]) - v[4] * std::sin(v[2])};
}

/// First pursuer switch from a right UP seed (r, theta_d) when the primary
/// arc keeps theta constant (nu_e = nu_p = -1). The switch function's
/// retro-time rate equals lambda_x = -cos(phi_d + tau), so
/// S(tau) = -r - sin(phi_d + tau) + sin(phi_d), and S = 0 at
/// tau = pi - phi_d - asin(sin(phi_d) - r).
inline double analytic_first_switch(double r, double phi_d) {
    return kPi - phi_d - std::asin(std::sin(phi_d) - r);
}

inline double max_abs_diff(const ReducedState& a, const ReducedState& b) {
    return std::max({std::abs(a.x - b.x), std::abs(a.y - b.y), std::abs(wrap_signed(a.theta - b.theta))});
}

}  // namespace evasion::test
