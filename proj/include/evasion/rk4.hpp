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

// Fixed-step classic Runge-Kutta integration under a piecewise-constant
// control schedule. Steps never straddle a control change: every piece is
// integrated on its own with the largest step <= dt that divides it evenly.

#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

#include <boost/numeric/odeint/stepper/runge_kutta4.hpp>

#include "evasion/errors.hpp"
#include "evasion/kinematics.hpp"

namespace evasion {

struct ControlPiece {
    double t_begin{0.0};
    double t_end{0.0};
    Controls u;
};

using ControlSchedule = std::vector<ControlPiece>;

template <std::size_t N>
struct SampledPath {
    std::vector<double> t;
    std::vector<std::array<double, N>> x;
    /// Controls applied from each sample onward (last sample repeats).
    std::vector<Controls> u;
};

/// `f(x, u)` returns dx/dt. The schedule must cover [t0, t1] without gaps.
template <std::size_t N, class Dynamics>
SampledPath<N> rk4_integrate(Dynamics&& f, std::array<double, N> x, const ControlSchedule& schedule, double t0,
                             double t1, double dt) {
    if (!(dt > 0.0)) throw PreconditionError("rk4_integrate: dt must be positive");
    if (t1 < t0) throw PreconditionError("rk4_integrate: empty time span");
    using State = std::array<double, N>;
    boost::numeric::odeint::runge_kutta4<State> stepper;

    SampledPath<N> path;
    path.t.push_back(t0);
    path.x.push_back(x);
    double t = t0;
    for (const ControlPiece& piece : schedule) {
        const double a = std::max(piece.t_begin, t0);
        const double b = std::min(piece.t_end, t1);
        if (!(b > a)) continue;
        if (std::abs(a - t) > 1e-9 * std::max(1.0, std::abs(t))) {
            throw PreconditionError("rk4_integrate: control schedule has a gap or overlap");
        }
        const auto steps = static_cast<long>(std::ceil((b - a) / dt - 1e-9));
        const double h = (b - a) / static_cast<double>(std::max(1L, steps));
        const auto system = [&](const State& s, State& dsdt, double) { dsdt = f(s, piece.u); };
        for (long k = 0; k < std::max(1L, steps); ++k) {
            path.u.push_back(piece.u);
            stepper.do_step(system, x, t, h);
            t = (k + 1 == std::max(1L, steps)) ? b : a + static_cast<double>(k + 1) * h;
            path.t.push_back(t);
            path.x.push_back(x);
        }
    }
    if (std::abs(t - t1) > 1e-9 * std::max(1.0, std::abs(t1))) {
        throw PreconditionError("rk4_integrate: control schedule does not cover the time span");
    }
    path.u.push_back(path.u.empty() ? Controls{} : path.u.back());
    return path;
}

}  // namespace evasion
