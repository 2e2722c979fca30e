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

#include "evasion/simulator.hpp"

#include <algorithm>
#include <cmath>

#include "evasion/errors.hpp"

namespace evasion {

ControlSchedule forward_schedule(const Trajectory& traj, double start_tau) {
    ControlSchedule schedule;
    for (auto it = traj.segments.rbegin(); it != traj.segments.rend(); ++it) {
        const double hi = std::min(it->tau_end, start_tau);
        if (!(hi > it->anchor_tau)) continue;
        schedule.push_back({start_tau - hi, start_tau - it->anchor_tau, it->controls()});
    }
    return schedule;
}

SimResult replay(const Trajectory& traj, const Pose& pursuer_start, double dt, const GameParams& params,
                 std::optional<double> start_tau) {
    const double span = start_tau.value_or(traj.total_tau);
    if (!(span > 0.0) || span > traj.total_tau + 1e-12) {
        throw PreconditionError("replay start must lie in (0, total_tau]");
    }
    const RealisticState start = from_reduced(traj.state_at(span), pursuer_start);
    const auto realistic = [](const std::array<double, 6>& v, Controls u) {
        const RealisticRate d = realistic_dynamics(RealisticState::from_array(v), u);
        return std::array<double, 6>{d.xp, d.yp, d.theta_p, d.xe, d.ye, d.theta_e};
    };
    const SampledPath<6> path =
        rk4_integrate<6>(realistic, start.to_array(), forward_schedule(traj, span), 0.0, span, dt);

    SimResult out;
    out.escape_time = span;
    const std::size_t n = path.t.size();
    out.times = path.t;
    out.control_log = path.u;
    out.pursuer_path.reserve(n);
    out.evader_path.reserve(n);
    out.reduced_path.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double tau = std::max(0.0, span - path.t[i]);
        const ReducedState closed = traj.state_at(tau);
        const RealisticState integrated = RealisticState::from_array(path.x[i]);
        const Pose pursuer{integrated.pursuer.x, integrated.pursuer.y, normalize_angle(integrated.pursuer.heading)};
        out.pursuer_path.push_back(pursuer);
        out.evader_path.push_back(from_reduced(closed, pursuer).evader);
        out.reduced_path.push_back(closed);

        const ReducedState check = to_reduced(integrated);
        out.replay_deviation = std::max({out.replay_deviation, std::abs(check.x - closed.x),
                                         std::abs(check.y - closed.y),
                                         std::abs(wrap_signed(check.theta - closed.theta))});
    }
    const CylindricalState final_state = to_cylindrical(out.reduced_path.back());
    const TerminalClass cls = classify(final_state, params);
    out.escaped = std::abs(final_state.phi) >= params.phi_d - params.tol_event &&
                  (cls == TerminalClass::RUP || cls == TerminalClass::LUP || cls == TerminalClass::BothUPL);
    return out;
}

std::vector<Snapshot> snapshots(const SimResult& sim, const std::vector<double>& times) {
    std::vector<Snapshot> out;
    if (sim.times.empty()) return out;
    for (double t : times) {
        const auto it = std::lower_bound(sim.times.begin(), sim.times.end(), t);
        std::size_t i = static_cast<std::size_t>(it - sim.times.begin());
        if (i == sim.times.size()) {
            i = sim.times.size() - 1;
        } else if (i > 0 && t - sim.times[i - 1] < sim.times[i] - t) {
            --i;
        }
        out.push_back({sim.times[i], sim.pursuer_path[i], sim.evader_path[i], sim.reduced_path[i]});
    }
    return out;
}

SegmentDeviation cross_validate_segment(const TrajectorySegment& seg, double span, double dt, double perturbation) {
    SegmentDeviation dev{seg.family, 0.0, 0.0};
    if (!(span > 0.0)) return dev;
    const double np = seg.nu_p;
    const double ne = seg.nu_e;
    // Retro-time state and adjoint equations, integrated independently of
    // the closed forms.
    const auto retro = [np, ne](const std::array<double, 6>& v, Controls) {
        const double th = v[2];
        return std::array<double, 6>{-np * v[1] - std::sin(th),
                                     np * v[0] + 1.0 - std::cos(th),
                                     -np + ne,
                                     -np * v[4],
                                     np * v[3],
                                     v[3] * std::cos(th) - v[4] * std::sin(th)};
    };
    const ReducedState s0 = from_cylindrical(seg.anchor_state);
    const Costate l0 = seg.anchor_costate;
    const std::array<double, 6> x0{s0.x, s0.y, s0.theta, l0.lambda_x, l0.lambda_y, l0.lambda_theta};
    const ControlSchedule one{{0.0, span, seg.controls()}};
    const SampledPath<6> path = rk4_integrate<6>(retro, x0, one, 0.0, span, dt);
    for (std::size_t i = 0; i < path.t.size(); ++i) {
        const double tau = seg.anchor_tau + path.t[i];
        const ReducedState s = seg.state_at(tau);
        const Costate c = seg.costate_at(tau);
        const auto& v = path.x[i];
        dev.state = std::max({dev.state, std::abs(s.x + perturbation - v[0]), std::abs(s.y - v[1]),
                              std::abs(wrap_signed(s.theta - v[2]))});
        dev.costate = std::max({dev.costate, std::abs(c.lambda_x - v[3]), std::abs(c.lambda_y - v[4]),
                                std::abs(c.lambda_theta - v[5])});
    }
    return dev;
}

CrossValidationReport cross_validate(const Trajectory& traj, double dt) {
    CrossValidationReport report;
    for (const TrajectorySegment& seg : traj.segments) {
        const SegmentDeviation d = cross_validate_segment(seg, seg.tau_end - seg.anchor_tau, dt);
        report.segments.push_back(d);
        report.max_state_deviation = std::max(report.max_state_deviation, d.state);
        report.max_costate_deviation = std::max(report.max_costate_deviation, d.costate);
    }
    return report;
}

}  // namespace evasion
