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
#include <string>

#include "evasion/errors.hpp"
#include "evasion/root_finding.hpp"
#include "evasion/simulator.hpp"

namespace evasion {

Trajectory scenario_trajectory(const Scenario& sc) {
    if (sc.kind == ScenarioKind::Tributary) return synthesize_tributary(sc.seed, sc.tau_us, sc.turn, sc.params);
    return synthesize(sc.seed, sc.params);
}

Scenario with_search_parameter(Scenario sc, double value) {
    if (!sc.search) throw PreconditionError("scenario '" + sc.name + "' has no search block");
    if (sc.search->parameter == "r") {
        sc.seed.r = value;
    } else if (sc.search->parameter == "tau_us") {
        sc.tau_us = value;
    } else {
        throw PreconditionError("unknown search parameter '" + sc.search->parameter + "'");
    }
    return sc;
}

double recover_search_parameter(const Scenario& sc) {
    if (!sc.search) throw PreconditionError("scenario '" + sc.name + "' has no search block");
    const ParameterSearch& s = *sc.search;
    const auto excess = [&](double v) {
        return scenario_trajectory(with_search_parameter(sc, v)).total_tau - s.target_escape_time;
    };
    const double f_lo = excess(s.lo);
    const double f_hi = excess(s.hi);
    if (f_lo == 0.0) return s.lo;
    if (f_hi == 0.0) return s.hi;
    if ((f_lo > 0.0) == (f_hi > 0.0)) {
        throw PreconditionError("search bracket for '" + sc.name + "' does not straddle the target escape time");
    }
    const bool lo_positive = f_lo > 0.0;
    const auto same_as_lo = [lo_positive](double v) { return (v > 0.0) == lo_positive; };
    return bisect(excess, same_as_lo, Bracket{s.lo, s.hi}, 1e-12, 1e-13);
}

SimResult run_scenario(const Scenario& sc) {
    sc.params.validate();
    if (!(sc.dt > 0.0)) throw PreconditionError("scenario dt must be positive");
    const Trajectory traj = scenario_trajectory(sc);
    return replay(traj, sc.pursuer_start_pose, sc.dt, sc.params, sc.start_tau);
}

}  // namespace evasion
