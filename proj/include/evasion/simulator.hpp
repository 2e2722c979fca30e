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

// Forward-time replay of synthesized play in the realistic plane, and
// cross-validation of the closed forms against numerical integration.

#include <optional>
#include <string>
#include <vector>

#include "evasion/rk4.hpp"
#include "evasion/trajectory.hpp"

namespace evasion {

struct SimResult {
    double escape_time{0.0};
    bool escaped{false};
    std::vector<double> times;
    std::vector<Pose> pursuer_path;
    std::vector<Pose> evader_path;
    std::vector<ReducedState> reduced_path;
    std::vector<Controls> control_log;
    /// Largest gap between the closed-form reduced state and the reduced
    /// state of both players integrated independently in the plane.
    double replay_deviation{0.0};
};

/// Forward-time control schedule of `traj` started at retro-time start_tau.
[[nodiscard]] ControlSchedule forward_schedule(const Trajectory& traj, double start_tau);

/// Plays `traj` forward from retro-time `start_tau` (default: its full span)
/// with the pursuer starting at `pursuer_start`.
[[nodiscard]] SimResult replay(const Trajectory& traj, const Pose& pursuer_start, double dt,
                               const GameParams& params, std::optional<double> start_tau = std::nullopt);

struct Snapshot {
    double t{0.0};
    Pose pursuer;
    Pose evader;
    ReducedState reduced;
};
/// Nearest recorded sample to each requested time (clamped to the run).
[[nodiscard]] std::vector<Snapshot> snapshots(const SimResult& sim, const std::vector<double>& times);

struct SegmentDeviation {
    FamilyTag family{FamilyTag::Primary};
    double state{0.0};
    double costate{0.0};
};

struct CrossValidationReport {
    double max_state_deviation{0.0};
    double max_costate_deviation{0.0};
    std::vector<SegmentDeviation> segments;
};

/// Retro-time RK4 of state and costate from the segment anchor over
/// [anchor_tau, anchor_tau + span], compared with the closed forms at every
/// step. `perturbation` is added to the closed-form x (fault injection).
[[nodiscard]] SegmentDeviation cross_validate_segment(const TrajectorySegment& seg, double span, double dt,
                                                      double perturbation = 0.0);
/// Every segment over its own validity interval.
[[nodiscard]] CrossValidationReport cross_validate(const Trajectory& traj, double dt);

enum class ScenarioKind { Primary, Tributary };

/// One-dimensional search for the free seed parameter that reproduces a
/// target escape time.
struct ParameterSearch {
    std::string parameter{"r"};  // "r" or "tau_us"
    double lo{0.0};
    double hi{0.0};
    double target_escape_time{0.0};
};

struct Scenario {
    std::string name;
    std::string description;
    GameParams params;
    ScenarioKind kind{ScenarioKind::Primary};
    Seed seed;
    double tau_us{0.0};
    BoundarySide turn{BoundarySide::Right};
    Pose pursuer_start_pose{0.0, 0.0, kHalfPi};
    double dt{1e-4};
    std::optional<double> start_tau;
    std::optional<ParameterSearch> search;
    std::vector<FamilyTag> expected_families;
    std::vector<double> snapshot_times;
};

[[nodiscard]] Trajectory scenario_trajectory(const Scenario& sc);
/// Solves total_tau(parameter) = target on [lo, hi] by bisection.
[[nodiscard]] double recover_search_parameter(const Scenario& sc);
[[nodiscard]] Scenario with_search_parameter(Scenario sc, double value);
[[nodiscard]] SimResult run_scenario(const Scenario& sc);

}  // namespace evasion
