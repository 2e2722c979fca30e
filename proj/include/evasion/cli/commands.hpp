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

// The five subcommands. Each writes its files plus a <command>_manifest.json
// into cfg.output_dir and returns a process exit code.

#include <iosfwd>
#include <string>

#include "evasion/cli/table_io.hpp"
#include "evasion/cli/validation.hpp"

namespace evasion::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidationFailure = 1;
inline constexpr int kExitUsage = 2;

/// Trajectory columns, in file order.
inline const std::vector<std::string> kTrajectoryColumns{
    "tau", "r", "phi", "theta", "x", "y", "lambda_x", "lambda_y", "lambda_theta", "nu_p", "nu_e", "family"};

/// Rows every `step` in retro-time along each segment, plus each
/// segment's end point.
[[nodiscard]] Table trajectory_table(const Trajectory& traj, double step, const std::string& hash);

int cmd_up(const Config& cfg, std::ostream& log);
int cmd_synth(const Config& cfg, std::ostream& log);
int cmd_barrier(const Config& cfg, std::ostream& log);
int cmd_simulate(const Config& cfg, const std::string& scenario, std::ostream& log);
int cmd_validate(const Config& cfg, const ValidateOptions& opts, std::ostream& log);

}  // namespace evasion::cli
