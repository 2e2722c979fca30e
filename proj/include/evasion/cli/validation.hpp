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

// Invariant checks run by `evasion validate`: closed-form versus ODE
// oracle, Pontryagin residuals, junction continuity, barrier emanation and
// output provenance.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "evasion/cli/config.hpp"

namespace evasion::cli {

struct ValidationCheck {
    std::string name;
    bool passed{false};
    double max_error{0.0};
    double tolerance{0.0};
    std::string detail;
};

struct ValidationReport {
    std::string config_hash;
    std::vector<ValidationCheck> checks;

    [[nodiscard]] bool passed() const noexcept;
    [[nodiscard]] nlohmann::json to_json() const;
};

struct ValidateOptions {
    /// Added to the closed-form x in the oracle comparison.
    double inject_fault{0.0};
    /// Directory of earlier outputs whose provenance is checked.
    std::optional<std::filesystem::path> check_dir;
};

/// Largest residuals along a trajectory, sampled `samples` times per
/// segment. The Hamiltonian uses the transversality multiplier for UP
/// seeds and the bare adjoint product for BUP seeds, where the game value
/// is zero.
struct PontryaginResiduals {
    double hamiltonian{0.0};
    double unit_norm{0.0};
    double adjoint{0.0};
};
[[nodiscard]] PontryaginResiduals pontryagin_residuals(const Trajectory& traj, const GameParams& params,
                                                       int samples = 100);

/// Trajectories exercised by validation: the seed grid, universal-surface
/// seeds with both tributaries, and Inside barriers.
[[nodiscard]] std::vector<Trajectory> validation_trajectories(const Config& cfg);

/// Fails when files listed by the manifests in `dir` disagree on the
/// config hash or are missing.
[[nodiscard]] ValidationCheck check_provenance(const std::filesystem::path& dir);

[[nodiscard]] ValidationReport run_validation(const Config& cfg, const ValidateOptions& opts);

}  // namespace evasion::cli
