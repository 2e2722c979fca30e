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

// Run configuration and scenario files. Angles are given in degrees in
// files and on the command line, radians everywhere else.

#include <filesystem>
#include <stdexcept>
#include <string>

#include "json.hpp"

#include "evasion/simulator.hpp"

namespace evasion::cli {

/// Bad flag, config or scenario input. Maps to exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class OutputFormat { Csv, Json };

struct Config {
    double phi_d_degrees{40.0};
    double tau_max{kTwoPi};
    double dt{1e-4};
    double tol_root{1e-10};
    double tol_event{1e-9};
    int n_theta{12};
    int n_r{4};
    /// Junction time used for the tributaries exported by `synth`.
    double tau_us{0.8};
    /// Retro-time spacing of exported trajectory rows.
    double sample_step{0.01};
    std::filesystem::path output_dir{"evasion_out"};
    OutputFormat format{OutputFormat::Csv};

    /// Throws ConfigError naming the offending field.
    void validate() const;
    [[nodiscard]] GameParams game_params() const;
    /// Canonical form hashed for provenance; excludes output_dir.
    [[nodiscard]] nlohmann::json to_json() const;
};

/// Applies the keys present in a flat JSON object over `base`. Unknown
/// keys are rejected.
[[nodiscard]] Config config_from_json(const nlohmann::json& j, Config base = {});
[[nodiscard]] Config load_config(const std::filesystem::path& path);

/// First 16 hex digits of the SHA-256 of the compact canonical JSON.
[[nodiscard]] std::string hash_json(const nlohmann::json& j);
[[nodiscard]] std::string config_hash(const Config& cfg);

[[nodiscard]] std::string_view to_string(OutputFormat f) noexcept;

/// Parse errors cite the line, field errors cite the field path.
[[nodiscard]] Scenario scenario_from_json(const nlohmann::json& j);
[[nodiscard]] Scenario load_scenario(const std::filesystem::path& path);
/// Resolves a bare name such as "sim3" against the bundled scenarios.
[[nodiscard]] std::filesystem::path resolve_scenario(const std::string& name_or_path);
[[nodiscard]] nlohmann::json scenario_to_json(const Scenario& sc);

/// Reads a whole JSON file; parse errors are reported as ConfigError with
/// the line and column.
[[nodiscard]] nlohmann::json read_json_file(const std::filesystem::path& path);

}  // namespace evasion::cli
