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

// evasion: command-line front end.
//
//   evasion up        usable part, its boundary and the apex line
//   evasion synth     trajectories over the seed grid
//   evasion barrier   emanation table and barrier trajectories
//   evasion simulate  forward replay of a scenario file
//   evasion validate  invariant checks, machine-readable report
//
// Exit codes: 0 success, 1 validation or run failure, 2 usage or config error.

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "evasion/cli/commands.hpp"

namespace {

using namespace evasion::cli;

struct Flags {
    std::string config_file;
    std::optional<double> phi_d_degrees;
    std::optional<double> tau_max;
    std::optional<double> dt;
    std::optional<std::string> out;
    std::optional<std::string> format;
    std::optional<int> seeds_theta;
    std::optional<int> seeds_r;
    std::string scenario;
    double inject_fault{0.0};
    std::string check_dir;
};

Config build_config(const Flags& f) {
    Config cfg = f.config_file.empty() ? Config{} : load_config(f.config_file);
    nlohmann::json overrides = nlohmann::json::object();
    if (f.phi_d_degrees) overrides["phi_d_degrees"] = *f.phi_d_degrees;
    if (f.tau_max) overrides["tau_max"] = *f.tau_max;
    if (f.dt) overrides["dt"] = *f.dt;
    if (f.out) overrides["output_dir"] = *f.out;
    if (f.format) overrides["format"] = *f.format;
    if (f.seeds_theta) overrides["seed_grid"]["n_theta"] = *f.seeds_theta;
    if (f.seeds_r) overrides["seed_grid"]["n_r"] = *f.seeds_r;
    cfg = config_from_json(overrides, cfg);
    cfg.validate();
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Surveillance-evasion game between two Dubins cars: retro-time synthesis and replay"};
    app.require_subcommand(1);
    app.fallthrough();

    Flags f;
    app.add_option("--config", f.config_file, "flat JSON config file (flags override it)");
    app.add_option("--phi-d-degrees", f.phi_d_degrees, "cone half-angle in degrees");
    app.add_option("--tau-max", f.tau_max, "retro-time horizon");
    app.add_option("--dt", f.dt, "integration step");
    app.add_option("--out", f.out, "output directory");
    app.add_option("--format", f.format, "table format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--seeds-theta", f.seeds_theta, "seed grid size over theta_d");
    app.add_option("--seeds-r", f.seeds_r, "seed grid size over r");

    auto* up = app.add_subcommand("up", "usable part, BUP and UPL tables");
    auto* synth = app.add_subcommand("synth", "trajectories over the seed grid");
    auto* barrier = app.add_subcommand("barrier", "barrier emanation table and trajectories");
    auto* simulate = app.add_subcommand("simulate", "replay a scenario in the realistic plane");
    simulate->add_option("--scenario", f.scenario, "scenario file or bundled name (sim1..sim5)")->required();
    auto* validate = app.add_subcommand("validate", "run the invariant checks");
    validate->add_option("--inject-fault", f.inject_fault, "perturb the closed-form x by this amount");
    validate->add_option("--check-dir", f.check_dir, "refuse mixed provenance in this output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        const Config cfg = build_config(f);
        if (up->parsed()) return cmd_up(cfg, std::cerr);
        if (synth->parsed()) return cmd_synth(cfg, std::cerr);
        if (barrier->parsed()) return cmd_barrier(cfg, std::cerr);
        if (simulate->parsed()) return cmd_simulate(cfg, f.scenario, std::cerr);
        if (validate->parsed()) {
            ValidateOptions opts;
            opts.inject_fault = f.inject_fault;
            if (!f.check_dir.empty()) opts.check_dir = f.check_dir;
            return cmd_validate(cfg, opts, std::cout);
        }
    } catch (const ConfigError& e) {
        std::cerr << "evasion: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "evasion: " << e.what() << "\n";
        return kExitValidationFailure;
    }
    return kExitUsage;
}
