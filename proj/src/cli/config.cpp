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

#include "evasion/cli/config.hpp"

#include <openssl/sha.h>

#include <array>
#include <cmath>
#include <fstream>
#include <sstream>

namespace evasion::cli {

using nlohmann::json;

namespace {

void require_positive(double v, const char* field) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw ConfigError(std::string("config field '") + field + "' must be a positive number");
    }
}

template <class T>
T field_as(const json& j, const std::string& path) {
    try {
        return j.get<T>();
    } catch (const json::exception&) {
        throw ConfigError("field '" + path + "' has the wrong type (" + std::string(j.type_name()) + ")");
    }
}

const json& required(const json& j, const std::string& key, const std::string& where) {
    if (!j.is_object() || !j.contains(key)) throw ConfigError("missing field '" + where + key + "'");
    return j.at(key);
}

double degrees_field(const json& j, const std::string& key, const std::string& where) {
    return deg2rad(field_as<double>(required(j, key, where), where + key));
}

BoundarySide side_from(const json& j, const std::string& path) {
    const auto s = field_as<std::string>(j, path);
    if (s == "right") return BoundarySide::Right;
    if (s == "left") return BoundarySide::Left;
    throw ConfigError("field '" + path + "' must be \"right\" or \"left\"");
}

SeedKind seed_kind_from(const json& j, const std::string& path) {
    const auto s = field_as<std::string>(j, path);
    if (s == "up") return SeedKind::UsablePart;
    if (s == "bup") return SeedKind::BoundaryOfUsablePart;
    throw ConfigError("field '" + path + "' must be \"up\" or \"bup\"");
}

}  // namespace

std::string_view to_string(OutputFormat f) noexcept { return f == OutputFormat::Csv ? "csv" : "json"; }

void Config::validate() const {
    if (!(phi_d_degrees > 0.0 && phi_d_degrees < 90.0)) {
        throw ConfigError("config field 'phi_d_degrees' must lie in (0, 90)");
    }
    require_positive(tau_max, "tau_max");
    require_positive(dt, "dt");
    require_positive(tol_root, "tol_root");
    require_positive(tol_event, "tol_event");
    require_positive(tau_us, "tau_us");
    require_positive(sample_step, "sample_step");
    if (n_theta < 0) throw ConfigError("config field 'seed_grid.n_theta' must be >= 0");
    if (n_r < 0) throw ConfigError("config field 'seed_grid.n_r' must be >= 0");
    if (tau_us >= tau_max) throw ConfigError("config field 'tau_us' must be below tau_max");
}

GameParams Config::game_params() const {
    GameParams p = GameParams::from_degrees(phi_d_degrees);
    p.tau_max = tau_max;
    p.tol_root = tol_root;
    p.tol_event = tol_event;
    return p;
}

json Config::to_json() const {
    return json{{"phi_d_degrees", phi_d_degrees},
                {"tau_max", tau_max},
                {"dt", dt},
                {"tol_root", tol_root},
                {"tol_event", tol_event},
                {"seed_grid", {{"n_theta", n_theta}, {"n_r", n_r}}},
                {"tau_us", tau_us},
                {"sample_step", sample_step},
                {"format", std::string(cli::to_string(format))}};
}

Config config_from_json(const json& j, Config cfg) {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        if (key == "phi_d_degrees") {
            cfg.phi_d_degrees = field_as<double>(value, key);
        } else if (key == "tau_max") {
            cfg.tau_max = field_as<double>(value, key);
        } else if (key == "dt") {
            cfg.dt = field_as<double>(value, key);
        } else if (key == "tol_root") {
            cfg.tol_root = field_as<double>(value, key);
        } else if (key == "tol_event") {
            cfg.tol_event = field_as<double>(value, key);
        } else if (key == "tau_us") {
            cfg.tau_us = field_as<double>(value, key);
        } else if (key == "sample_step") {
            cfg.sample_step = field_as<double>(value, key);
        } else if (key == "seed_grid") {
            if (!value.is_object()) throw ConfigError("field 'seed_grid' must be an object");
            if (value.contains("n_theta")) cfg.n_theta = field_as<int>(value.at("n_theta"), "seed_grid.n_theta");
            if (value.contains("n_r")) cfg.n_r = field_as<int>(value.at("n_r"), "seed_grid.n_r");
        } else if (key == "output_dir") {
            cfg.output_dir = field_as<std::string>(value, key);
        } else if (key == "format") {
            const auto f = field_as<std::string>(value, key);
            if (f == "csv") {
                cfg.format = OutputFormat::Csv;
            } else if (f == "json") {
                cfg.format = OutputFormat::Json;
            } else {
                throw ConfigError("field 'format' must be \"csv\" or \"json\"");
            }
        } else {
            throw ConfigError("unknown config field '" + key + "'");
        }
    }
    return cfg;
}

json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open '" + path.string() + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        const std::size_t upto = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
        std::size_t line = 1;
        std::size_t col = 1;
        for (std::size_t i = 0; i < upto; ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ConfigError(path.string() + ":" + std::to_string(line) + ":" + std::to_string(col) +
                          ": JSON parse error");
    }
}

Config load_config(const std::filesystem::path& path) {
    try {
        return config_from_json(read_json_file(path));
    } catch (const ConfigError& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

std::string hash_json(const json& j) {
    const std::string text = j.dump();
    std::array<unsigned char, SHA256_DIGEST_LENGTH> digest{};
    SHA256(reinterpret_cast<const unsigned char*>(text.data()), text.size(), digest.data());
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out;
    for (std::size_t i = 0; i < 8; ++i) {
        out.push_back(kHex[digest[i] >> 4]);
        out.push_back(kHex[digest[i] & 0xF]);
    }
    return out;
}

std::string config_hash(const Config& cfg) { return hash_json(cfg.to_json()); }

Scenario scenario_from_json(const json& j) {
    if (!j.is_object()) throw ConfigError("scenario must be a JSON object");
    Scenario sc;
    sc.name = field_as<std::string>(required(j, "name", ""), "name");
    if (j.contains("description")) sc.description = field_as<std::string>(j.at("description"), "description");
    sc.params = GameParams::from_degrees(field_as<double>(required(j, "phi_d_degrees", ""), "phi_d_degrees"));
    if (j.contains("tau_max")) sc.params.tau_max = field_as<double>(j.at("tau_max"), "tau_max");

    const auto kind = field_as<std::string>(required(j, "kind", ""), "kind");
    if (kind == "primary") {
        sc.kind = ScenarioKind::Primary;
    } else if (kind == "tributary") {
        sc.kind = ScenarioKind::Tributary;
    } else {
        throw ConfigError("field 'kind' must be \"primary\" or \"tributary\"");
    }

    const json& seed = required(j, "seed", "");
    sc.seed.r = field_as<double>(required(seed, "r", "seed."), "seed.r");
    sc.seed.theta_d = degrees_field(seed, "theta_d_degrees", "seed.");
    sc.seed.side = side_from(required(seed, "side", "seed."), "seed.side");
    sc.seed.kind = seed.contains("kind") ? seed_kind_from(seed.at("kind"), "seed.kind") : SeedKind::UsablePart;

    if (sc.kind == ScenarioKind::Tributary) {
        const json& trib = required(j, "tributary", "");
        sc.tau_us = field_as<double>(required(trib, "tau_us", "tributary."), "tributary.tau_us");
        sc.turn = side_from(required(trib, "turn", "tributary."), "tributary.turn");
    }
    if (j.contains("pursuer_start_pose")) {
        const json& pose = j.at("pursuer_start_pose");
        sc.pursuer_start_pose = {field_as<double>(required(pose, "x", "pursuer_start_pose."), "pursuer_start_pose.x"),
                                 field_as<double>(required(pose, "y", "pursuer_start_pose."), "pursuer_start_pose.y"),
                                 degrees_field(pose, "heading_degrees", "pursuer_start_pose.")};
    }
    if (j.contains("dt")) sc.dt = field_as<double>(j.at("dt"), "dt");
    if (j.contains("start_tau")) sc.start_tau = field_as<double>(j.at("start_tau"), "start_tau");
    if (j.contains("search")) {
        const json& s = j.at("search");
        ParameterSearch ps;
        ps.parameter = field_as<std::string>(required(s, "parameter", "search."), "search.parameter");
        if (ps.parameter != "r" && ps.parameter != "tau_us") {
            throw ConfigError("field 'search.parameter' must be \"r\" or \"tau_us\"");
        }
        const json& bracket = required(s, "bracket", "search.");
        if (!bracket.is_array() || bracket.size() != 2) {
            throw ConfigError("field 'search.bracket' must be a two-element array");
        }
        ps.lo = field_as<double>(bracket[0], "search.bracket[0]");
        ps.hi = field_as<double>(bracket[1], "search.bracket[1]");
        ps.target_escape_time =
            field_as<double>(required(s, "target_escape_time", "search."), "search.target_escape_time");
        sc.search = ps;
    }
    if (j.contains("expected_families")) {
        for (const json& f : j.at("expected_families")) {
            const auto name = field_as<std::string>(f, "expected_families[]");
            const auto tag = family_from_string(name);
            if (!tag) throw ConfigError("field 'expected_families' has unknown family '" + name + "'");
            sc.expected_families.push_back(*tag);
        }
    }
    if (j.contains("snapshot_times")) {
        sc.snapshot_times = field_as<std::vector<double>>(j.at("snapshot_times"), "snapshot_times");
    }

    if (!(sc.dt > 0.0)) throw ConfigError("field 'dt' must be positive");
    try {
        sc.params.validate();
    } catch (const std::exception& e) {
        throw ConfigError(std::string("scenario parameters: ") + e.what());
    }
    return sc;
}

Scenario load_scenario(const std::filesystem::path& path) {
    try {
        return scenario_from_json(read_json_file(path));
    } catch (const ConfigError& e) {
        const std::string msg = e.what();
        if (msg.rfind(path.string(), 0) == 0) throw;
        throw ConfigError(path.string() + ": " + msg);
    }
}

std::filesystem::path resolve_scenario(const std::string& name_or_path) {
    const std::filesystem::path direct(name_or_path);
    if (std::filesystem::exists(direct)) return direct;
    const std::filesystem::path bundled = std::filesystem::path(EVASION_SCENARIO_DIR) / (name_or_path + ".json");
    if (std::filesystem::exists(bundled)) return bundled;
    throw ConfigError("scenario '" + name_or_path + "' not found");
}

json scenario_to_json(const Scenario& sc) {
    json j{{"name", sc.name},
           {"description", sc.description},
           {"phi_d_degrees", rad2deg(sc.params.phi_d)},
           {"tau_max", sc.params.tau_max},
           {"kind", sc.kind == ScenarioKind::Primary ? "primary" : "tributary"},
           {"seed",
            {{"r", sc.seed.r},
             {"theta_d_degrees", rad2deg(sc.seed.theta_d)},
             {"side", std::string(evasion::to_string(sc.seed.side))},
             {"kind", sc.seed.kind == SeedKind::UsablePart ? "up" : "bup"}}},
           {"pursuer_start_pose",
            {{"x", sc.pursuer_start_pose.x},
             {"y", sc.pursuer_start_pose.y},
             {"heading_degrees", rad2deg(sc.pursuer_start_pose.heading)}}},
           {"dt", sc.dt}};
    if (sc.kind == ScenarioKind::Tributary) {
        j["tributary"] = {{"tau_us", sc.tau_us}, {"turn", std::string(evasion::to_string(sc.turn))}};
    }
    if (sc.start_tau) j["start_tau"] = *sc.start_tau;
    if (sc.search) {
        j["search"] = {{"parameter", sc.search->parameter},
                       {"bracket", {sc.search->lo, sc.search->hi}},
                       {"target_escape_time", sc.search->target_escape_time}};
    }
    json fams = json::array();
    for (FamilyTag f : sc.expected_families) fams.push_back(std::string(evasion::to_string(f)));
    j["expected_families"] = fams;
    j["snapshot_times"] = sc.snapshot_times;
    return j;
}

}  // namespace evasion::cli
