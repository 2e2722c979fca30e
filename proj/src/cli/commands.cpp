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

#include "evasion/cli/commands.hpp"

#include <cmath>
#include <ostream>

namespace evasion::cli {

using nlohmann::json;

namespace {

class Manifest {
public:
    Manifest(const Config& cfg, std::string command, std::string hash)
        : cfg_(cfg), command_(std::move(command)), hash_(std::move(hash)) {}

    void add(const std::string& file, const Table& t, json extra = json::object()) {
        extra["file"] = file;
        extra["rows"] = t.rows.size();
        extra["columns"] = t.columns;
        files_.push_back(std::move(extra));
    }
    void add_raw(const std::string& file, json extra = json::object()) {
        extra["file"] = file;
        files_.push_back(std::move(extra));
    }
    void fail(json entry) { failures_.push_back(std::move(entry)); }

    void write(const json& echo_extra = json::object()) const {
        json echo = cfg_.to_json();
        for (const auto& [k, v] : echo_extra.items()) echo[k] = v;
        const json j{{"command", command_},
                     {"config_hash", hash_},
                     {"config", echo},
                     {"files", files_},
                     {"failures", failures_}};
        write_text_file(cfg_.output_dir / (command_ + "_manifest.json"), j.dump(1) + "\n");
    }

private:
    const Config& cfg_;
    std::string command_;
    std::string hash_;
    json files_ = json::array();
    json failures_ = json::array();
};

Table make_table(const std::string& hash, std::vector<std::string> columns) {
    Table t;
    t.metadata["config_hash"] = hash;
    t.columns = std::move(columns);
    return t;
}

json seed_json(const Seed& s) {
    return {{"r", s.r},
            {"theta_d_degrees", rad2deg(s.theta_d)},
            {"side", std::string(to_string(s.side))},
            {"kind", s.kind == SeedKind::UsablePart ? "up" : "bup"}};
}

json families_json(const Trajectory& t) {
    json f = json::array();
    for (const TrajectorySegment& seg : t.segments) f.push_back(std::string(to_string(seg.family)));
    return f;
}

std::string indexed_name(const std::string& stem, std::size_t i, OutputFormat format) {
    std::string n = std::to_string(i);
    if (n.size() < 4) n.insert(0, 4 - n.size(), '0');
    return stem + "_" + n + file_extension(format);
}

/// Angle grid k/10 degrees covering [lo, hi], endpoints included.
std::vector<double> tenth_degree_grid(double lo_deg, double hi_deg) {
    std::vector<double> out;
    const auto k0 = static_cast<long>(std::ceil(lo_deg * 10.0 - 1e-9));
    const auto k1 = static_cast<long>(std::floor(hi_deg * 10.0 + 1e-9));
    if (std::abs(lo_deg * 10.0 - static_cast<double>(k0)) > 1e-9) out.push_back(lo_deg);
    for (long k = k0; k <= k1; ++k) out.push_back(static_cast<double>(k) / 10.0);
    if (std::abs(hi_deg * 10.0 - static_cast<double>(k1)) > 1e-9) out.push_back(hi_deg);
    return out;
}

}  // namespace

Table trajectory_table(const Trajectory& traj, double step, const std::string& hash) {
    Table t = make_table(hash, kTrajectoryColumns);
    for (const TrajectorySegment& seg : traj.segments) {
        const auto family = std::string(to_string(seg.family));
        const double span = seg.tau_end - seg.anchor_tau;
        const auto n = static_cast<long>(std::ceil(span / step - 1e-9));
        for (long k = 0; k <= std::max(0L, n); ++k) {
            const double tau = k == n ? seg.tau_end : seg.anchor_tau + static_cast<double>(k) * step;
            const CylindricalState c = seg.cylindrical_at(tau);
            const ReducedState s = from_cylindrical(c);
            const Costate l = seg.costate_at(tau);
            t.rows.push_back({tau, c.r, c.phi, c.theta, s.x, s.y, l.lambda_x, l.lambda_y, l.lambda_theta,
                              static_cast<double>(seg.nu_p), static_cast<double>(seg.nu_e), family});
        }
    }
    return t;
}

int cmd_up(const Config& cfg, std::ostream& log) {
    cfg.validate();
    const GameParams params = cfg.game_params();
    const std::string hash = config_hash(cfg);
    const double pd = cfg.phi_d_degrees;
    Manifest manifest(cfg, "up", hash);

    Table bup = make_table(hash, {"side", "theta_degrees", "r"});
    for (double deg : tenth_degree_grid(0.0, 180.0 + 2.0 * pd)) {
        bup.rows.push_back({std::string("right"), deg, rbup_radius(deg2rad(deg), params)});
    }
    for (double deg : tenth_degree_grid(180.0 - 2.0 * pd, 360.0)) {
        bup.rows.push_back({std::string("left"), deg, lbup_radius(deg2rad(deg), params)});
    }
    const std::string bup_name = "bup" + file_extension(cfg.format);
    write_table(cfg.output_dir / bup_name, bup, cfg.format);
    manifest.add(bup_name, bup, {{"table", "bup"}});

    Table up = make_table(hash, {"side", "kind", "theta_degrees", "r", "phi_degrees", "class"});
    for (const Seed& s : sample_seeds(params, cfg.n_theta, cfg.n_r)) {
        const CylindricalState c = s.terminal_state(params);
        up.rows.push_back({std::string(to_string(s.side)), std::string(s.kind == SeedKind::UsablePart ? "up" : "bup"),
                           rad2deg(s.theta_d), s.r, rad2deg(c.phi), std::string(to_string(classify(c, params)))});
    }
    const std::string up_name = "up" + file_extension(cfg.format);
    write_table(cfg.output_dir / up_name, up, cfg.format);
    manifest.add(up_name, up, {{"table", "up"}});

    Table upl = make_table(hash, {"theta_degrees", "membership"});
    for (double deg : tenth_degree_grid(0.0, 360.0)) {
        if (deg >= 360.0) break;
        upl.rows.push_back({deg, std::string(to_string(upl_membership(deg2rad(deg), params)))});
    }
    const std::string upl_name = "upl" + file_extension(cfg.format);
    write_table(cfg.output_dir / upl_name, upl, cfg.format);
    manifest.add(upl_name, upl, {{"table", "upl"}});

    manifest.write();
    log << "up: wrote 3 tables to " << cfg.output_dir.string() << "\n";
    return kExitOk;
}

int cmd_synth(const Config& cfg, std::ostream& log) {
    cfg.validate();
    const GameParams params = cfg.game_params();
    const std::string hash = config_hash(cfg);
    Manifest manifest(cfg, "synth", hash);
    std::size_t index = 0;
    std::size_t failures = 0;

    const auto emit = [&](const Trajectory& t, json info) {
        const std::string name = indexed_name("traj", index++, cfg.format);
        const Table table = trajectory_table(t, cfg.sample_step, hash);
        write_table(cfg.output_dir / name, table, cfg.format);
        info["seed"] = seed_json(t.seed);
        info["families"] = families_json(t);
        info["termination"] = std::string(to_string(t.termination()));
        info["total_tau"] = t.total_tau;
        manifest.add(name, table, std::move(info));
    };
    const auto failed = [&](const Seed& s, const std::string& what, json info = json::object()) {
        ++failures;
        log << "synth: seed r=" << s.r << " theta_d=" << rad2deg(s.theta_d) << " " << to_string(s.side)
            << " failed: " << what << "\n";
        info["seed"] = seed_json(s);
        info["error"] = what;
        manifest.fail(std::move(info));
    };

    for (const Seed& seed : sample_seeds(params, cfg.n_theta, cfg.n_r)) {
        try {
            emit(synthesize(seed, params), json::object());
        } catch (const std::exception& e) {
            failed(seed, e.what());
        }
    }

    // Universal-surface seeds and the two tributaries joining each of them.
    if (cfg.n_theta > 0 && cfg.n_r > 0) {
        const double theta_us = params.phi_d + kHalfPi;
        const double r_max = rbup_radius(theta_us, params);
        for (int j = 0; j < cfg.n_r; ++j) {
            const Seed right{(j + 0.5) / cfg.n_r * r_max, theta_us, BoundarySide::Right, SeedKind::UsablePart};
            for (const Seed& seed : {right, mirror(right)}) {
                try {
                    emit(synthesize(seed, params), json::object());
                } catch (const std::exception& e) {
                    failed(seed, e.what());
                }
                for (BoundarySide turn : {BoundarySide::Right, BoundarySide::Left}) {
                    const json trib{{"tributary", {{"tau_us", cfg.tau_us}, {"turn", std::string(to_string(turn))}}}};
                    try {
                        emit(synthesize_tributary(seed, cfg.tau_us, turn, params), trib);
                    } catch (const std::exception& e) {
                        failed(seed, e.what(), trib);
                    }
                }
            }
        }
    }

    manifest.write({{"trajectory_columns", kTrajectoryColumns}});
    log << "synth: wrote " << index << " trajectories (" << failures << " seeds failed) to "
        << cfg.output_dir.string() << "\n";
    return kExitOk;
}

int cmd_barrier(const Config& cfg, std::ostream& log) {
    cfg.validate();
    const GameParams params = cfg.game_params();
    const std::string hash = config_hash(cfg);
    Manifest manifest(cfg, "barrier", hash);

    Table table = make_table(hash, {"theta_rb_degrees", "r_bup", "phi_second_derivative", "emanation"});
    const double span_deg = 180.0 + 2.0 * cfg.phi_d_degrees;
    for (double deg : tenth_degree_grid(0.0, span_deg)) {
        if (deg <= 0.0 || deg >= span_deg) continue;
        const double th = deg2rad(deg);
        table.rows.push_back({deg, rbup_radius(th, params), barrier_phi_second_derivative(th, params),
                              std::string(to_string(barrier_emanation(th, params)))});
    }
    const std::string table_name = "emanation" + file_extension(cfg.format);
    write_table(cfg.output_dir / table_name, table, cfg.format);
    manifest.add(table_name, table, {{"table", "emanation"}});

    std::size_t index = 0;
    std::size_t failures = 0;
    for (int i = 0; i < cfg.n_theta; ++i) {
        const double th = (i + 0.5) / cfg.n_theta * (kPi + 2.0 * params.phi_d);
        for (BoundarySide side : {BoundarySide::Right, BoundarySide::Left}) {
            try {
                const double th_side = side == BoundarySide::Right ? th : kTwoPi - th;
                const BarrierTrajectory b = synthesize_barrier(th_side, params, side);
                const std::string name = indexed_name("barrier", index++, cfg.format);
                const Table t = trajectory_table(b.trajectory, cfg.sample_step, hash);
                write_table(cfg.output_dir / name, t, cfg.format);
                manifest.add(name, t,
                             {{"seed", seed_json(b.trajectory.seed)},
                              {"emanation", std::string(to_string(b.emanation))},
                              {"stub", b.emanation == Emanation::Outside},
                              {"families", families_json(b.trajectory)},
                              {"total_tau", b.trajectory.total_tau}});
            } catch (const std::exception& e) {
                ++failures;
                log << "barrier: theta_rb=" << rad2deg(th) << " " << to_string(side) << " failed: " << e.what()
                    << "\n";
                manifest.fail({{"theta_rb_degrees", rad2deg(th)},
                               {"side", std::string(to_string(side))},
                               {"error", e.what()}});
            }
        }
    }
    manifest.write({{"trajectory_columns", kTrajectoryColumns}});
    log << "barrier: wrote " << table.rows.size() << " emanation rows and " << index << " trajectories ("
        << failures << " failed) to " << cfg.output_dir.string() << "\n";
    return kExitOk;
}

int cmd_simulate(const Config& cfg, const std::string& scenario, std::ostream& log) {
    cfg.validate();
    const std::filesystem::path path = resolve_scenario(scenario);
    const Scenario sc = load_scenario(path);
    const json sc_json = scenario_to_json(sc);
    const std::string hash = config_hash(cfg);
    const std::string sc_hash = hash_json(sc_json);
    Manifest manifest(cfg, "simulate", hash);

    const Trajectory traj = scenario_trajectory(sc);
    const SimResult sim = replay(traj, sc.pursuer_start_pose, sc.dt, sc.params, sc.start_tau);

    const std::vector<std::string> columns{"t",  "x_p", "y_p",   "theta_p", "x_e",  "y_e",
                                           "theta_e", "x", "y", "theta", "nu_p", "nu_e"};
    Table path_table = make_table(hash, columns);
    path_table.metadata["scenario"] = sc.name;
    path_table.metadata["scenario_hash"] = sc_hash;
    for (std::size_t i = 0; i < sim.times.size(); ++i) {
        const Pose& p = sim.pursuer_path[i];
        const Pose& e = sim.evader_path[i];
        const ReducedState& s = sim.reduced_path[i];
        path_table.rows.push_back({sim.times[i], p.x, p.y, p.heading, e.x, e.y, e.heading, s.x, s.y, s.theta,
                                   sim.control_log[i].nu_p, sim.control_log[i].nu_e});
    }
    const std::string path_name = sc.name + "_path" + file_extension(cfg.format);
    write_table(cfg.output_dir / path_name, path_table, cfg.format);
    manifest.add(path_name, path_table, {{"table", "path"}});

    Table snap_table = make_table(hash, {"t", "x_p", "y_p", "theta_p", "x_e", "y_e", "theta_e", "x", "y", "theta"});
    snap_table.metadata["scenario"] = sc.name;
    snap_table.metadata["scenario_hash"] = sc_hash;
    for (const Snapshot& s : snapshots(sim, sc.snapshot_times)) {
        snap_table.rows.push_back({s.t, s.pursuer.x, s.pursuer.y, s.pursuer.heading, s.evader.x, s.evader.y,
                                   s.evader.heading, s.reduced.x, s.reduced.y, s.reduced.theta});
    }
    const std::string snap_name = sc.name + "_snapshots" + file_extension(cfg.format);
    write_table(cfg.output_dir / snap_name, snap_table, cfg.format);
    manifest.add(snap_name, snap_table, {{"table", "snapshots"}});

    const CylindricalState start = to_cylindrical(sim.reduced_path.front());
    const CylindricalState end = to_cylindrical(sim.reduced_path.back());
    const json summary{{"config_hash", hash},
                       {"scenario", sc.name},
                       {"scenario_hash", sc_hash},
                       {"escape_time", sim.escape_time},
                       {"escaped", sim.escaped},
                       {"replay_deviation", sim.replay_deviation},
                       {"families", families_json(traj)},
                       {"start", {{"r", start.r},
                                  {"phi_degrees", rad2deg(start.phi)},
                                  {"theta_degrees", rad2deg(start.theta)},
                                  {"class", std::string(to_string(classify(start, sc.params)))}}},
                       {"end", {{"r", end.r},
                                {"phi_degrees", rad2deg(end.phi)},
                                {"theta_degrees", rad2deg(end.theta)},
                                {"class", std::string(to_string(classify(end, sc.params)))}}}};
    const std::string summary_name = sc.name + "_summary.json";
    write_text_file(cfg.output_dir / summary_name, summary.dump(1) + "\n");
    manifest.add_raw(summary_name, {{"table", "summary"}});
    manifest.write({{"scenario", sc_json}, {"scenario_hash", sc_hash}});

    log << "simulate: " << sc.name << " escape_time=" << format_number(sim.escape_time)
        << " escaped=" << (sim.escaped ? "true" : "false") << "\n";
    return kExitOk;
}

int cmd_validate(const Config& cfg, const ValidateOptions& opts, std::ostream& log) {
    const ValidationReport report = run_validation(cfg, opts);
    for (const ValidationCheck& c : report.checks) {
        log << (c.passed ? "PASS " : "FAIL ") << c.name << " max_error=" << format_number(c.max_error)
            << " tolerance=" << format_number(c.tolerance);
        if (!c.detail.empty()) log << " (" << c.detail << ")";
        log << "\n";
    }
    write_text_file(cfg.output_dir / "validation_report.json", report.to_json().dump(1) + "\n");
    return report.passed() ? kExitOk : kExitValidationFailure;
}

}  // namespace evasion::cli
