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

#include "evasion/cli/validation.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "evasion/cli/table_io.hpp"

namespace evasion::cli {

using nlohmann::json;

namespace {

constexpr double kOracleTolerance = 1e-6;
constexpr double kHamiltonianTolerance = 1e-8;
constexpr double kUnitNormTolerance = 1e-12;
constexpr double kAdjointTolerance = 1e-6;
constexpr double kContinuityTolerance = 1e-9;
constexpr double kFiniteDifferenceStep = 1e-5;

ValidationCheck make_check(std::string name, double max_error, double tolerance, std::string detail = {}) {
    return {std::move(name), max_error <= tolerance, max_error, tolerance, std::move(detail)};
}

Costate adjoint_rate(const ReducedState& s, const Costate& l, int nu_p) {
    return {-nu_p * l.lambda_y, nu_p * l.lambda_x,
            l.lambda_x * std::cos(s.theta) - l.lambda_y * std::sin(s.theta)};
}

}  // namespace

bool ValidationReport::passed() const noexcept {
    return std::all_of(checks.begin(), checks.end(), [](const ValidationCheck& c) { return c.passed; });
}

json ValidationReport::to_json() const {
    json arr = json::array();
    for (const ValidationCheck& c : checks) {
        arr.push_back({{"name", c.name},
                       {"passed", c.passed},
                       {"max_error", c.max_error},
                       {"tolerance", c.tolerance},
                       {"detail", c.detail}});
    }
    return {{"config_hash", config_hash}, {"passed", passed()}, {"checks", arr}};
}

PontryaginResiduals pontryagin_residuals(const Trajectory& traj, const GameParams& params, int samples) {
    PontryaginResiduals out;
    const bool on_bup = traj.seed.kind == SeedKind::BoundaryOfUsablePart;
    const double mu = on_bup ? 1.0 : transversality_multiplier(traj.seed, params);
    const double h = kFiniteDifferenceStep;
    for (const TrajectorySegment& seg : traj.segments) {
        const double a = seg.anchor_tau;
        const double b = seg.tau_end;
        for (int k = 0; k <= samples; ++k) {
            const double tau = a + (b - a) * static_cast<double>(k) / samples;
            const ReducedState s = seg.state_at(tau);
            const Costate l = seg.costate_at(tau);
            const double lf = adjoint_product(s, l, seg.controls());
            const double h_value = on_bup ? lf : mu * lf + 1.0;
            out.hamiltonian = std::max(out.hamiltonian, std::abs(h_value));
            out.unit_norm = std::max(out.unit_norm, std::abs(std::hypot(l.lambda_x, l.lambda_y) - 1.0));
            if (tau - h < a || tau + h > b) continue;
            const Costate lp = seg.costate_at(tau + h);
            const Costate lm = seg.costate_at(tau - h);
            const Costate rate = adjoint_rate(s, l, seg.nu_p);
            out.adjoint = std::max({out.adjoint, std::abs((lp.lambda_x - lm.lambda_x) / (2 * h) - rate.lambda_x),
                                    std::abs((lp.lambda_y - lm.lambda_y) / (2 * h) - rate.lambda_y),
                                    std::abs((lp.lambda_theta - lm.lambda_theta) / (2 * h) - rate.lambda_theta)});
        }
    }
    return out;
}

std::vector<Trajectory> validation_trajectories(const Config& cfg) {
    const GameParams params = cfg.game_params();
    std::vector<Trajectory> out;
    for (const Seed& seed : sample_seeds(params, cfg.n_theta, cfg.n_r)) out.push_back(synthesize(seed, params));

    const double theta_us = params.phi_d + kHalfPi;
    const double r_max = rbup_radius(theta_us, params);
    for (int j = 0; j < cfg.n_r; ++j) {
        const Seed right{(j + 0.5) / cfg.n_r * r_max, theta_us, BoundarySide::Right, SeedKind::UsablePart};
        for (const Seed& seed : {right, mirror(right)}) {
            out.push_back(synthesize(seed, params));
            try {
                for (Trajectory& t : tributary_branches(seed, cfg.tau_us, params)) out.push_back(std::move(t));
            } catch (const std::exception&) {
                // Universal-surface arcs that leave the cone before tau_us
                // have no tributary at that junction time.
            }
        }
    }
    for (int i = 0; i < cfg.n_theta; ++i) {
        const double theta = (i + 0.5) / cfg.n_theta * (2.0 * params.phi_d);
        for (BoundarySide side : {BoundarySide::Right, BoundarySide::Left}) {
            const double th_side = side == BoundarySide::Right ? theta : kTwoPi - theta;
            out.push_back(synthesize_barrier(th_side, params, side).trajectory);
        }
    }
    return out;
}

ValidationCheck check_provenance(const std::filesystem::path& dir) {
    ValidationCheck check{"provenance", true, 0.0, 0.0, {}};
    std::set<std::string> hashes;
    std::ostringstream problems;
    std::size_t files = 0;
    if (!std::filesystem::is_directory(dir)) {
        check.passed = false;
        check.detail = "'" + dir.string() + "' is not a directory";
        return check;
    }
    std::vector<std::filesystem::path> manifests;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        const auto name = entry.path().filename().string();
        if (name.size() > 14 && name.substr(name.size() - 14) == "_manifest.json") manifests.push_back(entry.path());
    }
    std::sort(manifests.begin(), manifests.end());
    for (const auto& m : manifests) {
        try {
            const json j = read_json_file(m);
            hashes.insert(j.at("config_hash").get<std::string>());
            for (const json& f : j.at("files")) {
                const auto path = dir / f.at("file").get<std::string>();
                ++files;
                if (!std::filesystem::exists(path)) {
                    problems << "missing " << path.filename().string() << "; ";
                    continue;
                }
                if (path.extension() == ".json" && path.filename().string().find("_summary") != std::string::npos) {
                    hashes.insert(read_json_file(path).at("config_hash").get<std::string>());
                } else {
                    const Table t = read_table(path);
                    const auto it = t.metadata.find("config_hash");
                    if (it == t.metadata.end()) {
                        problems << path.filename().string() << " has no config_hash; ";
                    } else {
                        hashes.insert(it->second);
                    }
                }
            }
        } catch (const std::exception& e) {
            problems << m.filename().string() << ": " << e.what() << "; ";
        }
    }
    if (manifests.empty()) problems << "no manifests found; ";
    if (hashes.size() > 1) problems << hashes.size() << " distinct config hashes; ";
    check.detail = problems.str();
    check.passed = check.detail.empty();
    if (!check.passed) check.detail.resize(check.detail.size() - 2);
    check.max_error = static_cast<double>(hashes.size() > 1 ? hashes.size() - 1 : 0);
    if (check.passed) check.detail = std::to_string(files) + " files share hash " + *hashes.begin();
    return check;
}

ValidationReport run_validation(const Config& cfg, const ValidateOptions& opts) {
    cfg.validate();
    const GameParams params = cfg.game_params();
    ValidationReport report;
    report.config_hash = config_hash(cfg);

    std::vector<Trajectory> trajectories;
    try {
        trajectories = validation_trajectories(cfg);
    } catch (const std::exception& e) {
        report.checks.push_back({"synthesis", false, 0.0, 0.0, e.what()});
        return report;
    }
    report.checks.push_back(
        make_check("synthesis", 0.0, 0.0, std::to_string(trajectories.size()) + " trajectories"));

    double oracle_state = 0.0;
    double oracle_costate = 0.0;
    double hamiltonian = 0.0;
    double unit_norm = 0.0;
    double adjoint = 0.0;
    double continuity = 0.0;
    std::size_t segments = 0;
    for (const Trajectory& t : trajectories) {
        for (const TrajectorySegment& seg : t.segments) {
            const SegmentDeviation d =
                cross_validate_segment(seg, seg.tau_end - seg.anchor_tau, cfg.dt, opts.inject_fault);
            oracle_state = std::max(oracle_state, d.state);
            oracle_costate = std::max(oracle_costate, d.costate);
            ++segments;
        }
        const PontryaginResiduals r = pontryagin_residuals(t, params);
        hamiltonian = std::max(hamiltonian, r.hamiltonian);
        unit_norm = std::max(unit_norm, r.unit_norm);
        adjoint = std::max(adjoint, r.adjoint);
        const JunctionGap g = junction_gap(t);
        continuity = std::max({continuity, g.state, g.costate});
    }
    const std::string seg_note = std::to_string(segments) + " segments";
    report.checks.push_back(make_check("oracle_state", oracle_state, kOracleTolerance, seg_note));
    report.checks.push_back(make_check("oracle_costate", oracle_costate, kOracleTolerance, seg_note));
    report.checks.push_back(make_check("hamiltonian", hamiltonian, kHamiltonianTolerance));
    report.checks.push_back(make_check("costate_unit_norm", unit_norm, kUnitNormTolerance));
    report.checks.push_back(make_check("adjoint_finite_difference", adjoint, kAdjointTolerance));
    report.checks.push_back(make_check("junction_continuity", continuity, kContinuityTolerance));

    // Emanation on a 0.1 degree grid over the open RBUP interval.
    const double span_deg = rad2deg(kPi + 2.0 * params.phi_d);
    const double inside_deg = rad2deg(2.0 * params.phi_d);
    std::size_t mismatches = 0;
    std::size_t samples = 0;
    for (long k = 1; static_cast<double>(k) / 10.0 < span_deg - 1e-9; ++k) {
        const double deg = static_cast<double>(k) / 10.0;
        const bool expect_inside = deg < inside_deg - 1e-9;
        const bool inside = barrier_emanation(deg2rad(deg), params) == Emanation::Inside;
        if (inside != expect_inside) ++mismatches;
        ++samples;
    }
    report.checks.push_back(make_check("barrier_emanation", static_cast<double>(mismatches), 0.0,
                                       std::to_string(samples) + " grid angles"));

    if (opts.check_dir) report.checks.push_back(check_provenance(*opts.check_dir));
    return report;
}

}  // namespace evasion::cli
