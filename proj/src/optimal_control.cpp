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

#include "evasion/optimal_control.hpp"

#include <cmath>
#include <string>

#include "evasion/errors.hpp"
#include "evasion/root_finding.hpp"

namespace evasion {

namespace {

int sign_of(double v) noexcept { return (v > 0.0) - (v < 0.0); }

void require_unit(int nu, const char* what) {
    if (nu != 1 && nu != -1) throw PreconditionError(std::string(what) + " must be -1 or +1");
}

void require_after(double tau, double anchor, const char* what) {
    if (tau < anchor) {
        throw PreconditionError(std::string(what) + ": tau=" + std::to_string(tau) +
                                " precedes the anchor " + std::to_string(anchor));
    }
}

}  // namespace

double adjoint_product(const ReducedState& s, const Costate& lam, Controls u) noexcept {
    const ReducedRate f = reduced_dynamics(s, u);
    return lam.lambda_x * f.x + lam.lambda_y * f.y + lam.lambda_theta * f.theta;
}

double hamiltonian(const ReducedState& s, const Costate& lam, Controls u) noexcept {
    return adjoint_product(s, lam, u) + 1.0;
}

double switch_function(const ReducedState& s, const Costate& lam) noexcept {
    return s.y * lam.lambda_x - s.x * lam.lambda_y + lam.lambda_theta;
}

BangControl pursuer_control(const ReducedState& s, const Costate& lam) noexcept {
    const int nu = sign_of(switch_function(s, lam));
    return {nu, nu == 0};
}

BangControl evader_control(const Costate& lam) noexcept {
    const int nu = sign_of(lam.lambda_theta);
    return {nu, nu == 0};
}

int terminal_evader_control(double theta_d, const GameParams& params) noexcept {
    if (std::abs(theta_d - (params.phi_d + kHalfPi)) <= params.tol_event) return 0;
    return sign_of(-std::cos(params.phi_d - theta_d));
}

Costate terminal_costate(const GameParams& params) noexcept {
    return {-std::cos(params.phi_d), std::sin(params.phi_d), 0.0};
}

Costate costate_primary(double tau, double theta_d, int nu_p, int nu_e, const GameParams& params) {
    require_after(tau, 0.0, "costate_primary");
    require_unit(nu_e, "costate_primary nu_e");
    const double phi_d = params.phi_d;
    const double lead = phi_d - theta_d;
    return {-std::cos(phi_d - nu_p * tau), std::sin(phi_d - nu_p * tau),
            nu_e * (-std::sin(lead) + std::sin(lead - nu_e * tau))};
}

Costate costate_us(double tau, int nu_p, const GameParams& params) {
    require_after(tau, 0.0, "costate_us");
    return {-std::cos(params.phi_d - nu_p * tau), std::sin(params.phi_d - nu_p * tau), 0.0};
}

Costate costate_tributary(double tau, double tau_us, double theta_d, int nu_p, int nu_e,
                          const GameParams& params) {
    require_after(tau, tau_us, "costate_tributary");
    require_unit(nu_e, "costate_tributary nu_e");
    const double phi_d = params.phi_d;
    const double lead = phi_d - theta_d;
    return {-std::cos(phi_d - nu_p * tau), std::sin(phi_d - nu_p * tau),
            nu_e * (-std::sin(lead) + std::sin(lead - nu_e * (tau - tau_us)))};
}

Costate costate_post_switch(double tau, double tau_s, int nu_p0, int nu_p, double theta_d, int nu_e,
                            const GameParams& params, double tau_us) {
    require_after(tau, tau_s, "costate_post_switch");
    const double phi_d = params.phi_d;
    const double angle = phi_d - nu_p0 * tau_s - nu_p * (tau - tau_s);
    const double lead = phi_d - theta_d;
    const double lambda_theta =
        nu_e == 0 ? 0.0 : nu_e * (-std::sin(lead) + std::sin(lead - nu_e * (tau - tau_us)));
    return {-std::cos(angle), std::sin(angle), lambda_theta};
}

double transversality_multiplier(const Seed& seed, const GameParams& params) {
    const double gap = bup_radius_unchecked(seed.theta_d, seed.side, params) - seed.r;
    if (!(gap > params.tol_event)) {
        throw DomainError("no finite transversality multiplier on or beyond the BUP");
    }
    return 1.0 / gap;
}

std::optional<SwitchRecord> find_switch_time(const SegmentEvaluator& seg, const GameParams& params) {
    const auto s_of = [&](double tau) {
        const PhasePoint p = seg.at(tau);
        return switch_function(p.state, p.costate);
    };
    const auto consistent = [&](double s) { return s * seg.nu_p >= 0.0; };
    const auto bracket = scan_for_violation(s_of, consistent, seg.tau_start, seg.tau_end, params.scan_step);
    if (!bracket) return std::nullopt;
    // Bisect to machine resolution rather than stopping at |S| < tol_root:
    // the Hamiltonian of the continuation jumps by 2 S(tau_s).
    const double tau_s = bisect(s_of, consistent, *bracket, 0.0, 1e-15);
    const PhasePoint p = seg.at(tau_s);
    return SwitchRecord{tau_s, seg.nu_p, -seg.nu_p, to_cylindrical(p.state), p.costate};
}

std::optional<double> find_evader_switch_time(const SegmentEvaluator& seg, int nu_e, const GameParams& params) {
    if (nu_e == 0) return std::nullopt;
    const auto lt = [&](double tau) { return seg.at(tau).costate.lambda_theta; };
    const auto consistent = [&](double v) { return v * nu_e >= 0.0; };
    const auto bracket = scan_for_violation(lt, consistent, seg.tau_start, seg.tau_end, params.scan_step);
    if (!bracket) return std::nullopt;
    return bisect(lt, consistent, *bracket, 0.0, 1e-15);
}

}  // namespace evasion
