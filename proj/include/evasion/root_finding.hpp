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

// Sampled sign-change scan followed by bisection. Shared by the switch and
// boundary-event detectors and by the scenario parameter search.

#include <cmath>
#include <optional>

namespace evasion {

struct Bracket {
    double lo;
    double hi;
};

/// First sample interval on [start, end] (step `step`) whose right end
/// violates `ok(f(tau))`. Returns std::nullopt if every sample passes.
template <class F, class Ok>
std::optional<Bracket> scan_for_violation(F&& f, Ok&& ok, double start, double end, double step) {
    double prev = start;
    for (long k = 1;; ++k) {
        double tau = start + static_cast<double>(k) * step;
        if (tau > end) tau = end;
        if (tau <= prev) return std::nullopt;
        if (!ok(f(tau))) return Bracket{prev, tau};
        if (tau >= end) return std::nullopt;
        prev = tau;
    }
}

/// Bisection on a bracket where `ok(f(lo))` holds and `ok(f(hi))` does not.
/// Stops once |f(mid)| < f_tol or the bracket is narrower than x_tol.
/// Returns the point on the violating side when stopping on width.
template <class F, class Ok>
double bisect(F&& f, Ok&& ok, Bracket b, double f_tol, double x_tol) {
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (b.lo + b.hi);
        if (mid <= b.lo || mid >= b.hi) break;
        const double v = f(mid);
        if (std::abs(v) < f_tol) return mid;
        if (ok(v)) {
            b.lo = mid;
        } else {
            b.hi = mid;
        }
        if (b.hi - b.lo < x_tol) break;
    }
    return 0.5 * (b.lo + b.hi);
}

}  // namespace evasion
