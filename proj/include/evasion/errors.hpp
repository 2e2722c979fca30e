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

#include <stdexcept>

namespace evasion {

/// Argument outside the closed-form domain of a formula (e.g. a BUP angle
/// for which the boundary radius would be negative).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// State at which a representation is singular (the cone apex r = 0).
class DegenerateStateError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Caller broke an operation's precondition (retro-time before an anchor,
/// state not on the queried boundary, malformed parameters).
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace evasion
