// Copyright 2026 The lnn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LNN_BOUNDS_HPP
#define LNN_BOUNDS_HPP

#include <algorithm>
#include <string>

#include "lnn/errors.hpp"

namespace lnn {

/// Slack below which a lower/upper crossing counts as rounding noise rather
/// than a contradiction.
inline constexpr double kContradictionEps = 1e-9;

/// Interval of admissible truth values in [0, 1]. A crossed interval
/// (lower > upper) is representable on purpose: it is the encoding of a
/// contradiction, not a construction error.
struct TruthBounds {
    double lower = 0.0;
    double upper = 1.0;

    bool crossed(double eps = kContradictionEps) const {
        return lower > upper + eps;
    }

    friend bool operator==(const TruthBounds &, const TruthBounds &) = default;
};

inline TruthBounds bounds_true() {
    return {1.0, 1.0};
}
inline TruthBounds bounds_false() {
    return {0.0, 0.0};
}
inline TruthBounds bounds_unknown() {
    return {0.0, 1.0};
}

/// Intersection of two intervals. May produce a crossed interval; callers
/// decide whether that is reportable.
inline TruthBounds meet(TruthBounds a, TruthBounds b) {
    return {std::max(a.lower, b.lower), std::min(a.upper, b.upper)};
}

enum class PrimaryState { True, False, Unknown, Contradiction };

inline const char *to_string(PrimaryState s) {
    switch (s) {
        case PrimaryState::True:
            return "TRUE";
        case PrimaryState::False:
            return "FALSE";
        case PrimaryState::Unknown:
            return "UNKNOWN";
        case PrimaryState::Contradiction:
            return "CONTRADICTION";
    }
    throw InternalError("unhandled primary state");
}

inline void check_alpha(double alpha) {
    if (!(alpha > 0.5) || !(alpha <= 1.0)) {
        throw ConfigError("threshold of truth must satisfy 1/2 < alpha <= 1, got " + std::to_string(alpha));
    }
}

/// Four-way read-out of a bound interval under the truth threshold alpha.
/// Contradiction wins over every other state.
inline PrimaryState classify_state(TruthBounds b, double alpha, double eps = kContradictionEps) {
    check_alpha(alpha);
    if (b.crossed(eps)) {
        return PrimaryState::Contradiction;
    }
    if (b.lower >= alpha) {
        return PrimaryState::True;
    }
    if (b.upper <= 1.0 - alpha) {
        return PrimaryState::False;
    }
    return PrimaryState::Unknown;
}

}  // namespace lnn

#endif
