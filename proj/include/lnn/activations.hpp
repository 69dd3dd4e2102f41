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

// Interval activations of the weighted Lukasiewicz operators, and their
// inverses for the downward pass. Everything is written against a generic
// scalar S so the same formulas run on plain doubles and on tape-recorded
// values; S only needs +,-,*,/ against itself and double, plus luk_min,
// luk_max, and scalar_value overloads.
//
// The conjunction is primitive:
//
//   and(x_1..x_n) = clamp01(bias - sum_i w_i * (1 - x_i))
//
// applied per bound track. Disjunction and implication are its De Morgan
// images, written out directly so that repeated passes reproduce their
// inputs bit for bit at a fixpoint. Downward rules solve the conjunction
// for one operand with every other operand at its loosest admissible value,
// and only fire when the node bound carries information (lower > 0 for the
// lower track, upper < 1 for the upper track); a zero-weight operand is
// unconstrained.

#ifndef LNN_ACTIVATIONS_HPP
#define LNN_ACTIVATIONS_HPP

#include <algorithm>
#include <vector>

#include "lnn/errors.hpp"

namespace lnn {

inline double luk_min(double a, double b) {
    return std::min(a, b);
}

inline double luk_max(double a, double b) {
    return std::max(a, b);
}

inline double scalar_value(double x) {
    return x;
}

template <class S>
S clamp01(const S &x) {
    return luk_min(1.0, luk_max(0.0, x));
}

/// A truth interval over the generic scalar.
template <class S>
struct BoundPair {
    S lo;
    S up;
};

template <class S>
BoundPair<S> upward_and(const std::vector<BoundPair<S>> &in, const std::vector<S> &w, const S &bias) {
    S lo = bias;
    S up = bias;
    for (std::size_t i = 0; i < in.size(); ++i) {
        lo = lo - w[i] * (1.0 - in[i].lo);
        up = up - w[i] * (1.0 - in[i].up);
    }
    return {clamp01(lo), clamp01(up)};
}

template <class S>
BoundPair<S> upward_or(const std::vector<BoundPair<S>> &in, const std::vector<S> &w, const S &bias) {
    S lo = 1.0 - bias;
    S up = 1.0 - bias;
    for (std::size_t i = 0; i < in.size(); ++i) {
        lo = lo + w[i] * in[i].lo;
        up = up + w[i] * in[i].up;
    }
    return {clamp01(lo), clamp01(up)};
}

/// lhs -> rhs is the disjunction of (not lhs) and rhs; the complement just
/// swaps which lhs track feeds which output track.
template <class S>
BoundPair<S> upward_implies(const BoundPair<S> &lhs, const BoundPair<S> &rhs, const std::vector<S> &w,
                            const S &bias) {
    S lo = 1.0 - bias + w[0] * (1.0 - lhs.up) + w[1] * rhs.lo;
    S up = 1.0 - bias + w[0] * (1.0 - lhs.lo) + w[1] * rhs.up;
    return {clamp01(lo), clamp01(up)};
}

template <class S>
BoundPair<S> upward_not(const BoundPair<S> &in) {
    return {1.0 - in.up, 1.0 - in.lo};
}

template <class S>
BoundPair<S> upward_forall(const std::vector<BoundPair<S>> &in) {
    if (in.empty()) {
        throw InternalError("quantifier node without children");
    }
    BoundPair<S> out = in.front();
    for (std::size_t i = 1; i < in.size(); ++i) {
        out.lo = luk_min(out.lo, in[i].lo);
        out.up = luk_min(out.up, in[i].up);
    }
    return out;
}

template <class S>
BoundPair<S> upward_exists(const std::vector<BoundPair<S>> &in) {
    if (in.empty()) {
        throw InternalError("quantifier node without children");
    }
    BoundPair<S> out = in.front();
    for (std::size_t i = 1; i < in.size(); ++i) {
        out.lo = luk_max(out.lo, in[i].lo);
        out.up = luk_max(out.up, in[i].up);
    }
    return out;
}

template <class S>
void downward_and(const BoundPair<S> &node, std::vector<BoundPair<S>> &ch, const std::vector<S> &w,
                  const S &bias) {
    const double node_lo = scalar_value(node.lo);
    const double node_up = scalar_value(node.up);
    for (std::size_t i = 0; i < ch.size(); ++i) {
        if (scalar_value(w[i]) <= 0.0) {
            continue;
        }
        if (node_lo > 0.0) {
            S slack = bias - node.lo;
            for (std::size_t j = 0; j < ch.size(); ++j) {
                if (j != i) {
                    slack = slack - w[j] * (1.0 - ch[j].up);
                }
            }
            ch[i].lo = luk_max(ch[i].lo, clamp01(1.0 - slack / w[i]));
        }
        if (node_up < 1.0) {
            S slack = bias - node.up;
            for (std::size_t j = 0; j < ch.size(); ++j) {
                if (j != i) {
                    slack = slack - w[j] * (1.0 - ch[j].lo);
                }
            }
            ch[i].up = luk_min(ch[i].up, clamp01(1.0 - slack / w[i]));
        }
    }
}

template <class S>
void downward_or(const BoundPair<S> &node, std::vector<BoundPair<S>> &ch, const std::vector<S> &w,
                 const S &bias) {
    const double node_lo = scalar_value(node.lo);
    const double node_up = scalar_value(node.up);
    for (std::size_t i = 0; i < ch.size(); ++i) {
        if (scalar_value(w[i]) <= 0.0) {
            continue;
        }
        if (node_lo > 0.0) {
            S rest = bias - 1.0 + node.lo;
            for (std::size_t j = 0; j < ch.size(); ++j) {
                if (j != i) {
                    rest = rest - w[j] * ch[j].up;
                }
            }
            ch[i].lo = luk_max(ch[i].lo, clamp01(rest / w[i]));
        }
        if (node_up < 1.0) {
            S rest = bias - 1.0 + node.up;
            for (std::size_t j = 0; j < ch.size(); ++j) {
                if (j != i) {
                    rest = rest - w[j] * ch[j].lo;
                }
            }
            ch[i].up = luk_min(ch[i].up, clamp01(rest / w[i]));
        }
    }
}

template <class S>
void downward_implies(const BoundPair<S> &node, BoundPair<S> &lhs, BoundPair<S> &rhs,
                      const std::vector<S> &w, const S &bias) {
    const double node_lo = scalar_value(node.lo);
    const double node_up = scalar_value(node.up);
    if (scalar_value(w[1]) > 0.0) {
        if (node_lo > 0.0) {
            rhs.lo = luk_max(rhs.lo, clamp01((bias - 1.0 + node.lo - w[0] * (1.0 - lhs.lo)) / w[1]));
        }
        if (node_up < 1.0) {
            rhs.up = luk_min(rhs.up, clamp01((bias - 1.0 + node.up - w[0] * (1.0 - lhs.up)) / w[1]));
        }
    }
    if (scalar_value(w[0]) > 0.0) {
        if (node_lo > 0.0) {
            lhs.up = luk_min(lhs.up, clamp01(1.0 - (bias - 1.0 + node.lo - w[1] * rhs.up) / w[0]));
        }
        if (node_up < 1.0) {
            lhs.lo = luk_max(lhs.lo, clamp01(1.0 - (bias - 1.0 + node.up - w[1] * rhs.lo) / w[0]));
        }
    }
}

template <class S>
void downward_not(const BoundPair<S> &node, BoundPair<S> &ch) {
    ch.lo = luk_max(ch.lo, 1.0 - node.up);
    ch.up = luk_min(ch.up, 1.0 - node.lo);
}

/// A universal's lower bound holds at every instance. Its upper bound says
/// only that some instance is that low, without naming one, so nothing
/// flows down on the upper track.
template <class S>
void downward_forall(const BoundPair<S> &node, std::vector<BoundPair<S>> &ch) {
    for (auto &c : ch) {
        c.lo = luk_max(c.lo, node.lo);
    }
}

/// Dual of the universal: only the upper bound constrains every instance.
/// The lower bound promises a witness without naming one.
template <class S>
void downward_exists(const BoundPair<S> &node, std::vector<BoundPair<S>> &ch) {
    for (auto &c : ch) {
        c.up = luk_min(c.up, node.up);
    }
}

}  // namespace lnn

#endif
