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

#ifndef LNN_INFERENCE_HPP
#define LNN_INFERENCE_HPP

#include <cmath>
#include <string>
#include <vector>

#include "lnn/activations.hpp"
#include "lnn/bounds.hpp"
#include "lnn/errors.hpp"
#include "lnn/graph.hpp"

namespace lnn {

struct InferenceConfig {
    double alpha = 0.75;
    int max_passes = 100;
    double tolerance = 1e-6;

    void validate() const {
        check_alpha(alpha);
        if (max_passes < 1) {
            throw ConfigError("max_passes must be at least 1, got " + std::to_string(max_passes));
        }
        if (!(tolerance > 0.0)) {
            throw ConfigError("tolerance must be positive, got " + std::to_string(tolerance));
        }
    }
};

struct RootState {
    std::string name;
    bool is_query = false;
    PrimaryState state = PrimaryState::Unknown;
    TruthBounds bounds;
};

struct InferenceReport {
    int passes_run = 0;
    bool converged = false;
    std::vector<NodeId> contradictions;  // every node whose bounds crossed
    std::vector<RootState> roots;        // axioms and queries, in graph order

    bool has_contradiction() const {
        return !contradictions.empty();
    }
};

/// Scalar context for a plain value run.
struct ValueCtx {
    using Scalar = double;
    double constant(double v) {
        return v;
    }
    double parameter(double v) {
        return v;
    }
};

namespace detail {

/// Runs upward/downward sweeps to a fixpoint or the pass limit. The
/// schedule is pure data flow over the context's scalar: the taped run
/// replays exactly what the value run computes. Node ids ascend from
/// children to parents, so one pass is an ascending upward sweep followed
/// by a descending downward sweep; bounds only ever tighten. A pass whose
/// largest bound move is within tolerance means a fixpoint.
template <class Ctx>
struct SweepState {
    using S = typename Ctx::Scalar;
    std::vector<BoundPair<S>> bounds;
    std::vector<std::vector<S>> weights;
    std::vector<S> biases;
    int passes_run = 0;
    bool converged = false;
};

template <class Ctx>
SweepState<Ctx> run_sweeps(const NeuronGraph &g, const InferenceConfig &cfg, Ctx &ctx) {
    using S = typename Ctx::Scalar;
    cfg.validate();
    SweepState<Ctx> st;
    st.bounds.reserve(g.nodes.size());
    st.weights.resize(g.nodes.size());
    st.biases.reserve(g.nodes.size());
    for (const auto &n : g.nodes) {
        st.bounds.push_back({ctx.constant(n.initial.lower), ctx.constant(n.initial.upper)});
        if (is_weighted(n.kind)) {
            for (double w : n.weights) {
                st.weights[n.id].push_back(ctx.parameter(w));
            }
            st.biases.push_back(ctx.parameter(n.bias));
        } else {
            st.biases.push_back(ctx.constant(1.0));
        }
    }

    auto track = [](double &delta, const BoundPair<S> &before, const BoundPair<S> &after) {
        delta = std::max(delta, std::fabs(scalar_value(after.lo) - scalar_value(before.lo)));
        delta = std::max(delta, std::fabs(scalar_value(after.up) - scalar_value(before.up)));
    };

    std::vector<BoundPair<S>> scratch;
    for (int pass = 1; pass <= cfg.max_passes; ++pass) {
        double delta = 0.0;
        for (const auto &n : g.nodes) {
            if (n.kind == NodeKind::Input) {
                continue;
            }
            scratch.clear();
            for (NodeId c : n.children) {
                scratch.push_back(st.bounds[c]);
            }
            BoundPair<S> act = st.bounds[n.id];
            switch (n.kind) {
                case NodeKind::Not:
                    act = upward_not(scratch.front());
                    break;
                case NodeKind::And:
                    act = upward_and(scratch, st.weights[n.id], st.biases[n.id]);
                    break;
                case NodeKind::Or:
                    act = upward_or(scratch, st.weights[n.id], st.biases[n.id]);
                    break;
                case NodeKind::Implies:
                    act = upward_implies(scratch[0], scratch[1], st.weights[n.id], st.biases[n.id]);
                    break;
                case NodeKind::ForAll:
                    act = upward_forall(scratch);
                    break;
                case NodeKind::Exists:
                    act = upward_exists(scratch);
                    break;
                case NodeKind::Input:
                    break;
            }
            BoundPair<S> before = st.bounds[n.id];
            st.bounds[n.id] = {luk_max(before.lo, act.lo), luk_min(before.up, act.up)};
            track(delta, before, st.bounds[n.id]);
        }
        for (std::size_t k = g.nodes.size(); k-- > 0;) {
            const auto &n = g.nodes[k];
            if (n.kind == NodeKind::Input) {
                continue;
            }
            scratch.clear();
            for (NodeId c : n.children) {
                scratch.push_back(st.bounds[c]);
            }
            switch (n.kind) {
                case NodeKind::Not:
                    downward_not(st.bounds[n.id], scratch.front());
                    break;
                case NodeKind::And:
                    downward_and(st.bounds[n.id], scratch, st.weights[n.id], st.biases[n.id]);
                    break;
                case NodeKind::Or:
                    downward_or(st.bounds[n.id], scratch, st.weights[n.id], st.biases[n.id]);
                    break;
                case NodeKind::Implies:
                    downward_implies(st.bounds[n.id], scratch[0], scratch[1], st.weights[n.id],
                                     st.biases[n.id]);
                    break;
                case NodeKind::ForAll:
                    downward_forall(st.bounds[n.id], scratch);
                    break;
                case NodeKind::Exists:
                    downward_exists(st.bounds[n.id], scratch);
                    break;
                case NodeKind::Input:
                    break;
            }
            for (std::size_t i = 0; i < n.children.size(); ++i) {
                NodeId c = n.children[i];
                BoundPair<S> before = st.bounds[c];
                // Results only tighten; a repeated child slot sees its own
                // earlier update through the meet.
                st.bounds[c] = {luk_max(before.lo, scratch[i].lo), luk_min(before.up, scratch[i].up)};
                track(delta, before, st.bounds[c]);
            }
        }
        st.passes_run = pass;
        if (delta <= cfg.tolerance) {
            st.converged = true;
            break;
        }
    }
    return st;
}

}  // namespace detail

/// Tightens every node's bounds from the pinned initial state, writes the
/// result into the graph (nodes and grounding tables), and reports the
/// outcome per root. Crossed bounds anywhere are reported, never repaired.
inline InferenceReport infer(NeuronGraph &g, const InferenceConfig &cfg = {}) {
    ValueCtx ctx;
    auto st = detail::run_sweeps(g, cfg, ctx);
    for (auto &n : g.nodes) {
        n.bounds = {st.bounds[n.id].lo, st.bounds[n.id].up};
    }
    g.refresh_tables();
    InferenceReport report;
    report.passes_run = st.passes_run;
    report.converged = st.converged;
    for (const auto &n : g.nodes) {
        if (n.bounds.crossed()) {
            report.contradictions.push_back(n.id);
        }
    }
    for (const auto &r : g.roots) {
        const auto &b = g.nodes[r.node].bounds;
        report.roots.push_back({r.name, r.is_query, classify_state(b, cfg.alpha), b});
    }
    return report;
}

}  // namespace lnn

#endif
