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

#ifndef LNN_LEARNER_HPP
#define LNN_LEARNER_HPP

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "lnn/errors.hpp"
#include "lnn/graph.hpp"
#include "lnn/inference.hpp"
#include "lnn/tape.hpp"

namespace lnn {

struct LearnConfig {
    int epochs = 20;
    double learning_rate = 0.05;
    double weight_floor = 0.0;
    double fd_epsilon = 1e-5;  // finite-difference step for gradient checks

    void validate() const {
        if (epochs < 0) {
            throw ConfigError("epochs must be nonnegative, got " + std::to_string(epochs));
        }
        if (!(learning_rate >= 0.0)) {
            throw ConfigError("learning rate must be nonnegative, got " + std::to_string(learning_rate));
        }
        if (!(weight_floor >= 0.0)) {
            throw ConfigError("weight floor must be nonnegative, got " + std::to_string(weight_floor));
        }
        if (!(fd_epsilon > 0.0)) {
            throw ConfigError("fd_epsilon must be positive, got " + std::to_string(fd_epsilon));
        }
    }
};

struct LossReport {
    double total = 0.0;
    std::vector<std::pair<NodeId, double>> per_node;  // nonzero contributions only
};

/// Total crossing mass of the current bounds: sum over nodes of
/// max(0, lower - upper). Zero exactly when no interval is crossed.
inline LossReport contradiction_loss(const NeuronGraph &g) {
    LossReport r;
    for (const auto &n : g.nodes) {
        double term = std::max(0.0, n.bounds.lower - n.bounds.upper);
        if (term > 0.0) {
            r.per_node.emplace_back(n.id, term);
        }
        r.total += term;
    }
    return r;
}

/// Scalar context that records the whole inference schedule on a tape and
/// keeps the parameter leaves in creation order (node id ascending, weights
/// before bias), matching NeuronGraph::parameter_slots().
struct TapeCtx {
    using Scalar = TapeRef;
    Tape *tape = nullptr;
    std::vector<TapeRef> params;

    TapeRef constant(double v) {
        return tape->constant(v);
    }
    TapeRef parameter(double v) {
        params.push_back(tape->param(v));
        return params.back();
    }
};

struct GradientResult {
    double loss = 0.0;
    std::vector<double> gradient;  // aligned with NeuronGraph::parameter_slots()
};

/// Runs inference once on a tape, writes the resulting bounds into the
/// graph, and differentiates the contradiction loss with respect to every
/// weight and bias.
inline GradientResult loss_and_gradient(NeuronGraph &g, const InferenceConfig &cfg = {}) {
    Tape tape;
    TapeCtx ctx{&tape, {}};
    auto st = detail::run_sweeps(g, cfg, ctx);
    for (auto &n : g.nodes) {
        n.bounds = {tape.value(st.bounds[n.id].lo), tape.value(st.bounds[n.id].up)};
    }
    g.refresh_tables();
    TapeRef total = tape.constant(0.0);
    for (const auto &n : g.nodes) {
        total = total + luk_max(0.0, st.bounds[n.id].lo - st.bounds[n.id].up);
    }
    tape.backward(total);
    GradientResult out;
    out.loss = tape.value(total);
    out.gradient.reserve(ctx.params.size());
    for (TapeRef p : ctx.params) {
        out.gradient.push_back(tape.adjoint(p));
    }
    return out;
}

/// One projected subgradient step on every weight and bias:
/// w <- max(weight_floor, w - learning_rate * dLoss/dw).
/// Returns the loss measured before the step. A zero loss leaves every
/// parameter untouched, even if the projection would otherwise move one.
inline double gradient_step(NeuronGraph &g, const LearnConfig &lcfg, const InferenceConfig &icfg = {}) {
    lcfg.validate();
    auto gr = loss_and_gradient(g, icfg);
    if (gr.loss == 0.0) {
        return 0.0;
    }
    auto params = g.get_parameters();
    if (params.size() != gr.gradient.size()) {
        throw InternalError("parameter/gradient size mismatch");
    }
    for (std::size_t i = 0; i < params.size(); ++i) {
        params[i] = std::max(lcfg.weight_floor, params[i] - lcfg.learning_rate * gr.gradient[i]);
    }
    g.set_parameters(params);
    return gr.loss;
}

struct TrainReport {
    std::vector<double> losses;  // loss at the start of each epoch
    bool divergence_warning = false;
};

/// Repeated gradient steps. Five consecutive loss increases raise the
/// divergence flag (the run still completes; the step size is the usual
/// culprit).
inline TrainReport train(NeuronGraph &g, const LearnConfig &lcfg, const InferenceConfig &icfg = {}) {
    lcfg.validate();
    TrainReport report;
    int rising = 0;
    for (int epoch = 0; epoch < lcfg.epochs; ++epoch) {
        double loss = gradient_step(g, lcfg, icfg);
        if (!report.losses.empty() && loss > report.losses.back()) {
            if (++rising >= 5) {
                report.divergence_warning = true;
            }
        } else {
            rising = 0;
        }
        report.losses.push_back(loss);
    }
    return report;
}

}  // namespace lnn

#endif
