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

#ifndef LNN_GRAPH_HPP
#define LNN_GRAPH_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "lnn/bounds.hpp"
#include "lnn/errors.hpp"
#include "lnn/knowledge_base.hpp"

namespace lnn {

using NodeId = std::size_t;

enum class NodeKind { Input, Not, And, Or, Implies, ForAll, Exists };

inline const char *to_string(NodeKind k) {
    switch (k) {
        case NodeKind::Input:
            return "input";
        case NodeKind::Not:
            return "not";
        case NodeKind::And:
            return "and";
        case NodeKind::Or:
            return "or";
        case NodeKind::Implies:
            return "implies";
        case NodeKind::ForAll:
            return "forall";
        case NodeKind::Exists:
            return "exists";
    }
    throw InternalError("unhandled node kind");
}

inline bool is_weighted(NodeKind k) {
    return k == NodeKind::And || k == NodeKind::Or || k == NodeKind::Implies;
}

/// One neuron. Input nodes stand for grounded atoms and carry their
/// identity; every other node computes its kind's activation over its
/// children. `initial` is the pinned starting interval, `bounds` the
/// current one.
struct NeuronNode {
    NodeId id = 0;
    NodeKind kind = NodeKind::Input;
    std::vector<NodeId> children;
    std::vector<double> weights;  // weighted kinds only, one per child
    double bias = 1.0;
    TruthBounds initial = bounds_unknown();
    TruthBounds bounds = bounds_unknown();
    std::string predicate;               // Input only
    std::vector<std::string> grounding;  // Input only
};

struct GroundingTable {
    std::map<std::vector<std::string>, TruthBounds> rows;
};

/// A named formula root: an axiom or a query, pinned per its world.
struct RootRef {
    std::string name;
    NodeId node = 0;
    bool is_query = false;
    World world = World::Axiom;
};

/// Which learnable parameter of a node a flat index refers to:
/// `index < weights.size()` is that weight, `index == weights.size()` is
/// the bias.
struct ParamSlot {
    NodeId node = 0;
    std::size_t index = 0;
};

class NeuronGraph {
   public:
    std::vector<NeuronNode> nodes;
    std::vector<RootRef> roots;
    std::vector<std::string> domain;
    std::map<std::string, GroundingTable> tables;

    NeuronNode &at(NodeId id) {
        if (id >= nodes.size()) {
            throw InternalError("node id out of range");
        }
        return nodes[id];
    }

    const NeuronNode &at(NodeId id) const {
        if (id >= nodes.size()) {
            throw InternalError("node id out of range");
        }
        return nodes[id];
    }

    void reset_bounds() {
        for (auto &n : nodes) {
            n.bounds = n.initial;
        }
    }

    /// Writes the current input-node bounds back into the per-predicate
    /// tables, so tightened atoms are readable per grounding.
    void refresh_tables() {
        for (const auto &n : nodes) {
            if (n.kind == NodeKind::Input) {
                tables[n.predicate].rows[n.grounding] = n.bounds;
            }
        }
    }

    std::vector<ParamSlot> parameter_slots() const {
        std::vector<ParamSlot> out;
        for (const auto &n : nodes) {
            if (!is_weighted(n.kind)) {
                continue;
            }
            for (std::size_t i = 0; i <= n.weights.size(); ++i) {
                out.push_back({n.id, i});
            }
        }
        return out;
    }

    std::vector<double> get_parameters() const {
        std::vector<double> out;
        for (const auto &n : nodes) {
            if (!is_weighted(n.kind)) {
                continue;
            }
            out.insert(out.end(), n.weights.begin(), n.weights.end());
            out.push_back(n.bias);
        }
        return out;
    }

    void set_parameters(const std::vector<double> &params) {
        std::size_t k = 0;
        for (auto &n : nodes) {
            if (!is_weighted(n.kind)) {
                continue;
            }
            for (auto &w : n.weights) {
                if (k >= params.size()) {
                    throw InternalError("parameter vector too short");
                }
                w = params[k++];
            }
            if (k >= params.size()) {
                throw InternalError("parameter vector too short");
            }
            n.bias = params[k++];
        }
        if (k != params.size()) {
            throw InternalError("parameter vector too long");
        }
    }
};

namespace detail {

class GraphCompiler {
   public:
    explicit GraphCompiler(const KnowledgeBase &kb) : kb_(kb) {}

    NeuronGraph run() {
        graph_.domain = kb_.constants();
        for (const auto &[key, bounds] : kb_.facts()) {
            std::vector<std::string> row;
            for (const auto &t : key.args) {
                if (t.kind != Term::Kind::Constant) {
                    throw CompileError("fact " + KnowledgeBase::fact_text(key) +
                                       " mentions a function term; rewrite the knowledge base first");
                }
                row.push_back(t.name);
            }
            graph_.tables[key.predicate].rows[std::move(row)] = bounds;
        }
        for (const auto &a : kb_.axioms()) {
            check_compilable(a.formula, "axiom '" + a.name + "'");
            NodeId id = build(a.formula, {});
            pin(id, bounds_true());
            graph_.roots.push_back({a.name, id, false, World::Axiom});
        }
        for (const auto &q : kb_.queries()) {
            check_compilable(q.formula, "query '" + q.name + "'");
            NodeId id = build(q.formula, {});
            if (q.world == World::Axiom) {
                pin(id, bounds_true());
            }
            graph_.roots.push_back({q.name, id, true, q.world});
        }
        graph_.reset_bounds();
        return std::move(graph_);
    }

   private:
    void check_compilable(const Formula &f, const std::string &context) const {
        if (!function_free(f)) {
            throw CompileError(context + " contains function terms; rewrite the knowledge base first");
        }
    }

    void pin(NodeId id, TruthBounds b) {
        auto &n = graph_.nodes[id];
        n.initial = meet(n.initial, b);
    }

    NodeId build(const Formula &f, std::map<std::string, std::string> env) {
        switch (f.kind) {
            case Formula::Kind::Atom:
                return build_atom(f, env);
            case Formula::Kind::Not: {
                NodeId child = build(f.children.front(), env);
                return make_node(NodeKind::Not, {child}, {}, 1.0);
            }
            case Formula::Kind::And:
            case Formula::Kind::Or:
            case Formula::Kind::Implies: {
                std::vector<NodeId> children;
                for (const auto &c : f.children) {
                    children.push_back(build(c, env));
                }
                std::vector<double> weights =
                    f.weights.empty() ? std::vector<double>(children.size(), 1.0) : f.weights;
                NodeKind kind = f.kind == Formula::Kind::And  ? NodeKind::And
                                : f.kind == Formula::Kind::Or ? NodeKind::Or
                                                              : NodeKind::Implies;
                return make_node(kind, std::move(children), std::move(weights), f.bias);
            }
            case Formula::Kind::Iff: {
                // p <-> q compiles as (p -> q) AND (q -> p).
                NodeId forward = build(implies(f.children[0], f.children[1]), env);
                NodeId backward = build(implies(f.children[1], f.children[0]), env);
                return make_node(NodeKind::And, {forward, backward}, {1.0, 1.0}, 1.0);
            }
            case Formula::Kind::ForAll:
            case Formula::Kind::Exists: {
                if (graph_.domain.empty()) {
                    throw CompileError("cannot ground a quantifier over an empty constant domain");
                }
                std::vector<NodeId> children;
                for (const auto &c : graph_.domain) {
                    auto instance_env = env;
                    instance_env[f.symbol] = c;
                    children.push_back(build(f.children.front(), instance_env));
                }
                NodeKind kind = f.kind == Formula::Kind::ForAll ? NodeKind::ForAll : NodeKind::Exists;
                return make_node(kind, std::move(children), {}, 1.0);
            }
        }
        throw InternalError("unhandled formula kind");
    }

    NodeId build_atom(const Formula &f, const std::map<std::string, std::string> &env) {
        std::vector<std::string> grounding;
        for (const auto &t : f.terms) {
            if (t.kind == Term::Kind::Constant) {
                grounding.push_back(t.name);
            } else if (t.kind == Term::Kind::Variable) {
                auto it = env.find(t.name);
                if (it == env.end()) {
                    throw InternalError("variable '" + t.name + "' has no grounding");
                }
                grounding.push_back(it->second);
            } else {
                throw CompileError("atom argument '" + to_text(t) + "' is a function term");
            }
        }
        auto key = std::pair(f.symbol, grounding);
        auto it = atoms_.find(key);
        if (it != atoms_.end()) {
            return it->second;
        }
        NodeId id = make_node(NodeKind::Input, {}, {}, 1.0);
        auto &n = graph_.nodes[id];
        n.predicate = f.symbol;
        n.grounding = grounding;
        auto table = graph_.tables.find(f.symbol);
        if (table != graph_.tables.end()) {
            auto row = table->second.rows.find(grounding);
            if (row != table->second.rows.end()) {
                n.initial = row->second;
            }
        }
        atoms_.emplace(std::move(key), id);
        return id;
    }

    NodeId make_node(NodeKind kind, std::vector<NodeId> children, std::vector<double> weights,
                     double bias) {
        NeuronNode n;
        n.id = graph_.nodes.size();
        n.kind = kind;
        n.children = std::move(children);
        n.weights = std::move(weights);
        n.bias = bias;
        graph_.nodes.push_back(std::move(n));
        return graph_.nodes.back().id;
    }

    const KnowledgeBase &kb_;
    NeuronGraph graph_;
    std::map<std::pair<std::string, std::vector<std::string>>, NodeId> atoms_;
};

}  // namespace detail

/// Turns a function-free knowledge base into a neuron graph: one input node
/// per grounded atom (shared across formulas), one node per connective
/// occurrence, and quantifier nodes whose children are the body grounded at
/// every constant. Axioms and as-axiom queries start pinned to (1, 1).
inline NeuronGraph compile(const KnowledgeBase &kb) {
    return detail::GraphCompiler(kb).run();
}

}  // namespace lnn

#endif
