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

#ifndef LNN_PIPELINE_HPP
#define LNN_PIPELINE_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "lnn/errors.hpp"
#include "lnn/knowledge_base.hpp"
#include "lnn/rewriter.hpp"
#include "lnn/theory.hpp"

namespace lnn {

struct AugmentedKb {
    KnowledgeBase kb;
    std::vector<TheoryAxiom> added_axioms;
    std::map<std::string, std::string> introduced_relations;  // function -> relation
};

/// Expands a knowledge base into the form the compiler accepts. With the
/// equality theory enabled this injects the base equality axioms, one
/// congruence axiom per predicate that can use one, and per declared
/// function a graph relation R_f with its functional and congruence axioms;
/// all formulas and facts are then rewritten function-free and the function
/// declarations dropped. Injection skips axiom names that already exist, so
/// augmenting twice changes nothing. Without the theory the knowledge base
/// passes through untouched (functions then have no encoding and are
/// rejected).
inline AugmentedKb augment(const KnowledgeBase &in) {
    AugmentedKb out;
    if (!in.has_equality()) {
        if (!in.functions().empty()) {
            throw CompileError("function symbols require 'theory equality'");
        }
        out.kb = in;
        return out;
    }

    KnowledgeBase kb;
    for (const auto &t : in.theories()) {
        kb.declare_theory(t);
    }
    for (const auto &p : in.predicates()) {
        kb.declare_predicate(p.name, p.arity);
    }
    for (const auto &f : in.functions()) {
        std::string rel = relation_for_function(f.name);
        if (in.symbol_kind(rel) || kb.symbol_kind(rel)) {
            throw CompileError("relation name '" + rel + "' for function '" + f.name +
                               "' collides with a declared symbol");
        }
        kb.declare_predicate(rel, f.arity + 1);
        out.introduced_relations.emplace(f.name, rel);
    }
    for (const auto &c : in.constants()) {
        kb.declare_constant(c);
    }

    std::vector<TheoryAxiom> generated = equality_base_axioms();
    for (const auto &p : in.predicates()) {
        if (auto a = congruence_axiom(p.name, p.arity)) {
            generated.push_back(std::move(*a));
        }
    }
    for (const auto &f : in.functions()) {
        std::string rel = relation_for_function(f.name);
        generated.push_back(functional_axiom(rel, f.arity + 1));
        generated.push_back(*congruence_axiom(rel, f.arity + 1));
    }
    for (auto &ta : generated) {
        if (in.has_axiom(ta.name)) {
            continue;  // an axiom by this name is already in place
        }
        kb.add_axiom(ta.name, ta.formula);
        out.added_axioms.push_back(std::move(ta));
    }

    for (const auto &a : in.axioms()) {
        kb.add_axiom(a.name, eliminate_functions(a.formula, in).formula);
    }

    for (const auto &[key, bounds] : in.facts()) {
        bool constants_only = true;
        for (const auto &t : key.args) {
            if (t.kind != Term::Kind::Constant) {
                constants_only = false;
            }
        }
        if (constants_only) {
            kb.add_fact(key.predicate, key.args, bounds);
            continue;
        }
        // A ground statement of a function value, (= (f c...) d) either way
        // around, becomes a row of the graph relation: R_f(c..., d).
        const Term *app = nullptr;
        const Term *value = nullptr;
        if (key.predicate == "=" && key.args.size() == 2) {
            const Term &lhs = key.args[0];
            const Term &rhs = key.args[1];
            if (lhs.kind == Term::Kind::Function && rhs.kind == Term::Kind::Constant) {
                app = &lhs;
                value = &rhs;
            } else if (rhs.kind == Term::Kind::Function && lhs.kind == Term::Kind::Constant) {
                app = &rhs;
                value = &lhs;
            }
        }
        if (app) {
            for (const auto &arg : app->args) {
                if (arg.kind != Term::Kind::Constant) {
                    app = nullptr;
                    break;
                }
            }
        }
        if (!app) {
            throw CompileError("fact " + KnowledgeBase::fact_text(key) +
                               " mentions function terms; only the shape (= (f c...) c) is accepted as "
                               "a fact, state anything else as an axiom");
        }
        std::vector<Term> row = app->args;
        row.push_back(*value);
        kb.add_fact(relation_for_function(app->name), std::move(row), bounds);
    }

    for (const auto &q : in.queries()) {
        kb.add_query(q.name, eliminate_functions(q.formula, in).formula, q.world);
    }

    out.kb = std::move(kb);
    return out;
}

}  // namespace lnn

#endif
