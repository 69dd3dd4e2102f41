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

#ifndef LNN_REWRITER_HPP
#define LNN_REWRITER_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

#include "lnn/errors.hpp"
#include "lnn/formula.hpp"
#include "lnn/knowledge_base.hpp"

namespace lnn {

/// The relation that records a function's graph: R_f holds the function's
/// inputs plus one extra slot for its value.
inline std::string relation_for_function(const std::string &fn) {
    return "R_" + fn;
}

/// Pulls the term at `position` out of an atom through a fresh existential:
/// P(..t..) becomes (exists v (and (= t v) P(..v..))). The two sides are
/// equivalent in every interpretation, which is what licenses the rewrite.
inline Formula extract_term(const Formula &f, std::size_t position) {
    if (f.kind != Formula::Kind::Atom) {
        throw InternalError("extract_term needs an atom");
    }
    if (position >= f.terms.size()) {
        throw InternalError("extract_term position " + std::to_string(position) + " out of range for '" +
                            f.symbol + "'");
    }
    std::set<std::string> used;
    for (const auto &t : f.terms) {
        collect_term_variables(t, used);
    }
    std::string fresh;
    for (int i = 1;; ++i) {
        fresh = "$v" + std::to_string(i);
        if (!used.count(fresh)) {
            break;
        }
    }
    Formula replaced = f;
    replaced.terms[position] = variable(fresh);
    return exists(fresh, conj({atom("=", {f.terms[position], variable(fresh)}), std::move(replaced)}));
}

struct RewriteResult {
    Formula formula;
    std::map<std::string, std::string> introduced_relations;  // function -> relation
    int fresh_vars_used = 0;
};

namespace detail {

class FunctionEliminator {
   public:
    FunctionEliminator(const KnowledgeBase &kb, const Formula &input) : kb_(kb) {
        collect_variables(input, used_names_);
    }

    Formula eliminate(const Formula &f) {
        if (f.kind == Formula::Kind::Atom) {
            return eliminate_atom(f);
        }
        Formula out = f;
        for (auto &c : out.children) {
            c = eliminate(c);
        }
        return out;
    }

    std::map<std::string, std::string> introduced() && {
        return std::move(introduced_);
    }

    int fresh_vars_used() const {
        return fresh_count_;
    }

   private:
    // Replaces the leftmost function application in the atom's arguments by
    // a fresh variable constrained through the function's graph relation,
    // then recurses into both halves until no application is left.
    Formula eliminate_atom(const Formula &f) {
        for (std::size_t i = 0; i < f.terms.size(); ++i) {
            if (f.terms[i].kind != Term::Kind::Function) {
                continue;
            }
            const Term &app = f.terms[i];
            std::string rel = relation_lookup(app.name);
            std::string v = fresh_var();
            std::vector<Term> rel_args = app.args;
            rel_args.push_back(variable(v));
            Formula rest = f;
            rest.terms[i] = variable(v);
            return exists(v, conj({eliminate_atom(atom(rel, std::move(rel_args))),
                                   eliminate_atom(std::move(rest))}));
        }
        return f;
    }

    std::string relation_lookup(const std::string &fn) {
        auto arity = kb_.function_arity(fn);
        if (!arity) {
            throw Error("undeclared function '" + fn + "'");
        }
        std::string rel = relation_for_function(fn);
        auto kind = kb_.symbol_kind(rel);
        if (kind && *kind != KnowledgeBase::SymbolKind::Predicate) {
            throw Error("relation name '" + rel + "' for function '" + fn +
                        "' collides with a declared symbol");
        }
        if (kind && kb_.predicate_arity(rel) != std::optional(*arity + 1)) {
            throw Error("predicate '" + rel + "' exists with the wrong arity for function '" + fn + "'");
        }
        introduced_.emplace(fn, rel);
        return rel;
    }

    std::string fresh_var() {
        while (true) {
            std::string name = "$v" + std::to_string(counter_++);
            if (used_names_.insert(name).second) {
                ++fresh_count_;
                return name;
            }
        }
    }

    const KnowledgeBase &kb_;
    std::set<std::string> used_names_;
    std::map<std::string, std::string> introduced_;
    int counter_ = 1;
    int fresh_count_ = 0;
};

}  // namespace detail

/// Removes every function application from a formula, leaving an equivalent
/// formula over the functions' graph relations. Fresh variables are named
/// $v1, $v2, ... skipping anything already present; running the result
/// through again is the identity.
inline RewriteResult eliminate_functions(const Formula &f, const KnowledgeBase &kb) {
    detail::FunctionEliminator elim(kb, f);
    RewriteResult out;
    out.formula = elim.eliminate(f);
    out.fresh_vars_used = elim.fresh_vars_used();
    out.introduced_relations = std::move(elim).introduced();
    return out;
}

}  // namespace lnn

#endif
