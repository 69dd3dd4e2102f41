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

#ifndef LNN_THEORY_HPP
#define LNN_THEORY_HPP

#include <optional>
#include <string>
#include <vector>

#include "lnn/errors.hpp"
#include "lnn/formula.hpp"

namespace lnn {

enum class AxiomOrigin { EqualityBase, Congruence, Functional };

/// A generated axiom. Generated names live in dotted namespaces
/// ("eq.", "fn.") so they cannot collide with user names by accident, and
/// injection skips any name that is already taken.
struct TheoryAxiom {
    std::string name;
    Formula formula;
    AxiomOrigin origin = AxiomOrigin::EqualityBase;
};

namespace detail {

inline Formula equal(Term a, Term b) {
    return atom("=", {std::move(a), std::move(b)});
}

inline Formula forall_each(const std::vector<std::string> &vars, Formula body) {
    for (auto it = vars.rbegin(); it != vars.rend(); ++it) {
        body = forall(*it, std::move(body));
    }
    return body;
}

}  // namespace detail

/// Reflexivity, symmetry, and transitivity of '='.
inline std::vector<TheoryAxiom> equality_base_axioms() {
    using detail::equal;
    std::vector<TheoryAxiom> out;
    out.push_back({"eq.reflexivity", forall("$x", equal(variable("$x"), variable("$x"))),
                   AxiomOrigin::EqualityBase});
    out.push_back({"eq.symmetry",
                   detail::forall_each({"$x", "$y"}, implies(equal(variable("$x"), variable("$y")),
                                                             equal(variable("$y"), variable("$x")))),
                   AxiomOrigin::EqualityBase});
    out.push_back({"eq.transitivity",
                   detail::forall_each({"$x", "$y", "$z"},
                                       implies(conj({equal(variable("$x"), variable("$y")),
                                                     equal(variable("$y"), variable("$z"))}),
                                               equal(variable("$x"), variable("$z")))),
                   AxiomOrigin::EqualityBase});
    return out;
}

/// Substitution axiom for one predicate: arguments equal pairwise make the
/// predicate agree on both tuples. Nullary predicates and '=' itself have
/// nothing to substitute into, so they get none.
inline std::optional<TheoryAxiom> congruence_axiom(const std::string &predicate, int arity) {
    if (predicate == "=" || arity <= 0) {
        return std::nullopt;
    }
    std::vector<std::string> xs;
    std::vector<std::string> ys;
    std::vector<Term> x_terms;
    std::vector<Term> y_terms;
    std::vector<Formula> equalities;
    for (int i = 1; i <= arity; ++i) {
        xs.push_back("$x" + std::to_string(i));
        ys.push_back("$y" + std::to_string(i));
        x_terms.push_back(variable(xs.back()));
        y_terms.push_back(variable(ys.back()));
        equalities.push_back(detail::equal(variable(xs.back()), variable(ys.back())));
    }
    Formula antecedent =
        equalities.size() == 1 ? std::move(equalities.front()) : conj(std::move(equalities));
    Formula body = implies(std::move(antecedent), iff(atom(predicate, x_terms), atom(predicate, y_terms)));
    std::vector<std::string> vars = xs;
    vars.insert(vars.end(), ys.begin(), ys.end());
    return TheoryAxiom{"eq.congruence." + predicate, detail::forall_each(vars, std::move(body)),
                       AxiomOrigin::Congruence};
}

/// Right-uniqueness of a relation that encodes a function's graph: two
/// values recorded for the same inputs must be equal. `arity` counts the
/// relation's slots, inputs plus the value slot.
inline TheoryAxiom functional_axiom(const std::string &relation, int arity) {
    if (arity < 2) {
        throw InternalError("functional axiom needs a relation of arity >= 2, got " +
                            std::to_string(arity));
    }
    int inputs = arity - 1;
    std::vector<std::string> vars;
    std::vector<Term> lhs_args;
    std::vector<Term> rhs_args;
    for (int i = 1; i <= inputs; ++i) {
        vars.push_back("$w" + std::to_string(i));
        lhs_args.push_back(variable(vars.back()));
        rhs_args.push_back(variable(vars.back()));
    }
    vars.push_back("$x");
    vars.push_back("$y");
    lhs_args.push_back(variable("$x"));
    rhs_args.push_back(variable("$y"));
    Formula body = implies(conj({atom(relation, std::move(lhs_args)), atom(relation, std::move(rhs_args))}),
                           detail::equal(variable("$x"), variable("$y")));
    return {"fn.functional." + relation, detail::forall_each(vars, std::move(body)),
            AxiomOrigin::Functional};
}

}  // namespace lnn

#endif
