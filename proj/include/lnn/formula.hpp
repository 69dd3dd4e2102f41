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

#ifndef LNN_FORMULA_HPP
#define LNN_FORMULA_HPP

#include <cmath>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "lnn/errors.hpp"
#include "lnn/term.hpp"

namespace lnn {

/// Immutable-by-convention syntax tree of a first-order formula. Connective
/// nodes may carry per-operand weights and a bias; an empty weight vector
/// means unit weights, which is what the plain logical reading assumes.
struct Formula {
    enum class Kind { Atom, Not, And, Or, Implies, Iff, ForAll, Exists };

    Kind kind = Kind::Atom;
    std::string symbol;             // Atom: predicate name; ForAll/Exists: bound variable
    std::vector<Term> terms;        // Atom arguments
    std::vector<Formula> children;  // connective operands or quantifier body
    std::vector<double> weights;    // And/Or/Implies only; empty means all ones
    double bias = 1.0;

    friend bool operator==(const Formula &, const Formula &) = default;
};

namespace detail {

inline void check_weighting(const std::vector<double> &weights, std::size_t arity, double bias, const char *what) {
    if (!weights.empty() && weights.size() != arity) {
        throw InternalError(std::string(what) + ": got " + std::to_string(weights.size()) + " weights for " +
                            std::to_string(arity) + " operands");
    }
    for (double w : weights) {
        if (!(w >= 0.0)) {
            throw InternalError(std::string(what) + ": weights must be nonnegative");
        }
    }
    if (!(bias >= 0.0)) {
        throw InternalError(std::string(what) + ": bias must be nonnegative");
    }
}

/// An explicit all-ones weighting is the same operator as no weighting at
/// all; normalizing to the empty form keeps comparisons and serialization
/// canonical.
inline void canonicalize_weights(std::vector<double> &weights) {
    for (double w : weights) {
        if (w != 1.0) {
            return;
        }
    }
    weights.clear();
}

}  // namespace detail

inline Formula atom(std::string predicate, std::vector<Term> args = {}) {
    Formula f;
    f.kind = Formula::Kind::Atom;
    f.symbol = std::move(predicate);
    f.terms = std::move(args);
    return f;
}

inline Formula neg(Formula operand) {
    Formula f;
    f.kind = Formula::Kind::Not;
    f.children.push_back(std::move(operand));
    return f;
}

inline Formula conj(std::vector<Formula> operands, std::vector<double> weights = {}, double bias = 1.0) {
    if (operands.size() < 2) {
        throw InternalError("conjunction needs at least two operands");
    }
    detail::check_weighting(weights, operands.size(), bias, "conjunction");
    detail::canonicalize_weights(weights);
    Formula f;
    f.kind = Formula::Kind::And;
    f.children = std::move(operands);
    f.weights = std::move(weights);
    f.bias = bias;
    return f;
}

inline Formula disj(std::vector<Formula> operands, std::vector<double> weights = {}, double bias = 1.0) {
    if (operands.size() < 2) {
        throw InternalError("disjunction needs at least two operands");
    }
    detail::check_weighting(weights, operands.size(), bias, "disjunction");
    detail::canonicalize_weights(weights);
    Formula f;
    f.kind = Formula::Kind::Or;
    f.children = std::move(operands);
    f.weights = std::move(weights);
    f.bias = bias;
    return f;
}

inline Formula implies(Formula lhs, Formula rhs, std::vector<double> weights = {}, double bias = 1.0) {
    detail::check_weighting(weights, 2, bias, "implication");
    detail::canonicalize_weights(weights);
    Formula f;
    f.kind = Formula::Kind::Implies;
    f.children.push_back(std::move(lhs));
    f.children.push_back(std::move(rhs));
    f.weights = std::move(weights);
    f.bias = bias;
    return f;
}

inline Formula iff(Formula lhs, Formula rhs) {
    Formula f;
    f.kind = Formula::Kind::Iff;
    f.children.push_back(std::move(lhs));
    f.children.push_back(std::move(rhs));
    return f;
}

inline Formula quantified(Formula::Kind kind, std::string var, Formula body) {
    if (kind != Formula::Kind::ForAll && kind != Formula::Kind::Exists) {
        throw InternalError("quantified() wants ForAll or Exists");
    }
    if (var.empty()) {
        throw InternalError("quantifier needs a variable name");
    }
    Formula f;
    f.kind = kind;
    f.symbol = std::move(var);
    f.children.push_back(std::move(body));
    return f;
}

inline Formula forall(std::string var, Formula body) {
    return quantified(Formula::Kind::ForAll, std::move(var), std::move(body));
}

inline Formula exists(std::string var, Formula body) {
    return quantified(Formula::Kind::Exists, std::move(var), std::move(body));
}

inline bool is_quantifier(Formula::Kind k) {
    return k == Formula::Kind::ForAll || k == Formula::Kind::Exists;
}

inline bool is_weighted_kind(Formula::Kind k) {
    return k == Formula::Kind::And || k == Formula::Kind::Or || k == Formula::Kind::Implies;
}

namespace detail {

inline void free_variables_impl(const Formula &f, std::set<std::string> &bound, std::set<std::string> &out) {
    switch (f.kind) {
        case Formula::Kind::Atom: {
            std::set<std::string> vars;
            for (const auto &t : f.terms) {
                collect_term_variables(t, vars);
            }
            for (const auto &v : vars) {
                if (!bound.count(v)) {
                    out.insert(v);
                }
            }
            return;
        }
        case Formula::Kind::ForAll:
        case Formula::Kind::Exists: {
            bool added = bound.insert(f.symbol).second;
            free_variables_impl(f.children.front(), bound, out);
            if (added) {
                bound.erase(f.symbol);
            }
            return;
        }
        default:
            for (const auto &c : f.children) {
                free_variables_impl(c, bound, out);
            }
            return;
    }
}

}  // namespace detail

inline std::set<std::string> free_variables(const Formula &f) {
    std::set<std::string> bound;
    std::set<std::string> out;
    detail::free_variables_impl(f, bound, out);
    return out;
}

/// Every variable name occurring in the formula, bound or free. Used to pick
/// fresh names that cannot collide.
inline void collect_variables(const Formula &f, std::set<std::string> &out) {
    if (f.kind == Formula::Kind::Atom) {
        for (const auto &t : f.terms) {
            collect_term_variables(t, out);
        }
        return;
    }
    if (is_quantifier(f.kind)) {
        out.insert(f.symbol);
    }
    for (const auto &c : f.children) {
        collect_variables(c, out);
    }
}

/// Capture-checking substitution of a term for a free variable. Refuses (by
/// throwing CaptureError) to move the replacement under a quantifier that
/// binds one of its variables.
inline Formula substitute(const Formula &f, const std::string &var, const Term &replacement) {
    switch (f.kind) {
        case Formula::Kind::Atom: {
            Formula out = f;
            for (auto &t : out.terms) {
                t = substitute_term(t, var, replacement);
            }
            return out;
        }
        case Formula::Kind::ForAll:
        case Formula::Kind::Exists: {
            if (f.symbol == var) {
                return f;  // the quantifier shadows the substituted variable
            }
            std::set<std::string> replacement_vars;
            collect_term_variables(replacement, replacement_vars);
            if (replacement_vars.count(f.symbol) && free_variables(f.children.front()).count(var)) {
                throw CaptureError("substituting for '" + var + "' would capture '" + f.symbol + "'");
            }
            Formula out = f;
            out.children.front() = substitute(f.children.front(), var, replacement);
            return out;
        }
        default: {
            Formula out = f;
            for (auto &c : out.children) {
                c = substitute(c, var, replacement);
            }
            return out;
        }
    }
}

namespace detail {

inline bool alpha_equal_term(const Term &a, const Term &b, const std::map<std::string, int> &ma,
                             const std::map<std::string, int> &mb) {
    if (a.kind != b.kind || a.args.size() != b.args.size()) {
        return false;
    }
    if (a.kind == Term::Kind::Variable) {
        auto ia = ma.find(a.name);
        auto ib = mb.find(b.name);
        if (ia == ma.end() && ib == mb.end()) {
            return a.name == b.name;  // both free
        }
        return ia != ma.end() && ib != mb.end() && ia->second == ib->second;
    }
    if (a.name != b.name) {
        return false;
    }
    for (std::size_t i = 0; i < a.args.size(); ++i) {
        if (!alpha_equal_term(a.args[i], b.args[i], ma, mb)) {
            return false;
        }
    }
    return true;
}

inline bool alpha_equal_impl(const Formula &a, const Formula &b, std::map<std::string, int> &ma,
                             std::map<std::string, int> &mb, int &counter) {
    if (a.kind != b.kind || a.children.size() != b.children.size() || a.weights != b.weights ||
        a.bias != b.bias) {
        return false;
    }
    if (a.kind == Formula::Kind::Atom) {
        if (a.symbol != b.symbol || a.terms.size() != b.terms.size()) {
            return false;
        }
        for (std::size_t i = 0; i < a.terms.size(); ++i) {
            if (!alpha_equal_term(a.terms[i], b.terms[i], ma, mb)) {
                return false;
            }
        }
        return true;
    }
    if (is_quantifier(a.kind)) {
        auto saved_a = ma.find(a.symbol) == ma.end() ? std::pair(false, 0) : std::pair(true, ma[a.symbol]);
        auto saved_b = mb.find(b.symbol) == mb.end() ? std::pair(false, 0) : std::pair(true, mb[b.symbol]);
        ma[a.symbol] = counter;
        mb[b.symbol] = counter;
        ++counter;
        bool ok = alpha_equal_impl(a.children.front(), b.children.front(), ma, mb, counter);
        if (saved_a.first) {
            ma[a.symbol] = saved_a.second;
        } else {
            ma.erase(a.symbol);
        }
        if (saved_b.first) {
            mb[b.symbol] = saved_b.second;
        } else {
            mb.erase(b.symbol);
        }
        return ok;
    }
    if (a.symbol != b.symbol) {
        return false;
    }
    for (std::size_t i = 0; i < a.children.size(); ++i) {
        if (!alpha_equal_impl(a.children[i], b.children[i], ma, mb, counter)) {
            return false;
        }
    }
    return true;
}

}  // namespace detail

/// Structural equality up to a consistent renaming of bound variables.
inline bool alpha_equal(const Formula &a, const Formula &b) {
    std::map<std::string, int> ma;
    std::map<std::string, int> mb;
    int counter = 0;
    return detail::alpha_equal_impl(a, b, ma, mb, counter);
}

/// Structural equality with weights and biases compared to a tolerance.
/// Serialization rounds parameters, so round-trip checks need this.
inline bool approx_equal(const Formula &a, const Formula &b, double tol) {
    if (a.kind != b.kind || a.symbol != b.symbol || a.terms != b.terms ||
        a.children.size() != b.children.size() || a.weights.size() != b.weights.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.weights.size(); ++i) {
        if (std::fabs(a.weights[i] - b.weights[i]) > tol) {
            return false;
        }
    }
    if (is_weighted_kind(a.kind) && std::fabs(a.bias - b.bias) > tol) {
        return false;
    }
    for (std::size_t i = 0; i < a.children.size(); ++i) {
        if (!approx_equal(a.children[i], b.children[i], tol)) {
            return false;
        }
    }
    return true;
}

inline bool function_free(const Formula &f) {
    if (f.kind == Formula::Kind::Atom) {
        for (const auto &t : f.terms) {
            if (term_contains_function(t)) {
                return false;
            }
        }
        return true;
    }
    for (const auto &c : f.children) {
        if (!function_free(c)) {
            return false;
        }
    }
    return true;
}

inline int count_function_apps(const Term &t) {
    int n = t.kind == Term::Kind::Function ? 1 : 0;
    for (const auto &a : t.args) {
        n += count_function_apps(a);
    }
    return n;
}

inline int count_function_apps(const Formula &f) {
    int n = 0;
    if (f.kind == Formula::Kind::Atom) {
        for (const auto &t : f.terms) {
            n += count_function_apps(t);
        }
        return n;
    }
    for (const auto &c : f.children) {
        n += count_function_apps(c);
    }
    return n;
}

}  // namespace lnn

#endif
