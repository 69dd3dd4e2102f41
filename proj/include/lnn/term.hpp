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

#ifndef LNN_TERM_HPP
#define LNN_TERM_HPP

#include <set>
#include <string>
#include <vector>

#include "lnn/errors.hpp"

namespace lnn {

/// A first-order term: a constant, a variable, or a function application.
/// Which one a name denotes is decided by declaration, not spelling.
struct Term {
    enum class Kind { Constant, Variable, Function };

    Kind kind = Kind::Constant;
    std::string name;
    std::vector<Term> args;  // nonempty only for Kind::Function

    friend bool operator==(const Term &, const Term &) = default;
};

inline Term constant(std::string name) {
    return {Term::Kind::Constant, std::move(name), {}};
}

inline Term variable(std::string name) {
    return {Term::Kind::Variable, std::move(name), {}};
}

inline Term fapp(std::string fn, std::vector<Term> args) {
    if (args.empty()) {
        throw InternalError("function application '" + fn + "' needs at least one argument");
    }
    return {Term::Kind::Function, std::move(fn), std::move(args)};
}

/// Strict weak order used to keep fact tables in a reproducible order.
inline bool term_less(const Term &a, const Term &b) {
    if (a.kind != b.kind) {
        return static_cast<int>(a.kind) < static_cast<int>(b.kind);
    }
    if (a.name != b.name) {
        return a.name < b.name;
    }
    return std::lexicographical_compare(
        a.args.begin(), a.args.end(), b.args.begin(), b.args.end(), term_less);
}

struct TermLess {
    bool operator()(const Term &a, const Term &b) const {
        return term_less(a, b);
    }
    bool operator()(const std::vector<Term> &a, const std::vector<Term> &b) const {
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), term_less);
    }
};

inline bool term_contains_function(const Term &t) {
    if (t.kind == Term::Kind::Function) {
        return true;
    }
    for (const auto &a : t.args) {
        if (term_contains_function(a)) {
            return true;
        }
    }
    return false;
}

inline bool term_is_ground(const Term &t) {
    if (t.kind == Term::Kind::Variable) {
        return false;
    }
    for (const auto &a : t.args) {
        if (!term_is_ground(a)) {
            return false;
        }
    }
    return true;
}

inline void collect_term_variables(const Term &t, std::set<std::string> &out) {
    if (t.kind == Term::Kind::Variable) {
        out.insert(t.name);
    }
    for (const auto &a : t.args) {
        collect_term_variables(a, out);
    }
}

/// Replaces every occurrence of the variable `var` in `t` by `replacement`.
inline Term substitute_term(const Term &t, const std::string &var, const Term &replacement) {
    if (t.kind == Term::Kind::Variable && t.name == var) {
        return replacement;
    }
    Term out = t;
    for (auto &a : out.args) {
        a = substitute_term(a, var, replacement);
    }
    return out;
}

inline std::string to_text(const Term &t) {
    if (t.kind != Term::Kind::Function) {
        return t.name;
    }
    std::string out = "(" + t.name;
    for (const auto &a : t.args) {
        out += " ";
        out += to_text(a);
    }
    out += ")";
    return out;
}

}  // namespace lnn

#endif
