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

#ifndef LNN_KNOWLEDGE_BASE_HPP
#define LNN_KNOWLEDGE_BASE_HPP

#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "lnn/bounds.hpp"
#include "lnn/errors.hpp"
#include "lnn/formula.hpp"
#include "lnn/term.hpp"

namespace lnn {

/// Pinning applied to a root formula: Axiom pins it to (1, 1) before
/// inference starts, Open leaves it at (0, 1).
enum class World { Axiom, Open };

struct PredicateDecl {
    std::string name;
    int arity = 0;

    friend bool operator==(const PredicateDecl &, const PredicateDecl &) = default;
};

struct FunctionDecl {
    std::string name;
    int arity = 1;

    friend bool operator==(const FunctionDecl &, const FunctionDecl &) = default;
};

struct AxiomEntry {
    std::string name;
    Formula formula;
};

struct QueryEntry {
    std::string name;
    Formula formula;
    World world = World::Open;
};

/// Identity of one ground fact row. Arguments are terms so that statements
/// about function values can be held until rewriting normalizes them away;
/// network compilation itself accepts constant tuples only.
struct FactKey {
    std::string predicate;
    std::vector<Term> args;
};

struct FactKeyLess {
    bool operator()(const FactKey &a, const FactKey &b) const {
        if (a.predicate != b.predicate) {
            return a.predicate < b.predicate;
        }
        return TermLess{}(a.args, b.args);
    }
};

using FactMap = std::map<FactKey, TruthBounds, FactKeyLess>;

/// The name of the single built-in theory.
inline constexpr const char *kEqualityTheory = "equality";

/// A declared vocabulary plus axioms, facts, and queries over it. All
/// mutating calls validate their input and throw Error on violations, so a
/// constructed instance is well-formed by definition. Constants, predicates,
/// and functions share one symbol namespace: a name gets exactly one
/// declaration.
class KnowledgeBase {
   public:
    enum class SymbolKind { Predicate, Function, Constant };

    void declare_theory(const std::string &name) {
        if (name != kEqualityTheory) {
            throw Error("unknown theory '" + name + "'");
        }
        if (has_theory(name)) {
            throw Error("duplicate theory declaration '" + name + "'");
        }
        theories_.push_back(name);
    }

    void declare_predicate(const std::string &name, int arity) {
        check_symbol_name(name);
        if (arity < 0) {
            throw Error("predicate '" + name + "' needs a nonnegative arity");
        }
        claim_symbol(name, SymbolKind::Predicate);
        predicates_.push_back({name, arity});
    }

    void declare_function(const std::string &name, int arity) {
        check_symbol_name(name);
        if (arity < 1) {
            throw Error("function '" + name + "' needs an arity of at least 1");
        }
        claim_symbol(name, SymbolKind::Function);
        functions_.push_back({name, arity});
    }

    void declare_constant(const std::string &name) {
        check_symbol_name(name);
        claim_symbol(name, SymbolKind::Constant);
        constants_.push_back(name);
    }

    void add_axiom(const std::string &name, Formula formula) {
        if (name.empty()) {
            throw Error("axioms need a name");
        }
        if (axiom_names_.count(name)) {
            throw Error("duplicate axiom name '" + name + "'");
        }
        validate_sentence(formula, "axiom '" + name + "'");
        axiom_names_.insert(name);
        axioms_.push_back({name, std::move(formula)});
    }

    void add_fact(const std::string &predicate, std::vector<Term> args, TruthBounds bounds) {
        auto arity = predicate_arity(predicate);
        if (!arity) {
            throw Error("fact over undeclared predicate '" + predicate + "'");
        }
        if (static_cast<int>(args.size()) != *arity) {
            throw Error("fact over '" + predicate + "' needs " + std::to_string(*arity) + " arguments, got " +
                        std::to_string(args.size()));
        }
        for (const auto &t : args) {
            if (!term_is_ground(t)) {
                throw Error("fact arguments must be ground, got '" + to_text(t) + "'");
            }
            validate_ground_term(t);
        }
        if (!(bounds.lower >= 0.0 && bounds.lower <= 1.0 && bounds.upper >= 0.0 && bounds.upper <= 1.0)) {
            throw Error("fact bounds must lie in [0, 1]");
        }
        FactKey key{predicate, std::move(args)};
        if (facts_.count(key)) {
            throw Error("duplicate fact for '" + fact_text(key) + "'");
        }
        facts_.emplace(std::move(key), bounds);
    }

    void add_query(const std::string &name, Formula formula, World world) {
        if (name.empty()) {
            throw Error("queries need a name");
        }
        if (query_names_.count(name)) {
            throw Error("duplicate query name '" + name + "'");
        }
        validate_sentence(formula, "query '" + name + "'");
        query_names_.insert(name);
        queries_.push_back({name, std::move(formula), world});
    }

    bool has_theory(const std::string &name) const {
        for (const auto &t : theories_) {
            if (t == name) {
                return true;
            }
        }
        return false;
    }

    bool has_equality() const {
        return has_theory(kEqualityTheory);
    }

    std::optional<SymbolKind> symbol_kind(const std::string &name) const {
        auto it = symbols_.find(name);
        if (it == symbols_.end()) {
            return std::nullopt;
        }
        return it->second;
    }

    std::optional<int> predicate_arity(const std::string &name) const {
        if (name == "=") {
            return has_equality() ? std::optional<int>(2) : std::nullopt;
        }
        for (const auto &p : predicates_) {
            if (p.name == name) {
                return p.arity;
            }
        }
        return std::nullopt;
    }

    std::optional<int> function_arity(const std::string &name) const {
        for (const auto &f : functions_) {
            if (f.name == name) {
                return f.arity;
            }
        }
        return std::nullopt;
    }

    bool has_axiom(const std::string &name) const {
        return axiom_names_.count(name) != 0;
    }

    bool has_query(const std::string &name) const {
        return query_names_.count(name) != 0;
    }

    const std::vector<std::string> &theories() const {
        return theories_;
    }
    const std::vector<PredicateDecl> &predicates() const {
        return predicates_;
    }
    const std::vector<FunctionDecl> &functions() const {
        return functions_;
    }
    const std::vector<std::string> &constants() const {
        return constants_;
    }
    const std::vector<AxiomEntry> &axioms() const {
        return axioms_;
    }
    const FactMap &facts() const {
        return facts_;
    }
    const std::vector<QueryEntry> &queries() const {
        return queries_;
    }

    /// Checks that a closed formula fits this vocabulary: declared symbols,
    /// matched arities, no unbound variables.
    void validate_sentence(const Formula &f, const std::string &context) const {
        std::set<std::string> bound;
        try {
            validate_formula(f, bound);
        } catch (const Error &e) {
            throw Error(context + ": " + e.what());
        }
    }

    static std::string fact_text(const FactKey &key) {
        std::string out = "(" + key.predicate;
        for (const auto &t : key.args) {
            out += " ";
            out += to_text(t);
        }
        out += ")";
        return out;
    }

   private:
    void check_symbol_name(const std::string &name) const {
        if (name.empty()) {
            throw Error("symbol names must not be empty");
        }
        if (name == "=") {
            throw Error("'=' is reserved for the equality theory");
        }
        if (name.front() == '$') {
            throw Error("names starting with '$' are reserved, got '" + name + "'");
        }
    }

    void claim_symbol(const std::string &name, SymbolKind kind) {
        if (symbols_.count(name)) {
            throw Error("duplicate declaration of '" + name + "'");
        }
        symbols_.emplace(name, kind);
    }

    void validate_formula(const Formula &f, std::set<std::string> &bound) const {
        switch (f.kind) {
            case Formula::Kind::Atom: {
                auto arity = predicate_arity(f.symbol);
                if (!arity) {
                    if (f.symbol == "=") {
                        throw Error("'=' requires 'theory equality'");
                    }
                    throw Error("undeclared predicate '" + f.symbol + "'");
                }
                if (static_cast<int>(f.terms.size()) != *arity) {
                    throw Error("predicate '" + f.symbol + "' needs " + std::to_string(*arity) +
                                " arguments, got " + std::to_string(f.terms.size()));
                }
                for (const auto &t : f.terms) {
                    validate_term(t, bound);
                }
                return;
            }
            case Formula::Kind::ForAll:
            case Formula::Kind::Exists: {
                if (symbols_.count(f.symbol)) {
                    throw Error("quantifier variable '" + f.symbol + "' collides with a declared symbol");
                }
                bool added = bound.insert(f.symbol).second;
                validate_formula(f.children.front(), bound);
                if (added) {
                    bound.erase(f.symbol);
                }
                return;
            }
            default: {
                detail::check_weighting(f.weights, f.children.size(), f.bias, "connective");
                for (const auto &c : f.children) {
                    validate_formula(c, bound);
                }
                return;
            }
        }
    }

    void validate_term(const Term &t, const std::set<std::string> &bound) const {
        switch (t.kind) {
            case Term::Kind::Variable:
                if (!bound.count(t.name)) {
                    throw Error("unbound variable '" + t.name + "'");
                }
                return;
            case Term::Kind::Constant:
                if (symbol_kind(t.name) != std::optional(SymbolKind::Constant)) {
                    throw Error("undeclared constant '" + t.name + "'");
                }
                return;
            case Term::Kind::Function: {
                auto arity = function_arity(t.name);
                if (!arity) {
                    throw Error("undeclared function '" + t.name + "'");
                }
                if (static_cast<int>(t.args.size()) != *arity) {
                    throw Error("function '" + t.name + "' needs " + std::to_string(*arity) +
                                " arguments, got " + std::to_string(t.args.size()));
                }
                for (const auto &a : t.args) {
                    validate_term(a, bound);
                }
                return;
            }
        }
        throw InternalError("unhandled term kind");
    }

    void validate_ground_term(const Term &t) const {
        std::set<std::string> no_bound;
        validate_term(t, no_bound);
    }

    std::vector<std::string> theories_;
    std::vector<PredicateDecl> predicates_;
    std::vector<FunctionDecl> functions_;
    std::vector<std::string> constants_;
    std::map<std::string, SymbolKind> symbols_;
    std::vector<AxiomEntry> axioms_;
    std::set<std::string> axiom_names_;
    FactMap facts_;
    std::vector<QueryEntry> queries_;
    std::set<std::string> query_names_;
};

/// Structural equality of two knowledge bases with numeric payloads compared
/// to a tolerance. The read-back of serialized text must pass this.
inline bool approx_equal(const KnowledgeBase &a, const KnowledgeBase &b, double tol) {
    if (a.theories() != b.theories() || a.predicates() != b.predicates() ||
        a.functions() != b.functions() || a.constants() != b.constants()) {
        return false;
    }
    if (a.axioms().size() != b.axioms().size() || a.queries().size() != b.queries().size() ||
        a.facts().size() != b.facts().size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.axioms().size(); ++i) {
        if (a.axioms()[i].name != b.axioms()[i].name ||
            !approx_equal(a.axioms()[i].formula, b.axioms()[i].formula, tol)) {
            return false;
        }
    }
    for (std::size_t i = 0; i < a.queries().size(); ++i) {
        const auto &qa = a.queries()[i];
        const auto &qb = b.queries()[i];
        if (qa.name != qb.name || qa.world != qb.world || !approx_equal(qa.formula, qb.formula, tol)) {
            return false;
        }
    }
    auto ib = b.facts().begin();
    for (const auto &[key, bounds] : a.facts()) {
        if (FactKeyLess{}(key, ib->first) || FactKeyLess{}(ib->first, key)) {
            return false;
        }
        if (std::fabs(bounds.lower - ib->second.lower) > tol ||
            std::fabs(bounds.upper - ib->second.upper) > tol) {
            return false;
        }
        ++ib;
    }
    return true;
}

}  // namespace lnn

#endif
