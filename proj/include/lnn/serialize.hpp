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

#ifndef LNN_SERIALIZE_HPP
#define LNN_SERIALIZE_HPP

#include <cstdio>
#include <string>

#include "lnn/formula.hpp"
#include "lnn/knowledge_base.hpp"

namespace lnn {

/// Numeric payloads are written with six significant digits; that is the
/// precision contract of the text format.
inline std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

inline std::string to_text(const Formula &f) {
    switch (f.kind) {
        case Formula::Kind::Atom: {
            std::string out = "(" + f.symbol;
            for (const auto &t : f.terms) {
                out += " ";
                out += to_text(t);
            }
            return out + ")";
        }
        case Formula::Kind::Not:
            return "(not " + to_text(f.children.front()) + ")";
        case Formula::Kind::ForAll:
        case Formula::Kind::Exists: {
            const char *head = f.kind == Formula::Kind::ForAll ? "forall" : "exists";
            return "(" + std::string(head) + " " + f.symbol + " " + to_text(f.children.front()) + ")";
        }
        case Formula::Kind::Iff:
            return "(iff " + to_text(f.children[0]) + " " + to_text(f.children[1]) + ")";
        case Formula::Kind::And:
        case Formula::Kind::Or:
        case Formula::Kind::Implies: {
            const char *head = f.kind == Formula::Kind::And  ? "and"
                               : f.kind == Formula::Kind::Or ? "or"
                                                             : "implies";
            std::string out = "(" + std::string(head);
            if (!f.weights.empty()) {
                out += " :weights (";
                for (std::size_t i = 0; i < f.weights.size(); ++i) {
                    if (i) {
                        out += " ";
                    }
                    out += format_number(f.weights[i]);
                }
                out += ")";
            }
            if (f.bias != 1.0) {
                out += " :bias " + format_number(f.bias);
            }
            for (const auto &c : f.children) {
                out += " ";
                out += to_text(c);
            }
            return out + ")";
        }
    }
    throw InternalError("unhandled formula kind");
}

inline std::string to_text(TruthBounds b) {
    if (b == bounds_true()) {
        return "true";
    }
    if (b == bounds_false()) {
        return "false";
    }
    if (b == bounds_unknown()) {
        return "unknown";
    }
    return format_number(b.lower) + " " + format_number(b.upper);
}

/// Renders a knowledge base in the same directive language parse_kb reads.
/// Parsing the output reproduces the knowledge base (numbers to six
/// significant digits), and serializing that read-back returns the same
/// text, so one round trip reaches a fixpoint.
inline std::string serialize_kb(const KnowledgeBase &kb) {
    std::string out;
    for (const auto &t : kb.theories()) {
        out += "theory " + t + "\n";
    }
    for (const auto &p : kb.predicates()) {
        out += "predicate " + p.name + "/" + std::to_string(p.arity) + "\n";
    }
    for (const auto &f : kb.functions()) {
        out += "function " + f.name + "/" + std::to_string(f.arity) + "\n";
    }
    for (const auto &c : kb.constants()) {
        out += "constant " + c + "\n";
    }
    for (const auto &a : kb.axioms()) {
        out += "axiom " + a.name + " " + to_text(a.formula) + "\n";
    }
    for (const auto &[key, bounds] : kb.facts()) {
        out += "fact " + KnowledgeBase::fact_text(key) + " " + to_text(bounds) + "\n";
    }
    for (const auto &q : kb.queries()) {
        out += "query " + q.name + " " + to_text(q.formula);
        if (q.world == World::Axiom) {
            out += " as-axiom";
        }
        out += "\n";
    }
    return out;
}

}  // namespace lnn

#endif
