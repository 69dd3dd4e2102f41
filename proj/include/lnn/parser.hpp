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

#ifndef LNN_PARSER_HPP
#define LNN_PARSER_HPP

#include <cstdlib>
#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "lnn/errors.hpp"
#include "lnn/formula.hpp"
#include "lnn/knowledge_base.hpp"

namespace lnn {
namespace detail {

struct Token {
    std::string text;
    SourceSpan span;
};

inline bool is_name_start(char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_' || c == '$';
}

inline bool is_name_char(char c) {
    return is_name_start(c) || (c >= '0' && c <= '9') || c == '.' || c == '-';
}

inline bool is_name(const std::string &s) {
    if (s.empty() || !is_name_start(s[0])) {
        return false;
    }
    for (char c : s) {
        if (!is_name_char(c)) {
            return false;
        }
    }
    return true;
}

inline bool parse_double(const std::string &s, double &out) {
    const char *begin = s.c_str();
    char *end = nullptr;
    out = std::strtod(begin, &end);
    return end == begin + s.size() && !s.empty() && std::isfinite(out);
}

/// One directive line, tokenized. Parens are single-character tokens;
/// everything else is split on whitespace.
class LineTokens {
   public:
    LineTokens(const std::string &line, int line_no) : line_no_(line_no) {
        int col = 1;
        std::size_t i = 0;
        std::size_t n = line.size();
        if (n > 0 && line[n - 1] == '\r') {
            --n;
        }
        while (i < n) {
            char c = line[i];
            if (c == '#') {
                break;
            }
            if (c == ' ' || c == '\t') {
                ++i;
                ++col;
                continue;
            }
            if (c == '(' || c == ')') {
                tokens_.push_back({std::string(1, c), {line_no_, col}});
                ++i;
                ++col;
                continue;
            }
            int start_col = col;
            std::string text;
            while (i < n && line[i] != ' ' && line[i] != '\t' && line[i] != '(' && line[i] != ')' &&
                   line[i] != '#') {
                text += line[i];
                ++i;
                ++col;
            }
            tokens_.push_back({std::move(text), {line_no_, start_col}});
        }
        end_span_ = {line_no_, col};
    }

    bool done() const {
        return pos_ >= tokens_.size();
    }

    const Token &peek() const {
        if (done()) {
            throw ParseError(end_span_, "unexpected end of line");
        }
        return tokens_[pos_];
    }

    Token next() {
        const Token &t = peek();
        ++pos_;
        return t;
    }

    void expect(const std::string &text) {
        Token t = next();
        if (t.text != text) {
            throw ParseError(t.span, "expected '" + text + "', got '" + t.text + "'");
        }
    }

    SourceSpan here() const {
        return done() ? end_span_ : tokens_[pos_].span;
    }

    bool empty() const {
        return tokens_.empty();
    }

   private:
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    int line_no_;
    SourceSpan end_span_;
};

class KbParser {
   public:
    explicit KbParser(std::vector<std::string> *warnings) : warnings_(warnings) {}

    KnowledgeBase run(const std::string &text) {
        int line_no = 0;
        std::size_t start = 0;
        while (start <= text.size()) {
            std::size_t nl = text.find('\n', start);
            std::string line =
                nl == std::string::npos ? text.substr(start) : text.substr(start, nl - start);
            ++line_no;
            if (nl == std::string::npos && line.empty()) {
                break;
            }
            LineTokens toks(line, line_no);
            if (!toks.empty()) {
                parse_directive(toks);
            }
            if (nl == std::string::npos) {
                break;
            }
            start = nl + 1;
        }
        return std::move(kb_);
    }

   private:
    void parse_directive(LineTokens &toks) {
        Token head = toks.next();
        if (head.text == "theory") {
            Token name = expect_name(toks);
            wrap(name.span, [&] { kb_.declare_theory(name.text); });
        } else if (head.text == "predicate" || head.text == "function") {
            Token decl = toks.next();
            auto [name, arity] = split_arity(decl);
            if (head.text == "predicate") {
                wrap(decl.span, [&] { kb_.declare_predicate(name, arity); });
            } else {
                wrap(decl.span, [&] { kb_.declare_function(name, arity); });
            }
        } else if (head.text == "constant") {
            Token name = expect_name(toks);
            wrap(name.span, [&] { kb_.declare_constant(name.text); });
        } else if (head.text == "axiom") {
            parse_axiom(toks);
        } else if (head.text == "fact") {
            parse_fact(toks);
        } else if (head.text == "query") {
            parse_query(toks);
        } else {
            throw ParseError(head.span, "unknown directive '" + head.text + "'");
        }
        if (!toks.done()) {
            throw ParseError(toks.here(), "unexpected trailing token '" + toks.peek().text + "'");
        }
    }

    void parse_axiom(LineTokens &toks) {
        std::string name;
        SourceSpan span = toks.here();
        if (toks.peek().text != "(") {
            Token t = expect_name(toks);
            name = t.text;
            span = t.span;
        } else {
            name = fresh_axiom_name();
        }
        std::set<std::string> bound;
        Formula f = parse_formula(toks, bound);
        wrap(span, [&] { kb_.add_axiom(name, std::move(f)); });
    }

    void parse_fact(LineTokens &toks) {
        SourceSpan span = toks.here();
        toks.expect("(");
        Token head = toks.next();
        if (head.text == "not" || head.text == "and" || head.text == "or" || head.text == "implies" ||
            head.text == "iff" || head.text == "forall" || head.text == "exists") {
            throw ParseError(head.span, "facts must be ground atoms, got '" + head.text + "'");
        }
        if (head.text == "=" && !kb_.has_equality()) {
            throw ParseError(head.span, "'=' requires 'theory equality'");
        }
        if (head.text != "=" && !is_name(head.text)) {
            throw ParseError(head.span, "invalid predicate name '" + head.text + "'");
        }
        std::vector<Term> args;
        while (toks.peek().text != ")") {
            args.push_back(parse_term(toks, {}, /*implicit_constants=*/true));
        }
        toks.expect(")");
        TruthBounds bounds = parse_truth(toks);
        wrap(span, [&] { kb_.add_fact(head.text, std::move(args), bounds); });
    }

    void parse_query(LineTokens &toks) {
        Token name = expect_name(toks);
        std::set<std::string> bound;
        Formula f = parse_formula(toks, bound);
        World world = World::Open;
        if (!toks.done()) {
            Token t = toks.next();
            if (t.text != "as-axiom") {
                throw ParseError(t.span, "expected 'as-axiom', got '" + t.text + "'");
            }
            world = World::Axiom;
        }
        wrap(name.span, [&] { kb_.add_query(name.text, std::move(f), world); });
    }

    Formula parse_formula(LineTokens &toks, std::set<std::string> bound) {
        Token open = toks.next();
        if (open.text != "(") {
            throw ParseError(open.span, "expected '(', got '" + open.text + "'");
        }
        Token head = toks.next();
        if (head.text == "not") {
            Formula operand = parse_formula(toks, bound);
            toks.expect(")");
            return neg(std::move(operand));
        }
        if (head.text == "and" || head.text == "or" || head.text == "implies") {
            auto [weights, bias] = parse_options(toks);
            std::vector<Formula> operands;
            while (toks.peek().text != ")") {
                operands.push_back(parse_formula(toks, bound));
            }
            toks.expect(")");
            std::size_t wanted = head.text == "implies" ? 2 : operands.size();
            if ((head.text == "implies" && operands.size() != 2) || operands.size() < 2) {
                throw ParseError(head.span, "'" + head.text + "' expects " +
                                                (head.text == "implies" ? std::string("exactly 2")
                                                                        : std::string("at least 2")) +
                                                " operands, got " + std::to_string(operands.size()));
            }
            if (!weights.empty() && weights.size() != wanted) {
                throw ParseError(head.span, "':weights' lists " + std::to_string(weights.size()) +
                                                " values for " + std::to_string(wanted) + " operands");
            }
            if (head.text == "and") {
                return conj(std::move(operands), std::move(weights), bias);
            }
            if (head.text == "or") {
                return disj(std::move(operands), std::move(weights), bias);
            }
            return implies(std::move(operands[0]), std::move(operands[1]), std::move(weights), bias);
        }
        if (head.text == "iff") {
            Formula lhs = parse_formula(toks, bound);
            Formula rhs = parse_formula(toks, bound);
            toks.expect(")");
            return iff(std::move(lhs), std::move(rhs));
        }
        if (head.text == "forall" || head.text == "exists") {
            Token var = toks.next();
            if (!is_name(var.text)) {
                throw ParseError(var.span, "invalid variable name '" + var.text + "'");
            }
            if (kb_.symbol_kind(var.text)) {
                throw ParseError(var.span,
                                 "quantifier variable '" + var.text + "' collides with a declared symbol");
            }
            bound.insert(var.text);
            Formula body = parse_formula(toks, bound);
            toks.expect(")");
            return head.text == "forall" ? forall(var.text, std::move(body))
                                         : exists(var.text, std::move(body));
        }
        // Anything else heads an atom.
        if (head.text == "=") {
            if (!kb_.has_equality()) {
                throw ParseError(head.span, "'=' requires 'theory equality'");
            }
        } else {
            if (!is_name(head.text)) {
                throw ParseError(head.span, "invalid predicate name '" + head.text + "'");
            }
            auto kind = kb_.symbol_kind(head.text);
            if (!kind) {
                throw ParseError(head.span, "undeclared predicate '" + head.text + "'");
            }
            if (*kind != KnowledgeBase::SymbolKind::Predicate) {
                throw ParseError(head.span, "'" + head.text + "' is not a predicate");
            }
        }
        std::vector<Term> args;
        while (toks.peek().text != ")") {
            args.push_back(parse_term(toks, bound, /*implicit_constants=*/false));
        }
        toks.expect(")");
        auto arity = kb_.predicate_arity(head.text);
        if (static_cast<int>(args.size()) != *arity) {
            throw ParseError(head.span, "predicate '" + head.text + "' needs " + std::to_string(*arity) +
                                            " arguments, got " + std::to_string(args.size()));
        }
        return atom(head.text, std::move(args));
    }

    Term parse_term(LineTokens &toks, const std::set<std::string> &bound, bool implicit_constants) {
        Token t = toks.next();
        if (t.text == "(") {
            Token head = toks.next();
            if (!is_name(head.text)) {
                throw ParseError(head.span, "invalid function name '" + head.text + "'");
            }
            auto arity = kb_.function_arity(head.text);
            if (!arity) {
                throw ParseError(head.span, "undeclared function '" + head.text + "'");
            }
            std::vector<Term> args;
            while (toks.peek().text != ")") {
                args.push_back(parse_term(toks, bound, implicit_constants));
            }
            toks.expect(")");
            if (static_cast<int>(args.size()) != *arity) {
                throw ParseError(head.span, "function '" + head.text + "' needs " + std::to_string(*arity) +
                                                " arguments, got " + std::to_string(args.size()));
            }
            return fapp(head.text, std::move(args));
        }
        if (!is_name(t.text)) {
            throw ParseError(t.span, "invalid term '" + t.text + "'");
        }
        if (bound.count(t.text)) {
            return variable(t.text);
        }
        auto kind = kb_.symbol_kind(t.text);
        if (kind == std::optional(KnowledgeBase::SymbolKind::Constant)) {
            return constant(t.text);
        }
        if (kind == std::optional(KnowledgeBase::SymbolKind::Function)) {
            throw ParseError(t.span, "function '" + t.text + "' needs arguments");
        }
        if (kind == std::optional(KnowledgeBase::SymbolKind::Predicate)) {
            throw ParseError(t.span, "'" + t.text + "' is a predicate, not a term");
        }
        if (implicit_constants) {
            wrap(t.span, [&] { kb_.declare_constant(t.text); });
            warn("line " + std::to_string(t.span.line) + ": implicitly declared constant '" + t.text + "'");
            return constant(t.text);
        }
        throw ParseError(t.span,
                         "undeclared symbol '" + t.text + "' (variables must be bound by a quantifier)");
    }

    std::pair<std::vector<double>, double> parse_options(LineTokens &toks) {
        std::vector<double> weights;
        double bias = 1.0;
        bool saw_weights = false;
        bool saw_bias = false;
        while (!toks.done() && !toks.peek().text.empty() && toks.peek().text[0] == ':') {
            Token opt = toks.next();
            if (opt.text == ":weights") {
                if (saw_weights) {
                    throw ParseError(opt.span, "duplicate ':weights'");
                }
                saw_weights = true;
                toks.expect("(");
                while (toks.peek().text != ")") {
                    Token num = toks.next();
                    double w;
                    if (!parse_double(num.text, w)) {
                        throw ParseError(num.span, "expected a number, got '" + num.text + "'");
                    }
                    if (w < 0.0) {
                        throw ParseError(num.span, "weights must be nonnegative");
                    }
                    weights.push_back(w);
                }
                toks.expect(")");
                if (weights.empty()) {
                    throw ParseError(opt.span, "':weights' needs at least one value");
                }
            } else if (opt.text == ":bias") {
                if (saw_bias) {
                    throw ParseError(opt.span, "duplicate ':bias'");
                }
                saw_bias = true;
                Token num = toks.next();
                if (!parse_double(num.text, bias)) {
                    throw ParseError(num.span, "expected a number, got '" + num.text + "'");
                }
                if (bias < 0.0) {
                    throw ParseError(num.span, "bias must be nonnegative");
                }
            } else {
                throw ParseError(opt.span, "unknown option '" + opt.text + "'");
            }
        }
        return {std::move(weights), bias};
    }

    TruthBounds parse_truth(LineTokens &toks) {
        Token first = toks.next();
        if (first.text == "true") {
            return bounds_true();
        }
        if (first.text == "false") {
            return bounds_false();
        }
        if (first.text == "unknown") {
            return bounds_unknown();
        }
        double lower;
        if (!parse_double(first.text, lower)) {
            throw ParseError(first.span, "expected a truth value, got '" + first.text + "'");
        }
        Token second = toks.next();
        double upper;
        if (!parse_double(second.text, upper)) {
            throw ParseError(second.span, "expected an upper bound, got '" + second.text + "'");
        }
        return {lower, upper};
    }

    Token expect_name(LineTokens &toks) {
        Token t = toks.next();
        if (!is_name(t.text)) {
            throw ParseError(t.span, "invalid name '" + t.text + "'");
        }
        return t;
    }

    std::pair<std::string, int> split_arity(const Token &t) {
        auto slash = t.text.rfind('/');
        if (slash == std::string::npos || slash == 0 || slash + 1 == t.text.size()) {
            throw ParseError(t.span, "expected '<name>/<arity>', got '" + t.text + "'");
        }
        std::string name = t.text.substr(0, slash);
        std::string digits = t.text.substr(slash + 1);
        if (!is_name(name)) {
            throw ParseError(t.span, "invalid name '" + name + "'");
        }
        for (char c : digits) {
            if (c < '0' || c > '9') {
                throw ParseError(t.span, "invalid arity '" + digits + "'");
            }
        }
        return {name, std::atoi(digits.c_str())};
    }

    std::string fresh_axiom_name() {
        while (true) {
            std::string name = "ax" + std::to_string(auto_axiom_counter_++);
            if (!kb_.has_axiom(name)) {
                return name;
            }
        }
    }

    template <class Fn>
    void wrap(SourceSpan span, Fn &&fn) {
        try {
            fn();
        } catch (const ParseError &) {
            throw;
        } catch (const Error &e) {
            throw ParseError(span, e.what());
        }
    }

    void warn(std::string message) {
        if (warnings_) {
            warnings_->push_back(std::move(message));
        }
    }

    KnowledgeBase kb_;
    std::vector<std::string> *warnings_;
    int auto_axiom_counter_ = 1;
};

}  // namespace detail

/// Parses knowledge-base text. Non-fatal notes (such as constants declared
/// implicitly by facts) are appended to `warnings` when given; hard
/// violations throw ParseError carrying a 1-based source position.
inline KnowledgeBase parse_kb(const std::string &text, std::vector<std::string> *warnings = nullptr) {
    detail::KbParser parser(warnings);
    return parser.run(text);
}

}  // namespace lnn

#endif
