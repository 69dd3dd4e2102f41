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

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "catch2/catch_amalgamated.hpp"
#include "lnn/activations.hpp"
#include "lnn/inference.hpp"
#include "lnn/parser.hpp"
#include "lnn/pipeline.hpp"

using namespace lnn;

namespace {

using BP = BoundPair<double>;

BP point(double v) {
    return {v, v};
}

const std::vector<double> kUnit{1.0, 1.0};

bool close(double a, double b, double tol = 1e-12) {
    return std::fabs(a - b) <= tol;
}

// End-to-end helper mirroring the tool: expand, compile, infer.
InferenceReport run_kb(const std::string &text, InferenceConfig cfg = {}) {
    NeuronGraph g = compile(augment(parse_kb(text)).kb);
    return infer(g, cfg);
}

const RootState &root_named(const InferenceReport &r, const std::string &name) {
    for (const auto &root : r.roots) {
        if (root.name == name) {
            return root;
        }
    }
    FAIL("no root named " + name);
    throw InternalError("unreachable");
}

}  // namespace

TEST_CASE("upward activations on interval inputs", "[inference][upward]") {
    BP a = upward_and({point(0.7), point(0.6)}, kUnit, 1.0);
    CHECK(close(a.lo, 0.3));
    CHECK(close(a.up, 0.3));

    BP o = upward_or({point(0.7), point(0.6)}, kUnit, 1.0);
    CHECK(close(o.lo, 1.0));
    CHECK(close(o.up, 1.0));

    BP i = upward_implies(point(0.7), point(0.6), kUnit, 1.0);
    CHECK(close(i.lo, 0.9));
    CHECK(close(i.up, 0.9));

    BP n = upward_not(BP{0.3, 0.8});
    CHECK(close(n.lo, 0.2));
    CHECK(close(n.up, 0.7));

    // Saturation: the conjunction of two weak truths bottoms out at 0.
    BP clamped = upward_and({point(0.2), point(0.3)}, kUnit, 1.0);
    CHECK(close(clamped.lo, 0.0));
    CHECK(close(clamped.up, 0.0));
}

TEST_CASE("upward activations keep interval orientation", "[inference][upward]") {
    BP a = upward_and({{0.4, 0.9}, {0.2, 0.7}}, kUnit, 1.0);
    CHECK(close(a.lo, 0.0));  // 0.4 + 0.2 - 1 clamped
    CHECK(close(a.up, 0.6));

    // The antecedent enters an implication antitonically: its upper bound
    // feeds the result's lower bound.
    BP i = upward_implies({0.4, 0.9}, {0.2, 0.3}, kUnit, 1.0);
    CHECK(close(i.lo, 1.0 - 0.9 + 0.2));
    CHECK(close(i.up, 1.0 - 0.4 + 0.3));

    BP saturated = upward_implies({0.4, 0.9}, {0.2, 0.7}, kUnit, 1.0);
    CHECK(close(saturated.up, 1.0));  // 1 - 0.4 + 0.7 clamps
}

TEST_CASE("identity elements behave classically", "[inference][upward]") {
    for (int k = 0; k <= 10; ++k) {
        double x = k / 10.0;
        CHECK(close(upward_and({point(x), point(1.0)}, kUnit, 1.0).lo, x));
        CHECK(close(upward_or({point(x), point(0.0)}, kUnit, 1.0).lo, x));
        CHECK(close(upward_implies(point(1.0), point(x), kUnit, 1.0).lo, x));
        CHECK(close(upward_implies(point(x), point(0.0), kUnit, 1.0).lo, 1.0 - x));
        CHECK(close(upward_not(upward_not(point(x))).lo, x));
    }
}

TEST_CASE("unit-weight activations match the closed forms", "[inference][upward]") {
    for (int i = 0; i <= 10; ++i) {
        for (int j = 0; j <= 10; ++j) {
            double p = i / 10.0;
            double q = j / 10.0;

            double and_expect = std::max(0.0, p + q - 1.0);
            double or_expect = std::min(1.0, p + q);
            double imp_expect = std::min(1.0, 1.0 - p + q);

            CHECK(close(upward_and({point(p), point(q)}, kUnit, 1.0).lo, and_expect));
            CHECK(close(upward_and({point(p), point(q)}, kUnit, 1.0).up, and_expect));
            CHECK(close(upward_or({point(p), point(q)}, kUnit, 1.0).lo, or_expect));
            CHECK(close(upward_implies(point(p), point(q), kUnit, 1.0).lo, imp_expect));
            CHECK(close(upward_not(point(p)).lo, 1.0 - p));

            // De Morgan: not(and(p, q)) == or(not p, not q).
            BP lhs = upward_not(upward_and({point(p), point(q)}, kUnit, 1.0));
            BP rhs = upward_or({upward_not(point(p)), upward_not(point(q))}, kUnit, 1.0);
            CHECK(close(lhs.lo, rhs.lo));
            CHECK(close(lhs.up, rhs.up));

            // Implication is the disjunction of the negated antecedent.
            BP imp = upward_implies(point(p), point(q), kUnit, 1.0);
            BP as_or = upward_or({upward_not(point(p)), point(q)}, kUnit, 1.0);
            CHECK(close(imp.lo, as_or.lo));
            CHECK(close(imp.up, as_or.up));
        }
    }
}

TEST_CASE("boolean corners reproduce the classical tables", "[inference][upward]") {
    for (double p : {0.0, 1.0}) {
        for (double q : {0.0, 1.0}) {
            bool bp = p > 0.5;
            bool bq = q > 0.5;
            CHECK(upward_and({point(p), point(q)}, kUnit, 1.0).lo == (bp && bq ? 1.0 : 0.0));
            CHECK(upward_or({point(p), point(q)}, kUnit, 1.0).lo == (bp || bq ? 1.0 : 0.0));
            CHECK(upward_implies(point(p), point(q), kUnit, 1.0).lo == (!bp || bq ? 1.0 : 0.0));
        }
        CHECK(upward_not(point(p)).lo == 1.0 - p);
    }
}

TEST_CASE("quantifier activations take extrema", "[inference][upward]") {
    std::vector<BP> in{{0.2, 0.9}, {0.4, 0.6}, {0.3, 1.0}};
    BP all = upward_forall(in);
    CHECK(all.lo == 0.2);
    CHECK(all.up == 0.6);
    BP any = upward_exists(in);
    CHECK(any.lo == 0.4);
    CHECK(any.up == 1.0);
}

TEST_CASE("downward rules reproduce the classical inferences", "[inference][downward]") {
    SECTION("modus ponens") {
        BP lhs = point(1.0);
        BP rhs = {0.0, 1.0};
        downward_implies(point(1.0), lhs, rhs, kUnit, 1.0);
        CHECK(close(rhs.lo, 1.0));
        CHECK(close(rhs.up, 1.0));
        CHECK(lhs.lo == 1.0);
    }
    SECTION("modus tollens") {
        BP lhs = {0.0, 1.0};
        BP rhs = point(0.0);
        downward_implies(point(1.0), lhs, rhs, kUnit, 1.0);
        CHECK(close(lhs.up, 0.0));
    }
    SECTION("a false implication fixes both sides") {
        BP lhs = {0.0, 1.0};
        BP rhs = {0.0, 1.0};
        downward_implies(point(0.0), lhs, rhs, kUnit, 1.0);
        CHECK(close(lhs.lo, 1.0));
        CHECK(close(rhs.up, 0.0));
    }
    SECTION("unknown antecedent and consequent stay unknown") {
        BP lhs = {0.0, 1.0};
        BP rhs = {0.0, 1.0};
        downward_implies(point(1.0), lhs, rhs, kUnit, 1.0);
        CHECK(lhs.lo == 0.0);
        CHECK(lhs.up == 1.0);
        CHECK(rhs.lo == 0.0);
        CHECK(rhs.up == 1.0);
    }
    SECTION("a true conjunction makes every operand true") {
        std::vector<BP> ch{{0.0, 1.0}, {0.0, 1.0}};
        downward_and(point(1.0), ch, kUnit, 1.0);
        CHECK(close(ch[0].lo, 1.0));
        CHECK(close(ch[1].lo, 1.0));
    }
    SECTION("a false disjunction makes every operand false") {
        std::vector<BP> ch{{0.0, 1.0}, {0.0, 1.0}};
        downward_or(point(0.0), ch, kUnit, 1.0);
        CHECK(close(ch[0].up, 0.0));
        CHECK(close(ch[1].up, 0.0));
    }
    SECTION("disjunctive syllogism") {
        std::vector<BP> ch{point(0.0), {0.0, 1.0}};
        downward_or(point(1.0), ch, kUnit, 1.0);
        CHECK(close(ch[1].lo, 1.0));
    }
    SECTION("negation flips the interval") {
        BP ch = {0.0, 1.0};
        downward_not({0.2, 0.7}, ch);
        CHECK(close(ch.lo, 0.3));
        CHECK(close(ch.up, 0.8));
    }
    SECTION("a true universal constrains every instance") {
        std::vector<BP> ch{{0.0, 1.0}, {0.3, 0.9}};
        downward_forall(point(1.0), ch);
        CHECK(close(ch[0].lo, 1.0));
        CHECK(close(ch[1].lo, 1.0));
    }
    SECTION("a false existential constrains every instance") {
        std::vector<BP> ch{{0.0, 1.0}, {0.1, 0.8}};
        downward_exists(point(0.0), ch);
        CHECK(close(ch[0].up, 0.0));
        CHECK(close(ch[1].up, 0.0));
    }
}

TEST_CASE("downward rules never tighten away a witness", "[inference][downward][property]") {
    // Any child assignment inside the original intervals whose activation
    // lands inside the node interval must survive the tightening.
    std::mt19937 rng(20260815);
    std::uniform_real_distribution<double> u(0.0, 1.0);

    auto random_interval = [&]() -> BP {
        double lo = u(rng);
        double up = lo + u(rng) * (1.0 - lo);
        return {lo, up};
    };
    auto random_weight = [&]() {
        return u(rng) < 0.15 ? 0.0 : 0.1 + 1.9 * u(rng);
    };
    auto sample = [&](const BP &b, int k, int steps) {
        return b.lo + (b.up - b.lo) * k / steps;
    };

    const int kCases = 300;
    const int kSteps = 5;
    for (int c = 0; c < kCases; ++c) {
        std::vector<double> w{random_weight(), random_weight()};
        double bias = 0.5 + u(rng);
        std::vector<BP> ch{random_interval(), random_interval()};
        int op = c % 3;

        BP reachable = op == 0   ? upward_and(ch, w, bias)
                       : op == 1 ? upward_or(ch, w, bias)
                                 : upward_implies(ch[0], ch[1], w, bias);

        // Shrink the node interval but keep one reachable activation in it.
        double x0 = sample(ch[0], static_cast<int>(u(rng) * kSteps), kSteps);
        double x1 = sample(ch[1], static_cast<int>(u(rng) * kSteps), kSteps);
        BP witness = op == 0   ? upward_and({point(x0), point(x1)}, w, bias)
                     : op == 1 ? upward_or({point(x0), point(x1)}, w, bias)
                               : upward_implies(point(x0), point(x1), w, bias);
        BP node{luk_max(reachable.lo, witness.lo - 0.3 * u(rng)),
                luk_min(reachable.up, witness.up + 0.3 * u(rng))};

        std::vector<BP> tightened = ch;
        if (op == 0) {
            downward_and(node, tightened, w, bias);
        } else if (op == 1) {
            downward_or(node, tightened, w, bias);
        } else {
            downward_implies(node, tightened[0], tightened[1], w, bias);
        }

        for (int i = 0; i <= kSteps; ++i) {
            for (int j = 0; j <= kSteps; ++j) {
                double a = sample(ch[0], i, kSteps);
                double b = sample(ch[1], j, kSteps);
                BP act = op == 0   ? upward_and({point(a), point(b)}, w, bias)
                         : op == 1 ? upward_or({point(a), point(b)}, w, bias)
                                   : upward_implies(point(a), point(b), w, bias);
                if (act.lo < node.lo - 1e-12 || act.up > node.up + 1e-12) {
                    continue;
                }
                INFO("case " << c << " op " << op << " w " << w[0] << "," << w[1] << " bias "
                             << bias << " point " << a << "," << b);
                CHECK(a >= tightened[0].lo - 1e-9);
                CHECK(a <= tightened[0].up + 1e-9);
                CHECK(b >= tightened[1].lo - 1e-9);
                CHECK(b <= tightened[1].up + 1e-9);
            }
        }
    }
}

TEST_CASE("inference applies modus ponens end to end", "[inference]") {
    InferenceReport r = run_kb(
        "predicate p/0\n"
        "predicate q/0\n"
        "axiom rule (implies (p) (q))\n"
        "fact (p) true\n"
        "query goal (q)\n");

    CHECK(r.converged);
    CHECK_FALSE(r.has_contradiction());
    const RootState &goal = root_named(r, "goal");
    CHECK(goal.state == PrimaryState::True);
    CHECK(goal.bounds == bounds_true());
}

TEST_CASE("inference chains through grounded quantifiers", "[inference]") {
    InferenceReport r = run_kb(
        "predicate dog/1\n"
        "predicate barks/1\n"
        "constant Aggie\n"
        "constant Tara\n"
        "axiom all (forall $x (implies (dog $x) (barks $x)))\n"
        "fact (dog Aggie) true\n"
        "query a (barks Aggie)\n"
        "query t (barks Tara)\n");

    CHECK(root_named(r, "a").state == PrimaryState::True);
    CHECK(root_named(r, "t").state == PrimaryState::Unknown);
}

TEST_CASE("an equality chain closes within twenty passes", "[inference]") {
    InferenceReport r = run_kb(
        "theory equality\n"
        "constant a\n"
        "constant b\n"
        "constant c\n"
        "fact (= a b) true\n"
        "fact (= b c) true\n"
        "query first_last (= a c)\n"
        "query reversed (= c a)\n",
        {0.75, 20, 1e-6});

    CHECK(r.converged);
    CHECK(root_named(r, "first_last").state == PrimaryState::True);
    CHECK(root_named(r, "reversed").state == PrimaryState::True);
}

TEST_CASE("equality substitutes into predicates", "[inference]") {
    InferenceReport r = run_kb(
        "theory equality\n"
        "predicate dog/1\n"
        "fact (dog Aggie) true\n"
        "fact (= Aggie Fruton) true\n"
        "query q (not (dog Fruton)) as-axiom\n");

    CHECK(r.has_contradiction());
    CHECK(root_named(r, "q").state == PrimaryState::Contradiction);
}

TEST_CASE("conflicting facts surface as a contradiction, not an exception", "[inference]") {
    InferenceReport r = run_kb(
        "predicate p/0\n"
        "predicate q/0\n"
        "axiom rule (implies (p) (q))\n"
        "fact (p) true\n"
        "fact (q) false\n");
    CHECK(r.has_contradiction());
    CHECK(root_named(r, "rule").state == PrimaryState::Contradiction);
}

TEST_CASE("an empty graph converges immediately", "[inference]") {
    NeuronGraph g = compile(parse_kb("predicate p/0\n"));
    InferenceReport r = infer(g);
    CHECK(r.converged);
    CHECK(r.passes_run == 1);
    CHECK(r.roots.empty());
}

TEST_CASE("alpha controls the truth threshold", "[inference]") {
    const char *text =
        "predicate p/0\n"
        "fact (p) 0.8 1\n"
        "query q (p)\n";
    InferenceReport loose = run_kb(text, {0.75, 100, 1e-6});
    CHECK(root_named(loose, "q").state == PrimaryState::True);

    InferenceReport strict = run_kb(text, {0.9, 100, 1e-6});
    CHECK(root_named(strict, "q").state == PrimaryState::Unknown);
}

TEST_CASE("inference is deterministic", "[inference]") {
    KnowledgeBase kb = parse_kb(
        "predicate p/1\n"
        "predicate q/1\n"
        "constant a\n"
        "constant b\n"
        "axiom all (forall $x (implies (p $x) (or (q $x) (p $x))))\n"
        "fact (p a) 0.3 0.9\n"
        "query g (q a)\n");

    NeuronGraph g1 = compile(kb);
    NeuronGraph g2 = compile(kb);
    InferenceReport r1 = infer(g1);
    InferenceReport r2 = infer(g2);
    REQUIRE(g1.nodes.size() == g2.nodes.size());
    for (std::size_t i = 0; i < g1.nodes.size(); ++i) {
        // Bitwise equality, not approximate: the sweep must be stable.
        CHECK(g1.nodes[i].bounds.lower == g2.nodes[i].bounds.lower);
        CHECK(g1.nodes[i].bounds.upper == g2.nodes[i].bounds.upper);
    }
    CHECK(r1.passes_run == r2.passes_run);
}

TEST_CASE("config validation", "[inference]") {
    NeuronGraph g = compile(parse_kb("predicate p/0\nquery q (p)\n"));
    CHECK_THROWS_AS(infer(g, {0.5, 100, 1e-6}), ConfigError);
    CHECK_THROWS_AS(infer(g, {0.75, 0, 1e-6}), ConfigError);
    CHECK_THROWS_AS(infer(g, {0.75, 100, 0.0}), ConfigError);
}

namespace {

// Random propositional knowledge bases: nullary predicates, no quantifiers.
std::string random_propositional_kb(unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    auto pick = [&](int n) {
        return std::uniform_int_distribution<int>(0, n - 1)(rng);
    };

    int npred = 2 + pick(4);
    std::string text;
    for (int i = 0; i < npred; ++i) {
        text += "predicate p" + std::to_string(i) + "/0\n";
    }

    std::function<std::string(int)> gen = [&](int depth) -> std::string {
        if (depth <= 0 || u(rng) < 0.35) {
            return "(p" + std::to_string(pick(npred)) + ")";
        }
        switch (pick(5)) {
            case 0:
                return "(not " + gen(depth - 1) + ")";
            case 1:
                return "(and " + gen(depth - 1) + " " + gen(depth - 1) + ")";
            case 2:
                return "(or " + gen(depth - 1) + " " + gen(depth - 1) + ")";
            case 3:
                return "(implies " + gen(depth - 1) + " " + gen(depth - 1) + ")";
            default:
                return "(iff " + gen(depth - 1) + " " + gen(depth - 1) + ")";
        }
    };

    int naxiom = 1 + pick(3);
    for (int i = 0; i < naxiom; ++i) {
        text += "axiom a" + std::to_string(i) + " " + gen(3) + "\n";
    }
    int nfact = pick(npred);
    for (int i = 0; i < nfact; ++i) {
        double lo = std::floor(u(rng) * 1000.0) / 1000.0;
        double up = lo + std::floor(u(rng) * (1.0 - lo) * 1000.0) / 1000.0;
        text += "fact (p" + std::to_string(i) + ") " + std::to_string(lo) + " " +
                std::to_string(up) + "\n";
    }
    return text;
}

}  // namespace

TEST_CASE("propositional graphs converge and only tighten", "[inference][property]") {
    for (unsigned seed = 0; seed < 80; ++seed) {
        NeuronGraph g = compile(parse_kb(random_propositional_kb(seed)));
        InferenceReport r = infer(g);
        INFO("seed " << seed);
        CHECK(r.converged);
        CHECK(r.passes_run < 100);
        for (const auto &n : g.nodes) {
            // Monotone refinement: final bounds lie inside the initials.
            CHECK(n.bounds.lower >= n.initial.lower);
            CHECK(n.bounds.upper <= n.initial.upper);
        }
    }
}

TEST_CASE("inference tightens the atom tables", "[inference]") {
    NeuronGraph g = compile(parse_kb(
        "predicate p/0\n"
        "predicate q/0\n"
        "axiom rule (implies (p) (q))\n"
        "fact (p) true\n"));
    infer(g);
    CHECK(g.tables.at("q").rows.at({}) == bounds_true());
}
