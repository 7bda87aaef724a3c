// Copyright 2026 The circex authors
// SPDX-License-Identifier: Apache-2.0
//
// Parser/printer tests: structure checks on handwritten KBs, error cases,
// and a parse(render(.)) fixpoint property over generated KBs.
#include <doctest.h>

#include <random>
#include <sstream>

#include "circex/syntax.hpp"

using namespace circex;

namespace {
ConceptPtr N(const std::string& s) { return Concept::make_name(s); }
} // namespace

TEST_CASE("parse a small knowledge base") {
    const char* text = R"(
# flightless birds
semantics: var
priority: specificity

Penguin <= Bird
Bird <=n Flies
[ground] Penguin <=n not Flies
Penguin(tweety)
)";
    ParsedKB p = parse_kb(text);
    CHECK(p.cfg.mode == CircMode::Var);
    CHECK(p.kb.priority.mode == PriorityMode::Specificity);
    REQUIRE(p.kb.strong.size() == 2);
    CHECK(p.kb.strong[0].kind == AxiomKind::Inclusion);
    CHECK(p.kb.strong[1].kind == AxiomKind::ConceptAssertion);
    CHECK(p.kb.strong[1].ind == "tweety");
    REQUIRE(p.kb.defeasible.size() == 2);
    CHECK(p.kb.defeasible[0].label == "d1"); // auto label
    CHECK(p.kb.defeasible[1].label == "ground");
    CHECK(p.kb.defeasible[1].rhs->kind == ConceptKind::Not);
}

TEST_CASE("roles are recognized from usage and declaration") {
    ParsedKB p = parse_kb(
        "roles: S\n"
        "A <= exists R . B\n"
        "R <= S\n"
        "R(a, b)\n");
    CHECK(p.kb.declared_roles.count("R"));
    CHECK(p.kb.declared_roles.count("S"));
    REQUIRE(p.kb.strong.size() == 3);
    CHECK(p.kb.strong[1].kind == AxiomKind::RoleInclusion);
    CHECK(p.kb.strong[2].kind == AxiomKind::RoleAssertion);
    CHECK(p.kb.strong[2].ind == "a");
    CHECK(p.kb.strong[2].ind2 == "b");

    // Without the declaration R <= S is a concept inclusion between names.
    ParsedKB q = parse_kb("R <= S\n");
    CHECK(q.kb.strong[0].kind == AxiomKind::Inclusion);

    // Inverse role inclusions parse on either side.
    ParsedKB r = parse_kb("roles: R S\ninv(R) <= S\nR <= inv(S)\n");
    CHECK(r.kb.strong[0].kind == AxiomKind::RoleInclusion);
    CHECK(r.kb.strong[0].lrole.inverse);
    CHECK(r.kb.strong[1].rrole.inverse);
}

TEST_CASE("concept grammar: precedence, nominals, inverses") {
    ParsedKB p = parse_kb("A & not B <= exists R . (C & {joe})\n");
    const Axiom& a = p.kb.strong[0];
    REQUIRE(a.lhs->kind == ConceptKind::And);
    CHECK(a.lhs->children[1]->kind == ConceptKind::Not);
    REQUIRE(a.rhs->kind == ConceptKind::Exists);
    REQUIRE(a.rhs->filler()->kind == ConceptKind::And);
    CHECK(a.rhs->filler()->children[1]->kind == ConceptKind::Nominal);

    ParsedKB q = parse_kb("exists inv(R) <= top\nbot <= A\n");
    CHECK(q.kb.strong[0].lhs->role.inverse);
    CHECK(q.kb.strong[0].lhs->unqualified_exists());
    CHECK(q.kb.strong[1].lhs->kind == ConceptKind::Bot);
}

TEST_CASE("definitions") {
    ParsedKB p = parse_kb("A == B & exists R . C\n");
    REQUIRE(p.kb.strong.size() == 1);
    CHECK(p.kb.strong[0].kind == AxiomKind::Definition);
    CHECK(p.kb.strong[0].lhs->name == "A");
    CHECK_THROWS_AS(parse_kb("A & B == C\n"), ParseError);
}

TEST_CASE("prefer lines set explicit priority") {
    ParsedKB p = parse_kb(
        "[a] A <=n B\n"
        "[b] C <=n D\n"
        "[c] E <=n F\n"
        "prefer a < b\n"
        "prefer b < c\n");
    CHECK(p.kb.priority.mode == PriorityMode::Explicit);
    auto cl = explicit_priority_closure(p.kb);
    CHECK(cl.count({"a", "b"}));
    CHECK(cl.count({"b", "c"}));
    CHECK(cl.count({"a", "c"})); // transitive
    CHECK(!cl.count({"c", "a"}));
}

TEST_CASE("parse errors carry positions and messages") {
    CHECK_THROWS_WITH_AS(parse_kb("A <= B | C\n"), doctest::Contains("disjunction"),
                         ParseError);
    CHECK_THROWS_WITH_AS(parse_kb("[x] A <=n B\n[x] C <=n D\n"),
                         doctest::Contains("duplicate"), ParseError);
    CHECK_THROWS_WITH_AS(parse_kb("A <=n B\nprefer d1 < nosuch\n"),
                         doctest::Contains("unknown defeasible label"), ParseError);
    CHECK_THROWS_WITH_AS(parse_kb("priority: empty\nA <=n B\nC <=n D\nprefer d1 < d2\n"),
                         doctest::Contains("prefer lines require"), ParseError);
    CHECK_THROWS_WITH_AS(
        parse_kb("[a] A <=n B\n[b] C <=n D\nprefer a < b\nprefer b < a\n"),
        doctest::Contains("cycle"), Error);
    CHECK_THROWS_WITH_AS(parse_kb("A <=n B\nprefer d1 < d1\n"),
                         doctest::Contains("cannot override itself"), ParseError);
    CHECK_THROWS_WITH_AS(parse_kb("fixed: A\nsemantics: var\nA <= B\n"),
                         doctest::Contains("custom"), ParseError);
    CHECK_THROWS_WITH_AS(parse_kb("fixed-roles: R\nA <= B\n"),
                         doctest::Contains("bounded-only"), ParseError);
    CHECK_THROWS_WITH_AS(parse_kb("[x] A <= B\n"),
                         doctest::Contains("only allowed on defeasible"), ParseError);
    CHECK_THROWS_AS(parse_kb("A <=\n"), ParseError);
    CHECK_THROWS_AS(parse_kb("A\n"), ParseError);
    CHECK_THROWS_AS(parse_kb("A ? B\n"), ParseError);
    CHECK_THROWS_AS(parse_kb("whatever: x\n"), ParseError);
    // role assertion shape with a known role but one argument
    CHECK_THROWS_WITH_AS(parse_kb("R(a, b)\nR(a)\n"), doctest::Contains("role"),
                         ParseError);
}

TEST_CASE("fixed names imply custom semantics when none is given") {
    ParsedKB p = parse_kb("fixed: A B\nA <= B\n");
    CHECK(p.cfg.mode == CircMode::Custom);
    CHECK(p.cfg.fixed_concepts == std::set<std::string>{"A", "B"});
}

TEST_CASE("queries parse and render") {
    Query q1 = parse_query("consistent?");
    CHECK(q1.kind == QueryKind::Consistent);
    Query q2 = parse_query("subsumed? A & B <= exists R . C");
    CHECK(q2.kind == QueryKind::Subsumption);
    CHECK(render_query(q2) == "subsumed? A & B <= exists R . C");
    Query q3 = parse_query("satisfiable? A | not B");
    CHECK(q3.kind == QueryKind::Satisfiable);
    CHECK(q3.lhs->kind == ConceptKind::Or);
    Query q4 = parse_query("instance? exists R . (A & B)(joe)");
    CHECK(q4.kind == QueryKind::Instance);
    CHECK(q4.ind == "joe");
    CHECK(q4.lhs->kind == ConceptKind::Exists);
    Query q5 = parse_query("instance? A(a)");
    CHECK(q5.lhs->name == "A");
    CHECK(q5.ind == "a");

    for (const char* s :
         {"consistent?", "subsumed? A <= B | C", "satisfiable? not (A & B)",
          "instance? A & exists R(joe)"}) {
        Query q = parse_query(s);
        Query q2x = parse_query(render_query(q));
        CHECK(render_query(q2x) == render_query(q));
    }
    CHECK_THROWS_AS(parse_query("prove? A"), ParseError);
    CHECK_THROWS_AS(parse_query("instance? A"), ParseError);
    CHECK_THROWS_AS(parse_query("subsumed? A"), ParseError);
}

TEST_CASE("rendering adds parentheses only where needed") {
    auto c = Concept::exists(Role("R"), Concept::conj({N("A"), N("B")}));
    CHECK(render_concept(c) == "exists R . (A & B)");
    auto d = Concept::negation(Concept::conj({N("A"), N("B")}));
    CHECK(render_concept(d) == "not (A & B)");
    auto e = Concept::conj({N("A"), Concept::negation(N("B"))});
    CHECK(render_concept(e) == "A & not B");
    auto f = Concept::disj({Concept::conj({N("A"), N("B")}), N("C")});
    CHECK(render_concept(f) == "A & B | C");
    auto g = Concept::conj({Concept::disj({N("A"), N("B")}), N("C")});
    CHECK(render_concept(g) == "(A | B) & C");
    auto h = Concept::exists(Role("R", true), Concept::exists(Role("S")));
    CHECK(render_concept(h) == "exists inv(R) . exists S");
}

TEST_CASE("render/parse is a fixpoint on a handwritten KB") {
    const char* text = R"(
semantics: custom
priority: explicit
fixed: Penguin
Penguin <= Bird
Bird <= exists hasOrgan . Wing
hasPet <= likes
owner == exists hasPet
Penguin(tweety)
hasPet(joe, tweety)
[fly] Bird <=n Flies
[nofly] Penguin <=n not Flies
prefer nofly < fly
)";
    ParsedKB p = parse_kb(text);
    std::string r1 = render_kb(p.kb, p.cfg);
    ParsedKB p2 = parse_kb(r1);
    std::string r2 = render_kb(p2.kb, p2.cfg);
    CHECK(r1 == r2);
    CHECK(p2.kb.strong.size() == p.kb.strong.size());
    CHECK(p2.kb.defeasible.size() == p.kb.defeasible.size());
    CHECK(explicit_priority_closure(p2.kb) == explicit_priority_closure(p.kb));
    CHECK(p2.cfg.fixed_concepts == p.cfg.fixed_concepts);
}

namespace {

// Random KB generator used for the round-trip property.
struct Gen {
    std::mt19937_64 rng;
    std::vector<std::string> names = {"A", "B", "C", "D"};
    std::vector<std::string> rolenames = {"R", "S"};
    std::vector<std::string> inds = {"a", "b"};

    explicit Gen(uint64_t seed) : rng(seed) {}
    int pick(int n) { return (int)(rng() % n); }

    ConceptPtr gen_concept(int depth, bool allow_or) {
        int choice = pick(depth <= 0 ? 4 : (allow_or ? 9 : 8));
        switch (choice) {
            case 0: return N(names[pick((int)names.size())]);
            case 1: return Concept::top();
            case 2: return Concept::bot();
            case 3: return Concept::nominal(inds[pick((int)inds.size())]);
            case 4: return Concept::negation(gen_concept(depth - 1, allow_or));
            case 5: {
                Role r(rolenames[pick((int)rolenames.size())], pick(2) == 0);
                if (pick(3) == 0) return Concept::exists(r);
                return Concept::exists(r, gen_concept(depth - 1, allow_or));
            }
            case 6:
            case 7:
                return Concept::conj(
                    {gen_concept(depth - 1, allow_or), gen_concept(depth - 1, allow_or)});
            default:
                return Concept::disj(
                    {gen_concept(depth - 1, allow_or), gen_concept(depth - 1, allow_or)});
        }
    }

    DKB kb() {
        DKB out;
        int ns = 1 + pick(5), nd = pick(4);
        for (int i = 0; i < ns; ++i) {
            switch (pick(4)) {
                case 0:
                    out.strong.push_back(
                        Axiom::inclusion(gen_concept(2, false), gen_concept(2, false)));
                    break;
                case 1:
                    out.strong.push_back(Axiom::concept_assertion(
                        N(names[pick((int)names.size())]), inds[pick((int)inds.size())]));
                    break;
                case 2:
                    out.strong.push_back(
                        Axiom::role_assertion(Role(rolenames[pick(2)]),
                                              inds[pick(2)], inds[pick(2)]));
                    break;
                default:
                    out.strong.push_back(Axiom::role_inclusion(
                        Role(rolenames[pick(2)], pick(2) == 0),
                        Role(rolenames[pick(2)], pick(2) == 0)));
                    break;
            }
        }
        for (int i = 0; i < nd; ++i)
            out.defeasible.push_back(Axiom::defeasible(
                gen_concept(1, false), gen_concept(1, false), "d" + std::to_string(i + 1)));
        int pm = pick(3);
        out.priority.mode = pm == 0   ? PriorityMode::Specificity
                            : pm == 1 ? PriorityMode::Empty
                                      : PriorityMode::Explicit;
        if (out.priority.mode == PriorityMode::Explicit && nd >= 2) {
            // edges only downward in index order: acyclic by construction
            for (int i = 0; i < nd; ++i)
                for (int j = i + 1; j < nd; ++j)
                    if (pick(3) == 0)
                        out.priority.edges.insert(
                            {"d" + std::to_string(i + 1), "d" + std::to_string(j + 1)});
        }
        return out;
    }
};

} // namespace

TEST_CASE("render/parse fixpoint holds on generated KBs") {
    for (uint64_t seed = 1; seed <= 60; ++seed) {
        Gen g(seed);
        DKB kb = g.kb();
        CircConfig cfg;
        int mode = g.pick(3);
        cfg.mode = mode == 0 ? CircMode::Var : mode == 1 ? CircMode::Fix : CircMode::Custom;
        if (cfg.mode == CircMode::Custom) cfg.fixed_concepts = {"A"};
        std::string r1 = render_kb(kb, cfg);
        CAPTURE(seed);
        CAPTURE(r1);
        ParsedKB p = parse_kb(r1);
        std::string r2 = render_kb(p.kb, p.cfg);
        CHECK(r1 == r2);
        CHECK(p.kb.strong.size() == kb.strong.size());
        CHECK(p.kb.defeasible.size() == kb.defeasible.size());
        if (kb.priority.mode == PriorityMode::Explicit)
            CHECK(explicit_priority_closure(p.kb) == explicit_priority_closure(kb));
    }
}
