#include <doctest.h>

#include "support.hpp"
#include "term_gen.hpp"
#include "traitproof/clause.hpp"
#include "traitproof/unify.hpp"

using namespace traitproof;
using namespace traitproof::logic;

namespace {

Term ctor(const char* n, std::vector<Term> args = {}) { return Term::ctor(n, std::move(args)); }
Term i32() { return ctor("i32"); }
Term pair_i32() { return Term::tuple({i32(), i32()}); }

}  // namespace

TEST_CASE("unify examples") {
    auto same = unify(i32(), i32());
    REQUIRE(std::holds_alternative<Substitution>(same));
    CHECK(std::get<Substitution>(same).empty());

    const Term x = Term::var(1, "X");
    auto bind = unify(ctor("Vec", {x}), ctor("Vec", {pair_i32()}));
    REQUIRE(std::holds_alternative<Substitution>(bind));
    const auto& s = std::get<Substitution>(bind);
    REQUIRE(s.size() == 1);
    CHECK(*s.lookup(1) == pair_i32());

    auto occurs = unify(x, ctor("Vec", {x}));
    REQUIRE(std::holds_alternative<UnifyFailure>(occurs));
    CHECK(std::get<UnifyFailure>(occurs).kind == UnifyFailureKind::OccursCheck);

    auto clash = unify(ctor("Res", {Term::var(2, "T")}), ctor("Timer"));
    REQUIRE(std::holds_alternative<UnifyFailure>(clash));
    const auto& f = std::get<UnifyFailure>(clash);
    CHECK(f.kind == UnifyFailureKind::CtorClash);
    CHECK(f.left.to_string() == "Res<?T>");
    CHECK(f.right.to_string() == "Timer");
}

TEST_CASE("unify failure kinds") {
    auto arity = unify(Term::tuple({i32()}), Term::tuple({i32(), i32()}));
    CHECK(std::get<UnifyFailure>(arity).kind == UnifyFailureKind::ArityClash);
    auto sk = unify(Term::skolem(1, "T"), i32());
    CHECK(std::get<UnifyFailure>(sk).kind == UnifyFailureKind::SkolemClash);
    auto sk2 = unify(Term::skolem(1, "T"), Term::skolem(2, "U"));
    CHECK(std::get<UnifyFailure>(sk2).kind == UnifyFailureKind::SkolemClash);
    auto sk_same = unify(Term::skolem(1, "T"), Term::skolem(1, "T"));
    CHECK(std::holds_alternative<Substitution>(sk_same));
    auto sk_var = unify(Term::var(3), Term::skolem(1, "T"));
    REQUIRE(std::holds_alternative<Substitution>(sk_var));
    CHECK(std::get<Substitution>(sk_var).lookup(3)->is_skolem());
    CHECK(to_code(UnifyFailureKind::CtorClash) == std::string("ctor_clash"));
    CHECK(to_code(UnifyFailureKind::SkolemClash) == std::string("skolem_clash"));
}

TEST_CASE("variable meets variable: larger id is bound") {
    auto r = unify(Term::var(2), Term::var(7));
    const auto& s = std::get<Substitution>(r);
    REQUIRE(s.lookup(7));
    CHECK(*s.lookup(7) == Term::var(2));
    CHECK(std::get<Substitution>(unify(Term::var(7), Term::var(2))) == s);
}

TEST_CASE("apply_substitution examples") {
    Substitution s;
    REQUIRE(s.bind(1, i32()));
    CHECK(apply_substitution(s, ctor("Vec", {Term::var(1)})) == ctor("Vec", {i32()}));
    const Term t = ctor("Pair", {Term::var(4), Term::fn({Term::var(5)})});
    CHECK(apply_substitution(Substitution{}, t) == t);

    // The element subject of the ToString derivation.
    Substitution theta;
    REQUIRE(theta.bind(1, pair_i32()));
    CHECK(apply_substitution(theta, Term::var(1, "X")).to_string() == "(i32, i32)");
}

TEST_CASE("bind keeps ranges normalized and rejects cycles") {
    Substitution s;
    REQUIRE(s.bind(1, ctor("Vec", {Term::var(2)})));
    REQUIRE(s.bind(2, i32()));
    CHECK(*s.lookup(1) == ctor("Vec", {i32()}));
    CHECK_FALSE(s.bind(1, i32()));
    Substitution c;
    REQUIRE(c.bind(1, ctor("Box", {Term::var(2)})));
    CHECK_FALSE(c.bind(2, ctor("Box", {Term::var(1)})));
    CHECK(tp_test::well_formed(s));
}

TEST_CASE("unification laws on generated pairs") {
    tp_test::TermGen gen(11);
    int unified = 0;
    for (int i = 0; i < 2000; ++i) {
        auto [a, b] = gen.pair();
        auto ab = unify(a, b);
        auto ba = unify(b, a);
        REQUIRE(ab.index() == ba.index());
        if (auto* s = std::get_if<Substitution>(&ab)) {
            ++unified;
            const auto& t = std::get<Substitution>(ba);
            CHECK(s->apply(a) == s->apply(b));
            CHECK(t.apply(a) == t.apply(b));
            CHECK(s->apply(a) == t.apply(a));
            CHECK(s->apply(s->apply(a)) == s->apply(a));
            CHECK(tp_test::well_formed(*s));
        }
    }
    CHECK(unified > 400);
    CHECK(unified < 1600);
}

TEST_CASE("unify extends its input substitution") {
    tp_test::TermGen gen(12);
    for (int i = 0; i < 500; ++i) {
        auto [a, b] = gen.pair();
        auto [c, d] = gen.pair();
        auto first = unify(a, b);
        auto* s0 = std::get_if<Substitution>(&first);
        if (!s0) continue;
        auto second = unify(c, d, *s0);
        if (auto* s1 = std::get_if<Substitution>(&second)) {
            CHECK(s1->apply(a) == s1->apply(b));
            CHECK(s1->apply(c) == s1->apply(d));
            for (const auto& [v, t] : s0->bindings()) CHECK(s1->apply(Term::var(v)) == s1->apply(t));
        }
    }
}

TEST_CASE("is_variant") {
    CHECK(is_variant(ctor("Pair", {Term::var(1), Term::var(2)}), ctor("Pair", {Term::var(5), Term::var(9)})));
    CHECK_FALSE(is_variant(ctor("Pair", {Term::var(1), Term::var(1)}), ctor("Pair", {Term::var(5), Term::var(9)})));
    CHECK_FALSE(is_variant(ctor("Pair", {Term::var(1), Term::var(2)}), ctor("Pair", {Term::var(5), Term::var(5)})));
    CHECK_FALSE(is_variant(Term::var(1), i32()));
    CHECK(is_variant(Term::skolem(1, "T"), Term::skolem(1, "T")));
    CHECK_FALSE(is_variant(Term::skolem(1, "T"), Term::skolem(2, "T")));
}

TEST_CASE("instantiate_clause gives fresh variables per use") {
    const auto program = tp_test::corpus("tostring.tdl");
    const auto clauses = program_clauses(program);
    REQUIRE(clauses.size() == 2);
    VarSupply vars;
    const InstantiatedClause a = instantiate_clause(clauses[1], vars);
    const InstantiatedClause b = instantiate_clause(clauses[1], vars);
    CHECK(a.head.subject.args()[0].is_var());
    CHECK(a.head.subject.args()[0].id() != b.head.subject.args()[0].id());
    CHECK(a.head.to_string() == "Vec<?T>: ToString");
    REQUIRE(a.body.size() == 1);
    CHECK(a.body[0].bound.subject == a.head.subject.args()[0]);
    CHECK(a.body[0].span == clauses[1].body[0].span);

    const InstantiatedClause fact = instantiate_clause(clauses[0], vars);
    CHECK(fact.head == clauses[0].head.bound);
    CHECK(fact.body.empty());
}

TEST_CASE("instantiating the two-parameter system rule keeps where-clause spans") {
    const auto program = tp_test::corpus("bevy_mini.tdl");
    const auto clauses = program_clauses(program);
    const ImplClause* rule = nullptr;
    for (const auto& c : clauses)
        if (c.head.bound.trait_name == "SystemParamFunction") rule = &c;
    REQUIRE(rule);
    VarSupply vars(100);
    const InstantiatedClause inst = instantiate_clause(*rule, vars);
    REQUIRE(inst.body.size() == 2);
    CHECK(inst.body[0].bound.to_string() == "?F0: SystemParam");
    CHECK(inst.body[1].bound.to_string() == "?F1: SystemParam");
    CHECK(inst.body[0].bound.subject.id() >= 100);
    CHECK(inst.body[0].span.line_start == 17);
    CHECK(inst.body[0].span.col_start == 55);
    CHECK(inst.body[1].span.col_start == 72);
}

TEST_CASE("skolemize_query") {
    const auto program = tp_test::validated(
        "trait ToString; type Vec<T>; type i32;\n"
        "query forall<T> if (T: ToString) { Vec<T>: ToString };\n"
        "query { Vec<i32>: ToString };\n"
        "query forall<A, B> { (A, B): ToString };\n"
        "query { Vec<?X>: ToString };\n");
    const auto& qs = program.program().queries;
    VarSupply vars;
    SkolemizedQuery hh = skolemize_query(qs[0], vars);
    CHECK(hh.goal.to_string() == "Vec<T>: ToString");
    REQUIRE(hh.goal.subject.args()[0].is_skolem());
    REQUIRE(hh.hypotheses.size() == 1);
    CHECK(hh.hypotheses[0].origin == ClauseOrigin::Hypothesis);
    CHECK(hh.hypotheses[0].hypothesis_index == 1);
    CHECK(hh.hypotheses[0].head.bound.subject == hh.goal.subject.args()[0]);
    CHECK(hh.hypotheses[0].body.empty());

    SkolemizedQuery ground = skolemize_query(qs[1], vars);
    CHECK(ground.goal.ground());
    CHECK(ground.hypotheses.empty());

    SkolemizedQuery two = skolemize_query(qs[2], vars);
    REQUIRE(two.skolems.size() == 2);
    CHECK_FALSE(two.skolems[0] == two.skolems[1]);

    const VarId before = vars.peek();
    SkolemizedQuery ex = skolemize_query(qs[3], vars);
    REQUIRE(ex.existentials.count("X"));
    CHECK(ex.existentials.at("X") >= before);
    CHECK(ex.goal.subject.args()[0].is_var());
}
