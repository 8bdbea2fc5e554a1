#include <doctest.h>

#include "support.hpp"
#include "traitproof/clause.hpp"
#include "traitproof/export.hpp"
#include "traitproof/oracle.hpp"

using namespace traitproof;
using proof::Combine;
using proof::ProofTree;
using proof::ResultKind;
using proof::SolveResult;
using tp_test::corpus;
using tp_test::solve;

namespace {

std::vector<std::string> displays(const ProofTree& t) {
    std::vector<std::string> out;
    for (const auto& n : t.nodes) out.push_back(n.display);
    return out;
}

logic::Term ctor(const char* n) { return logic::Term::ctor(n); }

}  // namespace

TEST_CASE("combine_results examples") {
    CHECK(proof::combine_results(Combine::Or, {}).kind == ResultKind::Disproven);
    CHECK(proof::combine_results(Combine::And, {}).kind == ResultKind::Proven);
    const SolveResult pd[] = {SolveResult::proven(), SolveResult::disproven()};
    CHECK(proof::combine_results(Combine::And, pd).kind == ResultKind::Disproven);

    const logic::Term m = logic::Term::var(1, "M");
    const logic::Bound goal{ctor("F"), "IntoSystem", {m}};
    logic::Substitution to_marker, to_a, to_b;
    REQUIRE(to_marker.bind(1, ctor("SystemMarker")));
    REQUIRE(to_a.bind(1, ctor("A")));
    REQUIRE(to_b.bind(1, ctor("B")));
    const proof::CombineContext ctx{&goal, nullptr};

    const SolveResult branch[] = {SolveResult::disproven(), SolveResult::proven(to_marker)};
    const SolveResult picked = proof::combine_results(Combine::Or, branch, ctx);
    REQUIRE(picked.kind == ResultKind::Proven);
    CHECK(*picked.solution.lookup(1) == ctor("SystemMarker"));

    const SolveResult two[] = {SolveResult::proven(to_a), SolveResult::proven(to_b)};
    const SolveResult amb = proof::combine_results(Combine::Or, two, ctx);
    CHECK(amb.kind == ResultKind::Ambiguous);
    CHECK(amb.solution_count == 2);

    const SolveResult agree[] = {SolveResult::proven(to_a), SolveResult::proven(to_a)};
    CHECK(proof::combine_results(Combine::Or, agree, ctx).kind == ResultKind::Proven);
}

TEST_CASE("lattice dominance orders") {
    using K = ResultKind;
    auto r = [](K k) { return k == K::Ambiguous ? SolveResult::ambiguous(2) : SolveResult{k, {}, 0}; };
    const std::vector<K> and_order{K::Disproven, K::Cycle, K::Overflow, K::Ambiguous, K::Proven};
    for (std::size_t i = 0; i < and_order.size(); ++i)
        for (std::size_t j = i; j < and_order.size(); ++j) {
            const SolveResult xs[] = {r(and_order[j]), r(and_order[i])};
            CHECK(proof::combine_results(Combine::And, xs).kind == and_order[i]);
        }
    const std::vector<K> or_order{K::Proven, K::Ambiguous, K::Overflow, K::Cycle, K::Disproven};
    const logic::Bound ground{ctor("A"), "T", {}};
    for (std::size_t i = 0; i < or_order.size(); ++i)
        for (std::size_t j = i; j < or_order.size(); ++j) {
            const SolveResult xs[] = {r(or_order[j]), r(or_order[i])};
            CHECK(proof::combine_results(Combine::Or, xs, {&ground, nullptr}).kind == or_order[i]);
        }
}

TEST_CASE("two impls with different answers are ambiguous, matching the oracle") {
    const auto p = tp_test::validated(
        "trait Pick<M>; type A; type B; type F;\n"
        "impl Pick<A> for F;\nimpl Pick<B> for F;\n"
        "query { F: Pick<?M> };\n"
        "query { F: Pick<A> };\n");
    const ProofTree t = solve(p, 0);
    CHECK(t.root_node().result.kind == ResultKind::Ambiguous);
    CHECK(t.root_node().result.solution_count == 2);
    const auto o = oracle::solve_exhaustive_oracle(p.program().queries[0], p);
    CHECK(o.verdict == oracle::Verdict::Ambiguous);
    CHECK(o.solution_count == 2);
    CHECK(solve(p, 1).root_node().result.kind == ResultKind::Proven);
}

TEST_CASE("overlapping impls on a ground goal: Proven with an overlap note") {
    const auto p = tp_test::validated("trait T; type A; impl T for A; impl<X> T for X; query { A: T };");
    const ProofTree t = solve(p, 0);
    CHECK(t.root_node().result.kind == ResultKind::Proven);
    CHECK(t.root_node().goal().overlap);
}

TEST_CASE("assemble_candidates: hypotheses first, then impls by trait name") {
    const auto p = corpus("tostring.tdl");
    const auto clauses = logic::program_clauses(p);
    const logic::Bound i32_goal{ctor("i32"), "ToString", {}};
    auto c = solver::assemble_candidates(i32_goal, clauses, {});
    REQUIRE(c.size() == 2);
    CHECK(c[0]->impl_id == 1);
    CHECK(c[1]->impl_id == 2);

    const auto h = corpus("harrop.tdl");
    logic::VarSupply vars;
    const auto sq = logic::skolemize_query(h.program().queries[0], vars);
    const logic::Bound sk_goal{sq.skolems[0], "ToString", {}};
    const auto h_clauses = logic::program_clauses(h);
    auto hc = solver::assemble_candidates(sk_goal, h_clauses, sq.hypotheses);
    REQUIRE(hc.size() == 3);
    CHECK(hc[0]->origin == logic::ClauseOrigin::Hypothesis);
    CHECK(hc[1]->impl_id == 1);
    CHECK(hc[2]->impl_id == 2);

    const auto bevy = corpus("bevy_mini.tdl");
    const ProofTree tree = solve(bevy, 0);
    const proof::NodeId into = tp_test::find_node(tree, "fn(Query<Entity>, Timer): IntoSystem<?M>");
    REQUIRE(into != 0);
    const auto bevy_clauses = logic::program_clauses(bevy);
    auto bc = solver::assemble_candidates(tree.node(into).goal().goal, bevy_clauses, {});
    CHECK(bc.size() == 2);
}

TEST_CASE("ToString success tree") {
    const ProofTree t = solve(corpus("tostring.tdl"), 0);
    CHECK(t.root_node().result.kind == ResultKind::Proven);
    CHECK(displays(t) == std::vector<std::string>{"Vec<(i32, i32)>: ToString", "impl @tostring.tdl:3",
                                                  "impl @tostring.tdl:4", "(i32, i32): ToString",
                                                  "impl @tostring.tdl:3", "impl @tostring.tdl:4"});
    const auto& root_alt1 = t.node(2).candidate();
    CHECK(root_alt1.impl_id == 1);
    REQUIRE(root_alt1.failure());
    CHECK(root_alt1.failure()->kind == logic::UnifyFailureKind::CtorClash);
    CHECK(t.node(2).result.kind == ResultKind::Disproven);
    CHECK(t.node(3).candidate().impl_id == 2);
    CHECK(t.node(3).result.kind == ResultKind::Proven);
    CHECK(t.node(5).candidate().impl_id == 1);
    CHECK(t.node(5).result.kind == ResultKind::Proven);
    CHECK(t.node(4).provenance.line_start == 4);
}

TEST_CASE("ToString failure tree") {
    const ProofTree t = solve(corpus("tostring.tdl"), 1);
    CHECK(t.root_node().result.kind == ResultKind::Disproven);
    REQUIRE(t.size() == 6);
    CHECK(t.node(4).display == "i32: ToString");
    CHECK(t.node(4).result.kind == ResultKind::Disproven);
    for (proof::NodeId c : t.node(4).children) CHECK_FALSE(t.node(c).candidate().head_unified());
}

TEST_CASE("bevy tree shape") {
    const ProofTree t = solve(corpus("bevy_mini.tdl"), 0);
    CHECK(t.root_node().result.kind == ResultKind::Disproven);
    CHECK(displays(t) == std::vector<std::string>{
                             "fn(Query<Entity>, Timer): IntoSystemConfigs<?M>",
                             "impl @bevy_mini.tdl:14",
                             "fn(Query<Entity>, Timer): IntoSystem<?M>",
                             "impl @bevy_mini.tdl:15",
                             "fn(Query<Entity>, Timer): SystemParamFunction",
                             "impl @bevy_mini.tdl:17",
                             "Query<Entity>: SystemParam",
                             "impl @bevy_mini.tdl:19",
                             "impl @bevy_mini.tdl:20",
                             "Entity: WorldQuery",
                             "impl @bevy_mini.tdl:21",
                             "Timer: SystemParam",
                             "impl @bevy_mini.tdl:19",
                             "impl @bevy_mini.tdl:20",
                             "impl @bevy_mini.tdl:16",
                             "fn(Query<Entity>, Timer): ExclusiveSystemParamFunction",
                             "impl @bevy_mini.tdl:18",
                         });
    CHECK(t.node(3).children.size() == 2);
    CHECK(t.node(7).result.kind == ResultKind::Proven);
    CHECK(t.node(12).result.kind == ResultKind::Disproven);
    CHECK(t.node(12).children.size() == 2);
    CHECK(t.node(12).depth == 3);
    CHECK(t.node(16).depth == 2);
    CHECK(t.node(17).candidate().failure()->kind == logic::UnifyFailureKind::CtorClash);
    CHECK(t.node(17).candidate().failure()->left.to_string() == "World");
}

TEST_CASE("hypothetical query") {
    const auto p = corpus("harrop.tdl");
    const ProofTree with = solve(p, 0);
    CHECK(with.root_node().result.kind == ResultKind::Proven);
    const proof::NodeId inner = tp_test::find_node(with, "T: ToString");
    REQUIRE(inner != 0);
    const auto& first = with.node(with.node(inner).children.front());
    CHECK(first.candidate().origin == logic::ClauseOrigin::Hypothesis);
    CHECK(first.result.kind == ResultKind::Proven);
    CHECK(with.node(with.node(1).children.front()).candidate().failure()->kind ==
          logic::UnifyFailureKind::SkolemClash);
    CHECK(solve(p, 1).root_node().result.kind == ResultKind::Disproven);
}

TEST_CASE("limits: overflow, cycle and node budget") {
    const ProofTree box = solve(corpus("box_loop.tdl"), 0);
    CHECK(box.root_node().result.kind == ResultKind::Overflow);
    CHECK(box.size() == 65);
    std::uint32_t deepest = 0;
    for (const auto& n : box.nodes) deepest = std::max(deepest, n.depth);
    CHECK(deepest == 32);
    CHECK(box.nodes.back().result.kind == ResultKind::Overflow);
    CHECK(box.nodes.back().children.empty());

    const ProofTree odd = solve(corpus("odd.tdl"), 0);
    CHECK(odd.root_node().result.kind == ResultKind::Cycle);
    REQUIRE(odd.size() == 3);
    CHECK(odd.node(3).result.kind == ResultKind::Cycle);
    CHECK(odd.node(3).children.empty());

    CHECK_THROWS_AS(solve(corpus("box_loop.tdl"), 0, proof::SolverConfig{32, 10}), solver::BudgetExhausted);
    const ProofTree shallow = solve(corpus("box_loop.tdl"), 0, proof::SolverConfig{1, 100});
    CHECK(shallow.size() == 3);
    CHECK(shallow.node(3).result.kind == ResultKind::Overflow);
}

TEST_CASE("an empty trait disproves its goal") {
    const auto p = tp_test::validated("trait T; type A; query { A: T };");
    CHECK(solve(p, 0).size() == 1);
    CHECK(solve(p, 0).root_node().result.kind == ResultKind::Disproven);
    CHECK(oracle::solve_exhaustive_oracle(p.program().queries[0], p).verdict == oracle::Verdict::Disproven);
}

TEST_CASE("tree properties on generated programs") {
    for (std::uint64_t i = 0; i < 300; ++i) {
        const std::string text = oracle::generate_program(2024, i);
        const auto p = tp_test::validated(text);
        const auto& q = p.program().queries.front();
        ProofTree t;
        try {
            t = solver::solve_query(p, q, proof::SolverConfig{8, 20'000});
        } catch (const solver::BudgetExhausted&) {
            continue;
        }
        INFO(text);
        CHECK(proof::check_consistency(t) == std::nullopt);

        // Every candidate of every expanded goal is present.
        std::size_t hyps_by_trait = 0;
        for (const auto& n : t.nodes) {
            if (!n.is_goal()) continue;
            const bool limit = n.result.kind == ResultKind::Overflow || n.result.kind == ResultKind::Cycle;
            if (limit && n.children.empty()) continue;
            std::size_t expected = 0;
            for (const auto& impl : p.program().impls)
                if (impl.head.trait_ref.trait_name == n.goal().goal.trait_name) ++expected;
            hyps_by_trait = 0;
            for (const auto& h : q.hypotheses)
                if (h.trait_ref.trait_name == n.goal().goal.trait_name) ++hyps_by_trait;
            CHECK(n.children.size() == expected + hyps_by_trait);
        }
        for (const auto& n : t.nodes)
            for (proof::NodeId c : n.children) {
                CHECK(c > n.id);
                CHECK(t.node(c).depth == (n.is_goal() ? n.depth : n.depth + 1));
            }

        const ProofTree again = solver::solve_query(p, q, proof::SolverConfig{8, 20'000});
        CHECK(again == t);
        exchange::TreeDocument a, b;
        a.tree = t;
        b.tree = again;
        CHECK(exchange::export_json(a) == exchange::export_json(b));
    }
}
