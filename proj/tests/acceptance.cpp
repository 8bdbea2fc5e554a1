// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "prune_checks.hpp"
#include "support.hpp"
#include "term_gen.hpp"
#include "traitproof/cli.hpp"
#include "traitproof/export.hpp"
#include "traitproof/oracle.hpp"

using namespace traitproof;
using tp_test::corpus;
using tp_test::solve;
using logic::Term;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
};

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, cli::Io{out, err, false});
    return {code, out.str(), err.str()};
}

double millis_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::string fmt_ms(double ms) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f ms", ms);
    return buf;
}

int failures = 0;

void report(int number, const std::string& title, const std::function<Outcome()>& body) {
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o.ok = false;
        o.detail = std::string("exception: ") + e.what();
    }
    if (!o.ok) ++failures;
    std::cout << (o.ok ? "PASS" : "FAIL") << " criterion " << number << ": " << title;
    if (!o.detail.empty()) std::cout << " (" << o.detail << ")";
    std::cout << std::endl;
}

std::string root_cause_line(const std::string& text) {
    const std::size_t at = text.find("ROOT CAUSE?");
    if (at == std::string::npos) return {};
    const std::size_t start = text.rfind('\n', at) + 1;
    return text.substr(start, text.find('\n', at) - start);
}

std::vector<proof::ProofTree> corpus_trees() {
    std::vector<proof::ProofTree> trees;
    for (const char* f : {"tostring.tdl", "bevy_mini.tdl", "harrop.tdl", "odd.tdl", "box_loop.tdl"}) {
        const auto p = corpus(f);
        for (std::size_t q = 0; q < p.program().queries.size(); ++q) trees.push_back(solve(p, q));
    }
    return trees;
}

Outcome criterion_tostring_failure() {
    Outcome o;
    const auto start = Clock::now();
    const CliRun r = run_cli({"check", tp_test::corpus_path("tostring.tdl"), "--query", "2", "--format", "json"});
    const double ms = millis_since(start);
    o.require(r.code == 1, "exit code " + std::to_string(r.code));
    const auto doc = exchange::import_json(r.out);
    o.require(!doc.diagnosis.empty() && doc.diagnosis[0].rendered_bound == "i32: ToString", "wrong top-1 bound");
    const CliRun text = run_cli({"check", tp_test::corpus_path("tostring.tdl"), "--query", "2"});
    o.require(root_cause_line(text.out).find("i32: ToString") != std::string::npos, "text marker missing");
    o.require(ms < 100.0, "runtime " + fmt_ms(ms));
    if (o.ok) o.detail = fmt_ms(ms);
    return o;
}

Outcome criterion_tostring_success() {
    Outcome o;
    const auto start = Clock::now();
    const CliRun r = run_cli({"check", tp_test::corpus_path("tostring.tdl"), "--query", "1", "--format", "json"});
    const double ms = millis_since(start);
    o.require(r.code == 0, "exit code " + std::to_string(r.code));
    const auto doc = exchange::import_json(r.out);
    const auto& t = doc.tree;
    o.require(t.root_node().result.is_proven(), "root not Proven");
    const auto& root_alts = t.root_node().children;
    o.require(root_alts.size() == 2, "root should have two candidates");
    if (o.ok) {
        const auto& first = t.node(root_alts[0]);
        o.require(first.is_candidate() && first.candidate().impl_id == 1 && first.candidate().failure() != nullptr,
                  "impl 1 head failure at the root not recorded");
        const auto& second = t.node(root_alts[1]);
        o.require(second.is_candidate() && second.candidate().impl_id == 2 && second.result.is_proven(),
                  "impl 2 does not prove the root");
        o.require(second.children.size() == 1, "impl 2 should have one subgoal");
        if (o.ok) {
            const auto& sub = t.node(second.children[0]);
            o.require(sub.display == "(i32, i32): ToString" && sub.result.is_proven(), "subgoal not Proven");
            bool via_impl1 = false;
            for (auto c : sub.children)
                via_impl1 |= t.node(c).candidate().impl_id == 1 && t.node(c).result.is_proven();
            o.require(via_impl1, "subgoal not discharged by impl 1");
        }
    }
    o.require(ms < 100.0, "runtime " + fmt_ms(ms));
    if (o.ok) o.detail = fmt_ms(ms);
    return o;
}

Outcome criterion_bevy() {
    Outcome o;
    const auto start = Clock::now();
    const CliRun r = run_cli({"check", tp_test::corpus_path("bevy_mini.tdl"), "--format", "json"});
    const double ms = millis_since(start);
    o.require(r.code == 1, "exit code " + std::to_string(r.code));
    const auto doc = exchange::import_json(r.out);
    const auto& t = doc.tree;
    o.require(t.root_node().result.kind == proof::ResultKind::Disproven, "root not Disproven");
    const auto into = tp_test::find_node(t, "fn(Query<Entity>, Timer): IntoSystem<?M>");
    o.require(into != 0, "IntoSystem goal missing");
    if (into) o.require(t.node(into).children.size() == 2, "IntoSystem goal should have 2 candidates");
    const auto query = tp_test::find_node(t, "Query<Entity>: SystemParam");
    o.require(query != 0 && t.node(query).result.is_proven(), "Query<Entity>: SystemParam not Proven");
    o.require(!doc.diagnosis.empty() && doc.diagnosis[0].rendered_bound == "Timer: SystemParam", "wrong top-1 bound");
    o.require(ms < 200.0, "runtime " + fmt_ms(ms));
    if (o.ok) o.detail = fmt_ms(ms);
    return o;
}

Outcome criterion_harrop() {
    Outcome o;
    const auto p = corpus("harrop.tdl");
    const auto with = solve(p, 0);
    o.require(with.root_node().result.is_proven(), "assumed query not Proven");
    const auto inner = tp_test::find_node(with, "T: ToString");
    o.require(inner != 0, "element goal missing");
    if (inner) {
        bool hypothesis_proves = false;
        for (auto c : with.node(inner).children)
            hypothesis_proves |= with.node(c).candidate().origin == logic::ClauseOrigin::Hypothesis &&
                                 with.node(c).result.is_proven();
        o.require(hypothesis_proves, "hypothesis candidate does not prove the element goal");
    }
    o.require(solve(p, 1).root_node().result.kind == proof::ResultKind::Disproven, "unassumed query not Disproven");
    return o;
}

Outcome criterion_oracle() {
    Outcome o;
    const auto start = Clock::now();
    for (const char* seed : {"42", "7", "1234"}) {
        const CliRun r = run_cli({"compare-oracle", "--seed", seed, "--cases", "500"});
        o.require(r.code == 0, std::string("seed ") + seed + " exit " + std::to_string(r.code));
        o.require(r.out.find("500 cases, 500 agree") != std::string::npos, std::string("seed ") + seed + " disagrees");
    }
    const double ms = millis_since(start);
    o.require(ms < 60'000.0, "runtime " + fmt_ms(ms));
    if (o.ok) o.detail = "3 seeds x 500 cases, " + fmt_ms(ms);
    return o;
}

Outcome criterion_unification() {
    using logic::Substitution;
    Outcome o;
    tp_test::TermGen gen(20261014);
    int failures_seen = 0, unified = 0, occurs = 0;
    for (int i = 0; i < 10'000; ++i) {
        auto [a, b] = gen.pair();
        const auto ab = logic::unify(a, b);
        const auto ba = logic::unify(b, a);
        bool ok = ab.index() == ba.index();
        if (const auto* s = std::get_if<Substitution>(&ab); s && ok) {
            ++unified;
            const auto& t = std::get<Substitution>(ba);
            ok = s->apply(a) == s->apply(b) && t.apply(a) == t.apply(b) && s->apply(a) == t.apply(a) &&
                 s->apply(s->apply(a)) == s->apply(a) && tp_test::well_formed(*s);
        }
        // Occurs check: a variable never unifies with a proper term containing it.
        const Term host = Term::ctor("Box", {a});
        std::set<logic::VarId> vars;
        a.collect_vars(vars);
        if (!vars.empty()) {
            const auto r = logic::unify(Term::var(*vars.begin()), host);
            const auto* f = std::get_if<logic::UnifyFailure>(&r);
            ok = ok && f && f->kind == logic::UnifyFailureKind::OccursCheck;
            ++occurs;
        }
        if (!ok) ++failures_seen;
    }
    o.require(failures_seen == 0, std::to_string(failures_seen) + " failing pairs");
    o.require(unified > 2000, "too few unifiable pairs");
    if (o.ok)
        o.detail = "10000 pairs, " + std::to_string(unified) + " unifiable, " + std::to_string(occurs) +
                   " occurs checks, 0 failures";
    return o;
}

Outcome criterion_pruning() {
    Outcome o;
    auto trees = corpus_trees();
    const std::size_t from_corpus = trees.size();
    for (std::uint64_t i = 0; trees.size() < from_corpus + 100; ++i) {
        const auto p = tp_test::validated(oracle::generate_program(9001, i));
        try {
            trees.push_back(solver::solve_query(p, p.program().queries.front(), proof::SolverConfig{8, 20'000}));
        } catch (const solver::BudgetExhausted&) {
        }
    }
    for (const auto& t : trees)
        if (auto bad = tp_test::check_prune_laws(t)) o.require(false, *bad + " at " + t.root_node().display);
    if (o.ok) o.detail = std::to_string(from_corpus) + " corpus + 100 generated trees, 4 policies";
    return o;
}

Outcome criterion_determinism() {
    Outcome o;
    std::size_t documents = 0;
    for (const char* f : {"tostring.tdl", "bevy_mini.tdl", "harrop.tdl", "odd.tdl", "box_loop.tdl"}) {
        for (const char* policy : {"none", "success-collapse", "failed-path", "best-alternative"}) {
            const std::vector<std::string> args{"check", tp_test::corpus_path(f), "--format", "json", "--prune", policy};
            const CliRun first = run_cli(args);
            const CliRun second = run_cli(args);
            o.require(first.out == second.out, std::string("runs differ on ") + f);
            const auto j = nlohmann::ordered_json::parse(first.out);
            for (const auto& element : j.is_array() ? j : nlohmann::ordered_json::array({j})) {
                const std::string bytes = element.dump(2) + "\n";
                const auto doc = exchange::import_json(bytes);
                o.require(exchange::export_json(doc) == bytes, std::string("round trip differs on ") + f);
                o.require(exchange::import_json(exchange::export_json(doc)) == doc,
                          std::string("import is not stable on ") + f);
                ++documents;
            }
        }
    }
    if (o.ok) o.detail = std::to_string(documents) + " documents";
    return o;
}

Outcome criterion_limits() {
    Outcome o;
    const proof::SolverConfig config{};
    const auto box = solve(corpus("box_loop.tdl"), 0, config);
    o.require(box.root_node().result.kind == proof::ResultKind::Overflow, "box program not Overflow");
    std::uint32_t deepest = 0;
    bool overflow_at_limit = false;
    for (const auto& n : box.nodes) {
        deepest = std::max(deepest, n.depth);
        overflow_at_limit |= n.is_goal() && n.depth == config.max_depth && n.result.kind == proof::ResultKind::Overflow;
    }
    o.require(deepest == config.max_depth && overflow_at_limit, "overflow not at max_depth");
    o.require(box.size() <= config.max_nodes, "box tree exceeds max_nodes");
    const auto odd = solve(corpus("odd.tdl"), 0, config);
    o.require(odd.root_node().result.kind == proof::ResultKind::Cycle, "odd program not Cycle");
    o.require(odd.size() <= config.max_nodes, "odd tree exceeds max_nodes");
    if (o.ok)
        o.detail = "Overflow at depth " + std::to_string(deepest) + " in " + std::to_string(box.size()) +
                   " nodes, Cycle in " + std::to_string(odd.size()) + " nodes";
    return o;
}

}  // namespace

int main() {
    report(1, "ToString failure localizes to i32: ToString", criterion_tostring_failure);
    report(2, "ToString success derivation", criterion_tostring_success);
    report(3, "bevy system registration tree", criterion_bevy);
    report(4, "hypothetical query via assumption", criterion_harrop);
    report(5, "solver agrees with the oracle", criterion_oracle);
    report(6, "unification laws", criterion_unification);
    report(7, "pruning soundness", criterion_pruning);
    report(8, "determinism and round trip", criterion_determinism);
    report(9, "termination limits", criterion_limits);
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
    return failures == 0 ? 0 : 1;
}
