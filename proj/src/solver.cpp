#include "traitproof/solver.hpp"

#include <algorithm>

namespace traitproof::solver {

using logic::Bound;
using logic::ImplClause;
using logic::Substitution;
using proof::CandidateInfo;
using proof::GoalInfo;
using proof::NodeId;
using proof::ProofNode;
using proof::SolveResult;

BudgetExhausted::BudgetExhausted(std::uint32_t max_nodes)
    : std::runtime_error("proof tree exceeds the node budget of " + std::to_string(max_nodes) + " nodes"),
      max_nodes_(max_nodes) {}

std::vector<const ImplClause*> assemble_candidates(const Bound& goal, std::span<const ImplClause> program,
                                                   std::span<const ImplClause> hypotheses) {
    std::vector<const ImplClause*> out;
    for (const auto& h : hypotheses)
        if (h.head.bound.trait_name == goal.trait_name) out.push_back(&h);
    for (const auto& c : program)
        if (c.head.bound.trait_name == goal.trait_name) out.push_back(&c);
    return out;
}

namespace {

std::string candidate_display(const ImplClause& c) {
    const char* what = c.origin == logic::ClauseOrigin::Impl ? "impl" : "hypothesis";
    return std::string(what) + " @" + display_file(c.head.span.file) + ":" + std::to_string(c.head.span.line_start);
}

class Session {
public:
    Session(std::span<const ImplClause> program, std::span<const ImplClause> hypotheses, logic::VarSupply vars,
            const SolverConfig& config)
        : program_(program), hypotheses_(hypotheses), vars_(vars), config_(config) {}

    std::vector<ProofNode> take_nodes() { return std::move(nodes_); }

    NodeId solve(const Bound& goal, const Span& provenance, std::uint32_t depth) {
        const NodeId id = add_node(ProofNode{0, {}, {}, depth, provenance, goal.to_string(), GoalInfo{goal, false}});

        const bool cyclic = std::any_of(stack_.begin(), stack_.end(),
                                        [&](const Bound* b) { return logic::is_variant(*b, goal); });
        if (cyclic) {
            node(id).result = SolveResult::cycle();
            return id;
        }
        if (depth >= config_.max_depth) {
            node(id).result = SolveResult::overflow();
            return id;
        }

        const auto candidates = assemble_candidates(goal, program_, hypotheses_);
        stack_.push_back(&goal);
        std::vector<SolveResult> results;
        results.reserve(candidates.size());
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            const NodeId cid = solve_candidate(goal, *candidates[i], depth, static_cast<std::uint32_t>(i + 1),
                                               static_cast<std::uint32_t>(candidates.size()));
            node(id).children.push_back(cid);
            results.push_back(node(cid).result);
        }
        stack_.pop_back();

        proof::CombineContext ctx{&goal, nullptr};
        SolveResult result = proof::combine_results(proof::Combine::Or, results, ctx);
        const auto proven = std::count_if(results.begin(), results.end(), [](const auto& r) { return r.is_proven(); });
        std::get<GoalInfo>(node(id).detail).overlap = result.is_proven() && proven > 1;
        node(id).result = std::move(result);
        return id;
    }

private:
    NodeId solve_candidate(const Bound& goal, const ImplClause& clause, std::uint32_t depth, std::uint32_t alt_index,
                           std::uint32_t alt_count) {
        CandidateInfo info{clause.origin, clause.impl_id, clause.hypothesis_index, alt_index, alt_count, {}};
        const NodeId id = add_node(ProofNode{0, {}, {}, depth, clause.head.span, candidate_display(clause), info});

        logic::InstantiatedClause inst = logic::instantiate_clause(clause, vars_);
        logic::UnifyResult unified = logic::unify(inst.head, goal);
        if (std::holds_alternative<logic::UnifyFailure>(unified)) {
            auto& n = node(id);
            std::get<CandidateInfo>(n.detail).unifier = std::move(unified);
            n.result = SolveResult::disproven();
            return id;
        }
        const Substitution head_unifier = std::get<Substitution>(unified);
        std::get<CandidateInfo>(node(id).detail).unifier = head_unifier;

        // Each subgoal sees the bindings of the Proven siblings before it;
        // a failed sibling contributes nothing, so later subgoals are solved
        // under the pre-failure substitution.
        Substitution acc = head_unifier;
        std::vector<SolveResult> results;
        for (const auto& premise : inst.body) {
            const NodeId gid = solve(acc.apply(premise.bound), premise.span, depth + 1);
            node(id).children.push_back(gid);
            const SolveResult& r = node(gid).result;
            if (r.is_proven()) proof::compose_into(acc, r.solution);
            results.push_back(r);
        }
        proof::CombineContext ctx{&goal, &head_unifier};
        node(id).result = proof::combine_results(proof::Combine::And, results, ctx);
        return id;
    }

    NodeId add_node(ProofNode n) {
        if (nodes_.size() >= config_.max_nodes) throw BudgetExhausted(config_.max_nodes);
        n.id = static_cast<NodeId>(nodes_.size() + 1);
        nodes_.push_back(std::move(n));
        return nodes_.back().id;
    }

    ProofNode& node(NodeId id) { return nodes_[id - 1]; }

    std::span<const ImplClause> program_;
    std::span<const ImplClause> hypotheses_;
    logic::VarSupply vars_;
    SolverConfig config_;
    std::vector<ProofNode> nodes_;
    std::vector<const Bound*> stack_;
};

}  // namespace

ProofTree solve_goal(const dsl::ValidatedProgram& program, const Bound& goal, const Span& goal_span,
                     std::span<const ImplClause> hypotheses, logic::VarSupply vars, const SolverConfig& config) {
    const std::vector<ImplClause> clauses = logic::program_clauses(program);
    Session session(clauses, hypotheses, vars, config);
    const NodeId root = session.solve(goal, goal_span, 0);
    ProofTree tree;
    tree.root = root;
    tree.nodes = session.take_nodes();
    tree.config = config;
    tree.query_span = goal_span;
    return tree;
}

ProofTree solve_query(const dsl::ValidatedProgram& program, const dsl::QueryDecl& query, const SolverConfig& config) {
    logic::VarSupply vars;
    logic::SkolemizedQuery sq = logic::skolemize_query(query, vars);
    ProofTree tree = solve_goal(program, sq.goal, sq.goal_span, sq.hypotheses, vars, config);
    tree.query_span = query.span;
    return tree;
}

}  // namespace traitproof::solver
