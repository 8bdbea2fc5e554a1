#pragma once

#include <stdexcept>
#include <vector>

#include "traitproof/clause.hpp"
#include "traitproof/proof_tree.hpp"
#include "traitproof/validate.hpp"

namespace traitproof::solver {

using proof::ProofTree;
using proof::SolverConfig;

// Raised when a tree would exceed SolverConfig::max_nodes; the partial tree
// is discarded.
class BudgetExhausted : public std::runtime_error {
public:
    explicit BudgetExhausted(std::uint32_t max_nodes);
    std::uint32_t max_nodes() const { return max_nodes_; }

private:
    std::uint32_t max_nodes_;
};

// Hypotheses first, in query order, then program impls in source order;
// only the trait name is matched.
std::vector<const logic::ImplClause*> assemble_candidates(const logic::Bound& goal,
                                                          std::span<const logic::ImplClause> program,
                                                          std::span<const logic::ImplClause> hypotheses);

// Builds the complete proof tree for a query: every candidate of every goal
// becomes a branch, and every where-clause of a unified candidate is solved
// even after a sibling has failed. Deterministic; throws BudgetExhausted.
ProofTree solve_query(const dsl::ValidatedProgram& program, const dsl::QueryDecl& query,
                      const SolverConfig& config = {});

// As above with a prepared goal and hypotheses, for callers that skolemized
// the query themselves. `vars` must have issued every variable in the goal.
ProofTree solve_goal(const dsl::ValidatedProgram& program, const logic::Bound& goal, const Span& goal_span,
                     std::span<const logic::ImplClause> hypotheses, logic::VarSupply vars,
                     const SolverConfig& config = {});

}  // namespace traitproof::solver
