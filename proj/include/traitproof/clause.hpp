#pragma once

#include <map>
#include <string>
#include <vector>

#include "traitproof/ast.hpp"
#include "traitproof/term.hpp"
#include "traitproof/validate.hpp"

namespace traitproof::logic {

struct ClauseBound {
    Bound bound;
    Span span;
};

enum class ClauseOrigin : std::uint8_t { Impl, Hypothesis };

// A program rule or fact. Generic parameter i is stored as Var(i) and only
// becomes a real session variable through instantiate_clause.
struct ImplClause {
    ClauseOrigin origin = ClauseOrigin::Impl;
    dsl::ImplId impl_id = 0;            // Impl only
    std::uint32_t hypothesis_index = 0;  // Hypothesis only, 1-based
    std::vector<std::string> generics;
    ClauseBound head;
    std::vector<ClauseBound> body;
};

ImplClause clause_from_impl(const dsl::ImplDecl& impl);

// All program impls as clauses, in source order.
std::vector<ImplClause> program_clauses(const dsl::ValidatedProgram& program);

struct InstantiatedClause {
    Bound head;
    std::vector<ClauseBound> body;
};

// Replaces every generic parameter by a fresh variable, keeping spans.
InstantiatedClause instantiate_clause(const ImplClause& clause, VarSupply& fresh);

struct SkolemizedQuery {
    Bound goal;
    Span goal_span;
    std::vector<ImplClause> hypotheses;  // ground local facts, query order
    std::map<std::string, VarId> existentials;
    std::vector<Term> skolems;
};

// Universals become distinct skolems, hypotheses become local facts, and
// `?Name` variables become fresh variables (one per distinct name).
SkolemizedQuery skolemize_query(const dsl::QueryDecl& query, VarSupply& fresh);

}  // namespace traitproof::logic
