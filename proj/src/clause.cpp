#include "traitproof/clause.hpp"

#include <algorithm>
#include <functional>

namespace traitproof::logic {

namespace {

using VarResolver = std::function<Term(const dsl::TypeTermAst&)>;

Term lower(const dsl::TypeTermAst& t, const VarResolver& resolve_var) {
    std::vector<Term> args;
    args.reserve(t.args.size());
    for (const auto& a : t.args) args.push_back(lower(a, resolve_var));
    switch (t.kind) {
        case dsl::TypeTermKind::Var: return resolve_var(t);
        case dsl::TypeTermKind::Ctor: return Term::ctor(t.name, std::move(args));
        case dsl::TypeTermKind::Tuple: return Term::tuple(std::move(args));
        case dsl::TypeTermKind::Fn: return Term::fn(std::move(args));
    }
    return Term();
}

ClauseBound lower(const dsl::BoundAst& b, const VarResolver& resolve_var) {
    ClauseBound out;
    out.bound.subject = lower(b.subject, resolve_var);
    out.bound.trait_name = b.trait_ref.trait_name;
    for (const auto& a : b.trait_ref.args) out.bound.trait_args.push_back(lower(a, resolve_var));
    out.span = b.span;
    return out;
}

}  // namespace

ImplClause clause_from_impl(const dsl::ImplDecl& impl) {
    ImplClause c;
    c.origin = ClauseOrigin::Impl;
    c.impl_id = impl.id;
    c.generics = impl.generics;
    VarResolver resolve = [&impl](const dsl::TypeTermAst& v) {
        auto it = std::find(impl.generics.begin(), impl.generics.end(), v.name);
        return Term::var(static_cast<VarId>(it - impl.generics.begin()), v.name);
    };
    c.head = lower(impl.head, resolve);
    for (const auto& w : impl.where_clauses) c.body.push_back(lower(w, resolve));
    return c;
}

std::vector<ImplClause> program_clauses(const dsl::ValidatedProgram& program) {
    std::vector<ImplClause> out;
    for (const auto& impl : program.program().impls) out.push_back(clause_from_impl(impl));
    return out;
}

namespace {

// Simultaneous renaming of template variables; placeholder ids may overlap
// session ids, so this cannot go through Substitution::bind.
Term rename(const Term& t, const std::vector<Term>& fresh_vars) {
    if (t.is_var()) return fresh_vars[t.id()];
    if (!t.is_ctor() || t.args().empty()) return t;
    std::vector<Term> args;
    args.reserve(t.args().size());
    for (const auto& a : t.args()) args.push_back(rename(a, fresh_vars));
    switch (t.ctor_kind()) {
        case CtorKind::Named: return Term::ctor(t.name(), std::move(args));
        case CtorKind::Tuple: return Term::tuple(std::move(args));
        case CtorKind::Fn: return Term::fn(std::move(args));
    }
    return t;
}

Bound rename(const Bound& b, const std::vector<Term>& fresh_vars) {
    Bound out{rename(b.subject, fresh_vars), b.trait_name, {}};
    for (const auto& a : b.trait_args) out.trait_args.push_back(rename(a, fresh_vars));
    return out;
}

}  // namespace

InstantiatedClause instantiate_clause(const ImplClause& clause, VarSupply& fresh) {
    std::vector<Term> fresh_vars;
    for (const auto& g : clause.generics) fresh_vars.push_back(Term::var(fresh.fresh(), g));
    InstantiatedClause out;
    out.head = rename(clause.head.bound, fresh_vars);
    for (const auto& b : clause.body) out.body.push_back(ClauseBound{rename(b.bound, fresh_vars), b.span});
    return out;
}

SkolemizedQuery skolemize_query(const dsl::QueryDecl& query, VarSupply& fresh) {
    SkolemizedQuery out;
    for (std::size_t i = 0; i < query.universals.size(); ++i)
        out.skolems.push_back(Term::skolem(static_cast<SkolemId>(i + 1), query.universals[i]));

    VarResolver resolve = [&](const dsl::TypeTermAst& v) -> Term {
        if (v.binder == dsl::Binder::Existential) {
            auto it = out.existentials.find(v.name);
            if (it == out.existentials.end()) it = out.existentials.emplace(v.name, fresh.fresh()).first;
            return Term::var(it->second, v.name);
        }
        auto it = std::find(query.universals.begin(), query.universals.end(), v.name);
        return out.skolems[static_cast<std::size_t>(it - query.universals.begin())];
    };

    for (std::size_t i = 0; i < query.hypotheses.size(); ++i) {
        ImplClause h;
        h.origin = ClauseOrigin::Hypothesis;
        h.hypothesis_index = static_cast<std::uint32_t>(i + 1);
        h.head = lower(query.hypotheses[i], resolve);
        out.hypotheses.push_back(std::move(h));
    }
    ClauseBound goal = lower(query.goal, resolve);
    out.goal = std::move(goal.bound);
    out.goal_span = goal.span;
    return out;
}

}  // namespace traitproof::logic
