#include <algorithm>

#include "traitproof/proof_tree.hpp"

namespace traitproof::proof {

using logic::Substitution;

const char* to_code(ResultKind kind) {
    switch (kind) {
        case ResultKind::Proven: return "yes";
        case ResultKind::Ambiguous: return "amb";
        case ResultKind::Disproven: return "no";
        case ResultKind::Overflow: return "ovf";
        case ResultKind::Cycle: return "cyc";
    }
    return "?";
}

std::optional<ResultKind> result_from_code(std::string_view code) {
    for (auto k : {ResultKind::Proven, ResultKind::Ambiguous, ResultKind::Disproven, ResultKind::Overflow,
                   ResultKind::Cycle})
        if (code == to_code(k)) return k;
    return std::nullopt;
}

const char* to_code(NodeKind kind) {
    switch (kind) {
        case NodeKind::Goal: return "goal";
        case NodeKind::Candidate: return "candidate";
        case NodeKind::Summary: return "summary";
    }
    return "?";
}

bool compose_into(Substitution& acc, const Substitution& s) {
    for (const auto& [v, t] : s.bindings()) {
        auto r = logic::unify(logic::Term::var(v), t, acc);
        if (auto* next = std::get_if<Substitution>(&r))
            acc = std::move(*next);
        else
            return false;
    }
    return true;
}

namespace {

int and_rank(ResultKind k) {
    switch (k) {
        case ResultKind::Disproven: return 4;
        case ResultKind::Cycle: return 3;
        case ResultKind::Overflow: return 2;
        case ResultKind::Ambiguous: return 1;
        case ResultKind::Proven: return 0;
    }
    return 0;
}

int or_rank(ResultKind k) {
    switch (k) {
        case ResultKind::Ambiguous: return 3;
        case ResultKind::Overflow: return 2;
        case ResultKind::Cycle: return 1;
        case ResultKind::Disproven: return 0;
        case ResultKind::Proven: return 4;
    }
    return 0;
}

Substitution project(Substitution s, const CombineContext& ctx) {
    if (!ctx.goal) return s;
    return s.restricted_to(ctx.goal->vars());
}

std::size_t max_ambiguity(std::span<const SolveResult> children) {
    std::size_t n = 2;
    for (const auto& c : children)
        if (c.kind == ResultKind::Ambiguous) n = std::max(n, c.solution_count);
    return n;
}

SolveResult combine_and(std::span<const SolveResult> children, const CombineContext& ctx) {
    const SolveResult* worst = nullptr;
    for (const auto& c : children) {
#ifdef TRAITPROOF_MUTANT_FLIP_AND
        // Deliberately broken lattice, used to show the oracle comparison
        // catches solver bugs.
        if (!worst || and_rank(c.kind) < and_rank(worst->kind)) worst = &c;
#else
        if (!worst || and_rank(c.kind) > and_rank(worst->kind)) worst = &c;
#endif
    }
    if (worst && worst->kind != ResultKind::Proven) {
        if (worst->kind == ResultKind::Ambiguous) return SolveResult::ambiguous(max_ambiguity(children));
        return SolveResult{worst->kind, {}, 0};
    }
    Substitution acc = ctx.seed ? *ctx.seed : Substitution{};
    for (const auto& c : children)
        if (!compose_into(acc, c.solution)) return SolveResult::disproven();
    return SolveResult::proven(project(std::move(acc), ctx));
}

SolveResult combine_or(std::span<const SolveResult> children, const CombineContext& ctx) {
    if (children.empty()) return SolveResult::disproven();
    std::vector<logic::Bound> answers;
    const SolveResult* first_proven = nullptr;
    for (const auto& c : children) {
        if (!c.is_proven()) continue;
        if (!first_proven) first_proven = &c;
        if (!ctx.goal || ctx.goal->ground()) continue;
        logic::Bound answer = c.solution.apply(*ctx.goal);
        bool seen = std::any_of(answers.begin(), answers.end(),
                                [&](const logic::Bound& a) { return logic::is_variant(a, answer); });
        if (!seen) answers.push_back(std::move(answer));
    }
    if (first_proven) {
        if (answers.size() >= 2) return SolveResult::ambiguous(answers.size());
        return SolveResult::proven(project(first_proven->solution, ctx));
    }
    const SolveResult* best = &children.front();
    for (const auto& c : children)
        if (or_rank(c.kind) > or_rank(best->kind)) best = &c;
    if (best->kind == ResultKind::Ambiguous) return SolveResult::ambiguous(max_ambiguity(children));
    return SolveResult{best->kind, {}, 0};
}

}  // namespace

SolveResult combine_results(Combine kind, std::span<const SolveResult> children, const CombineContext& ctx) {
    return kind == Combine::And ? combine_and(children, ctx) : combine_or(children, ctx);
}

}  // namespace traitproof::proof
