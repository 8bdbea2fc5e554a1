#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "traitproof/ast.hpp"
#include "traitproof/clause.hpp"
#include "traitproof/term.hpp"
#include "traitproof/unify.hpp"

namespace traitproof::proof {

enum class ResultKind : std::uint8_t { Proven, Ambiguous, Disproven, Overflow, Cycle };

// Interchange codes: "yes", "amb", "no", "ovf", "cyc".
const char* to_code(ResultKind kind);
std::optional<ResultKind> result_from_code(std::string_view code);

struct SolveResult {
    ResultKind kind = ResultKind::Disproven;
    logic::Substitution solution;    // Proven only
    std::size_t solution_count = 0;  // Ambiguous only, >= 2

    static SolveResult proven(logic::Substitution s = {}) { return {ResultKind::Proven, std::move(s), 0}; }
    static SolveResult ambiguous(std::size_t n) { return {ResultKind::Ambiguous, {}, n}; }
    static SolveResult disproven() { return {ResultKind::Disproven, {}, 0}; }
    static SolveResult overflow() { return {ResultKind::Overflow, {}, 0}; }
    static SolveResult cycle() { return {ResultKind::Cycle, {}, 0}; }

    bool is_proven() const { return kind == ResultKind::Proven; }

    friend bool operator==(const SolveResult&, const SolveResult&) = default;
};

enum class Combine : std::uint8_t { And, Or };

struct CombineContext {
    // The goal whose existential variables decide agreement under Or, and
    // onto whose variables Proven solutions are projected.
    const logic::Bound* goal = nullptr;
    // Starting substitution for And (a candidate's head unifier).
    const logic::Substitution* seed = nullptr;
};

// And: empty -> Proven; otherwise the most dominant child, in the order
// Disproven > Cycle > Overflow > Ambiguous > Proven; all-Proven composes the
// children's solutions onto the seed.
// Or: empty -> Disproven; any Proven -> Proven when the goal is ground or all
// Proven solutions agree on it, otherwise Ambiguous; with no Proven child the
// order is Ambiguous > Overflow > Cycle > Disproven.
SolveResult combine_results(Combine kind, std::span<const SolveResult> children, const CombineContext& ctx = {});

// Extends acc with the bindings of s. Returns false if they conflict.
bool compose_into(logic::Substitution& acc, const logic::Substitution& s);

using NodeId = std::uint32_t;

enum class NodeKind : std::uint8_t { Goal, Candidate, Summary };

const char* to_code(NodeKind kind);  // "goal", "candidate", "summary"

struct GoalInfo {
    logic::Bound goal;  // as resolved on entry
    bool overlap = false;  // more than one candidate proved the goal
    friend bool operator==(const GoalInfo&, const GoalInfo&) = default;
};

struct CandidateInfo {
    logic::ClauseOrigin origin = logic::ClauseOrigin::Impl;
    dsl::ImplId impl_id = 0;
    std::uint32_t hypothesis_index = 0;
    // 1-based position within the goal's alternative group, and group size.
    std::uint32_t alt_index = 0;
    std::uint32_t alt_count = 0;
    logic::UnifyResult unifier;

    bool head_unified() const { return std::holds_alternative<logic::Substitution>(unifier); }
    const logic::UnifyFailure* failure() const { return std::get_if<logic::UnifyFailure>(&unifier); }
    friend bool operator==(const CandidateInfo&, const CandidateInfo&) = default;
};

// Stands in for pruned nodes.
struct SummaryInfo {
    std::string label;     // e.g. "Proven (4 nodes)"
    std::string subject;   // display of the replaced node, empty for a group summary
    std::size_t collapsed = 0;  // number of original nodes replaced
    std::size_t hidden_alternatives = 0;  // group summaries only
    std::uint32_t alt_index = 0;  // when replacing a single candidate
    std::uint32_t alt_count = 0;
    friend bool operator==(const SummaryInfo&, const SummaryInfo&) = default;
};

struct ProofNode {
    NodeId id = 0;
    SolveResult result;
    std::vector<NodeId> children;
    std::uint32_t depth = 0;  // goal levels; candidates share their goal's depth
    Span provenance;  // goal: introducing bound; candidate: impl head or hypothesis
    std::string display;
    std::variant<GoalInfo, CandidateInfo, SummaryInfo> detail;

    NodeKind kind() const { return static_cast<NodeKind>(detail.index()); }
    bool is_goal() const { return kind() == NodeKind::Goal; }
    bool is_candidate() const { return kind() == NodeKind::Candidate; }
    bool is_summary() const { return kind() == NodeKind::Summary; }
    const GoalInfo& goal() const { return std::get<GoalInfo>(detail); }
    const CandidateInfo& candidate() const { return std::get<CandidateInfo>(detail); }
    const SummaryInfo& summary() const { return std::get<SummaryInfo>(detail); }

    friend bool operator==(const ProofNode&, const ProofNode&) = default;
};

struct SolverConfig {
    std::uint32_t max_depth = 32;
    std::uint32_t max_nodes = 100'000;
    friend bool operator==(const SolverConfig&, const SolverConfig&) = default;
};

// Node ids are dense and 1-based in pre-order, so node(id) is nodes[id - 1]
// and every child id is greater than its parent's.
struct ProofTree {
    NodeId root = 1;
    std::vector<ProofNode> nodes;
    SolverConfig config;
    Span query_span;

    const ProofNode& node(NodeId id) const { return nodes.at(id - 1); }
    ProofNode& node(NodeId id) { return nodes.at(id - 1); }
    const ProofNode& root_node() const { return node(root); }
    std::size_t size() const { return nodes.size(); }

    friend bool operator==(const ProofTree&, const ProofTree&) = default;
};

// Structural invariants plus bottom-up recomputation of every stored result.
// Returns a description of the first violation.
std::optional<std::string> check_consistency(const ProofTree& tree);

// Node ids of the path from the root to `target` (inclusive); empty if
// unreachable.
std::vector<NodeId> path_to(const ProofTree& tree, NodeId target);

// Parent of every node (0 for the root), indexed by id - 1.
std::vector<NodeId> parent_table(const ProofTree& tree);

}  // namespace traitproof::proof
