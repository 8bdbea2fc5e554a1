#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "traitproof/proof_tree.hpp"

namespace traitproof::analysis {

using proof::NodeId;
using proof::ProofTree;

enum class PrunePolicy : std::uint8_t { None, SuccessCollapse, FailedPath, BestAlternative };

// "none", "success-collapse", "failed-path", "best-alternative"
const char* to_code(PrunePolicy policy);
std::optional<PrunePolicy> policy_from_code(std::string_view code);

// Non-negative fraction in lowest terms.
struct Rational {
    std::uint64_t num = 0;
    std::uint64_t den = 1;

    static Rational of(std::uint64_t num, std::uint64_t den);
    static std::optional<Rational> parse(std::string_view text);  // "1/2"
    std::string to_string() const;

    friend bool operator==(const Rational&, const Rational&) = default;
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        return a.num * b.den <=> b.num * a.den;
    }
};

struct DiagnosisScore {
    std::uint32_t depth = 0;        // goal levels below the root
    Rational progress;              // best candidate progress on the path
    std::uint32_t source_order = 0; // 1-based rank of the provenance span
    friend bool operator==(const DiagnosisScore&, const DiagnosisScore&) = default;
};

struct DiagnosisEntry {
    std::uint32_t rank = 0;  // 1-based
    NodeId node = 0;
    DiagnosisScore score;
    std::vector<NodeId> path;  // root to node
    std::string rendered_bound;
    Span provenance;
    friend bool operator==(const DiagnosisEntry&, const DiagnosisEntry&) = default;
};

using Diagnosis = std::vector<DiagnosisEntry>;

// Fraction of a candidate's subgoals that are Proven: 0 on head-unification
// failure, 1 for a unified candidate without subgoals.
Rational candidate_progress(const ProofTree& tree, NodeId candidate);

struct LocalizeOptions {
    // Also rank Overflow and Cycle leaves.
    bool include_limits = false;
};

// Ranks the dead ends of a failed tree: Disproven goals that no candidate got
// past head unification for, reached through non-Proven ancestors only.
// Deeper first, then higher progress along the path, then earlier source
// position, then tree order. Empty when the root is Proven.
Diagnosis localize_roots(const ProofTree& tree, std::size_t k, const LocalizeOptions& options = {});

// Shrinks a tree without changing its root result or its top-ranked dead
// end. The result is renumbered in pre-order.
ProofTree prune_tree(const ProofTree& tree, PrunePolicy policy);

}  // namespace traitproof::analysis
