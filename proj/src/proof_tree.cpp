#include <algorithm>

#include "traitproof/proof_tree.hpp"

namespace traitproof::proof {

std::vector<NodeId> parent_table(const ProofTree& tree) {
    std::vector<NodeId> parent(tree.size(), 0);
    for (const auto& n : tree.nodes)
        for (NodeId c : n.children)
            if (c >= 1 && c <= tree.size()) parent[c - 1] = n.id;
    return parent;
}

std::vector<NodeId> path_to(const ProofTree& tree, NodeId target) {
    if (target < 1 || target > tree.size()) return {};
    const auto parent = parent_table(tree);
    std::vector<NodeId> path{target};
    while (path.back() != tree.root) {
        NodeId p = parent[path.back() - 1];
        if (p == 0) return {};
        path.push_back(p);
    }
    std::reverse(path.begin(), path.end());
    return path;
}

namespace {

std::string at(NodeId id) { return "node " + std::to_string(id) + ": "; }

}  // namespace

std::optional<std::string> check_consistency(const ProofTree& tree) {
    if (tree.nodes.empty()) return "tree has no nodes";
    if (tree.root != 1) return "root must be node 1";
    std::vector<int> parents(tree.size(), 0);
    for (std::size_t i = 0; i < tree.size(); ++i) {
        const ProofNode& n = tree.nodes[i];
        if (n.id != i + 1) return at(n.id) + "ids must be dense and in order";
        for (NodeId c : n.children) {
            if (c <= n.id || c > tree.size()) return at(n.id) + "child " + std::to_string(c) + " out of order";
            ++parents[c - 1];
        }
    }
    if (parents[0] != 0) return "root has a parent";
    for (std::size_t i = 1; i < parents.size(); ++i)
        if (parents[i] != 1) return at(static_cast<NodeId>(i + 1)) + "must have exactly one parent";

    const auto parent = parent_table(tree);
    for (const ProofNode& n : tree.nodes) {
        std::vector<SolveResult> child_results;
        for (NodeId c : n.children) {
            const ProofNode& child = tree.node(c);
            if (child.is_goal() == n.is_goal() && !child.is_summary())
                return at(n.id) + "goal and candidate levels must alternate";
            const std::uint32_t expected_depth = n.is_goal() ? n.depth : n.depth + 1;
            if (child.depth != expected_depth) return at(c) + "depth " + std::to_string(child.depth) + " expected " + std::to_string(expected_depth);
            child_results.push_back(child.result);
        }
        SolveResult expected;
        switch (n.kind()) {
            case NodeKind::Summary:
                if (!n.children.empty()) return at(n.id) + "summary nodes are leaves";
                continue;
            case NodeKind::Goal:
                if (n.children.empty() &&
                    (n.result.kind == ResultKind::Overflow || n.result.kind == ResultKind::Cycle))
                    continue;
                {
                    CombineContext ctx{&n.goal().goal, nullptr};
                    expected = combine_results(Combine::Or, child_results, ctx);
                }
                break;
            case NodeKind::Candidate: {
                const CandidateInfo& info = n.candidate();
                if (!info.head_unified()) {
                    if (!n.children.empty()) return at(n.id) + "candidate failed head unification but has subgoals";
                    expected = SolveResult::disproven();
                    break;
                }
                const NodeId p = parent[n.id - 1];
                if (p == 0 || !tree.node(p).is_goal()) return at(n.id) + "candidate without a parent goal";
                CombineContext ctx{&tree.node(p).goal().goal, &std::get<logic::Substitution>(info.unifier)};
                expected = combine_results(Combine::And, child_results, ctx);
                break;
            }
        }
        if (!(expected == n.result))
            return at(n.id) + "stored result `" + to_code(n.result.kind) + "` but children combine to `" +
                   to_code(expected.kind) + "`";
    }
    return std::nullopt;
}

}  // namespace traitproof::proof
