#include <algorithm>
#include <set>

#include "traitproof/analysis.hpp"

namespace traitproof::analysis {

using proof::CombineContext;
using proof::NodeKind;
using proof::ProofNode;
using proof::SolveResult;
using proof::SummaryInfo;

namespace {

std::size_t subtree_size(const ProofTree& tree, NodeId id) {
    std::size_t n = 1;
    for (NodeId c : tree.node(id).children) n += subtree_size(tree, c);
    return n;
}

std::string plural(std::size_t n, const char* word) {
    return std::to_string(n) + " " + word + (n == 1 ? "" : "s");
}

std::string result_word(const SolveResult& r) {
    switch (r.kind) {
        case proof::ResultKind::Proven: return "Proven";
        case proof::ResultKind::Ambiguous: return "Ambiguous";
        case proof::ResultKind::Disproven: return "Disproven";
        case proof::ResultKind::Overflow: return "Overflow";
        case proof::ResultKind::Cycle: return "Cycle";
    }
    return "?";
}

// Copies a tree node by node, renumbering in pre-order.
class Rebuilder {
public:
    explicit Rebuilder(const ProofTree& src) : src_(src) {
        out_.config = src.config;
        out_.query_span = src.query_span;
        out_.root = 1;
    }

    // Emits a copy of `id` without children; returns its new id.
    NodeId emit_copy(NodeId id) {
        ProofNode n = src_.node(id);
        n.children.clear();
        return push(std::move(n));
    }

    // Replaces the subtree at `id` with one summary leaf.
    NodeId emit_summary_of(NodeId id) {
        const ProofNode& n = src_.node(id);
        const std::size_t size = subtree_size(src_, id);
        SummaryInfo info;
        info.label = result_word(n.result) + " (" + plural(size, "node") + ")";
        info.subject = n.display;
        info.collapsed = size;
        if (n.is_candidate()) {
            info.alt_index = n.candidate().alt_index;
            info.alt_count = n.candidate().alt_count;
        }
        return push(ProofNode{0, n.result, {}, n.depth, n.provenance, info.label, info});
    }

    // One summary standing for several sibling candidates of `goal`.
    NodeId emit_group_summary(NodeId goal, const std::vector<NodeId>& hidden) {
        const ProofNode& g = src_.node(goal);
        std::vector<SolveResult> results;
        std::size_t size = 0;
        for (NodeId h : hidden) {
            results.push_back(src_.node(h).result);
            size += subtree_size(src_, h);
        }
        CombineContext ctx{&g.goal().goal, nullptr};
        SummaryInfo info;
        info.label = plural(hidden.size(), "other alternative") + " (" + plural(size, "node") + ")";
        info.collapsed = size;
        info.hidden_alternatives = hidden.size();
        SolveResult r = proof::combine_results(proof::Combine::Or, results, ctx);
        return push(ProofNode{0, std::move(r), {}, g.depth, g.provenance, info.label, info});
    }

    void link(NodeId parent, NodeId child) { out_.node(parent).children.push_back(child); }

    ProofTree finish() { return std::move(out_); }

private:
    NodeId push(ProofNode n) {
        n.id = static_cast<NodeId>(out_.nodes.size() + 1);
        out_.nodes.push_back(std::move(n));
        return out_.nodes.back().id;
    }

    const ProofTree& src_;
    ProofTree out_;
};

// Full copy, except that Proven children of kept nodes collapse.
NodeId collapse_success(const ProofTree& tree, NodeId id, Rebuilder& rb) {
    const NodeId self = rb.emit_copy(id);
    for (NodeId c : tree.node(id).children) {
        const ProofNode& child = tree.node(c);
        const NodeId copied = child.result.is_proven() && !child.is_summary() ? rb.emit_summary_of(c)
                                                                              : collapse_success(tree, c, rb);
        rb.link(self, copied);
    }
    return self;
}

// Keeps the non-Proven region; its Proven children remain as one level of
// context, collapsed when they have descendants.
NodeId keep_failed(const ProofTree& tree, NodeId id, Rebuilder& rb) {
    const NodeId self = rb.emit_copy(id);
    for (NodeId c : tree.node(id).children) {
        const ProofNode& child = tree.node(c);
        NodeId copied;
        if (!child.result.is_proven())
            copied = keep_failed(tree, c, rb);
        else if (child.children.empty())
            copied = rb.emit_copy(c);
        else
            copied = rb.emit_summary_of(c);
        rb.link(self, copied);
    }
    return self;
}

NodeId keep_best(const ProofTree& tree, NodeId id, const std::set<NodeId>& pinned, Rebuilder& rb) {
    const ProofNode& n = tree.node(id);
    const NodeId self = rb.emit_copy(id);
    if (!n.is_goal()) {
        for (NodeId c : n.children) rb.link(self, keep_best(tree, c, pinned, rb));
        return self;
    }
    Rational best{0, 1};
    for (NodeId c : n.children)
        if (tree.node(c).is_candidate()) best = std::max(best, candidate_progress(tree, c));
    std::vector<NodeId> hidden;
    for (NodeId c : n.children) {
        const ProofNode& child = tree.node(c);
        const bool keep = !child.is_candidate() || candidate_progress(tree, c) == best || pinned.count(c);
        if (keep)
            rb.link(self, keep_best(tree, c, pinned, rb));
        else
            hidden.push_back(c);
    }
    if (!hidden.empty()) rb.link(self, rb.emit_group_summary(id, hidden));
    return self;
}

}  // namespace

ProofTree prune_tree(const ProofTree& tree, PrunePolicy policy) {
    if (policy == PrunePolicy::None || tree.nodes.empty()) return tree;
    Rebuilder rb(tree);
    switch (policy) {
        case PrunePolicy::SuccessCollapse:
            collapse_success(tree, tree.root, rb);
            break;
        case PrunePolicy::FailedPath:
            keep_failed(tree, tree.root, rb);
            break;
        case PrunePolicy::BestAlternative: {
            std::set<NodeId> pinned;
            for (LocalizeOptions opts : {LocalizeOptions{false}, LocalizeOptions{true}}) {
                Diagnosis top = localize_roots(tree, 1, opts);
                if (!top.empty()) pinned.insert(top.front().path.begin(), top.front().path.end());
            }
            keep_best(tree, tree.root, pinned, rb);
            break;
        }
        case PrunePolicy::None: break;
    }
    return rb.finish();
}

}  // namespace traitproof::analysis
