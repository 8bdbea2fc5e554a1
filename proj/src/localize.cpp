#include <algorithm>
#include <charconv>
#include <numeric>

#include "traitproof/analysis.hpp"

namespace traitproof::analysis {

using proof::NodeKind;
using proof::ProofNode;
using proof::ResultKind;

const char* to_code(PrunePolicy policy) {
    switch (policy) {
        case PrunePolicy::None: return "none";
        case PrunePolicy::SuccessCollapse: return "success-collapse";
        case PrunePolicy::FailedPath: return "failed-path";
        case PrunePolicy::BestAlternative: return "best-alternative";
    }
    return "?";
}

std::optional<PrunePolicy> policy_from_code(std::string_view code) {
    for (auto p : {PrunePolicy::None, PrunePolicy::SuccessCollapse, PrunePolicy::FailedPath,
                   PrunePolicy::BestAlternative})
        if (code == to_code(p)) return p;
    return std::nullopt;
}

Rational Rational::of(std::uint64_t num, std::uint64_t den) {
    if (den == 0) return Rational{0, 1};
    const std::uint64_t g = std::gcd(num, den);
    return g == 0 ? Rational{0, 1} : Rational{num / g, den / g};
}

std::optional<Rational> Rational::parse(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return std::nullopt;
    std::uint64_t num = 0, den = 0;
    auto a = std::from_chars(text.data(), text.data() + slash, num);
    auto b = std::from_chars(text.data() + slash + 1, text.data() + text.size(), den);
    if (a.ec != std::errc{} || a.ptr != text.data() + slash || b.ec != std::errc{} ||
        b.ptr != text.data() + text.size() || den == 0)
        return std::nullopt;
    Rational r = of(num, den);
    if (r.num != num || r.den != den) return std::nullopt;  // not in lowest terms
    return r;
}

std::string Rational::to_string() const { return std::to_string(num) + "/" + std::to_string(den); }

Rational candidate_progress(const ProofTree& tree, NodeId candidate) {
    const ProofNode& n = tree.node(candidate);
    if (!n.is_candidate() || !n.candidate().head_unified()) return Rational{0, 1};
    if (n.children.empty()) return Rational{1, 1};
    std::uint64_t proven = 0;
    for (NodeId c : n.children)
        if (tree.node(c).result.is_proven()) ++proven;
    return Rational::of(proven, n.children.size());
}

namespace {

bool is_dead_end(const ProofTree& tree, const ProofNode& goal, const LocalizeOptions& options) {
    const ResultKind k = goal.result.kind;
    const bool limit = k == ResultKind::Overflow || k == ResultKind::Cycle;
    if (k != ResultKind::Disproven && !(options.include_limits && limit)) return false;
    if (limit) return goal.children.empty();
    // Group summaries only ever hide alternatives that did no better than
    // the kept ones, so they do not decide dead-endedness.
    return std::all_of(goal.children.begin(), goal.children.end(), [&](NodeId c) {
        const ProofNode& child = tree.node(c);
        return child.is_summary() || (child.is_candidate() && !child.candidate().head_unified());
    });
}

struct Found {
    NodeId node;
    std::vector<NodeId> path;
    Rational progress;
    std::size_t visit_order;
};

void collect(const ProofTree& tree, NodeId id, std::vector<NodeId>& path, Rational best, const LocalizeOptions& options,
             std::vector<Found>& out) {
    const ProofNode& n = tree.node(id);
    if (n.result.is_proven() || n.is_summary()) return;
    path.push_back(id);
    if (n.is_candidate()) best = std::max(best, candidate_progress(tree, id));
    if (n.is_goal() && is_dead_end(tree, n, options)) {
        out.push_back(Found{id, path, best, out.size()});
    } else {
        for (NodeId c : n.children) collect(tree, c, path, best, options, out);
    }
    path.pop_back();
}

}  // namespace

Diagnosis localize_roots(const ProofTree& tree, std::size_t k, const LocalizeOptions& options) {
    if (tree.nodes.empty() || tree.root_node().result.is_proven()) return {};
    std::vector<Found> found;
    std::vector<NodeId> path;
    collect(tree, tree.root, path, Rational{0, 1}, options, found);

    std::vector<Span> spans;
    for (const auto& f : found) spans.push_back(tree.node(f.node).provenance);
    std::sort(spans.begin(), spans.end(), span_before);
    spans.erase(std::unique(spans.begin(), spans.end()), spans.end());
    auto source_order = [&](const Span& s) {
        return static_cast<std::uint32_t>(std::lower_bound(spans.begin(), spans.end(), s, span_before) - spans.begin() + 1);
    };

    std::stable_sort(found.begin(), found.end(), [&](const Found& a, const Found& b) {
        const ProofNode& x = tree.node(a.node);
        const ProofNode& y = tree.node(b.node);
        if (x.depth != y.depth) return x.depth > y.depth;
        if (a.progress != b.progress) return a.progress > b.progress;
        if (!(x.provenance == y.provenance)) return span_before(x.provenance, y.provenance);
        return a.visit_order < b.visit_order;
    });

    Diagnosis out;
    for (std::size_t i = 0; i < found.size() && i < k; ++i) {
        const ProofNode& n = tree.node(found[i].node);
        DiagnosisEntry e;
        e.rank = static_cast<std::uint32_t>(i + 1);
        e.node = n.id;
        e.score = DiagnosisScore{n.depth, found[i].progress, source_order(n.provenance)};
        e.path = found[i].path;
        e.rendered_bound = n.display;
        e.provenance = n.provenance;
        out.push_back(std::move(e));
    }
    return out;
}

}  // namespace traitproof::analysis
