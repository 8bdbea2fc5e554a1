#include "traitproof/render.hpp"

#include <sstream>

namespace traitproof::render {

using proof::NodeId;
using proof::ProofNode;
using proof::ResultKind;

const char* result_glyph(ResultKind kind, bool unicode) {
    switch (kind) {
        case ResultKind::Proven: return unicode ? "✓" : "[ok]";
        case ResultKind::Disproven: return unicode ? "✗" : "[no]";
        case ResultKind::Ambiguous: return unicode ? "?" : "[amb]";
        case ResultKind::Overflow: return unicode ? "↯" : "[ovf]";
        case ResultKind::Cycle: return unicode ? "⟳" : "[cyc]";
    }
    return "";
}

namespace {

std::size_t columns(const std::string& s) {
    std::size_t n = 0;
    for (unsigned char c : s)
        if ((c & 0xC0) != 0x80) ++n;
    return n;
}

// Drops trailing code points until `s` fits in `width` columns, ending it
// with an ellipsis.
std::string fit(const std::string& s, std::size_t width, bool unicode) {
    if (columns(s) <= width) return s;
    const std::string ellipsis = unicode ? "…" : "...";
    const std::size_t keep = width > columns(ellipsis) ? width - columns(ellipsis) : 0;
    std::string out;
    std::size_t cols = 0;
    for (std::size_t i = 0; i < s.size();) {
        std::size_t len = 1;
        unsigned char c = static_cast<unsigned char>(s[i]);
        if (c >= 0xF0) len = 4;
        else if (c >= 0xE0) len = 3;
        else if (c >= 0xC0) len = 2;
        if (cols + 1 > keep) break;
        out.append(s, i, len);
        ++cols;
        i += len;
    }
    return out + ellipsis;
}

class Renderer {
public:
    Renderer(const proof::ProofTree& tree, const analysis::Diagnosis& diagnosis, const RenderOptions& options)
        : tree_(tree), options_(options), root_cause_(diagnosis.empty() ? 0 : diagnosis.front().node) {}

    std::string run() {
        goal(tree_.root, 0, false);
        return out_.str();
    }

private:
    void line(std::size_t indent, const std::string& prefix, const std::string& label, const std::string& suffix) {
        std::string body = label;
        if (options_.max_width > 0) {
            const std::size_t fixed = indent + columns(prefix) + columns(suffix);
            const std::size_t room = options_.max_width > fixed ? options_.max_width - fixed : 0;
            body = fit(label, room, options_.unicode);
        }
        out_ << std::string(indent, ' ') << prefix << body << suffix << '\n';
    }

    std::string marker(bool mandatory) const {
        if (!mandatory) return "";
        return std::string(options_.unicode ? "•" : "*") + " ";
    }

    std::string glyph(const ProofNode& n) const { return std::string(result_glyph(n.result.kind, options_.unicode)) + " "; }

    // Children of a goal: its alternative group.
    void goal(NodeId id, std::size_t indent, bool mandatory) {
        const ProofNode& n = tree_.node(id);
        std::string suffix;
        if (n.result.kind == ResultKind::Ambiguous)
            suffix += "  -- " + std::to_string(n.result.solution_count) + " solutions";
        if (n.goal().overlap) suffix += "  -- overlapping impls";
        if (id == root_cause_) suffix += "  <-- ROOT CAUSE?";
        line(indent, marker(mandatory) + glyph(n), n.display, suffix);
        const std::size_t child_indent = indent + (mandatory ? 2 : 0) + 2;
        for (NodeId c : n.children) {
            const ProofNode& child = tree_.node(c);
            if (child.is_summary())
                summary(child, child_indent, false);
            else
                candidate(child, child_indent);
        }
    }

    // Children of a candidate: its mandatory where-clause subgoals.
    void candidate(const ProofNode& n, std::size_t indent) {
        const auto& info = n.candidate();
        const std::string prefix = "alt " + std::to_string(info.alt_index) + "/" + std::to_string(info.alt_count) + " ";
        line(indent, prefix, n.display, info.head_unified() ? "" : "  -- head mismatch");
        for (NodeId c : n.children) {
            const ProofNode& child = tree_.node(c);
            if (child.is_summary())
                summary(child, indent + 2, true);
            else
                goal(c, indent + 2, true);
        }
    }

    void summary(const ProofNode& n, std::size_t indent, bool mandatory) {
        const auto& info = n.summary();
        std::string prefix = marker(mandatory);
        if (info.alt_index > 0)
            prefix += "alt " + std::to_string(info.alt_index) + "/" + std::to_string(info.alt_count) + " ";
        else if (info.hidden_alternatives > 0)
            prefix += "alt +" + std::to_string(info.hidden_alternatives) + " ";
        prefix += glyph(n);
        if (info.subject.empty())
            line(indent, prefix, info.label, "");
        else
            line(indent, prefix, info.subject, "  ... " + info.label);
    }

    const proof::ProofTree& tree_;
    RenderOptions options_;
    NodeId root_cause_;
    std::ostringstream out_;
};

}  // namespace

std::string render_ascii(const proof::ProofTree& tree, const analysis::Diagnosis& diagnosis,
                         const RenderOptions& options) {
    if (tree.nodes.empty()) return {};
    return Renderer(tree, diagnosis, options).run();
}

}  // namespace traitproof::render
