#pragma once

#include <string>

#include "traitproof/analysis.hpp"
#include "traitproof/proof_tree.hpp"

namespace traitproof::render {

struct RenderOptions {
    bool unicode = false;
    std::size_t max_width = 0;  // 0: no limit; otherwise node labels are cut to fit
};

// Glyph for a result: `[ok] [no] [amb] [ovf] [cyc]`, or `✓ ✗ ? ↯ ⟳`.
const char* result_glyph(proof::ResultKind kind, bool unicode);

// One line per node, in tree order. Goals start with a result glyph,
// where-clause subgoals carry a mandatory marker (`*` or `•`), and the
// candidates of a goal are numbered `alt i/n`. The top diagnosis entry is
// marked `<-- ROOT CAUSE?`.
std::string render_ascii(const proof::ProofTree& tree, const analysis::Diagnosis& diagnosis,
                         const RenderOptions& options = {});

}  // namespace traitproof::render
