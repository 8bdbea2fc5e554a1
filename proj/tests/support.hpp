#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "traitproof/analysis.hpp"
#include "traitproof/parser.hpp"
#include "traitproof/solver.hpp"
#include "traitproof/validate.hpp"

namespace tp_test {

using namespace traitproof;

inline std::string corpus_path(const std::string& name) { return std::string(TP_CORPUS_DIR) + "/" + name; }
inline std::string golden_path(const std::string& name) { return std::string(TP_GOLDEN_DIR) + "/" + name; }

inline std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline dsl::ValidatedProgram validated(const std::string& text, const std::string& file = "test.tdl") {
    auto outcome = dsl::validate_program(dsl::parse_program(text, file));
    if (auto* errors = std::get_if<std::vector<dsl::ValidationError>>(&outcome))
        throw std::runtime_error("invalid program: " + errors->front().message);
    return std::get<dsl::ValidatedProgram>(std::move(outcome));
}

// Corpus programs are parsed with their bare file name so spans match the
// rendered `@file:line` labels.
inline dsl::ValidatedProgram corpus(const std::string& name) { return validated(slurp(corpus_path(name)), name); }

inline proof::ProofTree solve(const dsl::ValidatedProgram& p, std::size_t query_index,
                              const proof::SolverConfig& config = {}) {
    return solver::solve_query(p, p.program().queries.at(query_index), config);
}

// Finds the first node whose display text equals `display`.
inline proof::NodeId find_node(const proof::ProofTree& t, const std::string& display) {
    for (const auto& n : t.nodes)
        if (n.display == display) return n.id;
    return 0;
}

}  // namespace tp_test
