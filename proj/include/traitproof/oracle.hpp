#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "traitproof/ast.hpp"
#include "traitproof/validate.hpp"

// Reference solver for testing. It shares nothing with the main solver
// beyond the front end: its own term structure, a triangular unifier with
// walk-based lookup, and variant checks by canonical printing.
namespace traitproof::oracle {

enum class Verdict : std::uint8_t { Proven, Ambiguous, Disproven, Overflow, Cycle, BudgetExhausted };

const char* to_string(Verdict v);

struct OracleConfig {
    std::uint32_t max_depth = 32;
    std::uint32_t max_nodes = 100'000;
};

struct OracleResult {
    Verdict verdict = Verdict::Disproven;
    // Proven only: the goal under its solution with variables renamed
    // canonically (see canonical_bound_text).
    std::string answer;
    std::size_t solution_count = 0;  // Ambiguous only
};

OracleResult solve_exhaustive_oracle(const dsl::QueryDecl& query, const dsl::ValidatedProgram& program,
                                     const OracleConfig& config = {});

// Canonical text conventions shared with callers that compare answers:
// variables print as `?0`, `?1`, ... in order of first occurrence, skolems as
// `!name`, tuples as `(a, b)`, function types as `fn(a)`, and a bound as
// `subject: Trait<args>`.

struct GeneratorConfig {
    std::size_t max_traits = 5;
    std::size_t max_impls = 8;
    std::size_t max_generics = 3;
    std::size_t max_term_depth = 3;
};

// Random well-formed program text with exactly one query. Deterministic in
// (seed, index).
std::string generate_program(std::uint64_t seed, std::uint64_t index, const GeneratorConfig& config = {});

}  // namespace traitproof::oracle
