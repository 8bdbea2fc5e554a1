#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "traitproof/term.hpp"

namespace traitproof::cli {

enum ExitCode : int { kAllProven = 0, kSomeDisproven = 1, kInconclusive = 2, kUsageError = 3 };

struct Io {
    std::ostream& out;
    std::ostream& err;
    // Selects unicode glyphs when neither --ascii nor --unicode is given.
    bool out_is_terminal = false;
};

// `args` excludes the program name: {"check", "file.tdl", "--query", "2"}.
int run(const std::vector<std::string>& args, const Io& io);

int run_check(const std::vector<std::string>& args, const Io& io);
int run_compare_oracle(const std::vector<std::string>& args, const Io& io);

// A bound printed with variables renamed `?0`, `?1`, ... by first occurrence
// and skolems as `!name`; equal texts mean the bounds are variants.
std::string canonical_text(const logic::Bound& bound);

struct CaseReport {
    bool agree = false;
    std::string program_text;
    std::string solver;  // e.g. "Proven Vec<A>: T0" or "Ambiguous(2)"
    std::string oracle;
};

struct CompareConfig {
    std::uint32_t max_depth = 8;
    std::uint32_t max_nodes = 20'000;
};

// Generates case `index` of `seed` and runs both solvers on it.
CaseReport compare_case(std::uint64_t seed, std::uint64_t index, const CompareConfig& config = {});

}  // namespace traitproof::cli
