#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "traitproof/analysis.hpp"
#include "traitproof/proof_tree.hpp"

namespace traitproof::exchange {

inline constexpr int kFormatVersion = 1;

// Self-contained interchange document; the program is referenced by path and
// content hash rather than embedded.
struct TreeDocument {
    int format_version = kFormatVersion;
    std::string program_file;
    std::string program_hash;  // hex sha-256 of the program text
    std::uint32_t query_index = 0;  // 0-based position among the file's queries
    analysis::PrunePolicy prune_policy = analysis::PrunePolicy::None;
    proof::ProofTree tree;
    analysis::Diagnosis diagnosis;

    friend bool operator==(const TreeDocument&, const TreeDocument&) = default;
};

enum class FormatErrorCode : std::uint8_t { UnknownVersion, MissingField, DanglingNodeId, CycleDetected, InvalidValue };

const char* to_string(FormatErrorCode code);

class FormatError : public std::runtime_error {
public:
    FormatError(FormatErrorCode code, std::string path, const std::string& message);
    FormatErrorCode code() const { return code_; }
    // JSON pointer to the offending location, e.g. "/nodes/3/children".
    const std::string& path() const { return path_; }

private:
    FormatErrorCode code_;
    std::string path_;
};

// Deterministic bytes: fixed key order, two-space indent, trailing newline.
std::string export_json(const TreeDocument& doc);

// Parses and validates a document, including every structural invariant of
// the tree and the diagnosis. Throws FormatError.
TreeDocument import_json(std::string_view bytes);

std::string sha256_hex(std::string_view data);

}  // namespace traitproof::exchange
