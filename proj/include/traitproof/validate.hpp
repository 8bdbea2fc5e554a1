#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "traitproof/ast.hpp"

namespace traitproof::dsl {

enum class ValidationCode : std::uint8_t { UnknownTrait, UnknownType, ArityMismatch, UnboundVar, DuplicateName };

const char* to_string(ValidationCode code);

struct ValidationError {
    ValidationCode code;
    Span span;
    std::string message;
};

// A program whose names, arities and variable bindings have all been checked.
// Only validate_program can produce one.
class ValidatedProgram {
public:
    const Program& program() const { return program_; }
    const std::map<std::string, std::size_t>& type_arity() const { return type_arity_; }
    const std::map<std::string, std::size_t>& trait_arity() const { return trait_arity_; }

    bool has_trait(const std::string& name) const { return trait_arity_.count(name) != 0; }

private:
    friend std::variant<ValidatedProgram, std::vector<ValidationError>> validate_program(const Program&);

    Program program_;
    std::map<std::string, std::size_t> type_arity_;
    std::map<std::string, std::size_t> trait_arity_;
};

using ValidationOutcome = std::variant<ValidatedProgram, std::vector<ValidationError>>;

ValidationOutcome validate_program(const Program& program);

// Checks a synthesized query (e.g. from a command-line goal) against an
// already validated program.
std::vector<ValidationError> validate_query(const ValidatedProgram& program, const QueryDecl& query);

}  // namespace traitproof::dsl
