#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "traitproof/ast.hpp"

namespace traitproof::dsl {

class ParseError : public std::runtime_error {
public:
    ParseError(Span span, std::string message);

    const Span& span() const { return span_; }
    const std::string& message() const { return message_; }

private:
    Span span_;
    std::string message_;
};

// Parses a whole `.tdl` source. Impl ids are assigned in source order from 1.
// Throws ParseError.
Program parse_program(std::string_view source, const std::string& file_name);

// Parses a single bound such as `Vec<?X>: ToString`, for synthesized queries.
// Only `?Name` identifiers are variables; every other identifier is a
// constructor. Throws ParseError.
BoundAst parse_bound(std::string_view source, const std::string& file_name);

}  // namespace traitproof::dsl
