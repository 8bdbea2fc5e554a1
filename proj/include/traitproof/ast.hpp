#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "traitproof/span.hpp"

namespace traitproof::dsl {

enum class TypeTermKind : std::uint8_t { Ctor, Tuple, Fn, Var };

// How a Var got its name. Generic and Universal vars refer to a binder in the
// enclosing impl or query; Existential vars are the `?Name` form.
enum class Binder : std::uint8_t { Generic, Universal, Existential };

struct TypeTermAst {
    TypeTermKind kind = TypeTermKind::Ctor;
    std::string name;  // Ctor and Var only
    Binder binder = Binder::Generic;
    std::vector<TypeTermAst> args;  // Ctor args, tuple elements, fn params
    Span span;

    static TypeTermAst ctor(std::string name, std::vector<TypeTermAst> args = {}, Span span = {});
    static TypeTermAst tuple(std::vector<TypeTermAst> elems, Span span = {});
    static TypeTermAst fn(std::vector<TypeTermAst> params, Span span = {});
    static TypeTermAst var(std::string name, Binder binder, Span span = {});
};

struct TraitRefAst {
    std::string trait_name;
    std::vector<TypeTermAst> args;
    Span span;
};

struct BoundAst {
    TypeTermAst subject;
    TraitRefAst trait_ref;
    Span span;
};

using ImplId = std::uint32_t;

struct ImplDecl {
    ImplId id = 0;  // 1-based, source order
    std::vector<std::string> generics;
    BoundAst head;
    std::vector<BoundAst> where_clauses;
    Span span;

    bool is_fact() const { return generics.empty() && where_clauses.empty(); }
};

struct QueryDecl {
    std::vector<std::string> universals;
    std::vector<BoundAst> hypotheses;
    BoundAst goal;
    Span span;
};

struct Decl {
    std::string name;
    std::vector<std::string> params;
    Span span;

    std::size_t arity() const { return params.size(); }
};

// A parsed program. Declarations are kept in source order; duplicates are
// retained so validation can report them.
struct Program {
    std::vector<Decl> type_decls;
    std::vector<Decl> trait_decls;
    std::vector<ImplDecl> impls;
    std::vector<QueryDecl> queries;
    std::string file_name;
};

// Structural equality, ignoring spans.
bool same_structure(const TypeTermAst& a, const TypeTermAst& b);
bool same_structure(const BoundAst& a, const BoundAst& b);
bool same_structure(const Program& a, const Program& b);

// Source-syntax printing; print_program output re-parses to a structurally
// equal program.
std::string print_type(const TypeTermAst& t);
std::string print_bound(const BoundAst& b);
std::string print_program(const Program& p);

}  // namespace traitproof::dsl
