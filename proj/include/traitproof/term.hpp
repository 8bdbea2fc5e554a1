#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace traitproof::logic {

using VarId = std::uint32_t;
using SkolemId = std::uint32_t;

enum class TermKind : std::uint8_t { Ctor, Var, Skolem };

// Named constructors come from type declarations; Tuple and Fn are built in
// and identified by kind plus arity.
enum class CtorKind : std::uint8_t { Named, Tuple, Fn };

// Immutable first-order term with shared structure. Copies are cheap.
// Variable and skolem display names are hints only and never take part in
// equality.
class Term {
public:
    Term();  // the unit tuple `()`

    static Term ctor(std::string name, std::vector<Term> args = {});
    static Term tuple(std::vector<Term> elems);
    static Term fn(std::vector<Term> params);
    static Term var(VarId id, std::string hint = {});
    static Term skolem(SkolemId id, std::string name);

    TermKind kind() const { return node_->kind; }
    CtorKind ctor_kind() const { return node_->ctor_kind; }
    bool is_var() const { return kind() == TermKind::Var; }
    bool is_skolem() const { return kind() == TermKind::Skolem; }
    bool is_ctor() const { return kind() == TermKind::Ctor; }

    // Ctor name (empty for Tuple/Fn), or the display hint for Var/Skolem.
    const std::string& name() const { return node_->name; }
    // VarId or SkolemId.
    std::uint32_t id() const { return node_->id; }
    const std::vector<Term>& args() const { return node_->args; }

    // Same constructor head: kind, name, and (for Tuple/Fn) arity.
    bool same_head(const Term& other) const;
    // Same constructor ignoring arity; a difference in arity then is an
    // arity clash rather than a constructor clash.
    bool same_family(const Term& other) const;

    bool ground() const;
    bool contains_var(VarId v) const;
    void collect_vars(std::set<VarId>& out) const;

    // Source syntax, e.g. `Vec<(i32, i32)>`.
    std::string to_string() const;

    friend bool operator==(const Term& a, const Term& b);
    friend bool operator<(const Term& a, const Term& b);

private:
    struct Node {
        TermKind kind;
        CtorKind ctor_kind;
        std::string name;
        std::uint32_t id;
        std::vector<Term> args;
    };
    explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

    std::shared_ptr<const Node> node_;
};

// A trait obligation `subject: Trait<args...>`.
struct Bound {
    Term subject;
    std::string trait_name;
    std::vector<Term> trait_args;

    bool ground() const;
    std::set<VarId> vars() const;
    std::string to_string() const;

    friend bool operator==(const Bound&, const Bound&) = default;
};

// Equality up to consistent renaming of variables (skolems are constants).
bool is_variant(const Term& a, const Term& b);
bool is_variant(const Bound& a, const Bound& b);

// Issues strictly increasing variable ids; confined to one solving session.
class VarSupply {
public:
    explicit VarSupply(VarId next = 1) : next_(next) {}
    VarId fresh() { return next_++; }
    VarId peek() const { return next_; }

private:
    VarId next_;
};

}  // namespace traitproof::logic
