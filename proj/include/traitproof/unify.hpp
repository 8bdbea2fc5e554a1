#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>

#include "traitproof/term.hpp"

namespace traitproof::logic {

// Idempotent, acyclic mapping from variables to terms. Ranges are kept fully
// resolved: no variable in the domain occurs in any range term.
class Substitution {
public:
    Substitution() = default;

    bool empty() const { return map_.empty(); }
    std::size_t size() const { return map_.size(); }
    const std::map<VarId, Term>& bindings() const { return map_; }
    const Term* lookup(VarId v) const;

    Term apply(const Term& t) const;
    Bound apply(const Bound& b) const;

    // Adds v ↦ t (t is resolved first). Returns false, leaving the
    // substitution unchanged, if v is already bound or if v occurs in the
    // resolved t.
    bool bind(VarId v, const Term& t);

    // Keeps only bindings for the given variables.
    Substitution restricted_to(const std::set<VarId>& vars) const;

    // Builds a substitution from raw bindings, normalizing as it goes.
    // Returns nullopt if the bindings are cyclic or bind a variable twice.
    static std::optional<Substitution> from_bindings(const std::map<VarId, Term>& raw);

    std::string to_string() const;

    friend bool operator==(const Substitution&, const Substitution&) = default;

private:
    std::map<VarId, Term> map_;
};

enum class UnifyFailureKind : std::uint8_t { CtorClash, ArityClash, OccursCheck, SkolemClash };

const char* to_code(UnifyFailureKind kind);  // "ctor_clash", ...

struct UnifyFailure {
    UnifyFailureKind kind;
    // The clashing subterms; for OccursCheck, the variable and the term it
    // occurs in.
    Term left;
    Term right;

    std::string describe() const;
    friend bool operator==(const UnifyFailure&, const UnifyFailure&) = default;
};

using UnifyResult = std::variant<Substitution, UnifyFailure>;

// Most general unifier of a and b extending `input`. When two variables meet,
// the one with the larger id is bound to the one with the smaller id, so the
// result does not depend on argument order.
UnifyResult unify(const Term& a, const Term& b, const Substitution& input = {});

// Unifies subjects and trait arguments pairwise; trait names must already
// match.
UnifyResult unify(const Bound& a, const Bound& b, const Substitution& input = {});

inline Term apply_substitution(const Substitution& s, const Term& t) { return s.apply(t); }

}  // namespace traitproof::logic
