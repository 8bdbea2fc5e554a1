#include "traitproof/unify.hpp"

#include <sstream>

namespace traitproof::logic {

namespace {

Term rebuild(const Term& shape, std::vector<Term> args) {
    switch (shape.ctor_kind()) {
        case CtorKind::Named: return Term::ctor(shape.name(), std::move(args));
        case CtorKind::Tuple: return Term::tuple(std::move(args));
        case CtorKind::Fn: return Term::fn(std::move(args));
    }
    return shape;
}

template <typename Lookup>
Term replace_vars(const Term& t, const Lookup& lookup) {
    if (t.is_var()) {
        if (const Term* r = lookup(t.id())) return *r;
        return t;
    }
    if (!t.is_ctor() || t.args().empty()) return t;
    std::vector<Term> args;
    args.reserve(t.args().size());
    bool changed = false;
    for (const auto& a : t.args()) {
        args.push_back(replace_vars(a, lookup));
        // Pointer identity is lost on rebuild, so compare structurally only
        // when something might have changed.
        if (!changed && !(args.back() == a)) changed = true;
    }
    return changed ? rebuild(t, std::move(args)) : t;
}

}  // namespace

const Term* Substitution::lookup(VarId v) const {
    auto it = map_.find(v);
    return it == map_.end() ? nullptr : &it->second;
}

Term Substitution::apply(const Term& t) const {
    if (map_.empty()) return t;
    return replace_vars(t, [this](VarId v) { return lookup(v); });
}

Bound Substitution::apply(const Bound& b) const {
    Bound out{apply(b.subject), b.trait_name, {}};
    out.trait_args.reserve(b.trait_args.size());
    for (const auto& a : b.trait_args) out.trait_args.push_back(apply(a));
    return out;
}

bool Substitution::bind(VarId v, const Term& t) {
    if (map_.count(v)) return false;
    Term resolved = apply(t);
    if (resolved.is_var() && resolved.id() == v) return true;
    if (resolved.contains_var(v)) return false;
    auto single = [&](VarId w) -> const Term* { return w == v ? &resolved : nullptr; };
    for (auto& [key, range] : map_)
        if (range.contains_var(v)) range = replace_vars(range, single);
    map_.emplace(v, std::move(resolved));
    return true;
}

Substitution Substitution::restricted_to(const std::set<VarId>& vars) const {
    Substitution out;
    for (const auto& [v, t] : map_)
        if (vars.count(v)) out.map_.emplace(v, t);
    return out;
}

std::optional<Substitution> Substitution::from_bindings(const std::map<VarId, Term>& raw) {
    Substitution s;
    for (const auto& [v, t] : raw)
        if (!s.bind(v, t)) return std::nullopt;
    return s;
}

std::string Substitution::to_string() const {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (const auto& [v, t] : map_) {
        os << (first ? "" : ", ") << "#" << v << " := " << t.to_string();
        first = false;
    }
    os << "}";
    return os.str();
}

const char* to_code(UnifyFailureKind kind) {
    switch (kind) {
        case UnifyFailureKind::CtorClash: return "ctor_clash";
        case UnifyFailureKind::ArityClash: return "arity_clash";
        case UnifyFailureKind::OccursCheck: return "occurs_check";
        case UnifyFailureKind::SkolemClash: return "skolem_clash";
    }
    return "?";
}

std::string UnifyFailure::describe() const {
    switch (kind) {
        case UnifyFailureKind::OccursCheck:
            return "`" + left.to_string() + "` occurs in `" + right.to_string() + "`";
        case UnifyFailureKind::ArityClash:
            return "`" + left.to_string() + "` and `" + right.to_string() + "` differ in arity";
        default:
            return "`" + left.to_string() + "` is not `" + right.to_string() + "`";
    }
}

namespace {

std::optional<UnifyFailure> unify_into(const Term& a0, const Term& b0, Substitution& s) {
    Term a = s.apply(a0);
    Term b = s.apply(b0);
    if (a == b) return std::nullopt;
    if (a.is_var() && b.is_var()) {
        const bool a_younger = a.id() > b.id();
        s.bind(a_younger ? a.id() : b.id(), a_younger ? b : a);
        return std::nullopt;
    }
    if (a.is_var() || b.is_var()) {
        const Term& v = a.is_var() ? a : b;
        const Term& t = a.is_var() ? b : a;
        if (t.contains_var(v.id())) return UnifyFailure{UnifyFailureKind::OccursCheck, v, t};
        s.bind(v.id(), t);
        return std::nullopt;
    }
    if (a.is_skolem() || b.is_skolem()) return UnifyFailure{UnifyFailureKind::SkolemClash, a, b};
    if (!a.same_family(b)) return UnifyFailure{UnifyFailureKind::CtorClash, a, b};
    if (a.args().size() != b.args().size()) return UnifyFailure{UnifyFailureKind::ArityClash, a, b};
    for (std::size_t i = 0; i < a.args().size(); ++i)
        if (auto f = unify_into(a.args()[i], b.args()[i], s)) return f;
    return std::nullopt;
}

}  // namespace

UnifyResult unify(const Term& a, const Term& b, const Substitution& input) {
    Substitution s = input;
    if (auto f = unify_into(a, b, s)) return *f;
    return s;
}

UnifyResult unify(const Bound& a, const Bound& b, const Substitution& input) {
    Substitution s = input;
    if (a.trait_args.size() != b.trait_args.size())
        return UnifyFailure{UnifyFailureKind::ArityClash, a.subject, b.subject};
    if (auto f = unify_into(a.subject, b.subject, s)) return *f;
    for (std::size_t i = 0; i < a.trait_args.size(); ++i)
        if (auto f = unify_into(a.trait_args[i], b.trait_args[i], s)) return *f;
    return s;
}

}  // namespace traitproof::logic
