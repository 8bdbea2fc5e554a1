#include "traitproof/term.hpp"

#include <sstream>
#include <tuple>

namespace traitproof::logic {

Term::Term() : Term(std::make_shared<const Node>(Node{TermKind::Ctor, CtorKind::Tuple, {}, 0, {}})) {}

Term Term::ctor(std::string name, std::vector<Term> args) {
    return Term(std::make_shared<const Node>(Node{TermKind::Ctor, CtorKind::Named, std::move(name), 0, std::move(args)}));
}

Term Term::tuple(std::vector<Term> elems) {
    return Term(std::make_shared<const Node>(Node{TermKind::Ctor, CtorKind::Tuple, {}, 0, std::move(elems)}));
}

Term Term::fn(std::vector<Term> params) {
    return Term(std::make_shared<const Node>(Node{TermKind::Ctor, CtorKind::Fn, {}, 0, std::move(params)}));
}

Term Term::var(VarId id, std::string hint) {
    return Term(std::make_shared<const Node>(Node{TermKind::Var, CtorKind::Named, std::move(hint), id, {}}));
}

Term Term::skolem(SkolemId id, std::string name) {
    return Term(std::make_shared<const Node>(Node{TermKind::Skolem, CtorKind::Named, std::move(name), id, {}}));
}

bool Term::same_family(const Term& o) const {
    return is_ctor() && o.is_ctor() && ctor_kind() == o.ctor_kind() &&
           (ctor_kind() != CtorKind::Named || name() == o.name());
}

bool Term::same_head(const Term& o) const { return same_family(o) && args().size() == o.args().size(); }

bool Term::ground() const {
    if (is_var()) return false;
    for (const auto& a : args())
        if (!a.ground()) return false;
    return true;
}

bool Term::contains_var(VarId v) const {
    if (is_var()) return id() == v;
    for (const auto& a : args())
        if (a.contains_var(v)) return true;
    return false;
}

void Term::collect_vars(std::set<VarId>& out) const {
    if (is_var()) {
        out.insert(id());
        return;
    }
    for (const auto& a : args()) a.collect_vars(out);
}

static void print_args(std::ostream& os, const std::vector<Term>& args) {
    for (std::size_t i = 0; i < args.size(); ++i) os << (i ? ", " : "") << args[i].to_string();
}

std::string Term::to_string() const {
    std::ostringstream os;
    switch (kind()) {
        case TermKind::Var:
            os << "?" << (name().empty() ? "_" : name());
            break;
        case TermKind::Skolem:
            os << name();
            break;
        case TermKind::Ctor:
            switch (ctor_kind()) {
                case CtorKind::Named:
                    os << name();
                    if (!args().empty()) {
                        os << "<";
                        print_args(os, args());
                        os << ">";
                    }
                    break;
                case CtorKind::Tuple:
                    os << "(";
                    print_args(os, args());
                    os << ")";
                    break;
                case CtorKind::Fn:
                    os << "fn(";
                    print_args(os, args());
                    os << ")";
                    break;
            }
            break;
    }
    return os.str();
}

bool operator==(const Term& a, const Term& b) {
    if (a.node_ == b.node_) return true;
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
        case TermKind::Var:
        case TermKind::Skolem:
            return a.id() == b.id();
        case TermKind::Ctor:
            if (!a.same_head(b)) return false;
            for (std::size_t i = 0; i < a.args().size(); ++i)
                if (!(a.args()[i] == b.args()[i])) return false;
            return true;
    }
    return false;
}

bool operator<(const Term& a, const Term& b) {
    if (a.kind() != b.kind()) return a.kind() < b.kind();
    if (!a.is_ctor()) return a.id() < b.id();
    auto ka = std::make_tuple(a.ctor_kind(), std::cref(a.name()), a.args().size());
    auto kb = std::make_tuple(b.ctor_kind(), std::cref(b.name()), b.args().size());
    if (ka != kb) return ka < kb;
    for (std::size_t i = 0; i < a.args().size(); ++i) {
        if (a.args()[i] < b.args()[i]) return true;
        if (b.args()[i] < a.args()[i]) return false;
    }
    return false;
}

bool Bound::ground() const {
    if (!subject.ground()) return false;
    for (const auto& a : trait_args)
        if (!a.ground()) return false;
    return true;
}

std::set<VarId> Bound::vars() const {
    std::set<VarId> out;
    subject.collect_vars(out);
    for (const auto& a : trait_args) a.collect_vars(out);
    return out;
}

std::string Bound::to_string() const {
    std::ostringstream os;
    os << subject.to_string() << ": " << trait_name;
    if (!trait_args.empty()) {
        os << "<";
        print_args(os, trait_args);
        os << ">";
    }
    return os.str();
}

namespace {

// Builds the renaming in both directions so it stays a bijection.
bool variant_step(const Term& a, const Term& b, std::map<VarId, VarId>& fwd, std::map<VarId, VarId>& back) {
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
        case TermKind::Var: {
            auto [it, fresh] = fwd.emplace(a.id(), b.id());
            auto [jt, fresh_back] = back.emplace(b.id(), a.id());
            return it->second == b.id() && jt->second == a.id();
        }
        case TermKind::Skolem:
            return a.id() == b.id();
        case TermKind::Ctor:
            if (!a.same_head(b)) return false;
            for (std::size_t i = 0; i < a.args().size(); ++i)
                if (!variant_step(a.args()[i], b.args()[i], fwd, back)) return false;
            return true;
    }
    return false;
}

}  // namespace

bool is_variant(const Term& a, const Term& b) {
    std::map<VarId, VarId> fwd, back;
    return variant_step(a, b, fwd, back);
}

bool is_variant(const Bound& a, const Bound& b) {
    if (a.trait_name != b.trait_name || a.trait_args.size() != b.trait_args.size()) return false;
    std::map<VarId, VarId> fwd, back;
    if (!variant_step(a.subject, b.subject, fwd, back)) return false;
    for (std::size_t i = 0; i < a.trait_args.size(); ++i)
        if (!variant_step(a.trait_args[i], b.trait_args[i], fwd, back)) return false;
    return true;
}

}  // namespace traitproof::logic
