#include "traitproof/ast.hpp"

#include <sstream>

namespace traitproof {

std::string display_file(const std::string& path) {
    auto slash = path.find_last_of('/');
    return slash == std::string::npos ? path : path.substr(slash + 1);
}

std::string format_location(const Span& span) {
    return span.file + ":" + std::to_string(span.line_start) + ":" + std::to_string(span.col_start);
}

}  // namespace traitproof

namespace traitproof::dsl {

TypeTermAst TypeTermAst::ctor(std::string name, std::vector<TypeTermAst> args, Span span) {
    return TypeTermAst{TypeTermKind::Ctor, std::move(name), Binder::Generic, std::move(args), std::move(span)};
}

TypeTermAst TypeTermAst::tuple(std::vector<TypeTermAst> elems, Span span) {
    return TypeTermAst{TypeTermKind::Tuple, {}, Binder::Generic, std::move(elems), std::move(span)};
}

TypeTermAst TypeTermAst::fn(std::vector<TypeTermAst> params, Span span) {
    return TypeTermAst{TypeTermKind::Fn, {}, Binder::Generic, std::move(params), std::move(span)};
}

TypeTermAst TypeTermAst::var(std::string name, Binder binder, Span span) {
    return TypeTermAst{TypeTermKind::Var, std::move(name), binder, {}, std::move(span)};
}

namespace {

template <typename T>
bool all_same(const std::vector<T>& a, const std::vector<T>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!same_structure(a[i], b[i])) return false;
    return true;
}

bool same_decls(const std::vector<Decl>& a, const std::vector<Decl>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i].name != b[i].name || a[i].params != b[i].params) return false;
    return true;
}

void print_list(std::ostream& os, const std::vector<TypeTermAst>& ts) {
    for (std::size_t i = 0; i < ts.size(); ++i) {
        if (i) os << ", ";
        os << print_type(ts[i]);
    }
}

void print_names(std::ostream& os, const std::vector<std::string>& names) {
    if (names.empty()) return;
    os << "<";
    for (std::size_t i = 0; i < names.size(); ++i) os << (i ? ", " : "") << names[i];
    os << ">";
}

}  // namespace

bool same_structure(const TypeTermAst& a, const TypeTermAst& b) {
    if (a.kind != b.kind) return false;
    if (a.kind == TypeTermKind::Var) return a.name == b.name && a.binder == b.binder;
    if (a.kind == TypeTermKind::Ctor && a.name != b.name) return false;
    return all_same(a.args, b.args);
}

static bool same_trait_ref(const TraitRefAst& a, const TraitRefAst& b) {
    return a.trait_name == b.trait_name && all_same(a.args, b.args);
}

bool same_structure(const BoundAst& a, const BoundAst& b) {
    return same_structure(a.subject, b.subject) && same_trait_ref(a.trait_ref, b.trait_ref);
}

bool same_structure(const Program& a, const Program& b) {
    if (!same_decls(a.type_decls, b.type_decls) || !same_decls(a.trait_decls, b.trait_decls)) return false;
    if (a.impls.size() != b.impls.size() || a.queries.size() != b.queries.size()) return false;
    for (std::size_t i = 0; i < a.impls.size(); ++i) {
        const auto& x = a.impls[i];
        const auto& y = b.impls[i];
        if (x.id != y.id || x.generics != y.generics || !same_structure(x.head, y.head) ||
            !all_same(x.where_clauses, y.where_clauses))
            return false;
    }
    for (std::size_t i = 0; i < a.queries.size(); ++i) {
        const auto& x = a.queries[i];
        const auto& y = b.queries[i];
        if (x.universals != y.universals || !all_same(x.hypotheses, y.hypotheses) ||
            !same_structure(x.goal, y.goal))
            return false;
    }
    return true;
}

std::string print_type(const TypeTermAst& t) {
    std::ostringstream os;
    switch (t.kind) {
        case TypeTermKind::Var:
            if (t.binder == Binder::Existential) os << "?";
            os << t.name;
            break;
        case TypeTermKind::Ctor:
            os << t.name;
            if (!t.args.empty()) {
                os << "<";
                print_list(os, t.args);
                os << ">";
            }
            break;
        case TypeTermKind::Tuple:
            os << "(";
            print_list(os, t.args);
            os << ")";
            break;
        case TypeTermKind::Fn:
            os << "fn(";
            print_list(os, t.args);
            os << ")";
            break;
    }
    return os.str();
}

std::string print_bound(const BoundAst& b) {
    std::ostringstream os;
    os << print_type(b.subject) << ": " << b.trait_ref.trait_name;
    if (!b.trait_ref.args.empty()) {
        os << "<";
        print_list(os, b.trait_ref.args);
        os << ">";
    }
    return os.str();
}

std::string print_program(const Program& p) {
    std::ostringstream os;
    for (const auto& d : p.type_decls) {
        os << "type " << d.name;
        print_names(os, d.params);
        os << ";\n";
    }
    for (const auto& d : p.trait_decls) {
        os << "trait " << d.name;
        print_names(os, d.params);
        os << ";\n";
    }
    for (const auto& impl : p.impls) {
        os << "impl";
        print_names(os, impl.generics);
        os << " " << impl.head.trait_ref.trait_name;
        if (!impl.head.trait_ref.args.empty()) {
            os << "<";
            print_list(os, impl.head.trait_ref.args);
            os << ">";
        }
        os << " for " << print_type(impl.head.subject);
        for (std::size_t i = 0; i < impl.where_clauses.size(); ++i)
            os << (i ? ", " : " where ") << print_bound(impl.where_clauses[i]);
        os << ";\n";
    }
    for (const auto& q : p.queries) {
        os << "query";
        if (!q.universals.empty()) {
            os << " forall";
            print_names(os, q.universals);
        }
        if (!q.hypotheses.empty()) {
            os << " if (";
            for (std::size_t i = 0; i < q.hypotheses.size(); ++i)
                os << (i ? ", " : "") << print_bound(q.hypotheses[i]);
            os << ")";
        }
        os << " { " << print_bound(q.goal) << " };\n";
    }
    return os.str();
}

}  // namespace traitproof::dsl
