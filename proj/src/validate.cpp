#include "traitproof/validate.hpp"

#include <algorithm>
#include <set>

namespace traitproof::dsl {

const char* to_string(ValidationCode code) {
    switch (code) {
        case ValidationCode::UnknownTrait: return "UnknownTrait";
        case ValidationCode::UnknownType: return "UnknownType";
        case ValidationCode::ArityMismatch: return "ArityMismatch";
        case ValidationCode::UnboundVar: return "UnboundVar";
        case ValidationCode::DuplicateName: return "DuplicateName";
    }
    return "?";
}

namespace {

enum class Context : std::uint8_t { Impl, QueryGoal, Hypothesis };

class Checker {
public:
    Checker(const std::map<std::string, std::size_t>& types, const std::map<std::string, std::size_t>& traits,
            std::vector<ValidationError>& errors)
        : types_(types), traits_(traits), errors_(errors) {}

    void check_type(const TypeTermAst& t, Context ctx, const std::vector<std::string>& scope) {
        switch (t.kind) {
            case TypeTermKind::Var:
                if (t.binder == Binder::Existential) {
                    if (ctx == Context::Impl)
                        report(ValidationCode::UnboundVar, t.span, "`?" + t.name + "` is not allowed in an impl");
                    else if (ctx == Context::Hypothesis)
                        report(ValidationCode::UnboundVar, t.span,
                               "`?" + t.name + "` is not allowed in a hypothesis; hypotheses must be ground");
                    else if (std::find(scope.begin(), scope.end(), t.name) != scope.end())
                        report(ValidationCode::DuplicateName, t.span,
                               "`?" + t.name + "` reuses the name of a universal variable");
                } else if (std::find(scope.begin(), scope.end(), t.name) == scope.end()) {
                    report(ValidationCode::UnboundVar, t.span, "`" + t.name + "` is not bound in this scope");
                }
                return;
            case TypeTermKind::Tuple:
            case TypeTermKind::Fn:
                for (const auto& a : t.args) check_type(a, ctx, scope);
                return;
            case TypeTermKind::Ctor: break;
        }
        auto it = types_.find(t.name);
        if (it == types_.end()) {
            // A bare undeclared name is almost always a generic parameter the
            // user forgot to list.
            if (t.args.empty())
                report(ValidationCode::UnboundVar, t.span,
                       "`" + t.name + "` is neither a declared type nor a bound generic parameter");
            else
                report(ValidationCode::UnknownType, t.span, "unknown type `" + t.name + "`");
        } else if (it->second != t.args.size()) {
            report(ValidationCode::ArityMismatch, t.span,
                   "type `" + t.name + "` takes " + std::to_string(it->second) + " argument(s) but " +
                       std::to_string(t.args.size()) + " were given");
        }
        for (const auto& a : t.args) check_type(a, ctx, scope);
    }

    void check_bound(const BoundAst& b, Context ctx, const std::vector<std::string>& scope) {
        check_type(b.subject, ctx, scope);
        const auto& tr = b.trait_ref;
        auto it = traits_.find(tr.trait_name);
        if (it == traits_.end()) {
            report(ValidationCode::UnknownTrait, tr.span, "unknown trait `" + tr.trait_name + "`");
        } else if (it->second != tr.args.size()) {
            report(ValidationCode::ArityMismatch, tr.span,
                   "trait `" + tr.trait_name + "` takes " + std::to_string(it->second) + " argument(s) but " +
                       std::to_string(tr.args.size()) + " were given");
        }
        for (const auto& a : tr.args) check_type(a, ctx, scope);
    }

    void check_distinct(const std::vector<std::string>& names, const Span& span, const char* what) {
        std::set<std::string> seen;
        for (const auto& n : names)
            if (!seen.insert(n).second)
                report(ValidationCode::DuplicateName, span, std::string("duplicate ") + what + " `" + n + "`");
    }

    void check_query(const QueryDecl& q) {
        check_distinct(q.universals, q.span, "universal variable");
        for (const auto& h : q.hypotheses) check_bound(h, Context::Hypothesis, q.universals);
        check_bound(q.goal, Context::QueryGoal, q.universals);
    }

    void report(ValidationCode code, const Span& span, std::string message) {
        errors_.push_back(ValidationError{code, span, std::move(message)});
    }

private:
    const std::map<std::string, std::size_t>& types_;
    const std::map<std::string, std::size_t>& traits_;
    std::vector<ValidationError>& errors_;
};

void collect_decls(const std::vector<Decl>& decls, const char* what, std::map<std::string, std::size_t>& out,
                   Checker& checker) {
    for (const auto& d : decls) {
        if (!out.emplace(d.name, d.arity()).second)
            checker.report(ValidationCode::DuplicateName, d.span,
                           std::string("duplicate ") + what + " declaration `" + d.name + "`");
        checker.check_distinct(d.params, d.span, "parameter");
    }
}

}  // namespace

ValidationOutcome validate_program(const Program& program) {
    std::vector<ValidationError> errors;
    std::map<std::string, std::size_t> types, traits;
    Checker checker(types, traits, errors);
    collect_decls(program.type_decls, "type", types, checker);
    collect_decls(program.trait_decls, "trait", traits, checker);

    for (const auto& impl : program.impls) {
        checker.check_distinct(impl.generics, impl.span, "generic parameter");
        checker.check_bound(impl.head, Context::Impl, impl.generics);
        for (const auto& w : impl.where_clauses) checker.check_bound(w, Context::Impl, impl.generics);
    }
    for (const auto& q : program.queries) checker.check_query(q);

    if (!errors.empty()) return errors;
    ValidatedProgram vp;
    vp.program_ = program;
    vp.type_arity_ = std::move(types);
    vp.trait_arity_ = std::move(traits);
    return vp;
}

std::vector<ValidationError> validate_query(const ValidatedProgram& program, const QueryDecl& query) {
    std::vector<ValidationError> errors;
    Checker checker(program.type_arity(), program.trait_arity(), errors);
    checker.check_query(query);
    return errors;
}

}  // namespace traitproof::dsl
