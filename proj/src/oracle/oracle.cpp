#include <algorithm>
#include <map>
#include <unordered_map>

#include "traitproof/oracle.hpp"

namespace traitproof::oracle {

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Proven: return "Proven";
        case Verdict::Ambiguous: return "Ambiguous";
        case Verdict::Disproven: return "Disproven";
        case Verdict::Overflow: return "Overflow";
        case Verdict::Cycle: return "Cycle";
        case Verdict::BudgetExhausted: return "BudgetExhausted";
    }
    return "?";
}

namespace {

// A bound is encoded as the application `trait:Name(subject, args...)`.
struct T {
    enum Tag : std::uint8_t { App, Var, Sk } tag = App;
    std::string functor;  // App: "#tuple", "#fn", "trait:Name" or a type name; Sk: display name
    int id = 0;           // Var, Sk
    std::vector<T> args;
};

T app(std::string f, std::vector<T> args) { return T{T::App, std::move(f), 0, std::move(args)}; }
T var(int id) { return T{T::Var, {}, id, {}}; }

// Triangular bindings: a variable may be bound to a term mentioning other
// bound variables; lookups walk the chain.
using Env = std::unordered_map<int, T>;

const T& walk(const T& t, const Env& env) {
    const T* cur = &t;
    while (cur->tag == T::Var) {
        auto it = env.find(cur->id);
        if (it == env.end()) break;
        cur = &it->second;
    }
    return *cur;
}

bool occurs(int v, const T& t, const Env& env) {
    const T& w = walk(t, env);
    if (w.tag == T::Var) return w.id == v;
    for (const auto& a : w.args)
        if (occurs(v, a, env)) return true;
    return false;
}

bool unify(const T& a, const T& b, Env& env) {
    const T& x = walk(a, env);
    const T& y = walk(b, env);
    if (x.tag == T::Var && y.tag == T::Var && x.id == y.id) return true;
    if (x.tag == T::Var) {
        if (occurs(x.id, y, env)) return false;
        env.emplace(x.id, y);
        return true;
    }
    if (y.tag == T::Var) return unify(y, x, env);
    if (x.tag == T::Sk || y.tag == T::Sk) return x.tag == y.tag && x.id == y.id;
    if (x.functor != y.functor || x.args.size() != y.args.size()) return false;
    for (std::size_t i = 0; i < x.args.size(); ++i)
        if (!unify(x.args[i], y.args[i], env)) return false;
    return true;
}

T resolve(const T& t, const Env& env) {
    const T& w = walk(t, env);
    if (w.tag != T::App) return w;
    T out{T::App, w.functor, 0, {}};
    for (const auto& a : w.args) out.args.push_back(resolve(a, env));
    return out;
}

void print(const T& t, std::map<int, int>& names, std::string& out) {
    auto list = [&](std::size_t from) {
        for (std::size_t i = from; i < t.args.size(); ++i) {
            if (i > from) out += ", ";
            print(t.args[i], names, out);
        }
    };
    switch (t.tag) {
        case T::Var: {
            auto it = names.emplace(t.id, static_cast<int>(names.size())).first;
            out += "?" + std::to_string(it->second);
            return;
        }
        case T::Sk: out += "!" + t.functor; return;
        case T::App: break;
    }
    if (t.functor == "#tuple") {
        out += "(";
        list(0);
        out += ")";
    } else if (t.functor == "#fn") {
        out += "fn(";
        list(0);
        out += ")";
    } else if (t.functor.rfind("trait:", 0) == 0) {
        print(t.args[0], names, out);
        out += ": " + t.functor.substr(6);
        if (t.args.size() > 1) {
            out += "<";
            list(1);
            out += ">";
        }
    } else {
        out += t.functor;
        if (!t.args.empty()) {
            out += "<";
            list(0);
            out += ">";
        }
    }
}

// Resolved term printed with canonical variable names; two terms are
// variants exactly when their canonical texts coincide.
std::string canonical(const T& resolved) {
    std::map<int, int> names;
    std::string out;
    print(resolved, names, out);
    return out;
}

struct Clause {
    int generics = 0;  // generic i is Var(i) before renaming
    T head;
    std::vector<T> body;
};

struct Scope {
    std::map<std::string, int> generics;
    std::map<std::string, T> universals;
    std::map<std::string, int> existentials;
};

T convert(const dsl::TypeTermAst& a, const Scope& scope) {
    std::vector<T> args;
    for (const auto& x : a.args) args.push_back(convert(x, scope));
    switch (a.kind) {
        case dsl::TypeTermKind::Ctor: return app(a.name, std::move(args));
        case dsl::TypeTermKind::Tuple: return app("#tuple", std::move(args));
        case dsl::TypeTermKind::Fn: return app("#fn", std::move(args));
        case dsl::TypeTermKind::Var: break;
    }
    switch (a.binder) {
        case dsl::Binder::Generic: return var(scope.generics.at(a.name));
        case dsl::Binder::Universal: return scope.universals.at(a.name);
        case dsl::Binder::Existential: return var(scope.existentials.at(a.name));
    }
    return {};
}

T convert(const dsl::BoundAst& b, const Scope& scope) {
    std::vector<T> args{convert(b.subject, scope)};
    for (const auto& x : b.trait_ref.args) args.push_back(convert(x, scope));
    return app("trait:" + b.trait_ref.trait_name, std::move(args));
}

T rename(const T& t, int base) {
    if (t.tag == T::Var) return var(t.id + base);
    T out = t;
    for (auto& a : out.args) a = rename(a, base);
    return out;
}

struct BudgetHit {};

struct Outcome {
    Verdict verdict = Verdict::Disproven;
    T answer;  // Proven: resolved goal instance
    std::size_t count = 0;
};

int and_weight(Verdict v) {
    switch (v) {
        case Verdict::Disproven: return 4;
        case Verdict::Cycle: return 3;
        case Verdict::Overflow: return 2;
        case Verdict::Ambiguous: return 1;
        default: return 0;
    }
}

int or_weight(Verdict v) {
    switch (v) {
        case Verdict::Ambiguous: return 3;
        case Verdict::Overflow: return 2;
        case Verdict::Cycle: return 1;
        default: return 0;
    }
}

bool has_vars(const T& t) {
    if (t.tag == T::Var) return true;
    return std::any_of(t.args.begin(), t.args.end(), has_vars);
}

class Engine {
public:
    Engine(std::vector<Clause> clauses, int next_var, const OracleConfig& config)
        : clauses_(std::move(clauses)), next_var_(next_var), config_(config) {}

    // `goal` is fully resolved.
    Outcome prove(const T& goal, std::uint32_t depth) {
        tick();
        const std::string key = canonical(goal);
        if (std::find(stack_.begin(), stack_.end(), key) != stack_.end()) return {Verdict::Cycle, {}, 0};
        if (depth >= config_.max_depth) return {Verdict::Overflow, {}, 0};

        stack_.push_back(key);
        std::vector<Outcome> alts;
        for (const Clause& c : clauses_)
            if (c.head.functor == goal.functor) alts.push_back(try_clause(goal, c, depth));
        stack_.pop_back();

        std::vector<std::string> seen;
        const Outcome* first = nullptr;
        for (const auto& o : alts) {
            if (o.verdict != Verdict::Proven) continue;
            if (!first) first = &o;
            std::string k = canonical(o.answer);
            if (std::find(seen.begin(), seen.end(), k) == seen.end()) seen.push_back(std::move(k));
        }
        if (first) {
            if (has_vars(goal) && seen.size() > 1) return {Verdict::Ambiguous, {}, seen.size()};
            return *first;
        }
        Outcome best{Verdict::Disproven, {}, 0};
        for (const auto& o : alts)
            if (or_weight(o.verdict) > or_weight(best.verdict)) best = o;
        if (best.verdict == Verdict::Ambiguous) best.count = widest(alts);
        return best;
    }

private:
    static std::size_t widest(const std::vector<Outcome>& xs) {
        std::size_t n = 2;
        for (const auto& x : xs)
            if (x.verdict == Verdict::Ambiguous) n = std::max(n, x.count);
        return n;
    }

    Outcome try_clause(const T& goal, const Clause& c, std::uint32_t depth) {
        tick();
        const int base = next_var_;
        next_var_ += c.generics;
        Env env;
        if (!unify(rename(c.head, base), goal, env)) return {Verdict::Disproven, {}, 0};

        std::vector<Outcome> subs;
        for (const T& premise : c.body) {
            const T sub_goal = resolve(rename(premise, base), env);
            Outcome o = prove(sub_goal, depth + 1);
            if (o.verdict == Verdict::Proven) unify(sub_goal, o.answer, env);
            subs.push_back(std::move(o));
        }
        Verdict worst = Verdict::Proven;
        for (const auto& o : subs)
            if (and_weight(o.verdict) > and_weight(worst)) worst = o.verdict;
        if (worst == Verdict::Ambiguous) return {worst, {}, widest(subs)};
        if (worst != Verdict::Proven) return {worst, {}, 0};
        return {Verdict::Proven, resolve(goal, env), 0};
    }

    void tick() {
        if (++nodes_ > config_.max_nodes) throw BudgetHit{};
    }

    std::vector<Clause> clauses_;
    int next_var_;
    OracleConfig config_;
    std::vector<std::string> stack_;
    std::size_t nodes_ = 0;
};

}  // namespace

OracleResult solve_exhaustive_oracle(const dsl::QueryDecl& query, const dsl::ValidatedProgram& program,
                                     const OracleConfig& config) {
    Scope qscope;
    int next_skolem = 1;
    for (const auto& u : query.universals) qscope.universals[u] = T{T::Sk, u, next_skolem++, {}};
    int next_var = 1;
    std::vector<const dsl::TypeTermAst*> todo{&query.goal.subject};
    for (const auto& a : query.goal.trait_ref.args) todo.push_back(&a);
    while (!todo.empty()) {
        const dsl::TypeTermAst* t = todo.back();
        todo.pop_back();
        if (t->kind == dsl::TypeTermKind::Var && t->binder == dsl::Binder::Existential &&
            !qscope.existentials.count(t->name))
            qscope.existentials[t->name] = next_var++;
        for (const auto& a : t->args) todo.push_back(&a);
    }

    std::vector<Clause> clauses;
    for (const auto& h : query.hypotheses) clauses.push_back(Clause{0, convert(h, qscope), {}});
    for (const auto& impl : program.program().impls) {
        Scope s;
        for (std::size_t i = 0; i < impl.generics.size(); ++i) s.generics[impl.generics[i]] = static_cast<int>(i);
        Clause c{static_cast<int>(impl.generics.size()), convert(impl.head, s), {}};
        for (const auto& w : impl.where_clauses) c.body.push_back(convert(w, s));
        clauses.push_back(std::move(c));
    }

    Engine engine(std::move(clauses), next_var, config);
    const T goal = convert(query.goal, qscope);
    try {
        Outcome o = engine.prove(goal, 0);
        OracleResult r{o.verdict, {}, o.count};
        if (o.verdict == Verdict::Proven) r.answer = canonical(o.answer);
        return r;
    } catch (const BudgetHit&) {
        return {Verdict::BudgetExhausted, {}, 0};
    }
}

}  // namespace traitproof::oracle
