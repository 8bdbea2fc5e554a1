#include <random>
#include <sstream>

#include "traitproof/oracle.hpp"

namespace traitproof::oracle {

namespace {

struct TypeCtor {
    const char* name;
    std::size_t arity;
};

constexpr TypeCtor kTypes[] = {{"A", 0}, {"B", 0}, {"C", 0}, {"Box", 1}, {"Pair", 2}};

class Gen {
public:
    Gen(std::uint64_t seed, std::uint64_t index, const GeneratorConfig& config)
        : config_(config) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
        rng_.seed(seq);
    }

    std::string run() {
        std::ostringstream out;
        for (const auto& t : kTypes) {
            out << "type " << t.name;
            if (t.arity == 1) out << "<X>";
            if (t.arity == 2) out << "<X, Y>";
            out << ";\n";
        }
        const std::size_t traits = pick(1, config_.max_traits);
        for (std::size_t i = 0; i < traits; ++i) {
            trait_arity_.push_back(pick(0, 3) == 0 ? 1 : 0);
            out << "trait T" << i << (trait_arity_.back() ? "<X>" : "") << ";\n";
        }
        const std::size_t impls = pick(0, config_.max_impls);
        for (std::size_t i = 0; i < impls; ++i) out << impl() << "\n";
        out << query() << "\n";
        return out.str();
    }

private:
    std::size_t pick(std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_); }
    bool chance(int percent) { return pick(1, 100) <= static_cast<std::size_t>(percent); }

    // `vars` are the names in scope; depth counts constructor levels.
    std::string term(const std::vector<std::string>& vars, std::size_t depth) {
        if (!vars.empty() && (depth == 0 || chance(40))) return vars[pick(0, vars.size() - 1)];
        if (depth == 0) return kTypes[pick(0, 2)].name;
        const std::size_t shape = pick(0, 9);
        if (shape <= 3) return kTypes[pick(0, 2)].name;
        if (shape <= 5) return std::string("Box<") + term(vars, depth - 1) + ">";
        if (shape <= 7) return "Pair<" + term(vars, depth - 1) + ", " + term(vars, depth - 1) + ">";
        if (shape == 8) {
            std::string s = "(";
            const std::size_t n = pick(0, 2);
            for (std::size_t i = 0; i < n; ++i) s += (i ? ", " : "") + term(vars, depth - 1);
            return s + ")";
        }
        return "fn(" + term(vars, depth - 1) + ")";
    }

    std::string bound(const std::vector<std::string>& vars, std::size_t depth) {
        const std::size_t t = pick(0, trait_arity_.size() - 1);
        std::string s = term(vars, depth) + ": T" + std::to_string(t);
        if (trait_arity_[t]) s += "<" + term(vars, depth > 0 ? depth - 1 : 0) + ">";
        return s;
    }

    std::string impl() {
        std::vector<std::string> generics;
        const std::size_t n = pick(0, config_.max_generics);
        for (std::size_t i = 0; i < n; ++i) generics.push_back("P" + std::to_string(i));
        std::string s = "impl";
        if (!generics.empty()) {
            s += "<";
            for (std::size_t i = 0; i < n; ++i) s += (i ? ", " : "") + generics[i];
            s += ">";
        }
        const std::size_t t = pick(0, trait_arity_.size() - 1);
        s += " T" + std::to_string(t);
        if (trait_arity_[t]) s += "<" + term(generics, 1) + ">";
        s += " for " + term(generics, pick(0, config_.max_term_depth));
        if (!generics.empty()) {
            const std::size_t w = pick(0, 2);
            for (std::size_t i = 0; i < w; ++i) s += (i ? ", " : " where ") + bound(generics, pick(0, 1));
        }
        return s + ";";
    }

    std::string query() {
        std::string s = "query";
        std::vector<std::string> vars;
        if (chance(25)) {
            s += " forall<U>";
            vars.push_back("U");
            if (chance(70)) s += " if (" + bound(vars, 1) + ")";
        }
        if (chance(40)) vars.push_back("?X");
        if (chance(15)) vars.push_back("?Y");
        return s + " { " + bound(vars, config_.max_term_depth) + " };";
    }

    std::mt19937_64 rng_;
    GeneratorConfig config_;
    std::vector<std::size_t> trait_arity_;
};

}  // namespace

std::string generate_program(std::uint64_t seed, std::uint64_t index, const GeneratorConfig& config) {
    return Gen(seed, index, config).run();
}

}  // namespace traitproof::oracle
