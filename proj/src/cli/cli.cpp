#include "traitproof/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cerrno>
#include <cstring>
#include <fstream>
#include <future>
#include <map>
#include <optional>
#include <sstream>

#include "traitproof/analysis.hpp"
#include "traitproof/export.hpp"
#include "traitproof/oracle.hpp"
#include "traitproof/parser.hpp"
#include "traitproof/render.hpp"
#include "traitproof/solver.hpp"
#include "traitproof/validate.hpp"

namespace traitproof::cli {

namespace {

using proof::ResultKind;

std::optional<std::string> read_file(const std::string& path, std::string& error) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        error = std::strerror(errno);
        return std::nullopt;
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string cur;
    for (char c : text) {
        if (c == '\n') {
            lines.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    lines.push_back(cur);
    return lines;
}

// Source line with a caret underline, or nothing if the span is not in
// `source`.
std::string excerpt(const std::vector<std::string>& source, const Span& span, const std::string& indent) {
    if (span.line_start < 1 || span.line_start > source.size()) return {};
    const std::string& line = source[span.line_start - 1];
    const std::string num = std::to_string(span.line_start);
    const std::size_t last = span.line_end == span.line_start ? span.col_end : line.size();
    const std::size_t width = last >= span.col_start ? last - span.col_start + 1 : 1;
    std::string out = indent + num + " | " + line + "\n";
    out += indent + std::string(num.size(), ' ') + " | " + std::string(span.col_start - 1, ' ') +
           std::string(width, '^') + "\n";
    return out;
}

void print_located(std::ostream& err, const std::vector<std::string>& source, const Span& span,
                   const std::string& message) {
    err << format_location(span) << ": error: " << message << "\n" << excerpt(source, span, "  ");
}

const char* result_word(ResultKind k) {
    switch (k) {
        case ResultKind::Proven: return "Proven";
        case ResultKind::Ambiguous: return "Ambiguous";
        case ResultKind::Disproven: return "Disproven";
        case ResultKind::Overflow: return "Overflow";
        case ResultKind::Cycle: return "Cycle";
    }
    return "?";
}

struct CheckOptions {
    std::string file;
    std::size_t query = 0;  // 1-based; 0 = all
    std::string prune = "none";
    std::size_t top_k = 3;
    std::string format = "ascii";
    std::string out_file;
    std::uint32_t max_depth = 32;
    std::uint32_t max_nodes = 100'000;
    bool ascii = false;
    bool unicode = false;
    bool include_limits = false;
    std::string goal;
    std::size_t width = 0;
};

struct QueryJob {
    std::size_t index = 0;  // 0-based
    const dsl::QueryDecl* query = nullptr;
};

struct QueryReport {
    std::size_t index = 0;
    std::optional<ResultKind> result;  // empty: budget exhausted
    std::string budget_error;
    std::string text;      // ascii rendering block
    std::string document;  // interchange JSON
};

QueryReport check_one(const dsl::ValidatedProgram& program, const QueryJob& job, const CheckOptions& opt,
                      analysis::PrunePolicy policy, bool unicode, const std::string& source_hash,
                      const std::vector<std::string>& source_lines) {
    QueryReport rep;
    rep.index = job.index;
    const dsl::QueryDecl& q = *job.query;
    std::ostringstream text;
    text << "query " << job.index + 1 << " @" << format_location(q.span) << ": " << dsl::print_bound(q.goal) << "\n";

    proof::ProofTree tree;
    try {
        tree = solver::solve_query(program, q, proof::SolverConfig{opt.max_depth, opt.max_nodes});
    } catch (const solver::BudgetExhausted& e) {
        rep.budget_error = e.what();
        text << "error: " << e.what() << "; raise --max-nodes to see the tree\n";
        rep.text = text.str();
        return rep;
    }
    rep.result = tree.root_node().result.kind;

    const proof::ProofTree shown = analysis::prune_tree(tree, policy);
    const analysis::Diagnosis diagnosis =
        analysis::localize_roots(shown, opt.top_k, analysis::LocalizeOptions{opt.include_limits});

    text << render::render_ascii(shown, diagnosis, render::RenderOptions{unicode, opt.width});
    text << "result: " << result_word(*rep.result);
    if (*rep.result == ResultKind::Ambiguous) text << " (" << tree.root_node().result.solution_count << " solutions)";
    if (*rep.result == ResultKind::Proven && !tree.root_node().result.solution.empty())
        text << " with " << tree.root_node().result.solution.apply(tree.root_node().goal().goal).to_string();
    text << "\n";
    if (!diagnosis.empty()) {
        text << "diagnosis:\n";
        for (const auto& e : diagnosis) {
            text << "  " << e.rank << ". unsatisfied bound `" << e.rendered_bound << "` @"
                 << format_location(e.provenance) << "  (depth " << e.score.depth << ", progress "
                 << e.score.progress.to_string() << ", source order " << e.score.source_order << ")\n";
            if (e.rank == 1) text << excerpt(source_lines, e.provenance, "     ");
        }
    } else if (*rep.result != ResultKind::Proven) {
        text << "diagnosis: no unsatisfied bounds found";
        if (!opt.include_limits) text << "; --include-limits also ranks overflow and cycle leaves";
        text << "\n";
    }
    rep.text = text.str();

    exchange::TreeDocument doc;
    doc.program_file = opt.file;
    doc.program_hash = source_hash;
    doc.query_index = static_cast<std::uint32_t>(job.index);
    doc.prune_policy = policy;
    doc.tree = shown;
    doc.diagnosis = diagnosis;
    rep.document = exchange::export_json(doc);
    return rep;
}

int exit_code_for(const std::vector<QueryReport>& reports) {
    bool disproven = false, inconclusive = false;
    for (const auto& r : reports) {
        if (!r.result) {
            inconclusive = true;
            continue;
        }
        if (*r.result == ResultKind::Disproven) disproven = true;
        else if (*r.result != ResultKind::Proven) inconclusive = true;
    }
    if (disproven) return kSomeDisproven;
    if (inconclusive) return kInconclusive;
    return kAllProven;
}

// Runs a CLI11 app on `args`; returns an exit code when parsing ends the
// command (help or error).
std::optional<int> parse_args(CLI::App& app, const std::vector<std::string>& args, const Io& io) {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        io.out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        io.err << "error: " << e.what() << "\n";
        return kUsageError;
    }
    return std::nullopt;
}

}  // namespace

int run_check(const std::vector<std::string>& args, const Io& io) {
    CheckOptions opt;
    CLI::App app{"Solve the queries of a .tdl file and explain failures", "traitproof check"};
    app.add_option("file", opt.file, "Program file")->required();
    app.add_option("--query", opt.query, "Check only query N (1-based)")->check(CLI::PositiveNumber);
    app.add_option("--prune", opt.prune, "Pruning policy")
        ->check(CLI::IsMember({"none", "success-collapse", "failed-path", "best-alternative"}));
    app.add_option("--top-k", opt.top_k, "Diagnosis entries to report")->check(CLI::PositiveNumber);
    app.add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"ascii", "json"}));
    app.add_option("--out", opt.out_file, "Also write the interchange document to FILE");
    app.add_option("--max-depth", opt.max_depth, "Goal depth limit")->check(CLI::PositiveNumber);
    app.add_option("--max-nodes", opt.max_nodes, "Proof tree node budget")->check(CLI::PositiveNumber);
    auto* ascii = app.add_flag("--ascii", opt.ascii, "ASCII glyphs");
    app.add_flag("--unicode", opt.unicode, "Unicode glyphs")->excludes(ascii);
    app.add_flag("--include-limits", opt.include_limits, "Rank overflow and cycle leaves too");
    app.add_option("--goal", opt.goal, "Check this bound instead of the file's queries");
    app.add_option("--width", opt.width, "Cut node labels to fit this many columns");
    if (auto code = parse_args(app, args, io)) return *code;

    std::string why;
    auto source = read_file(opt.file, why);
    if (!source) {
        io.err << "error: cannot read `" << opt.file << "`: " << why << "\n";
        return kUsageError;
    }
    const std::vector<std::string> lines = split_lines(*source);

    dsl::Program parsed;
    try {
        parsed = dsl::parse_program(*source, opt.file);
    } catch (const dsl::ParseError& e) {
        print_located(io.err, lines, e.span(), e.message());
        return kUsageError;
    }
    auto validated = dsl::validate_program(parsed);
    if (auto* errors = std::get_if<std::vector<dsl::ValidationError>>(&validated)) {
        for (const auto& e : *errors)
            print_located(io.err, lines, e.span, std::string(dsl::to_string(e.code)) + ": " + e.message);
        return kUsageError;
    }
    const dsl::ValidatedProgram& program = std::get<dsl::ValidatedProgram>(validated);

    std::vector<QueryJob> jobs;
    dsl::QueryDecl synthesized;
    if (!opt.goal.empty()) {
        try {
            synthesized.goal = dsl::parse_bound(opt.goal, "<goal>");
        } catch (const dsl::ParseError& e) {
            print_located(io.err, {opt.goal}, e.span(), e.message());
            return kUsageError;
        }
        synthesized.span = synthesized.goal.span;
        auto errors = dsl::validate_query(program, synthesized);
        if (!errors.empty()) {
            for (const auto& e : errors)
                print_located(io.err, {opt.goal}, e.span, std::string(dsl::to_string(e.code)) + ": " + e.message);
            return kUsageError;
        }
        jobs.push_back(QueryJob{program.program().queries.size(), &synthesized});
    } else {
        const auto& queries = program.program().queries;
        if (opt.query > queries.size()) {
            io.err << "error: --query " << opt.query << " is out of range; `" << opt.file << "` has "
                   << queries.size() << " quer" << (queries.size() == 1 ? "y" : "ies") << "\n";
            return kUsageError;
        }
        for (std::size_t i = 0; i < queries.size(); ++i)
            if (opt.query == 0 || opt.query == i + 1) jobs.push_back(QueryJob{i, &queries[i]});
    }
    if (jobs.empty()) {
        io.err << "error: `" << opt.file << "` has no queries; add one or pass --goal\n";
        return kUsageError;
    }

    const analysis::PrunePolicy policy = *analysis::policy_from_code(opt.prune);
    const bool unicode = opt.unicode || (!opt.ascii && io.out_is_terminal);
    const std::string hash = exchange::sha256_hex(*source);

    std::vector<std::future<QueryReport>> futures;
    for (const auto& job : jobs)
        futures.push_back(std::async(std::launch::async, check_one, std::cref(program), job, std::cref(opt), policy,
                                     unicode, std::cref(hash), std::cref(lines)));
    std::vector<QueryReport> reports;
    for (auto& f : futures) reports.push_back(f.get());

    std::string json;
    std::vector<const QueryReport*> documented;
    for (const auto& r : reports)
        if (!r.document.empty()) documented.push_back(&r);
    if (documented.size() == 1) {
        json = documented.front()->document;
    } else if (!documented.empty()) {
        json = "[\n";
        for (std::size_t i = 0; i < documented.size(); ++i) {
            std::string doc = documented[i]->document;
            doc.pop_back();
            json += doc + (i + 1 < documented.size() ? ",\n" : "\n");
        }
        json += "]\n";
    }

    if (opt.format == "json") {
        io.out << json;
        for (const auto& r : reports)
            if (!r.budget_error.empty()) io.err << "query " << r.index + 1 << ": error: " << r.budget_error << "\n";
    } else {
        for (std::size_t i = 0; i < reports.size(); ++i) io.out << (i ? "\n" : "") << reports[i].text;
    }
    if (!opt.out_file.empty()) {
        std::ofstream f(opt.out_file, std::ios::binary);
        f << json;
        if (!f) {
            io.err << "error: cannot write `" << opt.out_file << "`: " << std::strerror(errno) << "\n";
            return kUsageError;
        }
    }
    return exit_code_for(reports);
}

// --- oracle comparison ------------------------------------------------------

namespace {

void canon(const logic::Term& t, std::map<logic::VarId, int>& names, std::string& out) {
    auto list = [&](const char* open, const char* close) {
        out += open;
        for (std::size_t i = 0; i < t.args().size(); ++i) {
            if (i) out += ", ";
            canon(t.args()[i], names, out);
        }
        out += close;
    };
    switch (t.kind()) {
        case logic::TermKind::Var:
            out += "?" + std::to_string(names.emplace(t.id(), static_cast<int>(names.size())).first->second);
            return;
        case logic::TermKind::Skolem: out += "!" + t.name(); return;
        case logic::TermKind::Ctor: break;
    }
    switch (t.ctor_kind()) {
        case logic::CtorKind::Tuple: list("(", ")"); return;
        case logic::CtorKind::Fn: list("fn(", ")"); return;
        case logic::CtorKind::Named:
            out += t.name();
            if (!t.args().empty()) list("<", ">");
            return;
    }
}

std::string describe(const oracle::OracleResult& r) {
    std::string s = oracle::to_string(r.verdict);
    if (r.verdict == oracle::Verdict::Proven) s += " " + r.answer;
    if (r.verdict == oracle::Verdict::Ambiguous) s += "(" + std::to_string(r.solution_count) + ")";
    return s;
}

oracle::Verdict verdict_of(ResultKind k) {
    switch (k) {
        case ResultKind::Proven: return oracle::Verdict::Proven;
        case ResultKind::Ambiguous: return oracle::Verdict::Ambiguous;
        case ResultKind::Disproven: return oracle::Verdict::Disproven;
        case ResultKind::Overflow: return oracle::Verdict::Overflow;
        case ResultKind::Cycle: return oracle::Verdict::Cycle;
    }
    return oracle::Verdict::Disproven;
}

}  // namespace

std::string canonical_text(const logic::Bound& bound) {
    std::map<logic::VarId, int> names;
    std::string out;
    canon(bound.subject, names, out);
    out += ": " + bound.trait_name;
    if (!bound.trait_args.empty()) {
        out += "<";
        for (std::size_t i = 0; i < bound.trait_args.size(); ++i) {
            if (i) out += ", ";
            canon(bound.trait_args[i], names, out);
        }
        out += ">";
    }
    return out;
}

CaseReport compare_case(std::uint64_t seed, std::uint64_t index, const CompareConfig& config) {
    CaseReport rep;
    rep.program_text = oracle::generate_program(seed, index);
    dsl::Program parsed;
    try {
        parsed = dsl::parse_program(rep.program_text, "generated.tdl");
    } catch (const dsl::ParseError& e) {
        rep.solver = rep.oracle = std::string("generator produced unparsable text: ") + e.what();
        return rep;
    }
    auto validated = dsl::validate_program(parsed);
    if (auto* errors = std::get_if<std::vector<dsl::ValidationError>>(&validated)) {
        rep.solver = rep.oracle = "generator produced an invalid program: " + errors->front().message;
        return rep;
    }
    const auto& program = std::get<dsl::ValidatedProgram>(validated);
    const dsl::QueryDecl& query = program.program().queries.front();

    oracle::OracleResult mine;
    try {
        const proof::ProofTree tree = solver::solve_query(program, query, proof::SolverConfig{config.max_depth, config.max_nodes});
        const proof::SolveResult& r = tree.root_node().result;
        mine.verdict = verdict_of(r.kind);
        if (r.is_proven()) mine.answer = canonical_text(r.solution.apply(tree.root_node().goal().goal));
        if (r.kind == ResultKind::Ambiguous) mine.solution_count = r.solution_count;
    } catch (const solver::BudgetExhausted&) {
        mine.verdict = oracle::Verdict::BudgetExhausted;
    }
    const oracle::OracleResult ref =
        oracle::solve_exhaustive_oracle(query, program, oracle::OracleConfig{config.max_depth, config.max_nodes});
    rep.solver = describe(mine);
    rep.oracle = describe(ref);
    rep.agree = rep.solver == rep.oracle;
    return rep;
}

int run_compare_oracle(const std::vector<std::string>& args, const Io& io) {
    std::uint64_t seed = 42;
    std::uint64_t cases = 500;
    CompareConfig config;
    bool verbose = false;
    CLI::App app{"Compare the solver with the reference oracle on random programs", "traitproof compare-oracle"};
    app.add_option("--seed", seed, "Random seed");
    app.add_option("--cases", cases, "Number of generated programs");
    app.add_option("--max-depth", config.max_depth, "Goal depth limit")->check(CLI::PositiveNumber);
    app.add_option("--max-nodes", config.max_nodes, "Node budget")->check(CLI::PositiveNumber);
    app.add_flag("--verbose", verbose, "Print every case");
    if (auto code = parse_args(app, args, io)) return *code;

    std::size_t disagreements = 0;
    std::map<std::string, std::size_t> tally;
    for (std::uint64_t i = 0; i < cases; ++i) {
        const CaseReport rep = compare_case(seed, i, config);
        tally[rep.solver.substr(0, rep.solver.find_first_of(" ("))]++;
        if (verbose) io.out << "case " << i << ": " << rep.solver << "\n";
        if (rep.agree) continue;
        ++disagreements;
        io.out << "disagreement in case " << i << " (seed " << seed << ")\n"
               << "  solver: " << rep.solver << "\n  oracle: " << rep.oracle << "\n"
               << "--- program ---\n" << rep.program_text << "---------------\n";
    }
    io.out << "compare-oracle: seed " << seed << ", " << cases << " cases, " << cases - disagreements << " agree";
    if (!tally.empty()) {
        io.out << " (";
        bool first = true;
        for (const auto& [k, n] : tally) {
            io.out << (first ? "" : ", ") << k << " " << n;
            first = false;
        }
        io.out << ")";
    }
    io.out << "\n";
    return disagreements == 0 ? 0 : 1;
}

int run(const std::vector<std::string>& args, const Io& io) {
    static const char* usage =
        "usage: traitproof <command> [options]\n"
        "commands:\n"
        "  check FILE           solve the queries of FILE and explain failures\n"
        "  compare-oracle       compare the solver with the reference oracle\n"
        "run `traitproof <command> --help` for options\n";
    if (args.empty()) {
        io.err << usage;
        return kUsageError;
    }
    const std::vector<std::string> rest(args.begin() + 1, args.end());
    if (args[0] == "check") return run_check(rest, io);
    if (args[0] == "compare-oracle") return run_compare_oracle(rest, io);
    if (args[0] == "--help" || args[0] == "-h") {
        io.out << usage;
        return 0;
    }
    io.err << "error: unknown command `" << args[0] << "`\n" << usage;
    return kUsageError;
}

}  // namespace traitproof::cli
