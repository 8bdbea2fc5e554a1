#include "traitproof/export.hpp"

#include <openssl/evp.h>

#include <iomanip>
#include <json.hpp>
#include <sstream>

namespace traitproof::exchange {

using analysis::Diagnosis;
using analysis::DiagnosisEntry;
using logic::Bound;
using logic::Substitution;
using logic::Term;
using logic::UnifyFailure;
using logic::UnifyFailureKind;
using proof::CandidateInfo;
using proof::GoalInfo;
using proof::NodeId;
using proof::ProofNode;
using proof::ProofTree;
using proof::SolveResult;
using proof::SummaryInfo;
using ojson = nlohmann::ordered_json;

const char* to_string(FormatErrorCode code) {
    switch (code) {
        case FormatErrorCode::UnknownVersion: return "UnknownVersion";
        case FormatErrorCode::MissingField: return "MissingField";
        case FormatErrorCode::DanglingNodeId: return "DanglingNodeId";
        case FormatErrorCode::CycleDetected: return "CycleDetected";
        case FormatErrorCode::InvalidValue: return "InvalidValue";
    }
    return "?";
}

FormatError::FormatError(FormatErrorCode code, std::string path, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + " at " + (path.empty() ? "/" : path) + ": " + message),
      code_(code),
      path_(std::move(path)) {}

std::string sha256_hex(std::string_view data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr);
    std::ostringstream os;
    for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
    return os.str();
}

// ---------------------------------------------------------------------------
// Export

namespace {

ojson term_json(const Term& t) {
    ojson j = ojson::object();
    auto list = [](const std::vector<Term>& ts) {
        ojson a = ojson::array();
        for (const auto& x : ts) a.push_back(term_json(x));
        return a;
    };
    switch (t.kind()) {
        case logic::TermKind::Var:
            j["var"] = t.id();
            j["name"] = t.name();
            break;
        case logic::TermKind::Skolem:
            j["skolem"] = t.id();
            j["name"] = t.name();
            break;
        case logic::TermKind::Ctor:
            switch (t.ctor_kind()) {
                case logic::CtorKind::Named:
                    j["ctor"] = t.name();
                    j["args"] = list(t.args());
                    break;
                case logic::CtorKind::Tuple: j["tuple"] = list(t.args()); break;
                case logic::CtorKind::Fn: j["fn"] = list(t.args()); break;
            }
            break;
    }
    return j;
}

ojson bound_json(const Bound& b) {
    ojson args = ojson::array();
    for (const auto& a : b.trait_args) args.push_back(term_json(a));
    return ojson{{"subject", term_json(b.subject)}, {"trait", b.trait_name}, {"args", std::move(args)}};
}

ojson subst_json(const Substitution& s) {
    ojson a = ojson::array();
    for (const auto& [v, t] : s.bindings()) a.push_back(ojson{{"var", v}, {"term", term_json(t)}});
    return a;
}

ojson span_json(const Span& s) {
    return ojson{{"file", s.file},         {"line_start", s.line_start}, {"col_start", s.col_start},
                 {"line_end", s.line_end}, {"col_end", s.col_end}};
}

ojson node_json(const ProofNode& n) {
    ojson j;
    j["id"] = n.id;
    j["kind"] = to_code(n.kind());
    j["display"] = n.display;
    j["result"] = to_code(n.result.kind);
    if (n.result.kind == proof::ResultKind::Proven) j["solution"] = subst_json(n.result.solution);
    if (n.result.kind == proof::ResultKind::Ambiguous) j["solution_count"] = n.result.solution_count;
    j["depth"] = n.depth;
    switch (n.kind()) {
        case proof::NodeKind::Goal:
            j["goal"] = bound_json(n.goal().goal);
            j["overlap"] = n.goal().overlap;
            break;
        case proof::NodeKind::Candidate: {
            const CandidateInfo& c = n.candidate();
            if (c.origin == logic::ClauseOrigin::Impl) {
                j["origin"] = "impl";
                j["impl_id"] = c.impl_id;
            } else {
                j["origin"] = "hypothesis";
                j["impl_id"] = nullptr;
                j["hypothesis"] = c.hypothesis_index;
            }
            j["alt_index"] = c.alt_index;
            j["alt_count"] = c.alt_count;
            if (const UnifyFailure* f = c.failure()) {
                j["unify"] = logic::to_code(f->kind);
                j["clash"] = ojson{{"left", term_json(f->left)}, {"right", term_json(f->right)}};
            } else {
                j["unify"] = "ok";
                j["unifier"] = subst_json(std::get<Substitution>(c.unifier));
            }
            break;
        }
        case proof::NodeKind::Summary: {
            const SummaryInfo& s = n.summary();
            j["label"] = s.label;
            j["subject"] = s.subject;
            j["collapsed"] = s.collapsed;
            j["hidden_alternatives"] = s.hidden_alternatives;
            j["alt_index"] = s.alt_index;
            j["alt_count"] = s.alt_count;
            break;
        }
    }
    j["children"] = n.children;
    j["span"] = span_json(n.provenance);
    return j;
}

ojson diagnosis_json(const DiagnosisEntry& e) {
    return ojson{{"rank", e.rank},
                 {"node", e.node},
                 {"rendered_bound", e.rendered_bound},
                 {"score",
                  {{"depth", e.score.depth},
                   {"progress", e.score.progress.to_string()},
                   {"source_order", e.score.source_order}}},
                 {"path", e.path},
                 {"span", span_json(e.provenance)}};
}

}  // namespace

std::string export_json(const TreeDocument& doc) {
    ojson j;
    j["format_version"] = doc.format_version;
    j["program_file"] = doc.program_file;
    j["program_hash"] = doc.program_hash;
    j["query_index"] = doc.query_index;
    j["config"] = ojson{{"max_depth", doc.tree.config.max_depth}, {"max_nodes", doc.tree.config.max_nodes}};
    j["prune_policy"] = analysis::to_code(doc.prune_policy);
    j["query_span"] = span_json(doc.tree.query_span);
    j["root"] = doc.tree.root;
    ojson nodes = ojson::array();
    for (const auto& n : doc.tree.nodes) nodes.push_back(node_json(n));
    j["nodes"] = std::move(nodes);
    ojson diag = ojson::array();
    for (const auto& e : doc.diagnosis) diag.push_back(diagnosis_json(e));
    j["diagnosis"] = std::move(diag);
    return j.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Import

namespace {

using json = nlohmann::json;

std::string child_path(const std::string& path, const std::string& key) { return path + "/" + key; }
std::string child_path(const std::string& path, std::size_t index) { return path + "/" + std::to_string(index); }

[[noreturn]] void fail(FormatErrorCode code, const std::string& path, const std::string& message) {
    throw FormatError(code, path, message);
}

const json& field(const json& obj, const std::string& key, const std::string& path) {
    if (!obj.is_object()) fail(FormatErrorCode::InvalidValue, path, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) fail(FormatErrorCode::MissingField, child_path(path, key), "missing field `" + key + "`");
    return *it;
}

std::string get_string(const json& obj, const std::string& key, const std::string& path) {
    const json& v = field(obj, key, path);
    if (!v.is_string()) fail(FormatErrorCode::InvalidValue, child_path(path, key), "expected a string");
    return v.get<std::string>();
}

std::uint64_t get_uint(const json& obj, const std::string& key, const std::string& path) {
    const json& v = field(obj, key, path);
    if (!v.is_number_unsigned()) fail(FormatErrorCode::InvalidValue, child_path(path, key), "expected a non-negative integer");
    return v.get<std::uint64_t>();
}

std::uint32_t get_u32(const json& obj, const std::string& key, const std::string& path) {
    std::uint64_t v = get_uint(obj, key, path);
    if (v > 0xFFFFFFFFu) fail(FormatErrorCode::InvalidValue, child_path(path, key), "integer out of range");
    return static_cast<std::uint32_t>(v);
}

bool get_bool(const json& obj, const std::string& key, const std::string& path) {
    const json& v = field(obj, key, path);
    if (!v.is_boolean()) fail(FormatErrorCode::InvalidValue, child_path(path, key), "expected a boolean");
    return v.get<bool>();
}

const json& get_array(const json& obj, const std::string& key, const std::string& path) {
    const json& v = field(obj, key, path);
    if (!v.is_array()) fail(FormatErrorCode::InvalidValue, child_path(path, key), "expected an array");
    return v;
}

Term read_term(const json& j, const std::string& path);

std::vector<Term> read_terms(const json& arr, const std::string& path) {
    if (!arr.is_array()) fail(FormatErrorCode::InvalidValue, path, "expected an array of terms");
    std::vector<Term> out;
    for (std::size_t i = 0; i < arr.size(); ++i) out.push_back(read_term(arr[i], child_path(path, i)));
    return out;
}

Term read_term(const json& j, const std::string& path) {
    if (!j.is_object()) fail(FormatErrorCode::InvalidValue, path, "expected a term object");
    if (j.contains("ctor"))
        return Term::ctor(get_string(j, "ctor", path), read_terms(field(j, "args", path), child_path(path, "args")));
    if (j.contains("tuple")) return Term::tuple(read_terms(j["tuple"], child_path(path, "tuple")));
    if (j.contains("fn")) return Term::fn(read_terms(j["fn"], child_path(path, "fn")));
    if (j.contains("var")) return Term::var(get_u32(j, "var", path), get_string(j, "name", path));
    if (j.contains("skolem")) return Term::skolem(get_u32(j, "skolem", path), get_string(j, "name", path));
    fail(FormatErrorCode::InvalidValue, path, "unrecognized term");
}

Bound read_bound(const json& j, const std::string& path) {
    Bound b;
    b.subject = read_term(field(j, "subject", path), child_path(path, "subject"));
    b.trait_name = get_string(j, "trait", path);
    b.trait_args = read_terms(field(j, "args", path), child_path(path, "args"));
    return b;
}

Substitution read_subst(const json& arr, const std::string& path) {
    if (!arr.is_array()) fail(FormatErrorCode::InvalidValue, path, "expected an array of bindings");
    std::map<logic::VarId, Term> raw;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string p = child_path(path, i);
        const logic::VarId v = get_u32(arr[i], "var", p);
        if (!raw.emplace(v, read_term(field(arr[i], "term", p), child_path(p, "term"))).second)
            fail(FormatErrorCode::InvalidValue, p, "variable bound twice");
    }
    auto s = Substitution::from_bindings(raw);
    if (!s || s->bindings() != raw) fail(FormatErrorCode::InvalidValue, path, "substitution is not idempotent");
    return *s;
}

Span read_span(const json& j, const std::string& path) {
    Span s;
    s.file = get_string(j, "file", path);
    s.line_start = get_u32(j, "line_start", path);
    s.col_start = get_u32(j, "col_start", path);
    s.line_end = get_u32(j, "line_end", path);
    s.col_end = get_u32(j, "col_end", path);
    if (!s.valid()) fail(FormatErrorCode::InvalidValue, path, "span end precedes its start");
    return s;
}

UnifyFailureKind read_failure_kind(const std::string& code, const std::string& path) {
    for (auto k : {UnifyFailureKind::CtorClash, UnifyFailureKind::ArityClash, UnifyFailureKind::OccursCheck,
                   UnifyFailureKind::SkolemClash})
        if (code == logic::to_code(k)) return k;
    fail(FormatErrorCode::InvalidValue, path, "unknown unify outcome `" + code + "`");
}

ProofNode read_node(const json& j, const std::string& path) {
    ProofNode n;
    n.id = get_u32(j, "id", path);
    n.display = get_string(j, "display", path);
    const std::string result = get_string(j, "result", path);
    auto kind = proof::result_from_code(result);
    if (!kind) fail(FormatErrorCode::InvalidValue, child_path(path, "result"), "unknown result `" + result + "`");
    n.result.kind = *kind;
    if (*kind == proof::ResultKind::Proven)
        n.result.solution = read_subst(field(j, "solution", path), child_path(path, "solution"));
    if (*kind == proof::ResultKind::Ambiguous) {
        n.result.solution_count = get_uint(j, "solution_count", path);
        if (n.result.solution_count < 2)
            fail(FormatErrorCode::InvalidValue, child_path(path, "solution_count"), "ambiguity needs two solutions");
    }
    n.depth = get_u32(j, "depth", path);
    const json& children = get_array(j, "children", path);
    for (std::size_t i = 0; i < children.size(); ++i) {
        if (!children[i].is_number_unsigned())
            fail(FormatErrorCode::InvalidValue, child_path(child_path(path, "children"), i), "expected a node id");
        n.children.push_back(children[i].get<NodeId>());
    }
    n.provenance = read_span(field(j, "span", path), child_path(path, "span"));

    const std::string kind_code = get_string(j, "kind", path);
    if (kind_code == "goal") {
        n.detail = GoalInfo{read_bound(field(j, "goal", path), child_path(path, "goal")), get_bool(j, "overlap", path)};
    } else if (kind_code == "candidate") {
        CandidateInfo c;
        const std::string origin = get_string(j, "origin", path);
        if (origin == "impl") {
            c.origin = logic::ClauseOrigin::Impl;
            c.impl_id = get_u32(j, "impl_id", path);
        } else if (origin == "hypothesis") {
            c.origin = logic::ClauseOrigin::Hypothesis;
            c.hypothesis_index = get_u32(j, "hypothesis", path);
        } else {
            fail(FormatErrorCode::InvalidValue, child_path(path, "origin"), "unknown origin `" + origin + "`");
        }
        c.alt_index = get_u32(j, "alt_index", path);
        c.alt_count = get_u32(j, "alt_count", path);
        const std::string unify = get_string(j, "unify", path);
        if (unify == "ok") {
            c.unifier = read_subst(field(j, "unifier", path), child_path(path, "unifier"));
        } else {
            const std::string cp = child_path(path, "clash");
            const json& clash = field(j, "clash", path);
            c.unifier = UnifyFailure{read_failure_kind(unify, child_path(path, "unify")),
                                     read_term(field(clash, "left", cp), child_path(cp, "left")),
                                     read_term(field(clash, "right", cp), child_path(cp, "right"))};
        }
        n.detail = std::move(c);
    } else if (kind_code == "summary") {
        SummaryInfo s;
        s.label = get_string(j, "label", path);
        s.subject = get_string(j, "subject", path);
        s.collapsed = get_uint(j, "collapsed", path);
        s.hidden_alternatives = get_uint(j, "hidden_alternatives", path);
        s.alt_index = get_u32(j, "alt_index", path);
        s.alt_count = get_u32(j, "alt_count", path);
        n.detail = std::move(s);
    } else {
        fail(FormatErrorCode::InvalidValue, child_path(path, "kind"), "unknown node kind `" + kind_code + "`");
    }
    return n;
}

void check_links(const ProofTree& tree) {
    std::vector<NodeId> parent(tree.size(), 0);
    for (std::size_t i = 0; i < tree.size(); ++i) {
        const ProofNode& n = tree.nodes[i];
        const std::string path = child_path("/nodes", i);
        if (n.id != i + 1)
            fail(FormatErrorCode::DanglingNodeId, child_path(path, "id"),
                 "node ids must be 1.." + std::to_string(tree.size()) + " in array order");
        for (std::size_t k = 0; k < n.children.size(); ++k) {
            const NodeId c = n.children[k];
            const std::string cp = child_path(child_path(path, "children"), k);
            if (c == n.id) fail(FormatErrorCode::CycleDetected, cp, "node lists itself as a child");
            if (c < 1 || c > tree.size()) fail(FormatErrorCode::DanglingNodeId, cp, "no node with id " + std::to_string(c));
            if (c < n.id)
                fail(FormatErrorCode::DanglingNodeId, cp,
                     "child " + std::to_string(c) + " precedes its parent " + std::to_string(n.id));
            if (parent[c - 1] != 0)
                fail(FormatErrorCode::CycleDetected, cp, "node " + std::to_string(c) + " has two parents");
            parent[c - 1] = n.id;
        }
    }
}

// Parses JSON while tracking the pointer of the innermost open value, so a
// truncated document can name the field it stopped in.
json parse_tracking(std::string_view bytes) {
    struct Frame {
        bool array;
        std::size_t count;
        std::string key;
    };
    std::vector<Frame> frames;
    auto pointer = [&frames] {
        std::string p;
        for (const auto& f : frames) p += "/" + (f.array ? std::to_string(f.count) : f.key);
        return p;
    };
    auto element_done = [&frames] {
        if (!frames.empty() && frames.back().array) ++frames.back().count;
    };
    json::parser_callback_t cb = [&](int, json::parse_event_t event, json& parsed) {
        switch (event) {
            case json::parse_event_t::object_start: frames.push_back(Frame{false, 0, {}}); break;
            case json::parse_event_t::array_start: frames.push_back(Frame{true, 0, {}}); break;
            case json::parse_event_t::key:
                if (!frames.empty()) frames.back().key = parsed.get<std::string>();
                break;
            case json::parse_event_t::object_end:
            case json::parse_event_t::array_end:
                if (!frames.empty()) frames.pop_back();
                element_done();
                break;
            case json::parse_event_t::value: element_done(); break;
        }
        return true;
    };
    try {
        return json::parse(bytes.begin(), bytes.end(), cb);
    } catch (const json::parse_error& e) {
        if (e.byte + 1 >= bytes.size() || bytes.empty())
            fail(FormatErrorCode::MissingField, pointer(), "document is truncated");
        fail(FormatErrorCode::InvalidValue, pointer(), std::string("malformed JSON: ") + e.what());
    }
}

}  // namespace

TreeDocument import_json(std::string_view bytes) {
    const json j = parse_tracking(bytes);
    if (!j.is_object()) fail(FormatErrorCode::InvalidValue, "", "document must be a JSON object");

    TreeDocument doc;
    const json& version = field(j, "format_version", "");
    if (!version.is_number_integer() || version.get<long long>() != kFormatVersion)
        fail(FormatErrorCode::UnknownVersion, "/format_version",
             "unsupported format version " + version.dump() + " (expected " + std::to_string(kFormatVersion) + ")");
    doc.program_file = get_string(j, "program_file", "");
    doc.program_hash = get_string(j, "program_hash", "");
    doc.query_index = get_u32(j, "query_index", "");
    const json& config = field(j, "config", "");
    doc.tree.config.max_depth = get_u32(config, "max_depth", "/config");
    doc.tree.config.max_nodes = get_u32(config, "max_nodes", "/config");
    const std::string policy = get_string(j, "prune_policy", "");
    auto p = analysis::policy_from_code(policy);
    if (!p) fail(FormatErrorCode::InvalidValue, "/prune_policy", "unknown prune policy `" + policy + "`");
    doc.prune_policy = *p;
    doc.tree.query_span = read_span(field(j, "query_span", ""), "/query_span");
    doc.tree.root = get_u32(j, "root", "");

    const json& nodes = get_array(j, "nodes", "");
    if (nodes.empty()) fail(FormatErrorCode::InvalidValue, "/nodes", "a tree needs at least one node");
    for (std::size_t i = 0; i < nodes.size(); ++i) doc.tree.nodes.push_back(read_node(nodes[i], child_path("/nodes", i)));
    if (doc.tree.root != 1) fail(FormatErrorCode::DanglingNodeId, "/root", "root must be node 1");
    check_links(doc.tree);
    if (auto problem = proof::check_consistency(doc.tree))
        fail(FormatErrorCode::InvalidValue, "/nodes", *problem);

    const json& diag = get_array(j, "diagnosis", "");
    for (std::size_t i = 0; i < diag.size(); ++i) {
        const std::string path = child_path("/diagnosis", i);
        const json& d = diag[i];
        DiagnosisEntry e;
        e.rank = get_u32(d, "rank", path);
        e.node = get_u32(d, "node", path);
        e.rendered_bound = get_string(d, "rendered_bound", path);
        const std::string sp = child_path(path, "score");
        const json& score = field(d, "score", path);
        e.score.depth = get_u32(score, "depth", sp);
        const std::string progress = get_string(score, "progress", sp);
        auto r = analysis::Rational::parse(progress);
        if (!r) fail(FormatErrorCode::InvalidValue, child_path(sp, "progress"), "expected a reduced fraction like 1/2");
        e.score.progress = *r;
        e.score.source_order = get_u32(score, "source_order", sp);
        const json& path_arr = get_array(d, "path", path);
        for (std::size_t k = 0; k < path_arr.size(); ++k) {
            if (!path_arr[k].is_number_unsigned())
                fail(FormatErrorCode::InvalidValue, child_path(child_path(path, "path"), k), "expected a node id");
            e.path.push_back(path_arr[k].get<NodeId>());
        }
        e.provenance = read_span(field(d, "span", path), child_path(path, "span"));
        if (e.rank != i + 1) fail(FormatErrorCode::InvalidValue, child_path(path, "rank"), "ranks must be 1..n in order");
        if (e.node < 1 || e.node > doc.tree.size())
            fail(FormatErrorCode::DanglingNodeId, child_path(path, "node"), "no node with id " + std::to_string(e.node));
        if (e.path != proof::path_to(doc.tree, e.node))
            fail(FormatErrorCode::InvalidValue, child_path(path, "path"), "path is not the root-to-node path");
        doc.diagnosis.push_back(std::move(e));
    }
    return doc;
}

}  // namespace traitproof::exchange
