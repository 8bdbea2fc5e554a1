#include "traitproof/parser.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <optional>
#include <unordered_set>
#include <utility>

namespace traitproof::dsl {

ParseError::ParseError(Span span, std::string message)
    : std::runtime_error(format_location(span) + ": " + message),
      span_(std::move(span)),
      message_(std::move(message)) {}

namespace {

enum class Tok : std::uint8_t {
    Ident,
    Less,
    Greater,
    Comma,
    Semi,
    Colon,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Question,
    End,
};

struct Token {
    Tok kind;
    std::string text;
    Span span;
};

constexpr std::array kKeywords = {"type", "trait", "impl", "for", "where",
                                  "query", "forall", "if", "fn"};

bool is_keyword(std::string_view s) {
    return std::find(kKeywords.begin(), kKeywords.end(), s) != kKeywords.end();
}

std::string describe(const Token& t) {
    if (t.kind == Tok::End) return "end of input";
    return "`" + t.text + "`";
}

class Lexer {
public:
    Lexer(std::string_view src, const std::string& file) : src_(src), file_(file) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (true) {
            skip_trivia();
            if (pos_ >= src_.size()) break;
            out.push_back(next());
        }
        Span end = last_char_span();
        out.push_back(Token{Tok::End, "", end});
        return out;
    }

private:
    void advance() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        last_line_ = line_;
        ++pos_;
    }

    Span here(std::uint32_t len = 1) const {
        return Span{file_, line_, col_, line_, col_ + len - 1};
    }

    // The EOF token points at the final character so error spans stay inside
    // the input.
    Span last_char_span() const {
        if (src_.empty()) return Span{file_, 1, 1, 1, 1};
        std::uint32_t line = 1, col = 1, last_line = 1, last_col = 1;
        for (char c : src_) {
            last_line = line;
            last_col = col;
            if (c == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        return Span{file_, last_line, last_col, last_line, last_col};
    }

    void skip_trivia() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
            } else if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/') {
                while (pos_ < src_.size() && src_[pos_] != '\n') advance();
            } else {
                break;
            }
        }
    }

    Token next() {
        unsigned char c = static_cast<unsigned char>(src_[pos_]);
        if (c >= 0x80) throw ParseError(here(), "non-ASCII character in source");
        if (std::isalpha(c) || c == '_') {
            Span start = here();
            std::string text;
            while (pos_ < src_.size()) {
                unsigned char d = static_cast<unsigned char>(src_[pos_]);
                if (!(std::isalnum(d) || d == '_')) break;
                text.push_back(static_cast<char>(d));
                advance();
            }
            start.col_end = start.col_start + static_cast<std::uint32_t>(text.size()) - 1;
            return Token{Tok::Ident, std::move(text), start};
        }
        Tok kind;
        switch (c) {
            case '<': kind = Tok::Less; break;
            case '>': kind = Tok::Greater; break;
            case ',': kind = Tok::Comma; break;
            case ';': kind = Tok::Semi; break;
            case ':': kind = Tok::Colon; break;
            case '(': kind = Tok::LParen; break;
            case ')': kind = Tok::RParen; break;
            case '{': kind = Tok::LBrace; break;
            case '}': kind = Tok::RBrace; break;
            case '?': kind = Tok::Question; break;
            default:
                throw ParseError(here(), std::string("unexpected character `") +
                                             static_cast<char>(c) + "`");
        }
        Token t{kind, std::string(1, static_cast<char>(c)), here()};
        advance();
        return t;
    }

    std::string_view src_;
    const std::string& file_;
    std::size_t pos_ = 0;
    std::uint32_t line_ = 1;
    std::uint32_t col_ = 1;
    std::uint32_t last_line_ = 1;
};

class Parser {
public:
    Parser(std::vector<Token> toks, std::string file) : toks_(std::move(toks)), file_(std::move(file)) {}

    Program program() {
        Program p;
        p.file_name = file_;
        while (peek().kind != Tok::End) {
            const Token& t = peek();
            if (is_kw(t, "type")) {
                p.type_decls.push_back(decl("type"));
            } else if (is_kw(t, "trait")) {
                p.trait_decls.push_back(decl("trait"));
            } else if (is_kw(t, "impl")) {
                ImplDecl impl = impl_decl();
                impl.id = static_cast<ImplId>(p.impls.size() + 1);
                p.impls.push_back(std::move(impl));
            } else if (is_kw(t, "query")) {
                p.queries.push_back(query_decl());
            } else {
                throw ParseError(t.span, "expected `type`, `trait`, `impl` or `query`, found " + describe(t));
            }
        }
        return p;
    }

    BoundAst lone_bound() {
        scope_ = {};
        BoundAst b = bound();
        if (peek().kind == Tok::Semi) ++pos_;
        if (peek().kind != Tok::End) throw ParseError(peek().span, "expected end of bound, found " + describe(peek()));
        return b;
    }

private:
    struct Scope {
        std::vector<std::string> names;
        Binder binder = Binder::Generic;
    };

    const Token& peek() const { return toks_[pos_]; }

    static bool is_kw(const Token& t, std::string_view kw) { return t.kind == Tok::Ident && t.text == kw; }

    const Token& expect(Tok kind, std::string_view what) {
        const Token& t = peek();
        if (t.kind != kind) throw ParseError(t.span, "expected " + std::string(what) + ", found " + describe(t));
        ++pos_;
        return t;
    }

    void expect_kw(std::string_view kw) {
        const Token& t = peek();
        if (!is_kw(t, kw)) throw ParseError(t.span, "expected `" + std::string(kw) + "`, found " + describe(t));
        ++pos_;
    }

    bool accept(Tok kind) {
        if (peek().kind != kind) return false;
        ++pos_;
        return true;
    }

    const Token& ident(std::string_view what) {
        const Token& t = peek();
        if (t.kind != Tok::Ident || is_keyword(t.text))
            throw ParseError(t.span, "expected " + std::string(what) + ", found " + describe(t));
        ++pos_;
        return t;
    }

    std::vector<std::string> ident_list() {
        std::vector<std::string> out;
        expect(Tok::Less, "`<`");
        out.push_back(ident("identifier").text);
        while (accept(Tok::Comma)) out.push_back(ident("identifier").text);
        expect(Tok::Greater, "`>` or `,`");
        return out;
    }

    Decl decl(std::string_view kw) {
        Span start = peek().span;
        expect_kw(kw);
        Decl d;
        d.name = ident(std::string(kw) + " name").text;
        if (peek().kind == Tok::Less) d.params = ident_list();
        const Token& semi = expect(Tok::Semi, "`;`");
        d.span = span_cover(start, semi.span);
        return d;
    }

    ImplDecl impl_decl() {
        Span start = peek().span;
        expect_kw("impl");
        ImplDecl impl;
        if (peek().kind == Tok::Less) impl.generics = ident_list();
        scope_ = Scope{impl.generics, Binder::Generic};
        TraitRefAst tr = trait_ref();
        expect_kw("for");
        TypeTermAst subject = type_term();
        impl.head.span = span_cover(tr.span, subject.span);
        impl.head.subject = std::move(subject);
        impl.head.trait_ref = std::move(tr);
        if (is_kw(peek(), "where")) {
            ++pos_;
            impl.where_clauses.push_back(bound());
            while (accept(Tok::Comma)) impl.where_clauses.push_back(bound());
        }
        const Token& semi = expect(Tok::Semi, "`;`");
        impl.span = span_cover(start, semi.span);
        scope_ = {};
        return impl;
    }

    QueryDecl query_decl() {
        Span start = peek().span;
        expect_kw("query");
        QueryDecl q;
        if (is_kw(peek(), "forall")) {
            ++pos_;
            q.universals = ident_list();
        }
        scope_ = Scope{q.universals, Binder::Universal};
        if (is_kw(peek(), "if")) {
            ++pos_;
            expect(Tok::LParen, "`(`");
            q.hypotheses.push_back(bound());
            while (accept(Tok::Comma)) q.hypotheses.push_back(bound());
            expect(Tok::RParen, "`)` or `,`");
        }
        expect(Tok::LBrace, "`{`");
        q.goal = bound();
        expect(Tok::RBrace, "`}`");
        const Token& semi = expect(Tok::Semi, "`;`");
        q.span = span_cover(start, semi.span);
        scope_ = {};
        return q;
    }

    BoundAst bound() {
        BoundAst b;
        b.subject = type_term();
        expect(Tok::Colon, "`:`");
        b.trait_ref = trait_ref();
        b.span = span_cover(b.subject.span, b.trait_ref.span);
        return b;
    }

    TraitRefAst trait_ref() {
        const Token& name = ident("trait name");
        TraitRefAst tr;
        tr.trait_name = name.text;
        tr.span = name.span;
        if (peek().kind == Tok::Less) {
            ++pos_;
            tr.args = type_list(Tok::Greater, "`>` or `,`", /*allow_empty=*/false);
            tr.span = span_cover(name.span, toks_[pos_ - 1].span);
        }
        return tr;
    }

    std::vector<TypeTermAst> type_list(Tok close, std::string_view what, bool allow_empty) {
        std::vector<TypeTermAst> out;
        if (allow_empty && accept(close)) return out;
        out.push_back(type_term());
        while (accept(Tok::Comma)) out.push_back(type_term());
        expect(close, what);
        return out;
    }

    TypeTermAst type_term() {
        const Token& t = peek();
        if (t.kind == Tok::Question) {
            ++pos_;
            const Token& name = ident("variable name after `?`");
            return TypeTermAst::var(name.text, Binder::Existential, span_cover(t.span, name.span));
        }
        if (t.kind == Tok::LParen) {
            ++pos_;
            auto elems = type_list(Tok::RParen, "`)` or `,`", true);
            return TypeTermAst::tuple(std::move(elems), span_cover(t.span, toks_[pos_ - 1].span));
        }
        if (is_kw(t, "fn")) {
            ++pos_;
            expect(Tok::LParen, "`(` after `fn`");
            auto params = type_list(Tok::RParen, "`)` or `,`", true);
            return TypeTermAst::fn(std::move(params), span_cover(t.span, toks_[pos_ - 1].span));
        }
        if (t.kind == Tok::Ident && !is_keyword(t.text)) {
            ++pos_;
            if (peek().kind == Tok::Less) {
                ++pos_;
                auto args = type_list(Tok::Greater, "`>` or `,`", false);
                return TypeTermAst::ctor(t.text, std::move(args), span_cover(t.span, toks_[pos_ - 1].span));
            }
            if (std::find(scope_.names.begin(), scope_.names.end(), t.text) != scope_.names.end())
                return TypeTermAst::var(t.text, scope_.binder, t.span);
            return TypeTermAst::ctor(t.text, {}, t.span);
        }
        throw ParseError(t.span, "expected type term, found " + describe(t));
    }

    std::vector<Token> toks_;
    std::string file_;
    std::size_t pos_ = 0;
    Scope scope_;
};

}  // namespace

Program parse_program(std::string_view source, const std::string& file_name) {
    Parser p(Lexer(source, file_name).run(), file_name);
    return p.program();
}

BoundAst parse_bound(std::string_view source, const std::string& file_name) {
    Parser p(Lexer(source, file_name).run(), file_name);
    return p.lone_bound();
}

}  // namespace traitproof::dsl
