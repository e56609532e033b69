#include "lamhat/text.hpp"

#include <cctype>
#include <set>

namespace lamhat {

namespace {

enum class Tok { Lower, Upper, Lambda, Dot, LParen, RParen, LBrack, RBrack, Slash, Comma, LBrace, RBrace,
                 Bar, Arrow, Semi, Number, End };

struct Token {
    Tok kind;
    std::string text;
    size_t begin, end;
};

class Lexer {
public:
    explicit Lexer(std::string_view s) : src_(s) { advance(); }

    const Token& peek() const { return cur_; }
    bool glued_paren() const { return cur_.kind == Tok::LParen && cur_.begin == prev_end_; }

    Token take() {
        Token t = cur_;
        prev_end_ = cur_.end;
        advance();
        return t;
    }

    [[noreturn]] void fail(const std::string& msg, size_t at) const {
        size_t line = 1, col = 1;
        for (size_t i = 0; i < at && i < src_.size(); ++i) {
            if (src_[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ParseError(msg, {at, at}, line, col);
    }

private:
    void advance() {
        for (;;) {
            while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
            if (pos_ < src_.size() && src_[pos_] == '#') {
                while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
                continue;
            }
            break;
        }
        size_t b = pos_;
        if (pos_ >= src_.size()) {
            cur_ = {Tok::End, "", b, b};
            return;
        }
        char c = src_[pos_];
        auto one = [&](Tok k) {
            ++pos_;
            cur_ = {k, std::string(1, c), b, pos_};
        };
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_' || src_[pos_] == '\''))
                ++pos_;
            std::string w(src_.substr(b, pos_ - b));
            cur_ = {std::isupper(static_cast<unsigned char>(c)) ? Tok::Upper : Tok::Lower, w, b, pos_};
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
            cur_ = {Tok::Number, std::string(src_.substr(b, pos_ - b)), b, pos_};
            return;
        }
        if (src_.substr(pos_, 2) == "\xCE\xBB") { // UTF-8 lambda
            pos_ += 2;
            cur_ = {Tok::Lambda, "\\", b, pos_};
            return;
        }
        if (src_.substr(pos_, 2) == "->") {
            pos_ += 2;
            cur_ = {Tok::Arrow, "->", b, pos_};
            return;
        }
        switch (c) {
        case '\\': return one(Tok::Lambda);
        case '.': return one(Tok::Dot);
        case '(': return one(Tok::LParen);
        case ')': return one(Tok::RParen);
        case '[': return one(Tok::LBrack);
        case ']': return one(Tok::RBrack);
        case '/': return one(Tok::Slash);
        case ',': return one(Tok::Comma);
        case '{': return one(Tok::LBrace);
        case '}': return one(Tok::RBrace);
        case '|': return one(Tok::Bar);
        case ';': return one(Tok::Semi);
        default: fail(std::string("unexpected character '") + c + "'", b);
        }
    }

    std::string_view src_;
    size_t pos_ = 0;
    size_t prev_end_ = static_cast<size_t>(-1);
    Token cur_{Tok::End, "", 0, 0};
};

const char* tok_name(Tok k) {
    switch (k) {
    case Tok::Lower: return "variable";
    case Tok::Upper: return "tag";
    case Tok::Lambda: return "'\\'";
    case Tok::Dot: return "'.'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBrack: return "'['";
    case Tok::RBrack: return "']'";
    case Tok::Slash: return "'/'";
    case Tok::Comma: return "','";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::Bar: return "'|'";
    case Tok::Arrow: return "'->'";
    case Tok::Semi: return "';'";
    case Tok::Number: return "number";
    case Tok::End: return "end of input";
    }
    return "?";
}

class Parser {
public:
    Parser(std::string_view s, TagRegistry& reg) : lex_(s), reg_(reg) {}

    void declarations() {
        while (lex_.peek().kind == Tok::Lower && lex_.peek().text == "tag") {
            lex_.take();
            auto name = expect(Tok::Upper);
            expect(Tok::Slash);
            auto n = expect(Tok::Number);
            expect(Tok::Semi);
            declare(name.text, std::stoul(n.text), name.begin);
        }
    }

    TermPtr whole_term() {
        auto t = term();
        if (lex_.peek().kind != Tok::End) lex_.fail(std::string("unexpected ") + tok_name(lex_.peek().kind), lex_.peek().begin);
        return t;
    }

    PatternPtr whole_pattern() {
        auto p = pattern();
        if (lex_.peek().kind != Tok::End) lex_.fail(std::string("unexpected ") + tok_name(lex_.peek().kind), lex_.peek().begin);
        return p;
    }

private:
    Token expect(Tok k) {
        if (lex_.peek().kind != k)
            lex_.fail(std::string("expected ") + tok_name(k) + ", found " + tok_name(lex_.peek().kind),
                      lex_.peek().begin);
        return lex_.take();
    }

    void declare(const std::string& tag, size_t n, size_t at) {
        if (tag == "I") lex_.fail("'I' is reserved for the identity", at);
        if (!reg_.declare(tag, n))
            lex_.fail("tag " + tag + " used with arity " + std::to_string(n) + " but has arity " +
                          std::to_string(*reg_.arity(tag)),
                      at);
    }

    bool is_kw(const Token& t) const {
        return t.kind == Tok::Lower && (t.text == "case" || t.text == "of");
    }

    PatternPtr pattern() {
        auto& t = lex_.peek();
        if (t.kind == Tok::Lower && !is_kw(t)) return pvar(lex_.take().text);
        if (t.kind == Tok::Upper) {
            auto name = lex_.take();
            std::vector<PatternPtr> args;
            if (lex_.peek().kind == Tok::LParen) {
                lex_.take();
                if (lex_.peek().kind != Tok::RParen) {
                    args.push_back(pattern());
                    while (lex_.peek().kind == Tok::Comma) {
                        lex_.take();
                        args.push_back(pattern());
                    }
                }
                expect(Tok::RParen);
            }
            declare(name.text, args.size(), name.begin);
            return pdata(name.text, std::move(args));
        }
        if (t.kind == Tok::LParen) {
            lex_.take();
            auto p = pattern();
            expect(Tok::RParen);
            return p;
        }
        lex_.fail(std::string("expected a pattern, found ") + tok_name(t.kind), t.begin);
    }

    TermPtr term() {
        if (lex_.peek().kind == Tok::Lambda) {
            lex_.take();
            auto p = pattern();
            expect(Tok::Dot);
            return abs(p, term());
        }
        return application();
    }

    bool starts_atom() const {
        auto& t = lex_.peek();
        return t.kind == Tok::Lower || t.kind == Tok::Upper || t.kind == Tok::LParen;
    }

    TermPtr application() {
        auto t = suffixed();
        while (starts_atom() && !(lex_.peek().kind == Tok::Lower && lex_.peek().text == "of")) t = app(t, suffixed());
        if (lex_.peek().kind == Tok::Lambda) t = app(t, term());
        return t;
    }

    TermPtr suffixed() {
        auto t = atom();
        while (lex_.peek().kind == Tok::LBrack) {
            lex_.take();
            auto p = pattern();
            expect(Tok::Slash);
            auto u = term();
            expect(Tok::RBrack);
            t = match(t, p, u);
        }
        return t;
    }

    TermPtr atom() {
        auto& t = lex_.peek();
        if (t.kind == Tok::Lower) {
            if (t.text == "case") return case_expr();
            if (t.text == "of") lex_.fail("unexpected 'of'", t.begin);
            return var(lex_.take().text);
        }
        if (t.kind == Tok::Upper) {
            auto name = lex_.take();
            if (name.text == "I" && !lex_.glued_paren()) return identity();
            std::vector<TermPtr> args;
            if (lex_.glued_paren()) {
                lex_.take();
                if (lex_.peek().kind != Tok::RParen) {
                    args.push_back(term());
                    while (lex_.peek().kind == Tok::Comma) {
                        lex_.take();
                        args.push_back(term());
                    }
                }
                expect(Tok::RParen);
            }
            declare(name.text, args.size(), name.begin);
            return data(name.text, std::move(args));
        }
        if (t.kind == Tok::LParen) {
            lex_.take();
            auto r = term();
            expect(Tok::RParen);
            return r;
        }
        lex_.fail(std::string("expected a term, found ") + tok_name(t.kind), t.begin);
    }

    TermPtr case_expr() {
        lex_.take();
        auto s = term();
        auto of = expect(Tok::Lower);
        if (of.text != "of") lex_.fail("expected 'of'", of.begin);
        auto open = expect(Tok::LBrace);
        std::vector<Branch> bs;
        if (lex_.peek().kind == Tok::RBrace) lex_.fail("case needs at least one branch", open.begin);
        for (;;) {
            auto at = lex_.peek().begin;
            auto p = pattern();
            if (p->is_var()) lex_.fail("case branches need data patterns", at);
            expect(Tok::Arrow);
            bs.push_back({p, term()});
            if (lex_.peek().kind == Tok::Bar) {
                lex_.take();
                continue;
            }
            break;
        }
        expect(Tok::RBrace);
        return case_of(s, std::move(bs));
    }

    Lexer lex_;
    TagRegistry& reg_;
};

// precedence levels: 0 term, 1 application, 2 argument (suffixed atom)
void print(const TermPtr& t, int level, std::string& out);

void print_pattern(const PatternPtr& p, std::string& out) {
    out += p->name;
    if (p->is_var() || p->args.empty()) return;
    out += '(';
    for (size_t i = 0; i < p->args.size(); ++i) {
        if (i) out += ',';
        print_pattern(p->args[i], out);
    }
    out += ')';
}

void print(const TermPtr& t, int level, std::string& out) {
    switch (t->kind) {
    case Term::Kind::Var: out += t->name; return;
    case Term::Kind::Abs:
        if (level > 0) out += '(';
        out += '\\';
        print_pattern(t->pattern, out);
        out += '.';
        print(t->body(), 0, out);
        if (level > 0) out += ')';
        return;
    case Term::Kind::App:
        if (level > 1) out += '(';
        print(t->fun(), 1, out);
        out += ' ';
        print(t->arg(), 2, out);
        if (level > 1) out += ')';
        return;
    case Term::Kind::Match:
        print(t->body(), 2, out);
        out += '[';
        print_pattern(t->pattern, out);
        out += '/';
        print(t->arg(), 0, out);
        out += ']';
        return;
    case Term::Kind::Data:
        out += t->name;
        if (t->kids.empty()) return;
        out += '(';
        for (size_t i = 0; i < t->kids.size(); ++i) {
            if (i) out += ',';
            print(t->kids[i], 0, out);
        }
        out += ')';
        return;
    case Term::Kind::Case:
        out += "case ";
        print(t->scrutinee(), 0, out);
        out += " of {";
        for (size_t i = 0; i < t->branches.size(); ++i) {
            if (i) out += " | ";
            print_pattern(t->branches[i].pattern, out);
            out += " -> ";
            print(t->branches[i].body, 0, out);
        }
        out += '}';
        return;
    }
}

} // namespace

Program parse_program(std::string_view text, TagRegistry tags) {
    Program prog{std::move(tags), nullptr};
    Parser p(text, prog.tags);
    p.declarations();
    prog.term = p.whole_term();
    note_names(prog.term);
    return prog;
}

TermPtr parse_term(std::string_view text, TagRegistry* tags) {
    TagRegistry local;
    Parser p(text, tags ? *tags : local);
    p.declarations();
    auto t = p.whole_term();
    note_names(t);
    return t;
}

PatternPtr parse_pattern(std::string_view text, TagRegistry* tags) {
    TagRegistry local;
    Parser p(text, tags ? *tags : local);
    auto r = p.whole_pattern();
    for (auto& v : r->var_order) note_name(v);
    return r;
}

std::string pretty(const TermPtr& t) {
    std::string out;
    print(t, 0, out);
    return out;
}

std::string pretty(const PatternPtr& p) {
    std::string out;
    print_pattern(p, out);
    return out;
}

} // namespace lamhat
