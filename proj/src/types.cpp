#include "lamhat/types.hpp"
#include "lamhat/text.hpp"

#include <algorithm>
#include <cctype>
#include <string_view>

namespace lamhat {

std::string Multiset::key() const {
    std::string s = "[";
    for (size_t i = 0; i < items.size(); ++i) {
        if (i) s += ", ";
        s += items[i]->key;
    }
    return s + "]";
}

static std::shared_ptr<TermType> tnode(TermType::Kind k) {
    auto t = std::make_shared<TermType>();
    t->kind = k;
    return t;
}

TypePtr data_type(std::string tag, std::vector<Multiset> args) {
    auto t = tnode(TermType::Kind::Data);
    t->key = tag;
    if (!args.empty()) {
        t->key += '(';
        for (size_t i = 0; i < args.size(); ++i) {
            if (i) t->key += ',';
            t->key += args[i].key();
        }
        t->key += ')';
    }
    t->tag = std::move(tag);
    t->args = std::move(args);
    return t;
}

TypePtr star() {
    static const TypePtr s = [] {
        auto t = tnode(TermType::Kind::Star);
        t->key = "*";
        return t;
    }();
    return s;
}

TypePtr arrow(Multiset dom, TypePtr cod) {
    auto t = tnode(TermType::Kind::Arrow);
    t->key = dom.key() + " -> " + cod->key;
    t->args = {std::move(dom)};
    t->codomain = std::move(cod);
    return t;
}

Multiset mset(std::vector<TypePtr> items) {
    std::stable_sort(items.begin(), items.end(), [](const TypePtr& a, const TypePtr& b) { return a->key < b->key; });
    return {std::move(items)};
}

Multiset mset_union(const Multiset& a, const Multiset& b) {
    auto items = a.items;
    items.insert(items.end(), b.items.begin(), b.items.end());
    return mset(std::move(items));
}

bool operator==(const Multiset& a, const Multiset& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
        if (a.items[i]->key != b.items[i]->key) return false;
    return true;
}

bool same_type(const TypePtr& a, const TypePtr& b) {
    if (!a || !b) return a == b;
    return a->key == b->key;
}

std::string str(const TypePtr& t) { return t ? t->key : "?"; }
std::string str(const Multiset& m) { return m.key(); }

namespace {

class TypeParser {
public:
    explicit TypeParser(std::string_view s) : s_(s) {}

    TypePtr whole_type() {
        auto t = type();
        end();
        return t;
    }

    Multiset whole_multiset() {
        auto m = multiset();
        end();
        return m;
    }

private:
    [[noreturn]] void fail(const std::string& msg) {
        throw Error("TypeSyntax", "in type '" + std::string(s_) + "' at " + std::to_string(i_) + ": " + msg);
    }

    void skip() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }

    bool eat(std::string_view tok) {
        skip();
        if (s_.substr(i_, tok.size()) != tok) return false;
        i_ += tok.size();
        return true;
    }

    void end() {
        skip();
        if (i_ != s_.size()) fail("trailing input");
    }

    TypePtr type() {
        skip();
        if (eat("*") || eat("\xE2\x8B\x86")) return star();
        if (i_ < s_.size() && s_[i_] == '[') {
            auto m = multiset();
            if (!eat("->")) fail("expected '->' after a multiset in a term type");
            return arrow(std::move(m), type());
        }
        if (i_ >= s_.size() || !std::isupper(static_cast<unsigned char>(s_[i_]))) fail("expected a type");
        size_t b = i_;
        while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
        std::string tag(s_.substr(b, i_ - b));
        std::vector<Multiset> args;
        if (i_ < s_.size() && s_[i_] == '(') {
            ++i_;
            do args.push_back(multiset());
            while (eat(","));
            if (!eat(")")) fail("expected ')'");
        }
        return data_type(tag, std::move(args));
    }

    Multiset multiset() {
        if (!eat("[")) fail("expected '['");
        std::vector<TypePtr> items;
        if (!eat("]")) {
            do items.push_back(type());
            while (eat(","));
            if (!eat("]")) fail("expected ']'");
        }
        return mset(std::move(items));
    }

    std::string_view s_;
    size_t i_ = 0;
};

} // namespace

TypePtr parse_type(std::string_view text) { return TypeParser(text).whole_type(); }
Multiset parse_multiset(std::string_view text) { return TypeParser(text).whole_multiset(); }

Context ctx_union(const Context& a, const Context& b) {
    Context r = a;
    for (auto& [x, m] : b) {
        auto it = r.find(x);
        if (it == r.end())
            r.emplace(x, m);
        else
            it->second = mset_union(it->second, m);
    }
    return r;
}

Context restrict_to(const Context& g, const Names& xs) {
    Context r;
    for (auto& [x, m] : g)
        if (has(xs, x)) r.emplace(x, m);
    return r;
}

Context remove(const Context& g, const Names& xs) {
    Context r;
    for (auto& [x, m] : g)
        if (!has(xs, x)) r.emplace(x, m);
    return r;
}

Multiset lookup(const Context& g, const std::string& x) {
    auto it = g.find(x);
    return it == g.end() ? Multiset{} : it->second;
}

Names dom(const Context& g) {
    Names r;
    for (auto& [x, m] : g) r.push_back(x);
    return r;
}

std::string str(const Context& g) {
    std::string s = "{";
    bool first = true;
    for (auto& [x, m] : g) {
        if (!first) s += ", ";
        first = false;
        s += x + ":" + m.key();
    }
    return s + "}";
}

static const char* const rule_names[] = {"patv", "patc", "ax", "many", "abs", "absb", "app", "const", "match", "case"};

std::string typing_rule_name(TypingRule r) { return rule_names[static_cast<int>(r)]; }

std::optional<TypingRule> parse_typing_rule(const std::string& s) {
    for (int i = 0; i < 10; ++i)
        if (s == rule_names[i]) return static_cast<TypingRule>(i);
    return std::nullopt;
}

std::string Derivation::type_str() const { return type ? type->key : mtype.key(); }

static std::shared_ptr<Derivation> dnode(TypingRule r) {
    auto d = std::make_shared<Derivation>();
    d->rule = r;
    return d;
}

static Context sum(const std::vector<DerivPtr>& ds) {
    Context g;
    for (auto& d : ds) g = ctx_union(g, d->ctx);
    return g;
}


DerivPtr d_patv(const std::string& x, Multiset m) {
    auto d = dnode(TypingRule::PatV);
    d->pattern = pvar(x);
    if (!m.empty()) d->ctx.emplace(x, m);
    d->mtype = std::move(m);
    return d;
}

DerivPtr d_patc(const PatternPtr& p, std::vector<DerivPtr> kids) {
    auto d = dnode(TypingRule::PatC);
    d->pattern = p;
    d->ctx = sum(kids);
    std::vector<Multiset> args;
    for (auto& k : kids) args.push_back(k->mtype);
    d->mtype = mset({data_type(p->name, std::move(args))});
    d->kids = std::move(kids);
    return d;
}

DerivPtr d_ax(const std::string& x, TypePtr t) {
    auto d = dnode(TypingRule::Ax);
    d->term = var(x);
    d->ctx.emplace(x, mset({t}));
    d->type = std::move(t);
    return d;
}

DerivPtr d_many(TermPtr t, std::vector<DerivPtr> kids) {
    auto d = dnode(TypingRule::Many);
    d->term = std::move(t);
    d->ctx = sum(kids);
    std::vector<TypePtr> items;
    for (auto& k : kids) items.push_back(k->type);
    d->mtype = mset(std::move(items));
    d->kids = std::move(kids);
    return d;
}

static void need(bool ok, const std::string& what) {
    if (!ok) throw Error("IllFormedDerivation", what);
}

DerivPtr d_abs(TermPtr t, DerivPtr body, DerivPtr pat) {
    need(t->kind == Term::Kind::Abs && body && body->type, "abs needs an abstraction and a typed body");
    auto d = dnode(TypingRule::Abs);
    const auto& p = t->pattern;
    Multiset m = pat ? pat->mtype : lookup(body->ctx, p->name);
    need(pat || p->is_var(), "abs over a data pattern needs its pattern premise");
    d->ctx = remove(body->ctx, p->vars);
    d->type = arrow(std::move(m), body->type);
    d->term = std::move(t);
    d->kids = {std::move(body)};
    if (pat) d->kids.push_back(std::move(pat));
    return d;
}

DerivPtr d_absb(TermPtr t) {
    auto d = dnode(TypingRule::AbsB);
    d->term = std::move(t);
    d->type = star();
    return d;
}

DerivPtr d_app(TermPtr t, DerivPtr fun, DerivPtr arg) {
    need(fun->type && fun->type->kind == TermType::Kind::Arrow, "app needs an arrow-typed function");
    auto d = dnode(TypingRule::App);
    d->term = std::move(t);
    d->ctx = ctx_union(fun->ctx, arg->ctx);
    d->type = fun->type->codomain;
    d->kids = {std::move(fun), std::move(arg)};
    return d;
}

DerivPtr d_const(TermPtr t, std::vector<DerivPtr> args) {
    auto d = dnode(TypingRule::Const);
    d->ctx = sum(args);
    std::vector<Multiset> ms;
    for (auto& a : args) ms.push_back(a->mtype);
    d->type = data_type(t->name, std::move(ms));
    d->term = std::move(t);
    d->kids = std::move(args);
    return d;
}

DerivPtr d_match(TermPtr t, DerivPtr body, DerivPtr pat, DerivPtr arg) {
    auto d = dnode(TypingRule::Match);
    d->ctx = ctx_union(remove(body->ctx, t->pattern->vars), arg->ctx);
    d->type = body->type;
    d->term = std::move(t);
    d->kids = {std::move(body), std::move(pat), std::move(arg)};
    return d;
}

DerivPtr d_case(TermPtr t, DerivPtr scrut, DerivPtr pat, DerivPtr body, int k) {
    need(k >= 0 && static_cast<size_t>(k) < t->branches.size(), "case branch index out of range");
    auto d = dnode(TypingRule::Case);
    d->ctx = ctx_union(remove(body->ctx, t->branches[k].pattern->vars), scrut->ctx);
    d->type = body->type;
    d->term = std::move(t);
    d->kids = {std::move(scrut), std::move(pat), std::move(body)};
    d->branch = k;
    return d;
}

DerivPtr rebuild(const DerivPtr& d, TermPtr subject, std::vector<DerivPtr> kids) {
    switch (d->rule) {
    case TypingRule::PatV: return d;
    case TypingRule::PatC: return d_patc(d->pattern, std::move(kids));
    case TypingRule::Ax: return d_ax(subject->name, d->type);
    case TypingRule::Many: return d_many(std::move(subject), std::move(kids));
    case TypingRule::Abs: return d_abs(std::move(subject), kids[0], kids.size() > 1 ? kids[1] : nullptr);
    case TypingRule::AbsB: return d_absb(std::move(subject));
    case TypingRule::App: return d_app(std::move(subject), kids[0], kids[1]);
    case TypingRule::Const: return d_const(std::move(subject), std::move(kids));
    case TypingRule::Match: return d_match(std::move(subject), kids[0], kids[1], kids[2]);
    case TypingRule::Case: return d_case(std::move(subject), kids[0], kids[1], kids[2], d->branch);
    }
    return d;
}

size_t size(const DerivPtr& d) {
    size_t n = d->rule == TypingRule::Many || d->rule == TypingRule::Match ? 0 : 1;
    for (auto& k : d->kids) n += size(k);
    return n;
}

size_t node_count(const DerivPtr& d) {
    size_t n = 1;
    for (auto& k : d->kids) n += node_count(k);
    return n;
}

namespace {

struct Checker {
    std::vector<DerivViolation> out;

    void report(const std::string& path, const DerivPtr& d, std::string kind, std::string msg) {
        out.push_back({path, typing_rule_name(d->rule), std::move(kind), std::move(msg)});
    }

    // Is d a judgment of the wanted sort? 't' term type, 'm' term multiset, 'p' pattern.
    static char sort(const DerivPtr& d) { return d->is_pattern() ? 'p' : d->rule == TypingRule::Many ? 'm' : 't'; }

    bool premises(const std::string& path, const DerivPtr& d, const std::string& want) {
        if (d->kids.size() != want.size()) {
            report(path, d, "Arity",
                   "expected " + std::to_string(want.size()) + " premises, found " + std::to_string(d->kids.size()));
            return false;
        }
        bool ok = true;
        for (size_t i = 0; i < want.size(); ++i) {
            if (sort(d->kids[i]) != want[i]) {
                static const std::map<char, std::string> names{
                    {'t', "a term type judgment"}, {'m', "a multiset judgment (many)"}, {'p', "a pattern judgment"}};
                report(path, d, "RuleShape", "premise " + std::to_string(i) + " must be " + names.at(want[i]));
                ok = false;
            }
        }
        return ok;
    }

    bool subject(const std::string& path, const DerivPtr& d, Term::Kind k) {
        if (!d->term || d->term->kind != k) {
            report(path, d, "SubjectMismatch", "subject has the wrong shape for this rule");
            return false;
        }
        return true;
    }

    void kid_subject(const std::string& path, const DerivPtr& d, size_t i, const TermPtr& t) {
        if (!same(d->kids[i]->term, t))
            report(path, d, "SubjectMismatch",
                   "premise " + std::to_string(i) + " types " + pretty(d->kids[i]->term) + ", expected " + pretty(t));
    }

    void kid_pattern(const std::string& path, const DerivPtr& d, size_t i, const PatternPtr& p) {
        if (!same(d->kids[i]->pattern, p))
            report(path, d, "SubjectMismatch",
                   "premise " + std::to_string(i) + " types pattern " + pretty(d->kids[i]->pattern) + ", expected " +
                       pretty(p));
    }

    void context(const std::string& path, const DerivPtr& d, const Context& want) {
        if (d->ctx != want)
            report(path, d, "ContextMismatch", "context is " + str(d->ctx) + ", the rule gives " + str(want));
    }

    void term_type(const std::string& path, const DerivPtr& d, const TypePtr& want) {
        if (!d->type) {
            report(path, d, "TypeMismatch", "a term type is required");
        } else if (!same_type(d->type, want)) {
            report(path, d, "TypeMismatch", "type is " + str(d->type) + ", the rule gives " + str(want));
        }
    }

    void multiset(const std::string& path, const DerivPtr& d, const Multiset& got, const Multiset& want,
                  const std::string& what) {
        if (!(got == want))
            report(path, d, "MultisetMismatch", what + ": " + str(got) + " vs " + str(want));
    }

    void pattern_premise(const std::string& path, const DerivPtr& d, size_t i, const PatternPtr& p,
                         const Context& body) {
        kid_pattern(path, d, i, p);
        if (d->kids[i]->ctx != restrict_to(body, p->vars))
            report(path, d, "ContextMismatch",
                   "pattern premise context " + str(d->kids[i]->ctx) + " is not the restriction " +
                       str(restrict_to(body, p->vars)));
    }

    void node(const DerivPtr& d, const std::string& path) {
        for (size_t i = 0; i < d->kids.size(); ++i) node(d->kids[i], path + "." + std::to_string(i));
        if (d->is_multiset() == static_cast<bool>(d->type))
            report(path, d, "RuleShape", d->is_multiset() ? "this rule concludes a multiset type"
                                                          : "this rule concludes a term type");
        if (!d->is_pattern() && !d->term) {
            report(path, d, "RuleShape", "missing term subject");
            return;
        }
        if (d->is_pattern() && !d->pattern) {
            report(path, d, "RuleShape", "missing pattern subject");
            return;
        }
        switch (d->rule) {
        case TypingRule::PatV: {
            if (!premises(path, d, "")) return;
            if (!d->pattern->is_var()) {
                report(path, d, "SubjectMismatch", "patv types a variable pattern");
                return;
            }
            Context want;
            if (!d->mtype.empty()) want.emplace(d->pattern->name, d->mtype);
            context(path, d, want);
            return;
        }
        case TypingRule::PatC: {
            if (d->pattern->is_var()) {
                report(path, d, "SubjectMismatch", "patc types a data pattern");
                return;
            }
            if (!premises(path, d, std::string(d->pattern->args.size(), 'p'))) return;
            std::vector<Multiset> args;
            for (size_t i = 0; i < d->kids.size(); ++i) {
                kid_pattern(path, d, i, d->pattern->args[i]);
                args.push_back(d->kids[i]->mtype);
            }
            context(path, d, sum(d->kids));
            multiset(path, d, d->mtype, mset({data_type(d->pattern->name, args)}), "pattern type");
            return;
        }
        case TypingRule::Ax: {
            if (!premises(path, d, "") || !subject(path, d, Term::Kind::Var) || !d->type) return;
            context(path, d, Context{{d->term->name, mset({d->type})}});
            return;
        }
        case TypingRule::Many: {
            if (!premises(path, d, std::string(d->kids.size(), 't'))) return;
            std::vector<TypePtr> items;
            for (size_t i = 0; i < d->kids.size(); ++i) {
                kid_subject(path, d, i, d->term);
                items.push_back(d->kids[i]->type);
            }
            context(path, d, sum(d->kids));
            multiset(path, d, d->mtype, mset(items), "multiset of the premises");
            return;
        }
        case TypingRule::Abs: {
            if (!subject(path, d, Term::Kind::Abs)) return;
            const auto& p = d->term->pattern;
            bool implicit = p->is_var() && d->kids.size() == 1;
            if (!premises(path, d, implicit ? "t" : "tp")) return;
            auto& body = d->kids[0];
            kid_subject(path, d, 0, d->term->body());
            Multiset m = lookup(body->ctx, p->name);
            if (!implicit) {
                pattern_premise(path, d, 1, p, body->ctx);
                m = d->kids[1]->mtype;
            }
            context(path, d, remove(body->ctx, p->vars));
            if (!d->type || d->type->kind != TermType::Kind::Arrow) {
                report(path, d, "TypeMismatch", "an abstraction typed by abs gets an arrow type");
                return;
            }
            multiset(path, d, d->type->domain(), m, "arrow domain vs pattern type");
            term_type(path, d, arrow(d->type->domain(), body->type));
            return;
        }
        case TypingRule::AbsB: {
            if (!premises(path, d, "") || !subject(path, d, Term::Kind::Abs)) return;
            context(path, d, {});
            term_type(path, d, star());
            return;
        }
        case TypingRule::App: {
            if (!subject(path, d, Term::Kind::App) || !premises(path, d, "tm")) return;
            kid_subject(path, d, 0, d->term->fun());
            kid_subject(path, d, 1, d->term->arg());
            auto& f = d->kids[0];
            context(path, d, ctx_union(f->ctx, d->kids[1]->ctx));
            if (!f->type || f->type->kind != TermType::Kind::Arrow) {
                report(path, d, "TypeMismatch", "the function premise must have an arrow type, found " + str(f->type));
                return;
            }
            multiset(path, d, d->kids[1]->mtype, f->type->domain(), "argument multiset vs arrow domain");
            term_type(path, d, f->type->codomain);
            return;
        }
        case TypingRule::Const: {
            if (!subject(path, d, Term::Kind::Data)) return;
            if (!premises(path, d, std::string(d->term->kids.size(), 'm'))) return;
            std::vector<Multiset> args;
            for (size_t i = 0; i < d->kids.size(); ++i) {
                kid_subject(path, d, i, d->term->kids[i]);
                args.push_back(d->kids[i]->mtype);
            }
            context(path, d, sum(d->kids));
            term_type(path, d, data_type(d->term->name, args));
            return;
        }
        case TypingRule::Match: {
            if (!subject(path, d, Term::Kind::Match) || !premises(path, d, "tpm")) return;
            auto& body = d->kids[0];
            kid_subject(path, d, 0, d->term->body());
            pattern_premise(path, d, 1, d->term->pattern, body->ctx);
            kid_subject(path, d, 2, d->term->arg());
            multiset(path, d, d->kids[2]->mtype, d->kids[1]->mtype, "argument multiset vs pattern type");
            context(path, d, ctx_union(remove(body->ctx, d->term->pattern->vars), d->kids[2]->ctx));
            term_type(path, d, body->type);
            return;
        }
        case TypingRule::Case: {
            if (!subject(path, d, Term::Kind::Case) || !premises(path, d, "mpt")) return;
            if (d->branch < 0 || static_cast<size_t>(d->branch) >= d->term->branches.size()) {
                report(path, d, "BranchSelection", "selected branch " + std::to_string(d->branch) + " does not exist");
                return;
            }
            auto& br = d->term->branches[d->branch];
            auto& body = d->kids[2];
            kid_subject(path, d, 0, d->term->scrutinee());
            pattern_premise(path, d, 1, br.pattern, body->ctx);
            kid_subject(path, d, 2, br.body);
            multiset(path, d, d->kids[0]->mtype, d->kids[1]->mtype, "scrutinee multiset vs selected pattern type");
            context(path, d, ctx_union(remove(body->ctx, br.pattern->vars), d->kids[0]->ctx));
            term_type(path, d, body->type);
            return;
        }
        }
    }
};

std::optional<DerivViolation> relevance(const DerivPtr& d, const std::string& path) {
    const Names& allowed = d->is_pattern() ? d->pattern->vars : d->term->fv;
    for (auto& [x, m] : d->ctx)
        if (!has(allowed, x))
            return DerivViolation{path, typing_rule_name(d->rule), "Relevance",
                                  "context mentions " + x + ", which is not free in the subject"};
    for (size_t i = 0; i < d->kids.size(); ++i)
        if (auto v = relevance(d->kids[i], path + "." + std::to_string(i))) return v;
    return std::nullopt;
}

} // namespace

std::vector<DerivViolation> check_derivation(const DerivPtr& d) {
    Checker c;
    c.node(d, "root");
    return c.out;
}

std::optional<DerivViolation> relevance_check(const DerivPtr& d) { return relevance(d, "root"); }

std::pair<DerivPtr, Multiset> type_pattern(const PatternPtr& p, const Context& g) {
    if (p->is_var()) {
        auto m = lookup(g, p->name);
        return {d_patv(p->name, m), m};
    }
    std::vector<DerivPtr> kids;
    for (auto& q : p->args) kids.push_back(type_pattern(q, g).first);
    auto d = d_patc(p, std::move(kids));
    return {d, d->mtype};
}

std::vector<DerivPtr> split(const DerivPtr& d, const std::vector<Multiset>& parts) {
    if (d->rule != TypingRule::Many) throw Error("InvalidPartition", "only many nodes can be split");
    Multiset all;
    for (auto& p : parts) all = mset_union(all, p);
    if (!(all == d->mtype))
        throw Error("InvalidPartition", str(all) + " is not a partition of " + str(d->mtype));
    std::vector<bool> used(d->kids.size(), false);
    std::vector<DerivPtr> out;
    for (auto& p : parts) {
        std::vector<DerivPtr> picked;
        for (auto& t : p.items)
            for (size_t i = 0; i < d->kids.size(); ++i)
                if (!used[i] && d->kids[i]->type->key == t->key) {
                    used[i] = true;
                    picked.push_back(d->kids[i]);
                    break;
                }
        out.push_back(d_many(d->term, std::move(picked)));
    }
    return out;
}

DerivPtr merge(const std::vector<DerivPtr>& parts) {
    if (parts.empty()) throw Error("InvalidPartition", "nothing to merge");
    std::vector<DerivPtr> kids;
    for (auto& p : parts) {
        if (p->rule != TypingRule::Many || !same(p->term, parts[0]->term))
            throw Error("InvalidPartition", "merge needs many nodes over the same subject");
        kids.insert(kids.end(), p->kids.begin(), p->kids.end());
    }
    return d_many(parts[0]->term, std::move(kids));
}

static bool find_forced(const TermPtr& t, Position& pos, BaseClash& kind) {
    auto go = [&](Dir d, const TermPtr& k) {
        pos.push_back(d);
        if (find_forced(k, pos, kind)) return true;
        pos.pop_back();
        return false;
    };
    switch (t->kind) {
    case Term::Kind::App:
        if (go(Dir::Fun, t->fun())) return true;
        break;
    case Term::Kind::Match:
        if (go(Dir::Body, t->body())) return true;
        if (!t->pattern->is_var() && go(Dir::Arg, t->arg())) return true;
        break;
    case Term::Kind::Case:
        if (go(Dir::Scrut, t->scrutinee())) return true;
        break;
    default: break;
    }
    if (auto k = base_clash(t)) {
        kind = *k;
        return true;
    }
    return false;
}

std::optional<std::pair<Position, BaseClash>> forced_clash(const TermPtr& t) {
    Position pos;
    BaseClash kind{};
    if (!find_forced(t, pos, kind)) return std::nullopt;
    return std::make_pair(pos, kind);
}

static std::string branch_tags(const TermPtr& c) {
    std::string s = "{";
    for (size_t i = 0; i < c->branches.size(); ++i) s += (i ? "," : "") + c->branches[i].pattern->name;
    return s + "}";
}

ClashEvidence assert_clash_untypable(const TermPtr& t) {
    auto rep = is_clash(t);
    if (!rep.is_clash) throw Error("NotAClash", pretty(t) + " is not a clash");
    auto forced = forced_clash(t);
    if (!forced)
        throw Error("UnforcedClash", "the clash at " + position_name(rep.witness) + " of " + pretty(t) +
                                         " only sits in the argument of a variable pattern, which the empty "
                                         "multiset types without looking at it");
    ClashEvidence ev{forced->first, forced->second, {}};
    ev.reasons.push_back("a term type for " + pretty(t) + " types the subterm at the root");
    TermPtr cur = t;
    Position here;
    for (auto d : ev.witness) {
        switch (d) {
        case Dir::Fun:
            ev.reasons.push_back("app types the function " + pretty(cur->fun()) + " with an arrow type");
            cur = cur->fun();
            break;
        case Dir::Body:
            ev.reasons.push_back("match gives the body " + pretty(cur->body()) + " the type of the closure");
            cur = cur->body();
            break;
        case Dir::Arg:
            ev.reasons.push_back("the data pattern " + pretty(cur->pattern) +
                                 " has a singleton multiset type, so the argument " + pretty(cur->arg()) +
                                 " gets exactly one term type");
            cur = cur->arg();
            break;
        case Dir::Scrut:
            ev.reasons.push_back("case types the scrutinee " + pretty(cur->scrutinee()) +
                                 " with the singleton type of a branch pattern");
            cur = cur->scrutinee();
            break;
        }
        here.push_back(d);
    }
    const Term& core = list_core(ev.kind == BaseClash::DataApplied ? cur->fun()
                                 : ev.kind == BaseClash::CaseAbs || ev.kind == BaseClash::CaseTag ? cur->scrutinee()
                                                                                                  : cur->arg());
    std::string tag = core.kind == Term::Kind::Data ? core.name : "";
    switch (ev.kind) {
    case BaseClash::DataApplied:
        ev.reasons.push_back("the data term " + tag + "(...) under its matching frames can only be assigned a data "
                             "type, but application needs an arrow type");
        break;
    case BaseClash::MatchAbs:
        ev.reasons.push_back("the pattern " + pretty(cur->pattern) + " forces a data type " + cur->pattern->name +
                             "(...), but an abstraction can only get an arrow type or *");
        break;
    case BaseClash::MatchTag:
        ev.reasons.push_back("the pattern forces data type " + cur->pattern->name + "(...), but the argument exposes tag " +
                             tag + " and can only get a data type with that tag");
        break;
    case BaseClash::CaseAbs:
        ev.reasons.push_back("branch patterns force a data type on the scrutinee, but an abstraction can only get an "
                             "arrow type or *");
        break;
    case BaseClash::CaseTag:
        ev.reasons.push_back("the scrutinee can only get a data type with tag " + tag + ", and " + tag +
                             " is not among the branch tags " + branch_tags(cur));
        break;
    }
    return ev;
}

} // namespace lamhat
