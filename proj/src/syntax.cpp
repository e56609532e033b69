#include "lamhat/syntax.hpp"
#include "lamhat/text.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <set>
#include <unordered_map>

namespace lamhat {

bool has(const Names& s, const std::string& x) {
    return std::binary_search(s.begin(), s.end(), x);
}

Names set_union(const Names& a, const Names& b) {
    Names r;
    r.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
}

Names set_minus(const Names& a, const Names& b) {
    Names r;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
}

Names set_inter(const Names& a, const Names& b) {
    Names r;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
}

PatternPtr pvar(std::string name) {
    auto p = std::make_shared<Pattern>();
    p->kind = Pattern::Kind::Var;
    p->name = std::move(name);
    p->vars = {p->name};
    p->var_order = {p->name};
    return p;
}

PatternPtr pdata(std::string tag, std::vector<PatternPtr> args) {
    auto p = std::make_shared<Pattern>();
    p->kind = Pattern::Kind::Data;
    p->name = std::move(tag);
    for (auto& a : args) {
        p->var_order.insert(p->var_order.end(), a->var_order.begin(), a->var_order.end());
        p->vars = set_union(p->vars, a->vars);
    }
    p->args = std::move(args);
    return p;
}

static std::shared_ptr<Term> node(Term::Kind k) {
    auto t = std::make_shared<Term>();
    t->kind = k;
    return t;
}

TermPtr var(std::string name) {
    auto t = node(Term::Kind::Var);
    t->name = std::move(name);
    t->fv = {t->name};
    return t;
}

TermPtr abs(PatternPtr p, TermPtr body) {
    auto t = node(Term::Kind::Abs);
    t->fv = set_minus(body->fv, p->vars);
    t->size = 1 + body->size;
    t->pattern = std::move(p);
    t->kids = {std::move(body)};
    return t;
}

TermPtr app(TermPtr f, TermPtr a) {
    auto t = node(Term::Kind::App);
    t->fv = set_union(f->fv, a->fv);
    t->size = 1 + f->size + a->size;
    t->kids = {std::move(f), std::move(a)};
    return t;
}

TermPtr match(TermPtr body, PatternPtr p, TermPtr arg) {
    auto t = node(Term::Kind::Match);
    t->fv = set_union(set_minus(body->fv, p->vars), arg->fv);
    t->size = 1 + body->size + arg->size;
    t->pattern = std::move(p);
    t->kids = {std::move(body), std::move(arg)};
    return t;
}

TermPtr data(std::string tag, std::vector<TermPtr> args) {
    auto t = node(Term::Kind::Data);
    t->name = std::move(tag);
    for (auto& a : args) {
        t->fv = set_union(t->fv, a->fv);
        t->size += a->size;
    }
    t->kids = std::move(args);
    return t;
}

TermPtr case_of(TermPtr scrutinee, std::vector<Branch> branches) {
    auto t = node(Term::Kind::Case);
    t->fv = scrutinee->fv;
    t->size = 1 + scrutinee->size;
    for (auto& b : branches) {
        t->fv = set_union(t->fv, set_minus(b.body->fv, b.pattern->vars));
        t->size += b.body->size;
    }
    t->kids = {std::move(scrutinee)};
    t->branches = std::move(branches);
    return t;
}

TermPtr identity() { return abs(pvar("x"), var("x")); }

const Names& free_vars(const TermPtr& t) { return t->fv; }
bool closed(const TermPtr& t) { return t->fv.empty(); }

namespace {
std::atomic<unsigned long> fresh_counter{0};

std::string strip_suffix(const std::string& s, unsigned long* num) {
    auto pos = s.rfind('_');
    if (pos == std::string::npos || pos + 1 == s.size() || pos == 0) return s;
    for (size_t i = pos + 1; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return s;
    if (num) {
        try {
            *num = std::stoul(s.substr(pos + 1));
        } catch (...) {
            *num = 0;
        }
    }
    return s.substr(0, pos);
}
} // namespace

std::string fresh(const std::string& base) {
    std::string b = strip_suffix(base, nullptr);
    if (b.empty()) b = "v";
    return b + "_" + std::to_string(++fresh_counter);
}

void note_name(const std::string& name) {
    unsigned long n = 0;
    strip_suffix(name, &n);
    unsigned long cur = fresh_counter.load();
    while (n > cur && !fresh_counter.compare_exchange_weak(cur, n)) {
    }
}

static void note_pattern(const PatternPtr& p) {
    for (auto& v : p->var_order) note_name(v);
}

void note_names(const TermPtr& t) {
    switch (t->kind) {
    case Term::Kind::Var: note_name(t->name); return;
    case Term::Kind::Abs:
    case Term::Kind::Match: note_pattern(t->pattern); break;
    case Term::Kind::Case:
        for (auto& b : t->branches) {
            note_pattern(b.pattern);
            note_names(b.body);
        }
        break;
    default: break;
    }
    for (auto& k : t->kids) note_names(k);
}

PatternPtr rename_pattern(const PatternPtr& p, const std::map<std::string, std::string>& m) {
    if (p->is_var()) {
        auto it = m.find(p->name);
        return it == m.end() ? p : pvar(it->second);
    }
    std::vector<PatternPtr> args;
    bool changed = false;
    for (auto& a : p->args) {
        args.push_back(rename_pattern(a, m));
        changed |= args.back() != a;
    }
    return changed ? pdata(p->name, std::move(args)) : p;
}

static std::map<std::string, std::string> drop_keys(const std::map<std::string, std::string>& m,
                                                    const Names& bound) {
    auto r = m;
    for (auto& b : bound) r.erase(b);
    return r;
}

TermPtr rename_free(const TermPtr& t, const std::map<std::string, std::string>& m) {
    if (m.empty()) return t;
    bool touches = false;
    for (auto& [k, v] : m)
        if (has(t->fv, k)) {
            touches = true;
            break;
        }
    if (!touches) return t;
    switch (t->kind) {
    case Term::Kind::Var: return var(m.at(t->name));
    case Term::Kind::Abs: return abs(t->pattern, rename_free(t->body(), drop_keys(m, t->pattern->vars)));
    case Term::Kind::App: return app(rename_free(t->fun(), m), rename_free(t->arg(), m));
    case Term::Kind::Match:
        return match(rename_free(t->body(), drop_keys(m, t->pattern->vars)), t->pattern,
                     rename_free(t->arg(), m));
    case Term::Kind::Data: {
        std::vector<TermPtr> args;
        for (auto& a : t->kids) args.push_back(rename_free(a, m));
        return data(t->name, std::move(args));
    }
    case Term::Kind::Case: {
        std::vector<Branch> bs;
        for (auto& b : t->branches)
            bs.push_back({b.pattern, rename_free(b.body, drop_keys(m, b.pattern->vars))});
        return case_of(rename_free(t->scrutinee(), m), std::move(bs));
    }
    }
    return t;
}

// Renames the variables of p that belong to `clash` to fresh ones, applying the same renaming to scope.
static std::pair<PatternPtr, TermPtr> freshen_binder(const PatternPtr& p, const TermPtr& scope,
                                                     const Names& clash) {
    std::map<std::string, std::string> m;
    for (auto& v : clash) m[v] = fresh(v);
    return {rename_pattern(p, m), rename_free(scope, m)};
}

TermPtr freshen_for_subst(const TermPtr& t, const std::string& x, const Names& avoid) {
    if (!has(t->fv, x)) return t;
    auto under = [&](const PatternPtr& p, const TermPtr& scope) -> std::pair<PatternPtr, TermPtr> {
        if (has(p->vars, x) || !has(scope->fv, x)) return {p, scope};
        auto clash = set_inter(p->vars, avoid);
        auto [p2, s2] = clash.empty() ? std::pair{p, scope} : freshen_binder(p, scope, clash);
        return {p2, freshen_for_subst(s2, x, avoid)};
    };
    switch (t->kind) {
    case Term::Kind::Var: return t;
    case Term::Kind::Abs: {
        auto [p, b] = under(t->pattern, t->body());
        return abs(p, b);
    }
    case Term::Kind::App:
        return app(freshen_for_subst(t->fun(), x, avoid), freshen_for_subst(t->arg(), x, avoid));
    case Term::Kind::Match: {
        auto [p, b] = under(t->pattern, t->body());
        return match(b, p, freshen_for_subst(t->arg(), x, avoid));
    }
    case Term::Kind::Data: {
        std::vector<TermPtr> args;
        for (auto& a : t->kids) args.push_back(freshen_for_subst(a, x, avoid));
        return data(t->name, std::move(args));
    }
    case Term::Kind::Case: {
        std::vector<Branch> bs;
        for (auto& b : t->branches) {
            auto [p, body] = under(b.pattern, b.body);
            bs.push_back({p, body});
        }
        return case_of(freshen_for_subst(t->scrutinee(), x, avoid), std::move(bs));
    }
    }
    return t;
}

TermPtr naive_subst(const TermPtr& t, const std::string& x, const TermPtr& u) {
    if (!has(t->fv, x)) return t;
    switch (t->kind) {
    case Term::Kind::Var: return u;
    case Term::Kind::Abs: return abs(t->pattern, naive_subst(t->body(), x, u));
    case Term::Kind::App: return app(naive_subst(t->fun(), x, u), naive_subst(t->arg(), x, u));
    case Term::Kind::Match: {
        auto b = has(t->pattern->vars, x) ? t->body() : naive_subst(t->body(), x, u);
        return match(b, t->pattern, naive_subst(t->arg(), x, u));
    }
    case Term::Kind::Data: {
        std::vector<TermPtr> args;
        for (auto& a : t->kids) args.push_back(naive_subst(a, x, u));
        return data(t->name, std::move(args));
    }
    case Term::Kind::Case: {
        std::vector<Branch> bs;
        for (auto& b : t->branches)
            bs.push_back({b.pattern, has(b.pattern->vars, x) ? b.body : naive_subst(b.body, x, u)});
        return case_of(naive_subst(t->scrutinee(), x, u), std::move(bs));
    }
    }
    return t;
}

TermPtr substitute(const TermPtr& t, const std::string& x, const TermPtr& u) {
    return naive_subst(freshen_for_subst(t, x, u->fv), x, u);
}

namespace {

struct Canon {
    std::string out;
    std::vector<std::pair<std::string, int>> env;
    int next = 0;

    void bind(const PatternPtr& p) {
        if (p->is_var()) {
            env.emplace_back(p->name, next);
            out += "#" + std::to_string(next++);
            return;
        }
        out += p->name;
        out += '(';
        for (auto& a : p->args) {
            bind(a);
            out += ',';
        }
        out += ')';
    }

    void term(const TermPtr& t) {
        switch (t->kind) {
        case Term::Kind::Var: {
            for (auto it = env.rbegin(); it != env.rend(); ++it)
                if (it->first == t->name) {
                    out += "#" + std::to_string(it->second);
                    return;
                }
            out += t->name;
            return;
        }
        case Term::Kind::Abs: {
            out += "\\";
            auto mark = env.size();
            bind(t->pattern);
            out += '.';
            term(t->body());
            env.resize(mark);
            return;
        }
        case Term::Kind::App:
            out += '(';
            term(t->fun());
            out += ' ';
            term(t->arg());
            out += ')';
            return;
        case Term::Kind::Match: {
            out += '[';
            auto mark = env.size();
            bind(t->pattern);
            out += '|';
            term(t->body());
            env.resize(mark);
            out += '/';
            term(t->arg());
            out += ']';
            return;
        }
        case Term::Kind::Data:
            out += t->name;
            out += '(';
            for (auto& a : t->kids) {
                term(a);
                out += ',';
            }
            out += ')';
            return;
        case Term::Kind::Case:
            out += "case ";
            term(t->scrutinee());
            out += '{';
            for (auto& b : t->branches) {
                auto mark = env.size();
                bind(b.pattern);
                out += "->";
                term(b.body);
                env.resize(mark);
                out += '|';
            }
            out += '}';
            return;
        }
    }
};

} // namespace

std::string canonical(const TermPtr& t) {
    Canon c;
    c.term(t);
    return c.out;
}

bool alpha_eq(const TermPtr& a, const TermPtr& b) {
    if (a == b) return true;
    if (a->size != b->size || a->fv != b->fv) return false;
    return canonical(a) == canonical(b);
}

bool same(const PatternPtr& a, const PatternPtr& b) {
    if (a == b) return true;
    if (a->kind != b->kind || a->name != b->name || a->args.size() != b->args.size()) return false;
    for (size_t i = 0; i < a->args.size(); ++i)
        if (!same(a->args[i], b->args[i])) return false;
    return true;
}

bool same(const TermPtr& a, const TermPtr& b) {
    if (a == b) return true;
    if (a->kind != b->kind || a->name != b->name || a->kids.size() != b->kids.size() ||
        a->branches.size() != b->branches.size() || a->size != b->size)
        return false;
    if (a->pattern && !same(a->pattern, b->pattern)) return false;
    for (size_t i = 0; i < a->kids.size(); ++i)
        if (!same(a->kids[i], b->kids[i])) return false;
    for (size_t i = 0; i < a->branches.size(); ++i)
        if (!same(a->branches[i].pattern, b->branches[i].pattern) ||
            !same(a->branches[i].body, b->branches[i].body))
            return false;
    return true;
}

Names ListContext::bound() const {
    Names r;
    for (auto& f : frames) r = set_union(r, f.pattern->vars);
    return r;
}

TermPtr ListContext::plug(TermPtr core) const {
    for (auto& f : frames) core = match(core, f.pattern, f.arg);
    return core;
}

std::pair<ListContext, TermPtr> decompose_list_context(const TermPtr& t) {
    ListContext l;
    TermPtr cur = t;
    while (cur->kind == Term::Kind::Match) {
        l.frames.push_back({cur->pattern, cur->arg()});
        cur = cur->body();
    }
    std::reverse(l.frames.begin(), l.frames.end());
    return {l, cur};
}

const Term& list_core(const TermPtr& t) {
    const Term* cur = t.get();
    while (cur->kind == Term::Kind::Match) cur = cur->kids[0].get();
    return *cur;
}

bool is_abs(const TermPtr& t) { return list_core(t).kind == Term::Kind::Abs; }
bool is_case(const TermPtr& t) { return list_core(t).kind == Term::Kind::Case; }

std::optional<std::string> const_tag(const TermPtr& t) {
    auto& c = list_core(t);
    if (c.kind == Term::Kind::Data) return c.name;
    return std::nullopt;
}

bool is_const(const TermPtr& t, const std::string& c) {
    auto& k = list_core(t);
    return k.kind == Term::Kind::Data && k.name == c;
}

TermPtr freshen_list_context(const TermPtr& t, const Names& avoid) {
    if (t->kind != Term::Kind::Match) return t;
    auto inner = freshen_list_context(t->body(), avoid);
    auto clash = set_inter(t->pattern->vars, avoid);
    if (clash.empty()) return inner == t->body() ? t : match(inner, t->pattern, t->arg());
    auto [p, b] = freshen_binder(t->pattern, inner, clash);
    return match(b, p, t->arg());
}

bool TagRegistry::declare(const std::string& tag, size_t arity) {
    auto [it, inserted] = arity_.emplace(tag, arity);
    return inserted || it->second == arity;
}

std::optional<size_t> TagRegistry::arity(const std::string& tag) const {
    auto it = arity_.find(tag);
    if (it == arity_.end()) return std::nullopt;
    return it->second;
}

namespace {

struct WfCheck {
    TagRegistry& reg;
    bool declare_missing;
    std::vector<Violation> out;

    void tag(const std::string& name, size_t n, const std::string& where) {
        auto a = reg.arity(name);
        if (!a) {
            if (declare_missing) {
                reg.declare(name, n);
                return;
            }
            out.push_back({"ArityMismatch", "undeclared tag " + name + " in " + where});
            return;
        }
        if (*a != n)
            out.push_back({"ArityMismatch", name + " expects " + std::to_string(*a) + " argument(s), got " +
                                                std::to_string(n) + " in " + where});
    }

    void pattern(const PatternPtr& p) {
        if (p->is_var()) return;
        tag(p->name, p->args.size(), pretty(p));
        for (auto& a : p->args) pattern(a);
    }

    void linear(const PatternPtr& p) {
        if (p->vars.size() != p->var_order.size())
            out.push_back({"NonlinearPattern", pretty(p)});
        pattern(p);
    }

    void term(const TermPtr& t) {
        switch (t->kind) {
        case Term::Kind::Var: return;
        case Term::Kind::Abs:
        case Term::Kind::Match: linear(t->pattern); break;
        case Term::Kind::Data: tag(t->name, t->kids.size(), pretty(t)); break;
        case Term::Kind::Case: {
            if (t->branches.empty()) out.push_back({"EmptyCase", pretty(t)});
            std::set<std::string> seen;
            for (auto& b : t->branches) {
                if (b.pattern->is_var()) {
                    out.push_back({"VarPatternInCase", pretty(t)});
                    continue;
                }
                linear(b.pattern);
                if (!seen.insert(b.pattern->name).second)
                    out.push_back({"DuplicateBranchTag", b.pattern->name + " in " + pretty(t)});
                term(b.body);
            }
            break;
        }
        case Term::Kind::App: break;
        }
        for (auto& k : t->kids) term(k);
    }
};

} // namespace

std::vector<Violation> well_formed(const TermPtr& t, const TagRegistry& reg) {
    TagRegistry copy = reg;
    WfCheck c{copy, false, {}};
    c.term(t);
    return c.out;
}

std::vector<Violation> collect_tags(const TermPtr& t, TagRegistry& reg) {
    WfCheck c{reg, true, {}};
    c.term(t);
    std::vector<Violation> arity;
    for (auto& v : c.out)
        if (v.kind == "ArityMismatch") arity.push_back(v);
    return arity;
}

} // namespace lamhat
