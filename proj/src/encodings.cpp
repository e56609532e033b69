#include "lamhat/encodings.hpp"
#include "lamhat/text.hpp"

#include <cctype>
#include <deque>
#include <map>
#include <set>
#include <unordered_map>

namespace lamhat {

std::string calculus_name(Calculus k) {
    switch (k) {
    case Calculus::Cbn: return "cbn";
    case Calculus::Cbv: return "cbv";
    case Calculus::Bang: return "bang";
    }
    return "?";
}

Calculus parse_calculus(const std::string& s) {
    if (s == "cbn") return Calculus::Cbn;
    if (s == "cbv") return Calculus::Cbv;
    if (s == "bang") return Calculus::Bang;
    throw Error("Usage", "unknown calculus '" + s + "' (expected cbn, cbv or bang)");
}

static std::shared_ptr<Src> snode(Src::Kind k) {
    auto t = std::make_shared<Src>();
    t->kind = k;
    return t;
}

SrcPtr svar(std::string x) {
    auto t = snode(Src::Kind::Var);
    t->name = std::move(x);
    t->fv = {t->name};
    return t;
}

SrcPtr sabs(std::string x, SrcPtr body) {
    auto t = snode(Src::Kind::Abs);
    t->fv = set_minus(body->fv, {x});
    t->name = std::move(x);
    t->kids = {std::move(body)};
    return t;
}

SrcPtr sapp(SrcPtr f, SrcPtr a) {
    auto t = snode(Src::Kind::App);
    t->fv = set_union(f->fv, a->fv);
    t->kids = {std::move(f), std::move(a)};
    return t;
}

SrcPtr sbang(SrcPtr b) {
    auto t = snode(Src::Kind::Bang);
    t->fv = b->fv;
    t->kids = {std::move(b)};
    return t;
}

SrcPtr ssub(SrcPtr body, std::string x, SrcPtr arg) {
    auto t = snode(Src::Kind::Sub);
    t->fv = set_union(set_minus(body->fv, {x}), arg->fv);
    t->name = std::move(x);
    t->kids = {std::move(body), std::move(arg)};
    return t;
}

namespace {

class SrcParser {
public:
    SrcParser(std::string_view s, Calculus k) : s_(s), k_(k) {}

    SrcPtr whole() {
        auto t = term();
        skip();
        if (i_ < s_.size()) fail("unexpected input");
        return t;
    }

private:
    [[noreturn]] void fail(const std::string& msg) {
        size_t line = 1, col = 1;
        for (size_t j = 0; j < i_ && j < s_.size(); ++j) {
            if (s_[j] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ParseError(msg, {i_, i_}, line, col);
    }

    void skip() {
        for (;;) {
            while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
            if (i_ < s_.size() && s_[i_] == '#') {
                while (i_ < s_.size() && s_[i_] != '\n') ++i_;
                continue;
            }
            return;
        }
    }

    bool at(char c) {
        skip();
        return i_ < s_.size() && s_[i_] == c;
    }

    void expect(char c) {
        if (!at(c)) fail(std::string("expected '") + c + "'");
        ++i_;
    }

    bool at_lambda() {
        skip();
        return at('\\') || s_.substr(i_, 2) == "\xCE\xBB";
    }

    std::string ident() {
        skip();
        size_t b = i_;
        if (i_ >= s_.size() || !(std::islower(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_'))
            fail("expected a variable");
        while (i_ < s_.size() &&
               (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_' || s_[i_] == '\''))
            ++i_;
        return std::string(s_.substr(b, i_ - b));
    }

    SrcPtr term() {
        if (at_lambda()) {
            i_ += s_[i_] == '\\' ? 1 : 2;
            auto x = ident();
            expect('.');
            return sabs(x, term());
        }
        auto t = suffixed();
        for (;;) {
            skip();
            if (i_ >= s_.size()) break;
            char c = s_[i_];
            if (c == '(' || c == '!' || std::islower(static_cast<unsigned char>(c)) || c == '_') {
                t = sapp(t, suffixed());
            } else if (at_lambda()) {
                t = sapp(t, term());
                break;
            } else {
                break;
            }
        }
        return t;
    }

    SrcPtr suffixed() {
        auto t = atom();
        while (at('[')) {
            if (k_ != Calculus::Bang) fail("explicit substitutions only exist in the bang calculus");
            ++i_;
            auto x = ident();
            expect('/');
            auto u = term();
            expect(']');
            t = ssub(t, x, u);
        }
        return t;
    }

    SrcPtr atom() {
        if (at('(')) {
            ++i_;
            auto t = term();
            expect(')');
            return t;
        }
        if (at('!')) {
            if (k_ != Calculus::Bang) fail("'!' only exists in the bang calculus");
            ++i_;
            return sbang(suffixed());
        }
        return svar(ident());
    }

    std::string_view s_;
    Calculus k_;
    size_t i_ = 0;
};

void print(const SrcPtr& t, int level, std::string& out) {
    switch (t->kind) {
    case Src::Kind::Var: out += t->name; return;
    case Src::Kind::Abs:
        if (level > 0) out += '(';
        out += "\\" + t->name + ".";
        print(t->kids[0], 0, out);
        if (level > 0) out += ')';
        return;
    case Src::Kind::App:
        if (level > 1) out += '(';
        print(t->kids[0], 1, out);
        out += ' ';
        print(t->kids[1], 2, out);
        if (level > 1) out += ')';
        return;
    case Src::Kind::Bang:
        out += '!';
        print(t->kids[0], 2, out);
        return;
    case Src::Kind::Sub:
        print(t->kids[0], 2, out);
        out += "[" + t->name + "/";
        print(t->kids[1], 0, out);
        out += ']';
        return;
    }
}

void canon(const SrcPtr& t, std::vector<std::pair<std::string, int>>& env, int& next, std::string& out) {
    switch (t->kind) {
    case Src::Kind::Var:
        for (auto it = env.rbegin(); it != env.rend(); ++it)
            if (it->first == t->name) {
                out += "#" + std::to_string(it->second);
                return;
            }
        out += t->name;
        return;
    case Src::Kind::Abs:
        env.emplace_back(t->name, next);
        out += "\\#" + std::to_string(next++) + ".";
        canon(t->kids[0], env, next, out);
        env.pop_back();
        return;
    case Src::Kind::App:
        out += '(';
        canon(t->kids[0], env, next, out);
        out += ' ';
        canon(t->kids[1], env, next, out);
        out += ')';
        return;
    case Src::Kind::Bang:
        out += "!(";
        canon(t->kids[0], env, next, out);
        out += ')';
        return;
    case Src::Kind::Sub:
        env.emplace_back(t->name, next);
        out += "[#" + std::to_string(next++) + "|";
        canon(t->kids[0], env, next, out);
        env.pop_back();
        out += "/";
        canon(t->kids[1], env, next, out);
        out += ']';
        return;
    }
}

SrcPtr rename_src(const SrcPtr& t, const std::string& from, const std::string& to) {
    return substitute(t, from, svar(to));
}

SrcPtr rebuild(const SrcPtr& t, std::vector<SrcPtr> kids) {
    switch (t->kind) {
    case Src::Kind::Abs: return sabs(t->name, kids[0]);
    case Src::Kind::App: return sapp(kids[0], kids[1]);
    case Src::Kind::Bang: return sbang(kids[0]);
    case Src::Kind::Sub: return ssub(kids[0], t->name, kids[1]);
    default: return t;
    }
}

SrcPtr replace_src(const SrcPtr& t, const std::vector<int>& where, size_t i, const SrcPtr& u) {
    if (i == where.size()) return u;
    auto kids = t->kids;
    kids[where[i]] = replace_src(kids[where[i]], where, i + 1, u);
    return rebuild(t, std::move(kids));
}

bool is_value(const SrcPtr& t) { return t->kind == Src::Kind::Var || t->kind == Src::Kind::Abs; }

void collect_cbv(const SrcPtr& t, std::vector<int>& where, std::vector<SrcStep>& out) {
    if (t->kind != Src::Kind::App) return;
    auto& f = t->kids[0];
    auto& a = t->kids[1];
    if (f->kind == Src::Kind::Abs && is_value(a)) out.push_back({"beta_v", where, substitute(f->kids[0], f->name, a)});
    where.push_back(0);
    collect_cbv(f, where, out);
    where.pop_back();
    if (is_value(f)) {
        where.push_back(1);
        collect_cbv(a, where, out);
        where.pop_back();
    }
}

// bang list contexts: frames around a core, innermost first
struct BangL {
    std::vector<std::pair<std::string, SrcPtr>> frames;
    SrcPtr core;
};

BangL bang_decompose(SrcPtr t) {
    BangL l;
    while (t->kind == Src::Kind::Sub) {
        l.frames.push_back({t->name, t->kids[1]});
        t = t->kids[0];
    }
    std::reverse(l.frames.begin(), l.frames.end());
    l.core = t;
    return l;
}

// renames the frame binders of L that occur in avoid, so that L can be moved around a term with those free variables
void bang_freshen(BangL& l, const Names& avoid) {
    for (size_t k = 0; k < l.frames.size(); ++k) {
        auto& x = l.frames[k].first;
        if (!has(avoid, x)) continue;
        auto y = fresh(x);
        l.core = rename_src(l.core, x, y);
        for (size_t j = 0; j < k; ++j) l.frames[j].second = rename_src(l.frames[j].second, x, y);
        x = y;
    }
}

SrcPtr bang_plug(const BangL& l, SrcPtr t) {
    for (auto& [x, u] : l.frames) t = ssub(t, x, u);
    return t;
}

void collect_bang(const SrcPtr& t, std::vector<int>& where, std::vector<SrcStep>& out) {
    if (t->kind == Src::Kind::App) {
        auto l = bang_decompose(t->kids[0]);
        if (l.core->kind == Src::Kind::Abs) {
            bang_freshen(l, t->kids[1]->fv);
            out.push_back({"dB", where, bang_plug(l, ssub(l.core->kids[0], l.core->name, t->kids[1]))});
        }
        where.push_back(0);
        collect_bang(t->kids[0], where, out);
        where.pop_back();
    } else if (t->kind == Src::Kind::Sub) {
        auto l = bang_decompose(t->kids[1]);
        if (l.core->kind == Src::Kind::Bang) {
            bang_freshen(l, set_minus(t->kids[0]->fv, {t->name}));
            out.push_back({"s", where, bang_plug(l, substitute(t->kids[0], t->name, l.core->kids[0]))});
        }
        where.push_back(0);
        collect_bang(t->kids[0], where, out);
        where.back() = 1;
        collect_bang(t->kids[1], where, out);
        where.pop_back();
    }
}

std::vector<SrcStep> finish(const SrcPtr& t, std::vector<SrcStep> steps) {
    for (auto& s : steps) s.after = replace_src(t, s.where, 0, s.after);
    return steps;
}

void names_of(const SrcPtr& t, std::set<std::string>& out) {
    if (t->kind != Src::Kind::App && t->kind != Src::Kind::Bang) out.insert(t->name);
    for (auto& k : t->kids) names_of(k, out);
}

struct CbvTranslator {
    std::set<std::string> taken;
    int next = 0;

    std::string pick(const std::string& base) {
        for (;;) {
            auto n = base + "_" + std::to_string(++next);
            if (!taken.count(n)) {
                note_name(n);
                return n;
            }
        }
    }

    TermPtr value(const SrcPtr& v) {
        if (v->kind == Src::Kind::Var) return var(v->name);
        return abs(pvar(v->name), term(v->kids[0]));
    }

    TermPtr term(const SrcPtr& t) {
        if (t->kind != Src::Kind::App) return data("V", {value(t)});
        auto f = pick("f");
        auto a = pick("a");
        return match(match(app(var(f), var(a)), pdata("V", {pvar(a)}), term(t->kids[1])), pdata("V", {pvar(f)}),
                     term(t->kids[0]));
    }
};

} // namespace

SrcPtr parse_source(std::string_view text, Calculus k) { return SrcParser(text, k).whole(); }

std::string pretty(const SrcPtr& t) {
    std::string out;
    print(t, 0, out);
    return out;
}

bool alpha_eq(const SrcPtr& a, const SrcPtr& b) {
    std::vector<std::pair<std::string, int>> e1, e2;
    int n1 = 0, n2 = 0;
    std::string s1, s2;
    canon(a, e1, n1, s1);
    canon(b, e2, n2, s2);
    return s1 == s2;
}

SrcPtr substitute(const SrcPtr& t, const std::string& x, const SrcPtr& u) {
    if (!has(t->fv, x)) return t;
    auto under = [&](const std::string& y, const SrcPtr& scope) -> std::pair<std::string, SrcPtr> {
        if (y == x) return {y, scope};
        if (has(u->fv, y)) {
            auto z = fresh(y);
            return {z, substitute(substitute(scope, y, svar(z)), x, u)};
        }
        return {y, substitute(scope, x, u)};
    };
    switch (t->kind) {
    case Src::Kind::Var: return u;
    case Src::Kind::Abs: {
        auto [y, b] = under(t->name, t->kids[0]);
        return sabs(y, b);
    }
    case Src::Kind::App: return sapp(substitute(t->kids[0], x, u), substitute(t->kids[1], x, u));
    case Src::Kind::Bang: return sbang(substitute(t->kids[0], x, u));
    case Src::Kind::Sub: {
        auto [y, b] = under(t->name, t->kids[0]);
        return ssub(b, y, substitute(t->kids[1], x, u));
    }
    }
    return t;
}

bool valid_in(const SrcPtr& t, Calculus k) {
    if ((t->kind == Src::Kind::Bang || t->kind == Src::Kind::Sub) && k != Calculus::Bang) return false;
    for (auto& c : t->kids)
        if (!valid_in(c, k)) return false;
    return true;
}

std::optional<SrcStep> cbn_step(const SrcPtr& t) {
    std::vector<int> where;
    SrcPtr cur = t;
    while (cur->kind == Src::Kind::App) {
        auto& f = cur->kids[0];
        if (f->kind == Src::Kind::Abs) {
            SrcStep s{"beta", where, substitute(f->kids[0], f->name, cur->kids[1])};
            s.after = replace_src(t, where, 0, s.after);
            return s;
        }
        where.push_back(0);
        cur = f;
    }
    return std::nullopt;
}

std::vector<SrcStep> cbv_steps(const SrcPtr& t) {
    std::vector<SrcStep> out;
    std::vector<int> where;
    collect_cbv(t, where, out);
    return finish(t, std::move(out));
}

std::optional<SrcStep> cbv_step(const SrcPtr& t) {
    auto s = cbv_steps(t);
    if (s.empty()) return std::nullopt;
    return s.front();
}

std::vector<SrcStep> bang_steps(const SrcPtr& t) {
    std::vector<SrcStep> out;
    std::vector<int> where;
    collect_bang(t, where, out);
    return finish(t, std::move(out));
}

std::optional<SrcStep> bang_step(const SrcPtr& t) {
    auto s = bang_steps(t);
    if (s.empty()) return std::nullopt;
    return s.front();
}

std::vector<SrcStep> source_steps(const SrcPtr& t, Calculus k) {
    switch (k) {
    case Calculus::Cbn: {
        auto s = cbn_step(t);
        if (!s) return {};
        return {*s};
    }
    case Calculus::Cbv: return cbv_steps(t);
    case Calculus::Bang: return bang_steps(t);
    }
    return {};
}

TermPtr embed_cbn(const SrcPtr& t) {
    switch (t->kind) {
    case Src::Kind::Var: return var(t->name);
    case Src::Kind::Abs: return abs(pvar(t->name), embed_cbn(t->kids[0]));
    case Src::Kind::App: return app(embed_cbn(t->kids[0]), embed_cbn(t->kids[1]));
    default: throw Error("NotCbn", "not a call-by-name term: " + pretty(t));
    }
}

TermPtr translate_cbv(const SrcPtr& t) {
    if (!valid_in(t, Calculus::Cbv)) throw Error("NotCbv", "not a call-by-value term: " + pretty(t));
    CbvTranslator tr;
    names_of(t, tr.taken);
    return tr.term(t);
}

TermPtr translate_cbv_value(const SrcPtr& v) {
    if (!is_value(v)) throw Error("NotAValue", pretty(v) + " is not a value");
    CbvTranslator tr;
    names_of(v, tr.taken);
    return tr.value(v);
}

TermPtr translate_bang(const SrcPtr& t) {
    switch (t->kind) {
    case Src::Kind::Var: return var(t->name);
    case Src::Kind::Abs: return abs(pdata("B", {pvar(t->name)}), translate_bang(t->kids[0]));
    case Src::Kind::App: return app(translate_bang(t->kids[0]), translate_bang(t->kids[1]));
    case Src::Kind::Bang: return data("B", {translate_bang(t->kids[0])});
    case Src::Kind::Sub:
        return match(translate_bang(t->kids[0]), pdata("B", {pvar(t->name)}), translate_bang(t->kids[1]));
    }
    return nullptr;
}

TermPtr translate(const SrcPtr& t, Calculus k) {
    switch (k) {
    case Calculus::Cbn: return embed_cbn(t);
    case Calculus::Cbv: return translate_cbv(t);
    case Calculus::Bang: return translate_bang(t);
    }
    return nullptr;
}

std::optional<Trace> find_path(const TermPtr& from, const TermPtr& to, size_t bound, bool* exceeded) {
    struct Visit {
        TermPtr term;
        size_t parent;
        Redex via;
        size_t depth;
    };
    const std::string target = canonical(to);
    const size_t max_states = 200000;
    std::vector<Visit> seen{{from, 0, {}, 0}};
    std::unordered_map<std::string, size_t> index{{canonical(from), 0}};
    std::deque<size_t> queue{0};
    if (exceeded) *exceeded = false;
    auto build = [&](size_t last, const TermPtr& end, const Redex& rx) {
        std::vector<Step> rev{{rx.rule, rx.position, seen[last].term, end}};
        for (size_t n = last; n != 0; n = seen[n].parent)
            rev.push_back({seen[n].via.rule, seen[n].via.position, seen[seen[n].parent].term, seen[n].term});
        Trace tr;
        for (auto it = rev.rbegin(); it != rev.rend(); ++it) tr.push(*it);
        return tr;
    };
    while (!queue.empty()) {
        size_t n = queue.front();
        queue.pop_front();
        if (seen[n].depth >= bound) {
            if (exceeded && !enumerate_redexes(seen[n].term).empty()) *exceeded = true;
            continue;
        }
        for (auto& rx : enumerate_redexes(seen[n].term)) {
            auto next = apply_at(seen[n].term, rx.position, rx.rule);
            auto key = canonical(next);
            if (key == target) return build(n, next, rx);
            if (index.count(key)) continue;
            if (seen.size() >= max_states) {
                if (exceeded) *exceeded = true;
                return std::nullopt;
            }
            index.emplace(std::move(key), seen.size());
            seen.push_back({next, n, rx, seen[n].depth + 1});
            queue.push_back(seen.size() - 1);
        }
    }
    return std::nullopt;
}

SimulationReport check_simulation(const SrcPtr& t, Calculus k, size_t max_steps, size_t bound) {
    SimulationReport rep;
    if (!valid_in(t, k)) {
        rep.ok = false;
        rep.failure = "not a " + calculus_name(k) + " term: " + pretty(t);
        return rep;
    }
    SrcPtr cur = t;
    for (size_t i = 0; i < max_steps; ++i) {
        auto steps = source_steps(cur, k);
        if (steps.empty()) break;
        auto from = translate(cur, k);
        for (auto& s : steps) {
            auto to = translate(s.after, k);
            bool exceeded = false;
            auto path = find_path(from, to, bound, &exceeded);
            if (!path) {
                rep.ok = false;
                rep.bound_exceeded = exceeded;
                rep.failure = (exceeded ? "no path found within bound " + std::to_string(bound) + " for "
                                        : "no weak head path exists for ") +
                              pretty(cur) + " -> " + pretty(s.after);
                return rep;
            }
            rep.certificates.push_back({k, s.rule, cur, s.after, from, to, std::move(*path)});
        }
        cur = steps.front().after;
    }
    return rep;
}

TermPtr moggi_app(const TermPtr& t, const TermPtr& u) {
    auto x = fresh("x"), y = fresh("y"), z1 = fresh("z"), z2 = fresh("z");
    auto inner = case_of(u, {{pdata("V", {pvar(y)}), app(var(x), var(y))},
                             {pdata("E", {pvar(z1)}), data("E", {var(z1)})}});
    return case_of(t, {{pdata("V", {pvar(x)}), inner}, {pdata("E", {pvar(z2)}), data("E", {var(z2)})}});
}

} // namespace lamhat
