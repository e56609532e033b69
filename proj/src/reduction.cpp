#include "lamhat/reduction.hpp"
#include "lamhat/text.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <unordered_map>

namespace lamhat {

std::string rule_name(Rule r) {
    switch (r) {
    case Rule::dB: return "dB";
    case Rule::c: return "c";
    case Rule::m: return "m";
    case Rule::e: return "e";
    }
    return "?";
}

std::string position_name(const Position& p) {
    if (p.empty()) return "hole";
    std::string s;
    for (auto d : p) {
        if (!s.empty()) s += '.';
        switch (d) {
        case Dir::Fun: s += "fun"; break;
        case Dir::Body: s += "body"; break;
        case Dir::Arg: s += "arg"; break;
        case Dir::Scrut: s += "scrut"; break;
        }
    }
    return s;
}

static TermPtr child(const TermPtr& t, Dir d) {
    switch (d) {
    case Dir::Fun:
        if (t->kind == Term::Kind::App) return t->fun();
        break;
    case Dir::Body:
        if (t->kind == Term::Kind::Match) return t->body();
        break;
    case Dir::Arg:
        if (t->kind == Term::Kind::Match) return t->arg();
        break;
    case Dir::Scrut:
        if (t->kind == Term::Kind::Case) return t->scrutinee();
        break;
    }
    throw Error("BadPosition", "position does not fit " + pretty(t));
}

TermPtr subterm_at(const TermPtr& t, const Position& pos) {
    TermPtr cur = t;
    for (auto d : pos) cur = child(cur, d);
    return cur;
}

static TermPtr replace_from(const TermPtr& t, const Position& pos, size_t i, const TermPtr& u) {
    if (i == pos.size()) return u;
    auto k = replace_from(child(t, pos[i]), pos, i + 1, u);
    switch (pos[i]) {
    case Dir::Fun: return app(k, t->arg());
    case Dir::Body: return match(k, t->pattern, t->arg());
    case Dir::Arg: return match(t->body(), t->pattern, k);
    case Dir::Scrut: return case_of(k, t->branches);
    }
    return t;
}

TermPtr replace_at(const TermPtr& t, const Position& pos, const TermPtr& u) {
    return replace_from(t, pos, 0, u);
}

void Trace::push(Step s) {
    counters[static_cast<size_t>(s.rule == Rule::dB ? 0 : s.rule == Rule::c ? 1 : s.rule == Rule::m ? 2 : 3)]++;
    steps.push_back(std::move(s));
}

std::string render_counters(const Trace& tr) {
    return "steps=(" + std::to_string(tr.counters[0]) + "," + std::to_string(tr.counters[1]) + "," +
           std::to_string(tr.counters[2]) + "," + std::to_string(tr.counters[3]) + ")";
}

std::string render_trace(const Trace& tr) {
    std::string out;
    for (auto& s : tr.steps)
        out += rule_name(s.rule) + " @ " + position_name(s.position) + " : " + pretty(s.before) + " --> " +
               pretty(s.after) + "\n";
    out += render_counters(tr) + "\n";
    return out;
}

static const Branch* selected_branch(const TermPtr& cs) {
    auto tag = const_tag(cs->scrutinee());
    if (!tag) return nullptr;
    for (auto& b : cs->branches)
        if (b.pattern->name == *tag) return &b;
    return nullptr;
}

bool is_root_redex(const TermPtr& t, Rule r) {
    switch (r) {
    case Rule::dB: return t->kind == Term::Kind::App && is_abs(t->fun());
    case Rule::e: return t->kind == Term::Kind::Match && t->pattern->is_var();
    case Rule::m:
        return t->kind == Term::Kind::Match && !t->pattern->is_var() && is_const(t->arg(), t->pattern->name);
    case Rule::c: return t->kind == Term::Kind::Case && selected_branch(t) != nullptr;
    }
    return false;
}

static void enumerate(const TermPtr& t, Position& pos, std::vector<Redex>& out) {
    for (auto r : {Rule::dB, Rule::c, Rule::m, Rule::e})
        if (is_root_redex(t, r)) out.push_back({pos, r});
    auto go = [&](Dir d, const TermPtr& k) {
        pos.push_back(d);
        enumerate(k, pos, out);
        pos.pop_back();
    };
    switch (t->kind) {
    case Term::Kind::App: go(Dir::Fun, t->fun()); break;
    case Term::Kind::Match:
        go(Dir::Body, t->body());
        if (!t->pattern->is_var()) go(Dir::Arg, t->arg());
        break;
    case Term::Kind::Case: go(Dir::Scrut, t->scrutinee()); break;
    default: break;
    }
}

std::vector<Redex> enumerate_redexes(const TermPtr& t) {
    std::vector<Redex> out;
    Position pos;
    enumerate(t, pos, out);
    return out;
}

// Renames the pattern variables of p that occur in `avoid`, in p and in scope.
static std::pair<PatternPtr, TermPtr> rename_apart(const PatternPtr& p, const TermPtr& scope, const Names& avoid) {
    auto clash = set_inter(p->vars, avoid);
    if (clash.empty()) return {p, scope};
    std::map<std::string, std::string> m;
    for (auto& v : clash) m[v] = fresh(v);
    return {rename_pattern(p, m), rename_free(scope, m)};
}

TermPtr prepare_redex(const TermPtr& r, Rule rule) {
    switch (rule) {
    case Rule::dB: {
        auto f = freshen_list_context(r->fun(), r->arg()->fv);
        return f == r->fun() ? r : app(f, r->arg());
    }
    case Rule::m: {
        auto a = freshen_list_context(r->arg(), set_minus(r->body()->fv, r->pattern->vars));
        auto [p, s] = rename_apart(r->pattern, r->body(), list_core(a).fv);
        if (a == r->arg() && p == r->pattern) return r;
        return match(s, p, a);
    }
    case Rule::c: {
        auto* sel = selected_branch(r);
        auto a = freshen_list_context(r->scrutinee(), set_minus(sel->body->fv, sel->pattern->vars));
        auto bs = r->branches;
        for (auto& b : bs)
            if (b.pattern->name == sel->pattern->name) {
                auto [p, body] = rename_apart(b.pattern, b.body, list_core(a).fv);
                b = {p, body};
            }
        return case_of(a, std::move(bs));
    }
    case Rule::e: return r;
    }
    return r;
}

static TermPtr spread(TermPtr body, const PatternPtr& p, const Term& d) {
    for (size_t i = 0; i < p->args.size(); ++i) body = match(body, p->args[i], d.kids[i]);
    return body;
}

TermPtr contract_prepared(const TermPtr& r, Rule rule) {
    switch (rule) {
    case Rule::dB: {
        auto [l, core] = decompose_list_context(r->fun());
        return l.plug(match(core->body(), core->pattern, r->arg()));
    }
    case Rule::m: {
        auto [l, core] = decompose_list_context(r->arg());
        return l.plug(spread(r->body(), r->pattern, *core));
    }
    case Rule::c: {
        auto [l, core] = decompose_list_context(r->scrutinee());
        for (auto& b : r->branches)
            if (b.pattern->name == core->name) return l.plug(spread(b.body, b.pattern, *core));
        break;
    }
    case Rule::e: return substitute(r->body(), r->pattern->name, r->arg());
    }
    throw Error("NotARedex", "not a redex");
}

TermPtr contract(const TermPtr& r, Rule rule) {
    if (!is_root_redex(r, rule)) throw Error("NotARedex", rule_name(rule) + " does not apply to " + pretty(r));
    return contract_prepared(prepare_redex(r, rule), rule);
}

static bool weak_head_position(const TermPtr& t, const Position& pos) {
    TermPtr cur = t;
    for (auto d : pos) {
        switch (d) {
        case Dir::Fun:
            if (cur->kind != Term::Kind::App) return false;
            cur = cur->fun();
            break;
        case Dir::Body:
            if (cur->kind != Term::Kind::Match) return false;
            cur = cur->body();
            break;
        case Dir::Arg:
            if (cur->kind != Term::Kind::Match || cur->pattern->is_var()) return false;
            cur = cur->arg();
            break;
        case Dir::Scrut:
            if (cur->kind != Term::Kind::Case) return false;
            cur = cur->scrutinee();
            break;
        }
    }
    return true;
}

TermPtr apply_at(const TermPtr& t, const Position& pos, Rule rule) {
    if (!weak_head_position(t, pos))
        throw Error("NotARedex", position_name(pos) + " is not a weak head position of " + pretty(t));
    return replace_at(t, pos, contract(subterm_at(t, pos), rule));
}

static std::optional<DetStep> det(const TermPtr& t) {
    auto inside = [](std::optional<DetStep> s, Dir d, auto rebuild) -> std::optional<DetStep> {
        if (!s) return std::nullopt;
        s->position.insert(s->position.begin(), d);
        s->after = rebuild(s->after);
        return s;
    };
    switch (t->kind) {
    case Term::Kind::App:
        if (is_abs(t->fun())) return DetStep{contract(t, Rule::dB), Rule::dB, {}};
        return inside(det(t->fun()), Dir::Fun, [&](const TermPtr& f) { return app(f, t->arg()); });
    case Term::Kind::Match: {
        if (t->pattern->is_var()) return DetStep{contract(t, Rule::e), Rule::e, {}};
        if (is_const(t->arg(), t->pattern->name)) return DetStep{contract(t, Rule::m), Rule::m, {}};
        if (auto s = det(t->body()))
            return inside(s, Dir::Body, [&](const TermPtr& b) { return match(b, t->pattern, t->arg()); });
        return inside(det(t->arg()), Dir::Arg, [&](const TermPtr& a) { return match(t->body(), t->pattern, a); });
    }
    case Term::Kind::Case:
        if (selected_branch(t)) return DetStep{contract(t, Rule::c), Rule::c, {}};
        return inside(det(t->scrutinee()), Dir::Scrut, [&](const TermPtr& s) { return case_of(s, t->branches); });
    default: return std::nullopt;
    }
}

std::optional<DetStep> step_det(const TermPtr& t) { return det(t); }

EvalResult evaluate(const TermPtr& t, size_t fuel) {
    EvalResult r;
    r.term = t;
    while (auto s = step_det(r.term)) {
        if (r.trace.length() >= fuel) return r;
        r.trace.push({s->rule, s->position, r.term, s->after});
        r.term = s->after;
    }
    r.normal = true;
    return r;
}

PathSet all_paths_to_nf(const TermPtr& t, size_t bound, size_t max_states) {
    struct Edge {
        Redex redex;
        size_t target;
    };
    struct Node {
        TermPtr term;
        size_t depth;
        std::vector<Edge> edges;
    };
    PathSet result;
    std::vector<Node> nodes;
    std::unordered_map<std::string, size_t> index;
    nodes.push_back({t, 0, {}});
    index.emplace(canonical(t), 0);
    std::deque<size_t> queue{0};
    while (!queue.empty()) {
        size_t n = queue.front();
        queue.pop_front();
        auto redexes = enumerate_redexes(nodes[n].term);
        if (!redexes.empty() && nodes[n].depth >= bound) {
            result.exceeded = true;
            result.states = nodes.size();
            return result;
        }
        for (auto& rx : redexes) {
            auto next = apply_at(nodes[n].term, rx.position, rx.rule);
            auto key = canonical(next);
            auto it = index.find(key);
            size_t target;
            if (it == index.end()) {
                target = nodes.size();
                nodes.push_back({next, nodes[n].depth + 1, {}});
                index.emplace(std::move(key), target);
                queue.push_back(target);
                if (nodes.size() > max_states) {
                    result.exceeded = true;
                    result.states = nodes.size();
                    return result;
                }
            } else {
                target = it->second;
            }
            nodes[n].edges.push_back({rx, target});
        }
    }
    result.states = nodes.size();

    // topological order; a cycle means an infinite path
    std::vector<int> color(nodes.size(), 0);
    std::vector<size_t> order;
    std::vector<std::pair<size_t, size_t>> stack{{0, 0}};
    color[0] = 1;
    while (!stack.empty()) {
        auto& [n, i] = stack.back();
        if (i < nodes[n].edges.size()) {
            size_t m = nodes[n].edges[i++].target;
            if (color[m] == 1) {
                result.exceeded = true;
                return result;
            }
            if (color[m] == 0) {
                color[m] = 1;
                stack.push_back({m, 0});
            }
        } else {
            color[n] = 2;
            order.push_back(n);
            stack.pop_back();
        }
    }
    std::reverse(order.begin(), order.end());

    struct Pred {
        size_t node;
        size_t edge;
    };
    std::vector<std::map<size_t, Pred>> lengths(nodes.size());
    std::vector<unsigned long long> count(nodes.size(), 0);
    lengths[0].emplace(0, Pred{0, 0});
    count[0] = 1;
    const unsigned long long cap = ~0ULL;
    for (size_t n : order) {
        for (size_t e = 0; e < nodes[n].edges.size(); ++e) {
            size_t m = nodes[n].edges[e].target;
            for (auto& [len, _] : lengths[n]) {
                if (len + 1 > bound) {
                    result.exceeded = true;
                    return result;
                }
                lengths[m].emplace(len + 1, Pred{n, e});
            }
            count[m] = count[m] > cap - count[n] ? cap : count[m] + count[n];
        }
    }
    for (size_t n : order) {
        if (!nodes[n].edges.empty()) continue;
        result.path_count = result.path_count > cap - count[n] ? cap : result.path_count + count[n];
        for (auto& [len, _] : lengths[n]) {
            std::vector<Step> rev;
            size_t cur = n, l = len;
            while (l > 0) {
                auto p = lengths[cur].at(l);
                auto& edge = nodes[p.node].edges[p.edge];
                rev.push_back({edge.redex.rule, edge.redex.position, nodes[p.node].term, nodes[cur].term});
                cur = p.node;
                --l;
            }
            Trace tr;
            for (auto it = rev.rbegin(); it != rev.rend(); ++it) tr.push(*it);
            result.traces.push_back(std::move(tr));
        }
    }
    return result;
}

} // namespace lamhat
