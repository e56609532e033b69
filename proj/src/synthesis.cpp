#include "lamhat/synthesis.hpp"
#include "lamhat/classifier.hpp"
#include "lamhat/text.hpp"

#include <functional>

namespace lamhat {

namespace {

[[noreturn]] void shape_error(const std::string& what) { throw Error("DerivationShape", what); }

DerivPtr align_pattern(const DerivPtr& d, const PatternPtr& p) {
    if (d->rule == TypingRule::PatV) {
        if (!p->is_var()) shape_error("patv over a data pattern");
        return d_patv(p->name, d->mtype);
    }
    if (p->is_var() || p->args.size() != d->kids.size()) shape_error("patc does not fit the pattern");
    std::vector<DerivPtr> kids;
    for (size_t i = 0; i < d->kids.size(); ++i) kids.push_back(align_pattern(d->kids[i], p->args[i]));
    return d_patc(p, std::move(kids));
}

// Contexts are rebuilt from the leaves, so following the target's names is enough.
DerivPtr align(const DerivPtr& d, const TermPtr& t) {
    auto kid = [&](size_t i, const TermPtr& s) { return align(d->kids.at(i), s); };
    switch (d->rule) {
    case TypingRule::Ax: return d_ax(t->name, d->type);
    case TypingRule::Many: {
        std::vector<DerivPtr> kids;
        for (auto& k : d->kids) kids.push_back(align(k, t));
        return d_many(t, std::move(kids));
    }
    case TypingRule::Abs:
        return d_abs(t, kid(0, t->body()), d->kids.size() > 1 ? align_pattern(d->kids[1], t->pattern) : nullptr);
    case TypingRule::AbsB: return d_absb(t);
    case TypingRule::App: return d_app(t, kid(0, t->fun()), kid(1, t->arg()));
    case TypingRule::Const: {
        std::vector<DerivPtr> kids;
        for (size_t i = 0; i < t->kids.size(); ++i) kids.push_back(kid(i, t->kids[i]));
        return d_const(t, std::move(kids));
    }
    case TypingRule::Match:
        return d_match(t, kid(0, t->body()), align_pattern(d->kids.at(1), t->pattern), kid(2, t->arg()));
    case TypingRule::Case: {
        auto& b = t->branches.at(d->branch);
        return d_case(t, kid(0, t->scrutinee()), align_pattern(d->kids.at(1), b.pattern), kid(2, b.body), d->branch);
    }
    default: shape_error("pattern judgment where a term judgment was expected");
    }
}

using Edit = std::function<DerivPtr(const DerivPtr&)>;

const DerivPtr& only_premise(const DerivPtr& many) {
    if (many->rule != TypingRule::Many || many->kids.size() != 1)
        shape_error("expected a many node with a single premise");
    return many->kids[0];
}

DerivPtr at_position(const DerivPtr& d, const Position& pos, size_t i, const Edit& f) {
    if (i == pos.size()) return f(d);
    const auto& t = d->term;
    switch (pos[i]) {
    case Dir::Fun: {
        if (d->rule != TypingRule::App) shape_error("fun step needs an app node");
        auto k = at_position(d->kids[0], pos, i + 1, f);
        return d_app(app(k->term, t->arg()), k, d->kids[1]);
    }
    case Dir::Body: {
        if (d->rule != TypingRule::Match) shape_error("body step needs a match node");
        auto k = at_position(d->kids[0], pos, i + 1, f);
        return d_match(match(k->term, t->pattern, t->arg()), k, d->kids[1], d->kids[2]);
    }
    case Dir::Arg: {
        if (d->rule != TypingRule::Match) shape_error("arg step needs a match node");
        auto k = at_position(only_premise(d->kids[2]), pos, i + 1, f);
        return d_match(match(t->body(), t->pattern, k->term), d->kids[0], d->kids[1], d_many(k->term, {k}));
    }
    case Dir::Scrut: {
        if (d->rule != TypingRule::Case) shape_error("scrut step needs a case node");
        auto k = at_position(only_premise(d->kids[0]), pos, i + 1, f);
        return d_case(case_of(k->term, t->branches), d_many(k->term, {k}), d->kids[1], d->kids[2], d->branch);
    }
    }
    return d;
}

// Walks down n match frames, returning them outermost first together with the core.
std::pair<std::vector<DerivPtr>, DerivPtr> peel(DerivPtr d, size_t n) {
    std::vector<DerivPtr> frames;
    for (size_t i = 0; i < n; ++i) {
        if (d->rule != TypingRule::Match) shape_error("expected a match frame");
        frames.push_back(d);
        d = d->kids[0];
    }
    return {frames, d};
}

DerivPtr rewrap(const std::vector<DerivPtr>& frames, DerivPtr d) {
    for (auto it = frames.rbegin(); it != frames.rend(); ++it) {
        auto& f = (*it)->term;
        d = d_match(match(d->term, f->pattern, f->arg()), d, (*it)->kids[1], (*it)->kids[2]);
    }
    return d;
}

size_t frame_count(const TermPtr& t) { return decompose_list_context(t).first.frames.size(); }

// s[p1/t1]...[pn/tn] typed from the premises of a const node
DerivPtr spread(DerivPtr d, const PatternPtr& p, const DerivPtr& patd, const DerivPtr& constd) {
    for (size_t i = 0; i < p->args.size(); ++i) {
        auto& ti = constd->term->kids[i];
        d = d_match(match(d->term, p->args[i], ti), d, patd->kids.at(i), constd->kids.at(i));
    }
    return d;
}

DerivPtr transport_base(const DerivPtr& psi, const TermPtr& r, Rule rule) {
    switch (rule) {
    case Rule::dB: {
        auto [frames, absd] = peel(psi->kids[0], frame_count(r->fun()));
        if (absd->rule != TypingRule::Abs) shape_error("dB needs an abs node under the list context");
        auto& lam = absd->term;
        auto& s = absd->kids[0];
        auto pat = absd->kids.size() > 1 ? absd->kids[1] : d_patv(lam->pattern->name, lookup(s->ctx, lam->pattern->name));
        auto& u = psi->kids[1];
        return rewrap(frames, d_match(match(lam->body(), lam->pattern, r->arg()), s, pat, u));
    }
    case Rule::e: return weighted_substitute(psi->kids[0], r->pattern->name, psi->kids[2]);
    case Rule::m: {
        auto [frames, constd] = peel(only_premise(psi->kids[2]), frame_count(r->arg()));
        return rewrap(frames, spread(psi->kids[0], r->pattern, psi->kids[1], constd));
    }
    case Rule::c: {
        auto [frames, constd] = peel(only_premise(psi->kids[0]), frame_count(r->scrutinee()));
        auto& br = r->branches.at(psi->branch);
        return rewrap(frames, spread(psi->kids[2], br.pattern, psi->kids[1], constd));
    }
    }
    return psi;
}

// Undoes spread: returns the body derivation and the pattern and argument premises, innermost first.
DerivPtr unspread(DerivPtr d, size_t n, std::vector<DerivPtr>& pats, std::vector<DerivPtr>& args) {
    pats.assign(n, nullptr);
    args.assign(n, nullptr);
    for (size_t i = n; i-- > 0;) {
        if (d->rule != TypingRule::Match) shape_error("expected the matches produced by a matching step");
        pats[i] = d->kids[1];
        args[i] = d->kids[2];
        d = d->kids[0];
    }
    return d;
}

DerivPtr expand_base(const DerivPtr& psi, const TermPtr& r, Rule rule) {
    switch (rule) {
    case Rule::dB: {
        auto [l, lam] = decompose_list_context(r->fun());
        auto [frames, core] = peel(psi, l.frames.size());
        if (core->rule != TypingRule::Match) shape_error("dB expansion needs the fired match");
        auto absd = lam->pattern->is_var() ? d_abs(lam, core->kids[0]) : d_abs(lam, core->kids[0], core->kids[1]);
        return d_app(r, rewrap(frames, absd), core->kids[2]);
    }
    case Rule::e: {
        auto anti = anti_substitute(psi, r->body(), r->pattern->name, r->arg());
        return d_match(r, anti.phi_t, d_patv(r->pattern->name, anti.m), anti.phi_u);
    }
    case Rule::m:
    case Rule::c: {
        const TermPtr& a = rule == Rule::m ? r->arg() : r->scrutinee();
        auto [l, dat] = decompose_list_context(a);
        int k = -1;
        PatternPtr p = r->pattern;
        if (rule == Rule::c) {
            for (size_t i = 0; i < r->branches.size(); ++i)
                if (r->branches[i].pattern->name == dat->name) k = static_cast<int>(i);
            if (k < 0) shape_error("no branch for the scrutinee tag");
            p = r->branches[k].pattern;
        }
        auto [frames, inner] = peel(psi, l.frames.size());
        std::vector<DerivPtr> pats, args;
        auto body = unspread(inner, p->args.size(), pats, args);
        auto argd = d_many(a, {rewrap(frames, d_const(dat, args))});
        auto patd = d_patc(p, pats);
        if (rule == Rule::m) return d_match(r, body, patd, argd);
        return d_case(r, argd, patd, body, k);
    }
    }
    return psi;
}

struct Substituter {
    const std::string& x;
    const TermPtr& u;
    std::vector<DerivPtr> pool;
    std::vector<bool> used;

    DerivPtr take(const TypePtr& t) {
        for (size_t i = 0; i < pool.size(); ++i)
            if (!used[i] && pool[i]->type->key == t->key) {
                used[i] = true;
                return pool[i];
            }
        throw Error("MultisetMismatch", "no premise of type " + str(t) + " left for " + x);
    }

    DerivPtr go(const DerivPtr& d) {
        if (d->is_pattern() || !has(d->term->fv, x)) return d;
        if (d->rule == TypingRule::Ax) return take(d->type);
        auto kids = d->kids;
        const auto& t = d->term;
        switch (d->rule) {
        case TypingRule::Match:
            if (!has(t->pattern->vars, x)) kids[0] = go(kids[0]);
            kids[2] = go(kids[2]);
            break;
        case TypingRule::Case:
            kids[0] = go(kids[0]);
            if (!has(t->branches.at(d->branch).pattern->vars, x)) kids[2] = go(kids[2]);
            break;
        default:
            for (auto& k : kids) k = go(k);
        }
        return rebuild(d, naive_subst(t, x, u), std::move(kids));
    }
};

struct AntiSubstituter {
    const std::string& x;
    std::vector<DerivPtr> pool;

    DerivPtr go(const DerivPtr& d, const TermPtr& t) {
        if (!has(t->fv, x)) return d;
        if (d->rule == TypingRule::Many) {
            std::vector<DerivPtr> kids;
            for (auto& k : d->kids) kids.push_back(go(k, t));
            return d_many(t, std::move(kids));
        }
        if (t->kind == Term::Kind::Var) {
            pool.push_back(d);
            return d_ax(x, d->type);
        }
        auto kid = [&](size_t i, const TermPtr& s) { return go(d->kids.at(i), s); };
        switch (d->rule) {
        case TypingRule::Abs:
            return d_abs(t, kid(0, t->body()), d->kids.size() > 1 ? d->kids[1] : nullptr);
        case TypingRule::AbsB: return d_absb(t);
        case TypingRule::App: return d_app(t, kid(0, t->fun()), kid(1, t->arg()));
        case TypingRule::Const: {
            std::vector<DerivPtr> kids;
            for (size_t i = 0; i < t->kids.size(); ++i) kids.push_back(kid(i, t->kids[i]));
            return d_const(t, std::move(kids));
        }
        case TypingRule::Match: {
            auto body = has(t->pattern->vars, x) ? d->kids[0] : kid(0, t->body());
            return d_match(t, body, d->kids[1], kid(2, t->arg()));
        }
        case TypingRule::Case: {
            auto& b = t->branches.at(d->branch);
            auto body = has(b.pattern->vars, x) ? d->kids[2] : kid(2, b.body);
            return d_case(t, kid(0, t->scrutinee()), d->kids[1], body, d->branch);
        }
        default: shape_error("unexpected " + typing_rule_name(d->rule) + " node over " + pretty(t));
        }
    }
};

} // namespace

DerivPtr realign(const DerivPtr& d, const TermPtr& t) {
    if (!alpha_eq(d->term, t))
        throw Error("SubjectMismatch", "derivation subject " + pretty(d->term) + " is not alpha-equivalent to " + pretty(t));
    return align(d, t);
}

DerivPtr type_cf_normal_form(const TermPtr& t) {
    if (!closed(t)) throw Error("PreconditionViolated", pretty(t) + " is open");
    if (!is_clash_free_nf(t)) throw Error("PreconditionViolated", pretty(t) + " is not a clash-free normal form");
    if (t->kind == Term::Kind::Abs) return d_absb(t);
    if (t->kind == Term::Kind::Data) {
        std::vector<DerivPtr> args;
        for (auto& a : t->kids) args.push_back(d_many(a, {}));
        return d_const(t, std::move(args));
    }
    throw Error("PreconditionViolated", pretty(t) + " is neither an abstraction nor a data term");
}

DerivPtr weighted_substitute(const DerivPtr& phi_t, const std::string& x, const DerivPtr& phi_u) {
    if (phi_u->rule != TypingRule::Many) throw Error("MultisetMismatch", "the argument derivation must be a many node");
    if (!(lookup(phi_t->ctx, x) == phi_u->mtype))
        throw Error("MultisetMismatch", x + " is typed " + str(lookup(phi_t->ctx, x)) + " but the argument gets " +
                                            str(phi_u->mtype));
    const auto& u = phi_u->term;
    auto t1 = freshen_for_subst(phi_t->term, x, u->fv);
    Substituter s{x, u, phi_u->kids, std::vector<bool>(phi_u->kids.size(), false)};
    return s.go(align(phi_t, t1));
}

AntiSubstitution anti_substitute(const DerivPtr& phi, const TermPtr& t, const std::string& x, const TermPtr& u) {
    auto t1 = freshen_for_subst(t, x, u->fv);
    auto target = naive_subst(t1, x, u);
    if (!alpha_eq(phi->term, target))
        throw Error("SubjectMismatch", pretty(phi->term) + " is not " + pretty(t) + "{" + x + "/" + pretty(u) + "}");
    AntiSubstituter a{x, {}};
    auto dt = a.go(align(phi, target), t1);
    auto du = d_many(u, a.pool);
    return {align(dt, t), du, du->mtype};
}

DerivPtr transport_step(const DerivPtr& phi, const Step& step) {
    auto r = prepare_redex(subterm_at(step.before, step.position), step.rule);
    auto d = realign(phi, replace_at(step.before, step.position, r));
    d = at_position(d, step.position, 0, [&](const DerivPtr& psi) { return transport_base(psi, r, step.rule); });
    return realign(d, step.after);
}

DerivPtr expand_step(const DerivPtr& phi, const Step& step) {
    auto r = prepare_redex(subterm_at(step.before, step.position), step.rule);
    auto d = realign(phi, replace_at(step.before, step.position, contract_prepared(r, step.rule)));
    d = at_position(d, step.position, 0, [&](const DerivPtr& psi) { return expand_base(psi, r, step.rule); });
    return realign(d, step.before);
}

std::string SynthesisOutcome::kind_name() const {
    switch (kind) {
    case Kind::Typable: return "Typable";
    case Kind::Untypable: return "Untypable";
    case Kind::Unknown: return "Unknown";
    }
    return "?";
}

SynthesisOutcome synthesize(const TermPtr& t, size_t fuel) {
    if (!closed(t)) throw Error("OpenTerm", pretty(t) + " has free variables " + [&] {
        std::string s;
        for (auto& x : t->fv) s += (s.empty() ? "" : ",") + x;
        return s;
    }());
    SynthesisOutcome out;
    auto ev = evaluate(t, fuel);
    out.trace = ev.trace;
    out.steps = ev.trace.length();
    out.fuel_spent = ev.trace.length();
    if (!ev.normal) return out;
    out.normal = ev.term;
    if (auto c = is_clash(ev.term); c.is_clash) {
        out.kind = SynthesisOutcome::Kind::Untypable;
        out.witness = c.witness;
        return out;
    }
    auto d = type_cf_normal_form(ev.term);
    for (auto it = ev.trace.steps.rbegin(); it != ev.trace.steps.rend(); ++it) d = expand_step(d, *it);
    out.kind = SynthesisOutcome::Kind::Typable;
    out.derivation = d;
    out.bound = size(d);
    return out;
}

} // namespace lamhat
