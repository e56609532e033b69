#include "lamhat/classifier.hpp"
#include "lamhat/text.hpp"

#include <algorithm>

namespace lamhat {

namespace {

// 0 = not normal, 1 = no (w.r.t. the exposed tag), 2 = na, 3 = ne
int level(const TermPtr& t) {
    switch (t->kind) {
    case Term::Kind::Var: return 3;
    case Term::Kind::Abs: return 1;
    case Term::Kind::Data: return 2;
    case Term::Kind::App: return level(t->fun()) >= 2 ? 3 : 0;
    case Term::Kind::Match: {
        if (t->pattern->is_var()) return 0;
        if (level(t->arg()) < 1 || is_const(t->arg(), t->pattern->name)) return 0;
        return level(t->body());
    }
    case Term::Kind::Case: {
        if (level(t->scrutinee()) < 1) return 0;
        auto tag = const_tag(t->scrutinee());
        if (tag)
            for (auto& b : t->branches)
                if (b.pattern->name == *tag) return 0;
        return 3;
    }
    }
    return 0;
}

bool data_frame(const TermPtr& t) { return t->kind == Term::Kind::Match && !t->pattern->is_var(); }

} // namespace

bool in_ne(const TermPtr& t) { return level(t) == 3; }

bool in_na(const TermPtr& t, const std::string& c) {
    int l = level(t);
    if (l == 3) return true;
    return l == 2 && is_const(t, c);
}

bool in_no(const TermPtr& t, const std::string& c) {
    int l = level(t);
    if (l == 3 || (l == 1 && is_abs(t))) return true;
    return l >= 1 && is_const(t, c);
}

std::string NfClass::str() const {
    switch (kind) {
    case Kind::NotNormal: return "not-normal";
    case Kind::Neutral: return "normal(ne)";
    case Kind::NeutralData: return "normal(na:" + tag.value_or("") + ")";
    case Kind::Normal: return tag ? "normal(no:" + *tag + ")" : "normal(no)";
    }
    return "?";
}

NfClass nf_class(const TermPtr& t) {
    static const NfClass::Kind kinds[] = {NfClass::Kind::NotNormal, NfClass::Kind::Normal,
                                          NfClass::Kind::NeutralData, NfClass::Kind::Neutral};
    return {kinds[level(t)], const_tag(t)};
}

std::string base_clash_name(BaseClash k) {
    switch (k) {
    case BaseClash::DataApplied: return "data-applied";
    case BaseClash::MatchAbs: return "match-abstraction";
    case BaseClash::MatchTag: return "match-tag-mismatch";
    case BaseClash::CaseAbs: return "case-abstraction";
    case BaseClash::CaseTag: return "case-unmatched-tag";
    }
    return "?";
}

std::optional<BaseClash> base_clash(const TermPtr& t) {
    switch (t->kind) {
    case Term::Kind::App:
        if (const_tag(t->fun())) return BaseClash::DataApplied;
        break;
    case Term::Kind::Match:
        if (!t->pattern->is_var()) {
            if (is_abs(t->arg())) return BaseClash::MatchAbs;
            auto tag = const_tag(t->arg());
            if (tag && *tag != t->pattern->name) return BaseClash::MatchTag;
        }
        break;
    case Term::Kind::Case: {
        if (is_abs(t->scrutinee())) return BaseClash::CaseAbs;
        auto tag = const_tag(t->scrutinee());
        if (tag && std::none_of(t->branches.begin(), t->branches.end(),
                                [&](const Branch& b) { return b.pattern->name == *tag; }))
            return BaseClash::CaseTag;
        break;
    }
    default: break;
    }
    return std::nullopt;
}

static bool find_clash(const TermPtr& t, Position& pos, ClashReport& out) {
    auto go = [&](Dir d, const TermPtr& k) {
        pos.push_back(d);
        bool r = find_clash(k, pos, out);
        pos.pop_back();
        return r;
    };
    switch (t->kind) {
    case Term::Kind::App:
        if (go(Dir::Fun, t->fun())) return true;
        break;
    case Term::Kind::Match:
        if (go(Dir::Body, t->body()) || go(Dir::Arg, t->arg())) return true;
        break;
    case Term::Kind::Case:
        if (go(Dir::Scrut, t->scrutinee())) return true;
        break;
    default: break;
    }
    if (auto k = base_clash(t)) {
        out.is_clash = true;
        out.witness = pos;
        out.kind = k;
        return true;
    }
    return false;
}

ClashReport is_clash(const TermPtr& t) {
    ClashReport r;
    Position pos;
    find_clash(t, pos, r);
    return r;
}

bool in_ncf(const TermPtr& t) {
    switch (t->kind) {
    case Term::Kind::Var: return true;
    case Term::Kind::App: return in_ncf(t->fun());
    case Term::Kind::Match: return data_frame(t) && in_ncf(t->body()) && in_ncf(t->arg());
    case Term::Kind::Case: return in_ncf(t->scrutinee());
    default: return false;
    }
}

bool is_clash_free_nf(const TermPtr& t) {
    switch (t->kind) {
    case Term::Kind::Abs:
    case Term::Kind::Data: return true;
    case Term::Kind::Match:
        if (data_frame(t) && is_clash_free_nf(t->body()) && in_ncf(t->arg())) return true;
        break;
    default: break;
    }
    return in_ncf(t);
}

NfShape closed_nf_shape(const TermPtr& t) {
    if (!closed(t)) throw Error("PreconditionViolated", "term is open: " + pretty(t));
    if (step_det(t)) throw Error("PreconditionViolated", "term is reducible: " + pretty(t));
    if (is_clash(t).is_clash) throw Error("PreconditionViolated", "term is a clash: " + pretty(t));
    if (t->kind == Term::Kind::Abs) return {NfShape::Kind::Abstraction, ""};
    if (t->kind == Term::Kind::Data) return {NfShape::Kind::Data, t->name};
    throw Error("PreconditionViolated", "closed clash-free normal form of unexpected shape: " + pretty(t));
}

} // namespace lamhat
